#pragma once

#include "hmcat/complex.hpp"
#include "hmcat/module.hpp"
#include "hmcat/nerve.hpp"

namespace hmcat {

enum class HHVariant { cohomology, homology };

std::size_t projected_cochain_dim(const FinLinCategory& c, const BimoduleRep& m, std::size_t n);
std::size_t projected_chain_dim(const FinLinCategory& c, const BimoduleRep& m, std::size_t n);

/* Coordinate layout of one nerve degree with coefficients: a contiguous block
 * per tuple. Cochains pair a tuple with the coefficient space at
 * (last object, first object); chains use (first object, last object). */
struct GradedBasis {
    NerveBasis nerve;
    std::vector<std::size_t> offset; /* per tuple */
    std::vector<std::size_t> block;  /* per tuple, coefficient dimension */
    std::size_t dim = 0;
    std::size_t coord(std::size_t tuple, std::size_t k) const { return offset[tuple] + k; }
};

GradedBasis hm_cochain_basis(const FinLinCategory& c, const BimoduleRep& m, std::size_t n,
                             std::optional<std::size_t> budget = kDefaultBudget);

/* Degrees 0..maxdeg+1 with differentials 0..maxdeg; d∘d = 0 is verified at
 * construction. */
Complex hm_cochain_complex(const FinLinCategory& c, const BimoduleRep& m, std::size_t maxdeg,
                           std::optional<std::size_t> budget = kDefaultBudget);
Complex hm_chain_complex(const FinLinCategory& c, const BimoduleRep& m, std::size_t maxdeg,
                         std::optional<std::size_t> budget = kDefaultBudget);

std::vector<std::size_t> hh_dims(const FinLinCategory& c, const BimoduleRep& m,
                                 std::size_t maxdeg, HHVariant variant,
                                 std::optional<std::size_t> budget = kDefaultBudget);

/* Chain map of cochain complexes induced by a bimodule map on coefficients. */
std::map<int, Mat> cochain_coefficient_maps(const FinLinCategory& c, const BimoduleRep& from,
                                            const BimoduleRep& to, const ComponentMats& comp,
                                            std::size_t maxdeg,
                                            std::optional<std::size_t> budget = kDefaultBudget);

/* Ext oracle: Hom(bar resolution of m, n) with its cohomology dimensions.
 * Degree 0 recovers the intertwiner space. Right modules directly, left
 * modules through the opposite category. */
Complex bar_ext_complex(const ModuleRep& m, const ModuleRep& n, std::size_t maxdeg,
                        std::optional<std::size_t> budget = kDefaultBudget);
std::vector<std::size_t> ext_dims_bar(const ModuleRep& m, const ModuleRep& n, std::size_t maxdeg,
                                      std::optional<std::size_t> budget = kDefaultBudget);

}  // namespace hmcat
