#pragma once

#include <optional>

#include "hmcat/category.hpp"

namespace hmcat {

/* Composable basis tuple of degree n: n+1 objects, n morphisms, with
 * mors[i] a basis index of hom(objs[i], objs[i+1]). */
struct NerveTuple {
    std::vector<std::size_t> objs;
    std::vector<std::size_t> mors;
    auto operator<=>(const NerveTuple&) const = default;
};

struct NerveBasis {
    std::size_t degree = 0;
    std::vector<NerveTuple> elements; /* lexicographic by object tuple, then basis indices */
    std::map<NerveTuple, std::size_t> index;

    std::size_t index_of(const NerveTuple& t) const {
        auto it = index.find(t);
        if (it == index.end())
            throw Error("nerve tuple not found");
        return it->second;
    }
};

inline constexpr std::size_t kDefaultBudget = 200000;

/* Tuple count at degree n from hom dimensions alone (saturating). */
std::size_t projected_nerve_dim(const FinLinCategory& c, std::size_t n);

/* counts[x][y] = weighted number of degree-n composable tuples x -> y;
 * n = 0 gives the identity pattern. Saturating. */
std::vector<std::vector<std::size_t>> weighted_path_counts(const FinLinCategory& c,
                                                           std::size_t n);

NerveBasis nerve_basis(const FinLinCategory& c, std::size_t n,
                       std::optional<std::size_t> budget = kDefaultBudget);

}  // namespace hmcat
