#pragma once

#include "hmcat/category.hpp"
#include "hmcat/linalg.hpp"

namespace hmcat {

enum class Variance { left, right };

/* Representation of a one-sided module: per-object dimensions and one matrix
 * per basis morphism. For f : x -> y, a left action maps space(x) to space(y)
 * and a right action maps space(y) to space(x). Absent matrices are zero. */
struct ModuleRep {
    Variance variance = Variance::right;
    CatPtr base;
    std::vector<std::size_t> dims;
    std::map<MorKey, Mat> action;

    std::size_t dim(std::size_t x) const { return dims[x]; }
    std::size_t total_dim() const;
    std::pair<std::size_t, std::size_t> action_shape(const MorKey& m) const;
    Mat action_of(const MorKey& m) const;
    Mat action_of_vec(std::size_t src, std::size_t dst, const SparseVec& v) const;
    void set_action(const MorKey& m, Mat a);
};

ValidationReport validate_module(const ModuleRep& m);
ModuleRep zero_module(CatPtr base, Variance v);

/* Same spaces and matrices, read as a right module over the opposite. */
ModuleRep left_as_right_over_opposite(const ModuleRep& left, CatPtr op_base);

/* Two-sided module: spaces indexed (outer object y, inner object x), a left
 * action of outer basis morphisms at each inner object and a right action of
 * inner basis morphisms at each outer object.
 *   lact[(f : y -> y', x)] : (y, x)  -> (y', x)
 *   ract[(g : x -> x', y)] : (y, x') -> (y, x)  */
struct BimoduleRep {
    CatPtr outer, inner;
    std::vector<std::size_t> dims; /* index y * inner_count + x */
    std::map<std::pair<MorKey, std::size_t>, Mat> lact;
    std::map<std::pair<MorKey, std::size_t>, Mat> ract;

    std::size_t index(std::size_t y, std::size_t x) const {
        return y * inner->object_count() + x;
    }
    std::size_t at(std::size_t y, std::size_t x) const { return dims[index(y, x)]; }
    std::size_t total_dim() const;

    Mat lact_of(const MorKey& f, std::size_t x) const;
    Mat ract_of(const MorKey& g, std::size_t y) const;
    Mat lact_of_vec(std::size_t ysrc, std::size_t ydst, const SparseVec& v, std::size_t x) const;
    Mat ract_of_vec(std::size_t xsrc, std::size_t xdst, const SparseVec& v, std::size_t y) const;
    void set_lact(const MorKey& f, std::size_t x, Mat a);
    void set_ract(const MorKey& g, std::size_t y, Mat a);
};

ValidationReport validate_bimodule(const BimoduleRep& b);

BimoduleRep regular_bimodule(CatPtr c);
BimoduleRep bimodule_of_right_module(const ModuleRep& m, CatPtr terminal_base);
BimoduleRep bimodule_of_left_module(const ModuleRep& m, CatPtr terminal_base);

/* A bimodule is a left module over outer ⊠ inner^op; object pairing follows
 * the same (y, x) flattening. */
struct BoxModule {
    CatPtr box;
    ModuleRep mod;
};
BoxModule as_box_left_module(const BimoduleRep& b);

struct NatHom {
    std::size_t dim = 0;
    std::vector<std::vector<Mat>> basis; /* basis[k][object] = component t_x */
};

/* Solution space of the intertwiner equations between two modules of the same
 * base and variance. */
NatHom nat_hom(const ModuleRep& m, const ModuleRep& n);
NatHom nat_hom_bimodule(const BimoduleRep& m, const BimoduleRep& n);

struct SubcategoryModule {
    CatPtr sub;
    ModuleRep mod;
};

/* Restriction to a full convex subcategory; throws NotConvex. */
SubcategoryModule restrict_module(const ModuleRep& m, const std::vector<std::string>& subobjects);

/* Extension by zero along a full convex subcategory of `ambient`; matches the
 * module's base to the full subcategory on the same object ids. */
ModuleRep extend_module(const ModuleRep& n, CatPtr ambient);

/* Pad a transformation family over the subcategory with zero components, and
 * strip the padding back. On modules extended by zero these realize
 *   Hom_ambient(extend(N), M) ≅ Hom_sub(N, restrict(M))
 * whenever no morphism enters the subcategory from outside (the one-point
 * extension shape); the strip map is left inverse to the pad map always. */
std::vector<Mat> adjunction_pad(const FinLinCategory& ambient,
                                const std::vector<std::string>& subobjs,
                                const std::vector<Mat>& t,
                                const std::vector<std::size_t>& src_dims,
                                const std::vector<std::size_t>& dst_dims);
std::vector<Mat> adjunction_strip(const FinLinCategory& ambient,
                                  const std::vector<std::string>& subobjs,
                                  const std::vector<Mat>& t);

struct BimRestriction {
    CatPtr outer_sub, inner_sub;
    BimoduleRep bim;
};
BimRestriction restrict_bimodule(const BimoduleRep& b, const std::vector<std::string>& outer_objs,
                                 const std::vector<std::string>& inner_objs);

/* Zero-extension of a bimodule along full convex subcategories on matching
 * object ids. */
BimoduleRep extend_bimodule(const BimoduleRep& b, CatPtr ambient_outer, CatPtr ambient_inner);

/* Per-component matrices comp[(y,x)] : from(y,x) -> to(y,x); absent = zero. */
using ComponentMats = std::map<std::pair<std::size_t, std::size_t>, Mat>;

ValidationReport check_bimodule_map(const BimoduleRep& from, const BimoduleRep& to,
                                    const ComponentMats& comp);
bool is_bimodule_iso(const BimoduleRep& from, const BimoduleRep& to, const ComponentMats& comp,
                     ValidationReport* why = nullptr);

/* Tensor product over the shared middle category, computed componentwise as
 * the cokernel of the relation span { m.f ⊗ n - m ⊗ f.n }. The quotient data
 * is kept so maps can be defined on the result. */
struct TensorComponent {
    std::vector<std::size_t> z_offset; /* ambient block start per middle object */
    std::vector<std::size_t> z_block;  /* block sizes */
    SubQuotient quotient;
    std::size_t ambient_index(std::size_t z, std::size_t mi, std::size_t ni,
                              std::size_t n_dim) const {
        return z_offset[z] + mi * n_dim + ni;
    }
};

struct TensorResult {
    BimoduleRep bim;
    std::map<std::pair<std::size_t, std::size_t>, TensorComponent> comps;
};

TensorResult tensor_over_cat(const BimoduleRep& m, const BimoduleRep& n);

}  // namespace hmcat
