#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "hmcat/matrix.hpp"

namespace hmcat {

/* Basis morphism reference: index idx inside the ordered basis of
 * hom(objects[src] -> objects[dst]). Ids are unique per hom space only. */
struct MorKey {
    std::size_t src = 0, dst = 0, idx = 0;
    auto operator<=>(const MorKey&) const = default;
};

/* Sparse coefficient vector over one hom-space basis, sorted by index. */
using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

SparseVec sparse_normalize(SparseVec v, const Field& f);
SparseVec sparse_add(const SparseVec& a, const SparseVec& b, const Field& f);
SparseVec sparse_scale(const SparseVec& a, const Scalar& s, const Field& f);

/* Presentation of a finite k-linear category: ordered objects, ordered hom
 * bases, identity coefficient vectors, and composition structure constants.
 * Absent hom entries are zero spaces; absent composition entries are zero. */
class FinLinCategory {
public:
    Field field = Field::rationals();
    std::vector<std::string> objects;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> hom;
    std::vector<SparseVec> identity; /* per object, over hom(x,x) */
    std::map<std::pair<MorKey, MorKey>, SparseVec> compose_table; /* key (g, f) */

    std::size_t object_count() const { return objects.size(); }
    std::optional<std::size_t> object_index(const std::string& id) const;
    std::size_t object_index_or_throw(const std::string& id) const;

    std::size_t hom_dim(std::size_t src, std::size_t dst) const;
    const std::vector<std::string>& hom_basis(std::size_t src, std::size_t dst) const;
    std::size_t total_hom_dim() const;

    void set_hom(std::size_t src, std::size_t dst, std::vector<std::string> basis);
    void set_compose(const MorKey& g, const MorKey& f, SparseVec result);

    /* g∘f for basis morphisms; empty when the entry is absent. */
    SparseVec compose(const MorKey& g, const MorKey& f) const;
    /* Bilinear extension to coefficient vectors over hom(i,j) and hom(j,k). */
    SparseVec compose_vec(std::size_t i, std::size_t j, std::size_t k, const SparseVec& gvec,
                          const SparseVec& fvec) const;

    std::vector<MorKey> all_basis() const;

    bool operator==(const FinLinCategory& o) const;

private:
    static const std::vector<std::string> empty_basis_;
};

using CatPtr = std::shared_ptr<const FinLinCategory>;

/* Every violated associativity triple and identity failure; empty iff valid. */
ValidationReport validate_category(const FinLinCategory& c);

FinLinCategory opposite(const FinLinCategory& c);

/* Objects are pairs "(a,b)"; hom dimensions multiply; composition is
 * componentwise (all objects in degree zero, no sign). */
FinLinCategory box_tensor(const FinLinCategory& c, const FinLinCategory& d);

FinLinCategory enveloping(const FinLinCategory& c);

struct Partition {
    /* class id -> nonempty object ids; classes ordered as listed */
    std::vector<std::pair<std::string, std::vector<std::string>>> classes;
};

/* Merge objects along the partition: hom(e,e') is the direct sum of the
 * constituent hom spaces with blockwise composition. */
FinLinCategory contract(const FinLinCategory& c, const Partition& e);

/* True iff every composite with endpoints in `subobjects` passing through an
 * outside object is zero, by a span fixpoint. */
bool is_convex(const FinLinCategory& c, const std::set<std::string>& subobjects);

FinLinCategory full_subcategory(const FinLinCategory& c, const std::vector<std::string>& objs);

/* One object, hom = k·id. */
FinLinCategory terminal_category(const Field& f, const std::string& object_id = "*");

}  // namespace hmcat
