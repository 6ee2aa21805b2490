#pragma once

#include <optional>

#include "hmcat/matrix.hpp"

namespace hmcat {

/* Column order used by the internal elimination. Connecting-map results must
 * not depend on it; tests exercise both. */
struct SolveOptions {
    enum class ColumnOrder { forward, reverse };
    ColumnOrder order = ColumnOrder::forward;
};

struct RankKernelImage {
    std::size_t rank = 0;
    std::vector<Vec> kernel; /* basis of ker m, exact */
    std::vector<Vec> image;  /* pivot columns of m */
};

RankKernelImage rank_kernel_image(const Mat& m, const Field& f);
std::size_t rank_of(const Mat& m, const Field& f);

/* Some x with m x = b, if b lies in the image. Underdetermined systems return
 * the solution with free coordinates zero under the requested column order. */
std::optional<Vec> solve(const Mat& m, const Vec& b, const Field& f,
                         const SolveOptions& opts = {});

/* dim ker(d_out) - rank(d_in); throws CompositionNotZero unless d_out d_in = 0. */
std::size_t homology_dim_at(const Mat& d_out, const Mat& d_in, const Field& f);

/* span(gens) modulo span(rels) inside an ambient coordinate space, with a
 * deterministic representative basis: the gens are scanned in order and one is
 * kept whenever it adds a new direction modulo rels and the reps kept so far. */
class SubQuotient {
public:
    static SubQuotient build(std::size_t ambient_dim, const std::vector<Vec>& gens,
                             const std::vector<Vec>& rels, const Field& f);

    std::size_t dim() const { return reps_.size(); }
    std::size_t ambient_dim() const { return ambient_dim_; }
    const Vec& rep(std::size_t i) const { return reps_[i]; }
    const std::vector<Vec>& reps() const { return reps_; }

    /* Coordinates of [v] on the representative basis; v must lie in
     * span(rels) + span(gens). */
    Vec coords(const Vec& v, const Field& f) const;

    /* Whether v lies in span(rels). */
    bool in_relations(const Vec& v, const Field& f) const;

private:
    std::size_t ambient_dim_ = 0;
    std::vector<Vec> reps_;
    std::vector<Vec> rels_;
    Mat solver_; /* columns: rels then reps */
};

}  // namespace hmcat
