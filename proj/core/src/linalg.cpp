#include "hmcat/linalg.hpp"

#include <algorithm>
#include <map>

namespace hmcat {

namespace {

using Row = std::map<std::size_t, Scalar>;

struct Echelon {
    std::vector<Row> rows;
    /* pivot column -> row index, in elimination order */
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::vector<bool> used;
};

/* Pivot choice: over Q the candidate with the smallest |numerator|, then
 * smallest denominator, then lowest row index, to limit coefficient growth;
 * over F_p the lowest row index. */
std::size_t pick_pivot(const std::vector<Row>& rows, const std::vector<bool>& used,
                       std::size_t col, const Field& f) {
    std::size_t best = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (used[r])
            continue;
        auto it = rows[r].find(col);
        if (it == rows[r].end())
            continue;
        if (best == rows.size()) {
            best = r;
            if (f.kind() == Field::Kind::prime)
                break;
            continue;
        }
        const Scalar& a = rows[r].at(col);
        const Scalar& b = rows[best].at(col);
        mpz_class an = abs(a.get_num()), bn = abs(b.get_num());
        if (an < bn || (an == bn && a.get_den() < b.get_den()))
            best = r;
    }
    return best;
}

Echelon reduce(std::vector<Row> rows, std::size_t ncols, const Field& f,
               SolveOptions::ColumnOrder order) {
    Echelon e;
    e.used.assign(rows.size(), false);
    std::vector<std::size_t> cols(ncols);
    for (std::size_t i = 0; i < ncols; ++i)
        cols[i] = (order == SolveOptions::ColumnOrder::forward) ? i : ncols - 1 - i;

    for (std::size_t col : cols) {
        std::size_t p = pick_pivot(rows, e.used, col, f);
        if (p == rows.size())
            continue;
        e.used[p] = true;
        Scalar pivinv = f.inv(rows[p].at(col));
        for (auto& [c, v] : rows[p])
            v = f.mul(v, pivinv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == p)
                continue;
            auto it = rows[r].find(col);
            if (it == rows[r].end())
                continue;
            Scalar factor = it->second;
            for (const auto& [c, v] : rows[p]) {
                Scalar nv = f.sub(rows[r].count(c) ? rows[r][c] : Scalar(0), f.mul(factor, v));
                if (f.is_zero(nv))
                    rows[r].erase(c);
                else
                    rows[r][c] = nv;
            }
        }
        e.pivots.push_back({col, p});
    }
    e.rows = std::move(rows);
    return e;
}

std::vector<Row> rows_of(const Mat& m) {
    std::vector<Row> rows(m.rows());
    for (const auto& [rc, v] : m.entries())
        rows[rc.first][rc.second] = v;
    return rows;
}

}  // namespace

RankKernelImage rank_kernel_image(const Mat& m, const Field& f) {
    Echelon e = reduce(rows_of(m), m.cols(), f, SolveOptions::ColumnOrder::forward);
    RankKernelImage out;
    out.rank = e.pivots.size();

    std::vector<bool> is_pivot_col(m.cols(), false);
    for (const auto& [c, r] : e.pivots)
        is_pivot_col[c] = true;

    for (std::size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot_col[fc])
            continue;
        Vec v(m.cols(), Scalar(0));
        v[fc] = 1;
        for (const auto& [pc, pr] : e.pivots) {
            auto it = e.rows[pr].find(fc);
            if (it != e.rows[pr].end())
                v[pc] = f.neg(it->second);
        }
        out.kernel.push_back(std::move(v));
    }
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (is_pivot_col[c])
            out.image.push_back(m.column(c));
    return out;
}

std::size_t rank_of(const Mat& m, const Field& f) {
    Echelon e = reduce(rows_of(m), m.cols(), f, SolveOptions::ColumnOrder::forward);
    return e.pivots.size();
}

std::optional<Vec> solve(const Mat& m, const Vec& b, const Field& f, const SolveOptions& opts) {
    if (b.size() != m.rows())
        throw Error("solve: rhs dimension mismatch");
    std::vector<Row> rows = rows_of(m);
    const std::size_t bcol = m.cols();
    for (std::size_t r = 0; r < b.size(); ++r) {
        Scalar v = f.canonical(b[r]);
        if (!f.is_zero(v))
            rows[r][bcol] = v;
    }
    /* never pivot on the augmented column */
    Echelon e = reduce(std::move(rows), m.cols(), f, opts.order);
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.used[r])
            continue;
        if (e.rows[r].count(bcol))
            return std::nullopt;
    }
    Vec x(m.cols(), Scalar(0));
    for (const auto& [pc, pr] : e.pivots) {
        auto it = e.rows[pr].find(bcol);
        if (it != e.rows[pr].end())
            x[pc] = it->second;
    }
    return x;
}

std::size_t homology_dim_at(const Mat& d_out, const Mat& d_in, const Field& f) {
    if (d_in.rows() != d_out.cols())
        throw Error("homology_dim_at: differential shapes do not chain");
    if (!d_out.mul(d_in, f).is_zero())
        throw CompositionNotZero("homology_dim_at: d_out . d_in != 0");
    std::size_t nullity = d_out.cols() - rank_of(d_out, f);
    return nullity - rank_of(d_in, f);
}

SubQuotient SubQuotient::build(std::size_t ambient_dim, const std::vector<Vec>& gens,
                               const std::vector<Vec>& rels, const Field& f) {
    SubQuotient q;
    q.ambient_dim_ = ambient_dim;
    q.rels_ = rels;

    /* columns: rels first, then gens; pivoted gen columns become the reps */
    Mat all(ambient_dim, rels.size() + gens.size());
    for (std::size_t j = 0; j < rels.size(); ++j)
        for (std::size_t i = 0; i < ambient_dim; ++i)
            all.set(i, j, f.canonical(rels[j][i]));
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < ambient_dim; ++i)
            all.set(i, rels.size() + j, f.canonical(gens[j][i]));

    Echelon e = reduce(rows_of(all), all.cols(), f, SolveOptions::ColumnOrder::forward);
    std::vector<bool> pivot(all.cols(), false);
    for (const auto& [c, r] : e.pivots)
        pivot[c] = true;
    for (std::size_t j = 0; j < gens.size(); ++j)
        if (pivot[rels.size() + j])
            q.reps_.push_back(gens[j]);

    q.solver_ = Mat(ambient_dim, rels.size() + q.reps_.size());
    for (std::size_t j = 0; j < rels.size(); ++j)
        for (std::size_t i = 0; i < ambient_dim; ++i)
            q.solver_.set(i, j, f.canonical(rels[j][i]));
    for (std::size_t j = 0; j < q.reps_.size(); ++j)
        for (std::size_t i = 0; i < ambient_dim; ++i)
            q.solver_.set(i, rels.size() + j, f.canonical(q.reps_[j][i]));
    return q;
}

Vec SubQuotient::coords(const Vec& v, const Field& f) const {
    auto x = solve(solver_, v, f);
    if (!x)
        throw Error("SubQuotient::coords: vector not in span");
    Vec out(reps_.size(), Scalar(0));
    for (std::size_t i = 0; i < reps_.size(); ++i)
        out[i] = (*x)[rels_.size() + i];
    return out;
}

bool SubQuotient::in_relations(const Vec& v, const Field& f) const {
    Mat relmat(ambient_dim_, rels_.size());
    for (std::size_t j = 0; j < rels_.size(); ++j)
        for (std::size_t i = 0; i < ambient_dim_; ++i)
            relmat.set(i, j, f.canonical(rels_[j][i]));
    return solve(relmat, v, f).has_value();
}

}  // namespace hmcat
