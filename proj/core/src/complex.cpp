#include "hmcat/complex.hpp"

#include <set>

namespace hmcat {

void Complex::validate() const {
    for (const auto& [n, d] : diff) {
        if (d.rows() != dim_at(n + dir) || d.cols() != dim_at(n))
            throw Error("complex: differential shape mismatch at degree " + std::to_string(n));
        auto next = diff.find(n + dir);
        if (next != diff.end()) {
            if (!next->second.mul(d, field).is_zero())
                throw CompositionNotZero("complex: d.d != 0 at degree " + std::to_string(n));
        }
    }
}

std::size_t Complex::homology_dim(int n) const {
    return homology_dim_at(diff_at(n), diff_at(n - dir), field);
}

std::vector<std::size_t> Complex::homology_dims(int lo, int hi) const {
    std::vector<std::size_t> out;
    for (int n = lo; n <= hi; ++n)
        out.push_back(homology_dim(n));
    return out;
}

HomologyBasis HomologyBasis::at(const Complex& c, int n) {
    RankKernelImage out_rki = rank_kernel_image(c.diff_at(n), c.field);
    RankKernelImage in_rki = rank_kernel_image(c.diff_at(n - c.dir), c.field);
    HomologyBasis h;
    h.degree = n;
    h.classes = SubQuotient::build(c.dim_at(n), out_rki.kernel, in_rki.image, c.field);
    return h;
}

Mat ComplexSES::inj_at(int n) const {
    auto it = inj.find(n);
    if (it != inj.end())
        return it->second;
    return Mat(total.dim_at(n), sub.dim_at(n));
}

Mat ComplexSES::proj_at(int n) const {
    auto it = proj.find(n);
    if (it != proj.end())
        return it->second;
    return Mat(quot.dim_at(n), total.dim_at(n));
}

void ComplexSES::validate() const {
    const Field& f = total.field;
    if (sub.field != f || quot.field != f)
        throw IllFormedSES("ses: field mismatch");
    if (sub.dir != total.dir || quot.dir != total.dir)
        throw IllFormedSES("ses: direction mismatch");
    sub.validate();
    total.validate();
    quot.validate();

    std::set<int> degrees;
    for (const auto& [n, d] : total.dims)
        degrees.insert(n);
    for (const auto& [n, d] : sub.dims)
        degrees.insert(n);
    for (const auto& [n, d] : quot.dims)
        degrees.insert(n);

    for (int n : degrees) {
        Mat i = inj_at(n), p = proj_at(n);
        if (i.rows() != total.dim_at(n) || i.cols() != sub.dim_at(n) ||
            p.rows() != quot.dim_at(n) || p.cols() != total.dim_at(n))
            throw IllFormedSES("ses: inj/proj shapes at degree " + std::to_string(n));
        if (!p.mul(i, f).is_zero())
            throw IllFormedSES("ses: proj . inj != 0 at degree " + std::to_string(n));
        if (rank_of(i, f) != sub.dim_at(n))
            throw IllFormedSES("ses: inj not injective at degree " + std::to_string(n));
        std::size_t pr = rank_of(p, f);
        if (pr != quot.dim_at(n))
            throw IllFormedSES("ses: proj not surjective at degree " + std::to_string(n));
        if (sub.dim_at(n) + pr != total.dim_at(n))
            throw IllFormedSES("ses: dimension count at degree " + std::to_string(n));
        /* chain-map squares, where the next degree is stored */
        if (degrees.count(n + total.dir)) {
            Mat lhs = total.diff_at(n).mul(i, f);
            Mat rhs = inj_at(n + total.dir).mul(sub.diff_at(n), f);
            if (!(lhs == rhs))
                throw IllFormedSES("ses: inj not a chain map at degree " + std::to_string(n));
            Mat lhs2 = quot.diff_at(n).mul(p, f);
            Mat rhs2 = proj_at(n + total.dir).mul(total.diff_at(n), f);
            if (!(lhs2 == rhs2))
                throw IllFormedSES("ses: proj not a chain map at degree " + std::to_string(n));
        }
    }
}

namespace {

Mat induced_with(const HomologyBasis& hsrc, const HomologyBasis& hdst, const Mat& f,
                 const Field& field) {
    Mat out(hdst.classes.dim(), hsrc.classes.dim());
    for (std::size_t j = 0; j < hsrc.classes.dim(); ++j) {
        Vec v = f.apply(hsrc.classes.rep(j), field);
        Vec c = hdst.classes.coords(v, field);
        for (std::size_t i = 0; i < c.size(); ++i)
            out.set(i, j, c[i]);
    }
    return out;
}

Mat snake_with(const ComplexSES& ses, int n, const HomologyBasis& hq, const HomologyBasis& hs,
               const SolveOptions& opts) {
    const Field& f = ses.total.field;
    const int dir = ses.total.dir;
    Mat out(hs.classes.dim(), hq.classes.dim());
    for (std::size_t j = 0; j < hq.classes.dim(); ++j) {
        const Vec& c = hq.classes.rep(j);
        auto b = solve(ses.proj_at(n), c, f, opts);
        if (!b)
            throw IllFormedSES("snake: cocycle not liftable through proj");
        Vec u = ses.total.diff_at(n).apply(*b, f);
        auto a = solve(ses.inj_at(n + dir), u, f, opts);
        if (!a)
            throw IllFormedSES("snake: boundary not in the sub complex");
        Vec coords = hs.classes.coords(*a, f);
        for (std::size_t i = 0; i < coords.size(); ++i)
            out.set(i, j, coords[i]);
    }
    return out;
}

}  // namespace

Mat snake_connecting(const ComplexSES& ses, int n, const SolveOptions& opts) {
    ses.validate();
    HomologyBasis hq = HomologyBasis::at(ses.quot, n);
    HomologyBasis hs = HomologyBasis::at(ses.sub, n + ses.total.dir);
    return snake_with(ses, n, hq, hs, opts);
}

Mat induced_on_homology(const Complex& src, const Complex& dst, const std::map<int, Mat>& f,
                        int n) {
    HomologyBasis hsrc = HomologyBasis::at(src, n);
    HomologyBasis hdst = HomologyBasis::at(dst, n);
    auto it = f.find(n);
    Mat fn = (it != f.end()) ? it->second : Mat(dst.dim_at(n), src.dim_at(n));
    return induced_with(hsrc, hdst, fn, src.field);
}

LESReport assemble_les(const ComplexSES& ses, int max_degree, const SolveOptions& opts) {
    ses.validate();
    const Field& f = ses.total.field;

    std::map<int, HomologyBasis> hs, ht, hq;
    for (int n = 0; n <= max_degree + 1; ++n)
        hs.emplace(n, HomologyBasis::at(ses.sub, n));
    for (int n = 0; n <= max_degree; ++n) {
        ht.emplace(n, HomologyBasis::at(ses.total, n));
        hq.emplace(n, HomologyBasis::at(ses.quot, n));
    }

    LESReport rep;
    auto label = [](const char* who, int n) {
        return std::string("H^") + std::to_string(n) + "(" + who + ")";
    };
    for (int n = 0; n <= max_degree; ++n) {
        rep.terms.push_back({label("sub", n), hs.at(n).classes.dim()});
        rep.terms.push_back({label("total", n), ht.at(n).classes.dim()});
        rep.terms.push_back({label("quot", n), hq.at(n).classes.dim()});
        rep.maps.push_back(induced_with(hs.at(n), ht.at(n), ses.inj_at(n), f));
        rep.maps.push_back(induced_with(ht.at(n), hq.at(n), ses.proj_at(n), f));
        rep.maps.push_back(snake_with(ses, n, hq.at(n), hs.at(n + 1), opts));
    }
    rep.terms.push_back({label("sub", max_degree + 1), hs.at(max_degree + 1).classes.dim()});

    for (std::size_t i = 0; i + 1 < rep.maps.size(); ++i) {
        if (!rep.maps[i + 1].mul(rep.maps[i], f).is_zero())
            throw Error("les: consecutive maps do not compose to zero");
    }
    for (std::size_t i = 0; i + 1 < rep.terms.size(); ++i) {
        LESPosition pos;
        pos.index = i;
        pos.incoming_rank = (i == 0) ? 0 : rank_of(rep.maps[i - 1], f);
        pos.outgoing_nullity = rep.terms[i].dim - rank_of(rep.maps[i], f);
        pos.exact = (pos.incoming_rank == pos.outgoing_nullity);
        rep.positions.push_back(pos);
    }
    return rep;
}

}  // namespace hmcat
