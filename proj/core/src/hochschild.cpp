#include "hmcat/hochschild.hpp"

#include <limits>

namespace hmcat {

namespace {

std::size_t sat_add(std::size_t a, std::size_t b) {
    if (a > std::numeric_limits<std::size_t>::max() - b)
        return std::numeric_limits<std::size_t>::max();
    return a + b;
}

std::size_t sat_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a)
        return std::numeric_limits<std::size_t>::max();
    return a * b;
}

Scalar sign_pm(std::size_t exponent) {
    return (exponent % 2 == 0) ? Scalar(1) : Scalar(-1);
}

void check_budget(std::size_t projected, std::optional<std::size_t> budget,
                  const std::string& what) {
    if (budget && projected > *budget)
        throw BudgetExceeded(projected, *budget,
                             what + " needs " + std::to_string(projected) +
                                 " coordinates, budget " + std::to_string(*budget));
}

void check_base(const FinLinCategory& c, const BimoduleRep& m, const char* who) {
    if (!(*m.outer == c) || !(*m.inner == c))
        throw BaseMismatch(std::string(who) + ": coefficients not a bimodule over the category");
}

GradedBasis graded_basis(const FinLinCategory& c, std::size_t n, bool cochain,
                         const BimoduleRep& m, std::optional<std::size_t> budget,
                         const char* what) {
    check_budget(cochain ? projected_cochain_dim(c, m, n) : projected_chain_dim(c, m, n), budget,
                 what + std::string(" degree ") + std::to_string(n));
    GradedBasis g;
    g.nerve = nerve_basis(c, n, budget);
    g.offset.reserve(g.nerve.elements.size());
    g.block.reserve(g.nerve.elements.size());
    for (const NerveTuple& t : g.nerve.elements) {
        std::size_t cd = cochain ? m.at(t.objs.back(), t.objs.front())
                                 : m.at(t.objs.front(), t.objs.back());
        g.offset.push_back(g.dim);
        g.block.push_back(cd);
        g.dim += cd;
    }
    return g;
}

}  // namespace

std::size_t projected_cochain_dim(const FinLinCategory& c, const BimoduleRep& m, std::size_t n) {
    auto paths = weighted_path_counts(c, n);
    std::size_t total = 0;
    for (std::size_t x = 0; x < c.object_count(); ++x)
        for (std::size_t y = 0; y < c.object_count(); ++y)
            total = sat_add(total, sat_mul(paths[x][y], m.at(y, x)));
    return total;
}

std::size_t projected_chain_dim(const FinLinCategory& c, const BimoduleRep& m, std::size_t n) {
    auto paths = weighted_path_counts(c, n);
    std::size_t total = 0;
    for (std::size_t x = 0; x < c.object_count(); ++x)
        for (std::size_t y = 0; y < c.object_count(); ++y)
            total = sat_add(total, sat_mul(paths[x][y], m.at(x, y)));
    return total;
}

GradedBasis hm_cochain_basis(const FinLinCategory& c, const BimoduleRep& m, std::size_t n,
                             std::optional<std::size_t> budget) {
    check_base(c, m, "hm_cochain_basis");
    return graded_basis(c, n, true, m, budget, "cochain");
}

Complex hm_cochain_complex(const FinLinCategory& c, const BimoduleRep& m, std::size_t maxdeg,
                           std::optional<std::size_t> budget) {
    check_base(c, m, "hm_cochain_complex");
    const Field& f = c.field;

    std::vector<GradedBasis> bases;
    for (std::size_t n = 0; n <= maxdeg + 1; ++n)
        bases.push_back(graded_basis(c, n, true, m, budget, "cochain"));

    Complex cx;
    cx.field = f;
    cx.dir = +1;
    for (std::size_t n = 0; n <= maxdeg + 1; ++n)
        cx.dims[static_cast<int>(n)] = bases[n].dim;

    for (std::size_t q = 0; q <= maxdeg; ++q) {
        const GradedBasis& src = bases[q];
        const GradedBasis& dst = bases[q + 1];
        Mat d(dst.dim, src.dim);
        for (std::size_t ti = 0; ti < dst.nerve.elements.size(); ++ti) {
            const NerveTuple& t = dst.nerve.elements[ti];
            const auto& ob = t.objs;
            const auto& mo = t.mors;
            if (dst.block[ti] == 0)
                continue;

            /* last morphism acts on the left of the coefficient */
            {
                NerveTuple ta{std::vector<std::size_t>(ob.begin(), ob.end() - 1),
                              std::vector<std::size_t>(mo.begin(), mo.end() - 1)};
                std::size_t ai = src.nerve.index_of(ta);
                if (src.block[ai] > 0) {
                    Mat l = m.lact_of(MorKey{ob[q], ob[q + 1], mo[q]}, ob[0]);
                    for (const auto& [rc, v] : l.entries())
                        d.add_to(dst.coord(ti, rc.first), src.coord(ai, rc.second), v, f);
                }
            }
            /* contractions of adjacent pairs */
            for (std::size_t pos = 1; pos <= q; ++pos) {
                SparseVec comp = c.compose(MorKey{ob[pos], ob[pos + 1], mo[pos]},
                                           MorKey{ob[pos - 1], ob[pos], mo[pos - 1]});
                if (comp.empty())
                    continue;
                Scalar s = sign_pm(q + 1 - pos);
                NerveTuple tb;
                tb.objs = ob;
                tb.objs.erase(tb.objs.begin() + static_cast<std::ptrdiff_t>(pos));
                tb.mors = mo;
                tb.mors.erase(tb.mors.begin() + static_cast<std::ptrdiff_t>(pos));
                for (const auto& [bi, coeff] : comp) {
                    tb.mors[pos - 1] = bi;
                    std::size_t bidx = src.nerve.index_of(tb);
                    for (std::size_t k = 0; k < dst.block[ti]; ++k)
                        d.add_to(dst.coord(ti, k), src.coord(bidx, k), f.mul(s, coeff), f);
                }
            }
            /* first morphism acts on the right of the coefficient */
            {
                NerveTuple tc2{std::vector<std::size_t>(ob.begin() + 1, ob.end()),
                              std::vector<std::size_t>(mo.begin() + 1, mo.end())};
                std::size_t ci = src.nerve.index_of(tc2);
                if (src.block[ci] > 0) {
                    Mat r = m.ract_of(MorKey{ob[0], ob[1], mo[0]}, ob[q + 1]);
                    Scalar s = sign_pm(q + 1);
                    for (const auto& [rc, v] : r.entries())
                        d.add_to(dst.coord(ti, rc.first), src.coord(ci, rc.second), f.mul(s, v),
                                 f);
                }
            }
        }
        cx.diff[static_cast<int>(q)] = std::move(d);
    }
    cx.validate();
    return cx;
}

Complex hm_chain_complex(const FinLinCategory& c, const BimoduleRep& m, std::size_t maxdeg,
                         std::optional<std::size_t> budget) {
    check_base(c, m, "hm_chain_complex");
    const Field& f = c.field;

    std::vector<GradedBasis> bases;
    for (std::size_t n = 0; n <= maxdeg + 1; ++n)
        bases.push_back(graded_basis(c, n, false, m, budget, "chain"));

    Complex cx;
    cx.field = f;
    cx.dir = -1;
    for (std::size_t n = 0; n <= maxdeg + 1; ++n)
        cx.dims[static_cast<int>(n)] = bases[n].dim;

    for (std::size_t n = 1; n <= maxdeg + 1; ++n) {
        const GradedBasis& src = bases[n];
        const GradedBasis& dst = bases[n - 1];
        Mat d(dst.dim, src.dim);
        for (std::size_t ti = 0; ti < src.nerve.elements.size(); ++ti) {
            const NerveTuple& t = src.nerve.elements[ti];
            const auto& ob = t.objs;
            const auto& mo = t.mors;
            if (src.block[ti] == 0)
                continue;

            /* last morphism acts on the right of the coefficient */
            {
                NerveTuple ta{std::vector<std::size_t>(ob.begin(), ob.end() - 1),
                              std::vector<std::size_t>(mo.begin(), mo.end() - 1)};
                std::size_t ai = dst.nerve.index_of(ta);
                if (dst.block[ai] > 0) {
                    Mat r = m.ract_of(MorKey{ob[n - 1], ob[n], mo[n - 1]}, ob[0]);
                    for (const auto& [rc, v] : r.entries())
                        d.add_to(dst.coord(ai, rc.first), src.coord(ti, rc.second), v, f);
                }
            }
            for (std::size_t pos = 1; pos <= n - 1; ++pos) {
                SparseVec comp = c.compose(MorKey{ob[pos], ob[pos + 1], mo[pos]},
                                           MorKey{ob[pos - 1], ob[pos], mo[pos - 1]});
                if (comp.empty())
                    continue;
                Scalar s = sign_pm(n - pos);
                NerveTuple tb;
                tb.objs = ob;
                tb.objs.erase(tb.objs.begin() + static_cast<std::ptrdiff_t>(pos));
                tb.mors = mo;
                tb.mors.erase(tb.mors.begin() + static_cast<std::ptrdiff_t>(pos));
                for (const auto& [bi, coeff] : comp) {
                    tb.mors[pos - 1] = bi;
                    std::size_t bidx = dst.nerve.index_of(tb);
                    for (std::size_t k = 0; k < src.block[ti]; ++k)
                        d.add_to(dst.coord(bidx, k), src.coord(ti, k), f.mul(s, coeff), f);
                }
            }
            /* first morphism acts on the left of the coefficient */
            {
                NerveTuple tc{std::vector<std::size_t>(ob.begin() + 1, ob.end()),
                              std::vector<std::size_t>(mo.begin() + 1, mo.end())};
                std::size_t ci = dst.nerve.index_of(tc);
                if (dst.block[ci] > 0) {
                    Mat l = m.lact_of(MorKey{ob[0], ob[1], mo[0]}, ob[n]);
                    Scalar s = sign_pm(n);
                    for (const auto& [rc, v] : l.entries())
                        d.add_to(dst.coord(ci, rc.first), src.coord(ti, rc.second), f.mul(s, v),
                                 f);
                }
            }
        }
        cx.diff[static_cast<int>(n)] = std::move(d);
    }
    cx.validate();
    return cx;
}

std::vector<std::size_t> hh_dims(const FinLinCategory& c, const BimoduleRep& m,
                                 std::size_t maxdeg, HHVariant variant,
                                 std::optional<std::size_t> budget) {
    Complex cx = (variant == HHVariant::cohomology) ? hm_cochain_complex(c, m, maxdeg, budget)
                                                    : hm_chain_complex(c, m, maxdeg, budget);
    return cx.homology_dims(0, static_cast<int>(maxdeg));
}

std::map<int, Mat> cochain_coefficient_maps(const FinLinCategory& c, const BimoduleRep& from,
                                            const BimoduleRep& to, const ComponentMats& comp,
                                            std::size_t maxdeg,
                                            std::optional<std::size_t> budget) {
    check_base(c, from, "cochain_coefficient_maps");
    check_base(c, to, "cochain_coefficient_maps");
    std::map<int, Mat> out;
    for (std::size_t n = 0; n <= maxdeg + 1; ++n) {
        GradedBasis fb = graded_basis(c, n, true, from, budget, "cochain");
        GradedBasis tb = graded_basis(c, n, true, to, budget, "cochain");
        Mat mn(tb.dim, fb.dim);
        for (std::size_t ti = 0; ti < fb.nerve.elements.size(); ++ti) {
            const NerveTuple& t = fb.nerve.elements[ti];
            auto it = comp.find({t.objs.back(), t.objs.front()});
            if (it == comp.end())
                continue;
            for (const auto& [rc, v] : it->second.entries())
                mn.set(tb.coord(ti, rc.first), fb.coord(ti, rc.second), v);
        }
        out[static_cast<int>(n)] = std::move(mn);
    }
    return out;
}

Complex bar_ext_complex(const ModuleRep& m, const ModuleRep& n, std::size_t maxdeg,
                        std::optional<std::size_t> budget) {
    if (!(*m.base == *n.base))
        throw BaseMismatch("bar_ext_complex: different base categories");
    if (m.variance != n.variance)
        throw BaseMismatch("bar_ext_complex: different variances");
    if (m.variance == Variance::left) {
        CatPtr op = std::make_shared<FinLinCategory>(opposite(*m.base));
        return bar_ext_complex(left_as_right_over_opposite(m, op),
                               left_as_right_over_opposite(n, op), maxdeg, budget);
    }
    const FinLinCategory& c = *m.base;
    const Field& f = c.field;

    struct Level {
        NerveBasis nerve;
        std::vector<std::size_t> offset;
        std::vector<std::size_t> mblk, nblk;
        std::size_t dim = 0;
    };
    auto build = [&](std::size_t q) {
        auto paths = weighted_path_counts(c, q);
        std::size_t projected = 0;
        for (std::size_t x = 0; x < c.object_count(); ++x)
            for (std::size_t y = 0; y < c.object_count(); ++y)
                projected =
                    sat_add(projected, sat_mul(paths[x][y], sat_mul(m.dims[y], n.dims[x])));
        check_budget(projected, budget, "bar complex degree " + std::to_string(q));
        Level l;
        l.nerve = nerve_basis(c, q, budget);
        for (const NerveTuple& t : l.nerve.elements) {
            l.offset.push_back(l.dim);
            l.mblk.push_back(m.dims[t.objs.back()]);
            l.nblk.push_back(n.dims[t.objs.front()]);
            l.dim += m.dims[t.objs.back()] * n.dims[t.objs.front()];
        }
        return l;
    };
    auto coord = [](const Level& l, std::size_t t, std::size_t mi, std::size_t ni) {
        return l.offset[t] + mi * l.nblk[t] + ni;
    };

    std::vector<Level> levels;
    for (std::size_t q = 0; q <= maxdeg + 1; ++q)
        levels.push_back(build(q));

    Complex cx;
    cx.field = f;
    cx.dir = +1;
    for (std::size_t q = 0; q <= maxdeg + 1; ++q)
        cx.dims[static_cast<int>(q)] = levels[q].dim;

    for (std::size_t q = 0; q <= maxdeg; ++q) {
        const Level& src = levels[q];
        const Level& dst = levels[q + 1];
        Mat d(dst.dim, src.dim);
        for (std::size_t ti = 0; ti < dst.nerve.elements.size(); ++ti) {
            const NerveTuple& t = dst.nerve.elements[ti];
            const auto& ob = t.objs;
            const auto& mo = t.mors;
            if (dst.mblk[ti] == 0 || dst.nblk[ti] == 0)
                continue;

            /* module slot absorbs the last morphism */
            {
                NerveTuple ta{std::vector<std::size_t>(ob.begin(), ob.end() - 1),
                              std::vector<std::size_t>(mo.begin(), mo.end() - 1)};
                std::size_t ai = src.nerve.index_of(ta);
                Mat am = m.action_of(MorKey{ob[q], ob[q + 1], mo[q]});
                for (const auto& [rc, v] : am.entries()) {
                    /* rc = (mi, mi') with am : m(x_{q+2}) -> m(x_{q+1}) */
                    for (std::size_t ni = 0; ni < dst.nblk[ti]; ++ni)
                        d.add_to(coord(dst, ti, rc.second, ni), coord(src, ai, rc.first, ni), v,
                                 f);
                }
            }
            for (std::size_t pos = 1; pos <= q; ++pos) {
                SparseVec comp = c.compose(MorKey{ob[pos], ob[pos + 1], mo[pos]},
                                           MorKey{ob[pos - 1], ob[pos], mo[pos - 1]});
                if (comp.empty())
                    continue;
                Scalar s = sign_pm(q + 1 - pos);
                NerveTuple tb;
                tb.objs = ob;
                tb.objs.erase(tb.objs.begin() + static_cast<std::ptrdiff_t>(pos));
                tb.mors = mo;
                tb.mors.erase(tb.mors.begin() + static_cast<std::ptrdiff_t>(pos));
                for (const auto& [bi, coeff] : comp) {
                    tb.mors[pos - 1] = bi;
                    std::size_t bidx = src.nerve.index_of(tb);
                    for (std::size_t mi = 0; mi < dst.mblk[ti]; ++mi)
                        for (std::size_t ni = 0; ni < dst.nblk[ti]; ++ni)
                            d.add_to(coord(dst, ti, mi, ni), coord(src, bidx, mi, ni),
                                     f.mul(s, coeff), f);
                }
            }
            /* first morphism acts on the value */
            {
                NerveTuple tc{std::vector<std::size_t>(ob.begin() + 1, ob.end()),
                              std::vector<std::size_t>(mo.begin() + 1, mo.end())};
                std::size_t ci = src.nerve.index_of(tc);
                Mat an = n.action_of(MorKey{ob[0], ob[1], mo[0]});
                Scalar s = sign_pm(q + 1);
                for (const auto& [rc, v] : an.entries()) {
                    /* rc = (ni', ni) with an : n(x_2) -> n(x_1) */
                    for (std::size_t mi = 0; mi < dst.mblk[ti]; ++mi)
                        d.add_to(coord(dst, ti, mi, rc.first), coord(src, ci, mi, rc.second),
                                 f.mul(s, v), f);
                }
            }
        }
        cx.diff[static_cast<int>(q)] = std::move(d);
    }
    cx.validate();
    return cx;
}

std::vector<std::size_t> ext_dims_bar(const ModuleRep& m, const ModuleRep& n, std::size_t maxdeg,
                                      std::optional<std::size_t> budget) {
    Complex cx = bar_ext_complex(m, n, maxdeg, budget);
    return cx.homology_dims(0, static_cast<int>(maxdeg));
}

}  // namespace hmcat
