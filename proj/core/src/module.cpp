#include "hmcat/module.hpp"

namespace hmcat {

std::size_t ModuleRep::total_dim() const {
    std::size_t t = 0;
    for (auto d : dims)
        t += d;
    return t;
}

std::pair<std::size_t, std::size_t> ModuleRep::action_shape(const MorKey& m) const {
    if (variance == Variance::left)
        return {dims[m.dst], dims[m.src]};
    return {dims[m.src], dims[m.dst]};
}

Mat ModuleRep::action_of(const MorKey& m) const {
    auto it = action.find(m);
    if (it != action.end())
        return it->second;
    auto [r, c] = action_shape(m);
    return Mat(r, c);
}

Mat ModuleRep::action_of_vec(std::size_t src, std::size_t dst, const SparseVec& v) const {
    const Field& f = base->field;
    auto [r, c] = action_shape(MorKey{src, dst, 0});
    Mat out(r, c);
    for (const auto& [i, s] : v)
        out = out.plus(action_of(MorKey{src, dst, i}).scaled(s, f), f);
    return out;
}

void ModuleRep::set_action(const MorKey& m, Mat a) {
    auto [r, c] = action_shape(m);
    if (a.rows() != r || a.cols() != c)
        throw Error("module action shape mismatch");
    if (a.is_zero())
        action.erase(m);
    else
        action[m] = std::move(a);
}

ValidationReport validate_module(const ModuleRep& m) {
    ValidationReport rep;
    const FinLinCategory& c = *m.base;
    const Field& f = c.field;
    if (m.dims.size() != c.object_count()) {
        rep.add("space table size does not match object count");
        return rep;
    }
    for (const auto& [key, a] : m.action) {
        auto [r, cc] = m.action_shape(key);
        if (key.idx >= c.hom_dim(key.src, key.dst)) {
            rep.add("action with dangling morphism");
            return rep;
        }
        if (a.rows() != r || a.cols() != cc)
            rep.add("action shape mismatch at a basis morphism");
    }

    for (std::size_t x = 0; x < c.object_count(); ++x) {
        Mat idact = m.action_of_vec(x, x, c.identity[x]);
        if (!(idact == Mat::identity(m.dims[x])))
            rep.add("identity of '" + c.objects[x] + "' does not act as the identity");
    }
    auto basis = c.all_basis();
    for (const MorKey& fm : basis) {
        for (const MorKey& gm : basis) {
            if (gm.src != fm.dst)
                continue;
            Mat composite = m.action_of_vec(fm.src, gm.dst, c.compose(gm, fm));
            Mat two = (m.variance == Variance::left)
                          ? m.action_of(gm).mul(m.action_of(fm), f)
                          : m.action_of(fm).mul(m.action_of(gm), f);
            if (!(composite == two))
                rep.add("functoriality failure at pair (" + c.hom_basis(gm.src, gm.dst)[gm.idx] +
                        ", " + c.hom_basis(fm.src, fm.dst)[fm.idx] + ")");
        }
    }
    return rep;
}

ModuleRep zero_module(CatPtr base, Variance v) {
    ModuleRep m;
    m.variance = v;
    m.base = std::move(base);
    m.dims.assign(m.base->object_count(), 0);
    return m;
}

ModuleRep left_as_right_over_opposite(const ModuleRep& left, CatPtr op_base) {
    if (left.variance != Variance::left)
        throw Error("left_as_right_over_opposite: not a left module");
    ModuleRep r;
    r.variance = Variance::right;
    r.base = std::move(op_base);
    r.dims = left.dims;
    for (const auto& [key, a] : left.action)
        r.action[MorKey{key.dst, key.src, key.idx}] = a;
    return r;
}

std::size_t BimoduleRep::total_dim() const {
    std::size_t t = 0;
    for (auto d : dims)
        t += d;
    return t;
}

Mat BimoduleRep::lact_of(const MorKey& f, std::size_t x) const {
    auto it = lact.find({f, x});
    if (it != lact.end())
        return it->second;
    return Mat(at(f.dst, x), at(f.src, x));
}

Mat BimoduleRep::ract_of(const MorKey& g, std::size_t y) const {
    auto it = ract.find({g, y});
    if (it != ract.end())
        return it->second;
    return Mat(at(y, g.src), at(y, g.dst));
}

Mat BimoduleRep::lact_of_vec(std::size_t ysrc, std::size_t ydst, const SparseVec& v,
                             std::size_t x) const {
    const Field& f = outer->field;
    Mat out(at(ydst, x), at(ysrc, x));
    for (const auto& [i, s] : v)
        out = out.plus(lact_of(MorKey{ysrc, ydst, i}, x).scaled(s, f), f);
    return out;
}

Mat BimoduleRep::ract_of_vec(std::size_t xsrc, std::size_t xdst, const SparseVec& v,
                             std::size_t y) const {
    const Field& f = outer->field;
    Mat out(at(y, xsrc), at(y, xdst));
    for (const auto& [i, s] : v)
        out = out.plus(ract_of(MorKey{xsrc, xdst, i}, y).scaled(s, f), f);
    return out;
}

void BimoduleRep::set_lact(const MorKey& f, std::size_t x, Mat a) {
    if (a.rows() != at(f.dst, x) || a.cols() != at(f.src, x))
        throw Error("bimodule left action shape mismatch");
    if (a.is_zero())
        lact.erase({f, x});
    else
        lact[{f, x}] = std::move(a);
}

void BimoduleRep::set_ract(const MorKey& g, std::size_t y, Mat a) {
    if (a.rows() != at(y, g.src) || a.cols() != at(y, g.dst))
        throw Error("bimodule right action shape mismatch");
    if (a.is_zero())
        ract.erase({g, y});
    else
        ract[{g, y}] = std::move(a);
}

ValidationReport validate_bimodule(const BimoduleRep& b) {
    ValidationReport rep;
    const Field& f = b.outer->field;
    if (b.inner->field != f) {
        rep.add("outer and inner categories have different fields");
        return rep;
    }
    if (b.dims.size() != b.outer->object_count() * b.inner->object_count()) {
        rep.add("space table size mismatch");
        return rep;
    }

    const std::size_t ny = b.outer->object_count();
    const std::size_t nx = b.inner->object_count();
    auto outer_basis = b.outer->all_basis();
    auto inner_basis = b.inner->all_basis();

    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t y = 0; y < ny; ++y) {
            Mat idl = b.lact_of_vec(y, y, b.outer->identity[y], x);
            if (!(idl == Mat::identity(b.at(y, x))))
                rep.add("outer identity does not act as identity at (" + b.outer->objects[y] +
                        "," + b.inner->objects[x] + ")");
            Mat idr = b.ract_of_vec(x, x, b.inner->identity[x], y);
            if (!(idr == Mat::identity(b.at(y, x))))
                rep.add("inner identity does not act as identity at (" + b.outer->objects[y] +
                        "," + b.inner->objects[x] + ")");
        }
    }

    for (const MorKey& fm : outer_basis) {
        for (const MorKey& gm : outer_basis) {
            if (gm.src != fm.dst)
                continue;
            for (std::size_t x = 0; x < nx; ++x) {
                Mat composite = b.lact_of_vec(fm.src, gm.dst, b.outer->compose(gm, fm), x);
                Mat two = b.lact_of(gm, x).mul(b.lact_of(fm, x), f);
                if (!(composite == two))
                    rep.add("outer functoriality failure");
            }
        }
    }
    for (const MorKey& gm : inner_basis) {
        for (const MorKey& hm : inner_basis) {
            if (hm.src != gm.dst)
                continue;
            for (std::size_t y = 0; y < ny; ++y) {
                /* m.(h∘g) = (m.h).g */
                Mat composite = b.ract_of_vec(gm.src, hm.dst, b.inner->compose(hm, gm), y);
                Mat two = b.ract_of(gm, y).mul(b.ract_of(hm, y), f);
                if (!(composite == two))
                    rep.add("inner functoriality failure");
            }
        }
    }
    for (const MorKey& fm : outer_basis) {
        for (const MorKey& gm : inner_basis) {
            Mat a = b.ract_of(gm, fm.dst).mul(b.lact_of(fm, gm.dst), f);
            Mat bb = b.lact_of(fm, gm.src).mul(b.ract_of(gm, fm.src), f);
            if (!(a == bb))
                rep.add("left and right actions do not commute at a basis pair");
        }
    }
    return rep;
}

BimoduleRep regular_bimodule(CatPtr c) {
    BimoduleRep b;
    b.outer = c;
    b.inner = c;
    const std::size_t n = c->object_count();
    b.dims.assign(n * n, 0);
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x)
            b.dims[b.index(y, x)] = c->hom_dim(x, y);

    for (const MorKey& fm : c->all_basis()) {
        /* left: post-compose on hom(x, f.src) */
        for (std::size_t x = 0; x < n; ++x) {
            Mat a(b.at(fm.dst, x), b.at(fm.src, x));
            bool nz = false;
            for (std::size_t u = 0; u < c->hom_dim(x, fm.src); ++u) {
                for (const auto& [ri, rc] : c->compose(fm, MorKey{x, fm.src, u})) {
                    a.set(ri, u, rc);
                    nz = true;
                }
            }
            if (nz)
                b.set_lact(fm, x, std::move(a));
        }
        /* right: pre-compose on hom(f.dst, y) */
        for (std::size_t y = 0; y < n; ++y) {
            Mat a(b.at(y, fm.src), b.at(y, fm.dst));
            bool nz = false;
            for (std::size_t u = 0; u < c->hom_dim(fm.dst, y); ++u) {
                for (const auto& [ri, rc] : c->compose(MorKey{fm.dst, y, u}, fm)) {
                    a.set(ri, u, rc);
                    nz = true;
                }
            }
            if (nz)
                b.set_ract(fm, y, std::move(a));
        }
    }
    return b;
}

BimoduleRep bimodule_of_right_module(const ModuleRep& m, CatPtr terminal_base) {
    if (m.variance != Variance::right)
        throw Error("bimodule_of_right_module: not a right module");
    if (terminal_base->object_count() != 1 || terminal_base->hom_dim(0, 0) != 1)
        throw Error("bimodule_of_right_module: outer category must be terminal");
    BimoduleRep b;
    b.outer = std::move(terminal_base);
    b.inner = m.base;
    b.dims = m.dims;
    for (std::size_t x = 0; x < m.dims.size(); ++x)
        b.set_lact(MorKey{0, 0, 0}, x, Mat::identity(m.dims[x]));
    for (const auto& [key, a] : m.action)
        b.set_ract(key, 0, a);
    return b;
}

BimoduleRep bimodule_of_left_module(const ModuleRep& m, CatPtr terminal_base) {
    if (m.variance != Variance::left)
        throw Error("bimodule_of_left_module: not a left module");
    if (terminal_base->object_count() != 1 || terminal_base->hom_dim(0, 0) != 1)
        throw Error("bimodule_of_left_module: inner category must be terminal");
    BimoduleRep b;
    b.outer = m.base;
    b.inner = std::move(terminal_base);
    b.dims = m.dims;
    for (std::size_t y = 0; y < m.dims.size(); ++y)
        b.set_ract(MorKey{0, 0, 0}, y, Mat::identity(m.dims[y]));
    for (const auto& [key, a] : m.action)
        b.set_lact(key, 0, a);
    return b;
}

BoxModule as_box_left_module(const BimoduleRep& b) {
    BoxModule out;
    out.box = std::make_shared<FinLinCategory>(box_tensor(*b.outer, opposite(*b.inner)));
    ModuleRep& m = out.mod;
    m.variance = Variance::left;
    m.base = out.box;
    m.dims = b.dims; /* same (y, x) flattening */
    const Field& f = b.outer->field;
    const std::size_t nx = b.inner->object_count();

    for (const MorKey& fm : b.outer->all_basis()) {
        for (std::size_t xs = 0; xs < nx; ++xs) {
            for (std::size_t xd = 0; xd < nx; ++xd) {
                /* opposite-inner leg: original g : xd -> xs */
                const std::size_t gdim = b.inner->hom_dim(xd, xs);
                for (std::size_t gi = 0; gi < gdim; ++gi) {
                    MorKey g{xd, xs, gi};
                    Mat act = b.ract_of(g, fm.dst).mul(b.lact_of(fm, xs), f);
                    MorKey key{m.base->object_index_or_throw(
                                   "(" + b.outer->objects[fm.src] + "," +
                                   b.inner->objects[xs] + ")"),
                               m.base->object_index_or_throw(
                                   "(" + b.outer->objects[fm.dst] + "," +
                                   b.inner->objects[xd] + ")"),
                               fm.idx * gdim + gi};
                    if (!act.is_zero())
                        m.set_action(key, std::move(act));
                }
            }
        }
    }
    return out;
}

NatHom nat_hom(const ModuleRep& m, const ModuleRep& n) {
    if (!(*m.base == *n.base))
        throw BaseMismatch("nat_hom: different base categories");
    if (m.variance != n.variance)
        throw BaseMismatch("nat_hom: different variances");
    const Field& f = m.base->field;
    const std::size_t nobj = m.base->object_count();

    std::vector<std::size_t> offset(nobj, 0);
    std::size_t total = 0;
    for (std::size_t x = 0; x < nobj; ++x) {
        offset[x] = total;
        total += n.dims[x] * m.dims[x];
    }
    auto var = [&](std::size_t x, std::size_t r, std::size_t c) {
        return offset[x] + r * m.dims[x] + c;
    };

    std::vector<std::map<std::size_t, Scalar>> eqs;
    auto add_eq = [&](std::map<std::size_t, Scalar> e) {
        std::map<std::size_t, Scalar> clean;
        for (auto& [k, v] : e)
            if (!f.is_zero(v))
                clean[k] = v;
        if (!clean.empty())
            eqs.push_back(std::move(clean));
    };

    for (const MorKey& fm : m.base->all_basis()) {
        Mat am = m.action_of(fm);
        Mat an = n.action_of(fm);
        std::size_t xs = fm.src, xd = fm.dst;
        if (m.variance == Variance::left) {
            /* t_dst ∘ am - an ∘ t_src = 0 : n(dst) x m(src) equations */
            for (std::size_t i = 0; i < n.dims[xd]; ++i) {
                for (std::size_t j = 0; j < m.dims[xs]; ++j) {
                    std::map<std::size_t, Scalar> e;
                    for (std::size_t k = 0; k < m.dims[xd]; ++k) {
                        Scalar v = am.at(k, j);
                        if (sgn(v) != 0)
                            e[var(xd, i, k)] = f.add(e[var(xd, i, k)], v);
                    }
                    for (std::size_t l = 0; l < n.dims[xs]; ++l) {
                        Scalar v = an.at(i, l);
                        if (sgn(v) != 0)
                            e[var(xs, l, j)] = f.sub(e[var(xs, l, j)], v);
                    }
                    add_eq(std::move(e));
                }
            }
        } else {
            /* t_src ∘ am - an ∘ t_dst = 0 : n(src) x m(dst) equations */
            for (std::size_t i = 0; i < n.dims[xs]; ++i) {
                for (std::size_t j = 0; j < m.dims[xd]; ++j) {
                    std::map<std::size_t, Scalar> e;
                    for (std::size_t k = 0; k < m.dims[xs]; ++k) {
                        Scalar v = am.at(k, j);
                        if (sgn(v) != 0)
                            e[var(xs, i, k)] = f.add(e[var(xs, i, k)], v);
                    }
                    for (std::size_t l = 0; l < n.dims[xd]; ++l) {
                        Scalar v = an.at(i, l);
                        if (sgn(v) != 0)
                            e[var(xd, l, j)] = f.sub(e[var(xd, l, j)], v);
                    }
                    add_eq(std::move(e));
                }
            }
        }
    }

    Mat sys(eqs.size(), total);
    for (std::size_t r = 0; r < eqs.size(); ++r)
        for (const auto& [ci, v] : eqs[r])
            sys.set(r, ci, v);
    RankKernelImage rki = rank_kernel_image(sys, f);

    NatHom out;
    out.dim = rki.kernel.size();
    for (const Vec& v : rki.kernel) {
        std::vector<Mat> fam;
        for (std::size_t x = 0; x < nobj; ++x) {
            Mat t(n.dims[x], m.dims[x]);
            for (std::size_t r = 0; r < n.dims[x]; ++r)
                for (std::size_t c = 0; c < m.dims[x]; ++c)
                    t.set(r, c, v[var(x, r, c)]);
            fam.push_back(std::move(t));
        }
        out.basis.push_back(std::move(fam));
    }
    return out;
}

NatHom nat_hom_bimodule(const BimoduleRep& m, const BimoduleRep& n) {
    if (!(*m.outer == *n.outer) || !(*m.inner == *n.inner))
        throw BaseMismatch("nat_hom_bimodule: different base categories");
    BoxModule bm = as_box_left_module(m);
    BoxModule bn = as_box_left_module(n);
    bn.mod.base = bm.box; /* structurally equal */
    bn.box = bm.box;
    return nat_hom(bm.mod, bn.mod);
}

SubcategoryModule restrict_module(const ModuleRep& m, const std::vector<std::string>& subobjects) {
    std::set<std::string> subset(subobjects.begin(), subobjects.end());
    if (!is_convex(*m.base, subset))
        throw NotConvex("restrict_module: subcategory is not convex");
    SubcategoryModule out;
    out.sub = std::make_shared<FinLinCategory>(full_subcategory(*m.base, subobjects));
    out.mod.variance = m.variance;
    out.mod.base = out.sub;
    std::vector<std::size_t> idx;
    for (const auto& id : subobjects)
        idx.push_back(m.base->object_index_or_throw(id));
    for (std::size_t i = 0; i < idx.size(); ++i)
        out.mod.dims.push_back(m.dims[idx[i]]);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) {
            for (std::size_t k = 0; k < m.base->hom_dim(idx[i], idx[j]); ++k) {
                Mat a = m.action_of(MorKey{idx[i], idx[j], k});
                if (!a.is_zero())
                    out.mod.set_action(MorKey{i, j, k}, std::move(a));
            }
        }
    }
    return out;
}

ModuleRep extend_module(const ModuleRep& n, CatPtr ambient) {
    FinLinCategory expected = full_subcategory(*ambient, n.base->objects);
    if (!(expected == *n.base))
        throw CategoryMismatch("extend_module: base is not the full subcategory on its objects");
    std::set<std::string> subset(n.base->objects.begin(), n.base->objects.end());
    if (!is_convex(*ambient, subset))
        throw NotConvex("extend_module: subcategory is not convex in the ambient category");
    ModuleRep out;
    out.variance = n.variance;
    out.base = ambient;
    out.dims.assign(ambient->object_count(), 0);
    std::vector<std::size_t> idx;
    for (const auto& id : n.base->objects)
        idx.push_back(ambient->object_index_or_throw(id));
    for (std::size_t i = 0; i < idx.size(); ++i)
        out.dims[idx[i]] = n.dims[i];
    for (const auto& [key, a] : n.action)
        out.set_action(MorKey{idx[key.src], idx[key.dst], key.idx}, a);
    return out;
}

std::vector<Mat> adjunction_pad(const FinLinCategory& ambient,
                                const std::vector<std::string>& subobjs,
                                const std::vector<Mat>& t,
                                const std::vector<std::size_t>& src_dims,
                                const std::vector<std::size_t>& dst_dims) {
    std::vector<Mat> out;
    for (std::size_t x = 0; x < ambient.object_count(); ++x) {
        std::size_t local = subobjs.size();
        for (std::size_t i = 0; i < subobjs.size(); ++i)
            if (subobjs[i] == ambient.objects[x])
                local = i;
        if (local == subobjs.size())
            out.push_back(Mat(dst_dims[x], src_dims[x]));
        else
            out.push_back(t[local]);
    }
    return out;
}

std::vector<Mat> adjunction_strip(const FinLinCategory& ambient,
                                  const std::vector<std::string>& subobjs,
                                  const std::vector<Mat>& t) {
    std::vector<Mat> out;
    for (const auto& id : subobjs)
        out.push_back(t[ambient.object_index_or_throw(id)]);
    return out;
}

BimRestriction restrict_bimodule(const BimoduleRep& b, const std::vector<std::string>& outer_objs,
                                 const std::vector<std::string>& inner_objs) {
    BimRestriction out;
    out.outer_sub = std::make_shared<FinLinCategory>(full_subcategory(*b.outer, outer_objs));
    out.inner_sub = std::make_shared<FinLinCategory>(full_subcategory(*b.inner, inner_objs));
    out.bim.outer = out.outer_sub;
    out.bim.inner = out.inner_sub;
    std::vector<std::size_t> yidx, xidx;
    for (const auto& id : outer_objs)
        yidx.push_back(b.outer->object_index_or_throw(id));
    for (const auto& id : inner_objs)
        xidx.push_back(b.inner->object_index_or_throw(id));
    out.bim.dims.assign(yidx.size() * xidx.size(), 0);
    for (std::size_t y = 0; y < yidx.size(); ++y)
        for (std::size_t x = 0; x < xidx.size(); ++x)
            out.bim.dims[out.bim.index(y, x)] = b.at(yidx[y], xidx[x]);
    for (std::size_t ys = 0; ys < yidx.size(); ++ys)
        for (std::size_t yd = 0; yd < yidx.size(); ++yd)
            for (std::size_t k = 0; k < b.outer->hom_dim(yidx[ys], yidx[yd]); ++k)
                for (std::size_t x = 0; x < xidx.size(); ++x) {
                    Mat a = b.lact_of(MorKey{yidx[ys], yidx[yd], k}, xidx[x]);
                    if (!a.is_zero())
                        out.bim.set_lact(MorKey{ys, yd, k}, x, std::move(a));
                }
    for (std::size_t xs = 0; xs < xidx.size(); ++xs)
        for (std::size_t xd = 0; xd < xidx.size(); ++xd)
            for (std::size_t k = 0; k < b.inner->hom_dim(xidx[xs], xidx[xd]); ++k)
                for (std::size_t y = 0; y < yidx.size(); ++y) {
                    Mat a = b.ract_of(MorKey{xidx[xs], xidx[xd], k}, yidx[y]);
                    if (!a.is_zero())
                        out.bim.set_ract(MorKey{xs, xd, k}, y, std::move(a));
                }
    return out;
}

BimoduleRep extend_bimodule(const BimoduleRep& b, CatPtr ambient_outer, CatPtr ambient_inner) {
    BimoduleRep out;
    out.outer = ambient_outer;
    out.inner = ambient_inner;
    out.dims.assign(ambient_outer->object_count() * ambient_inner->object_count(), 0);
    std::vector<std::size_t> yidx, xidx;
    for (const auto& id : b.outer->objects)
        yidx.push_back(ambient_outer->object_index_or_throw(id));
    for (const auto& id : b.inner->objects)
        xidx.push_back(ambient_inner->object_index_or_throw(id));
    for (std::size_t y = 0; y < yidx.size(); ++y)
        for (std::size_t x = 0; x < xidx.size(); ++x)
            out.dims[out.index(yidx[y], xidx[x])] = b.at(y, x);
    for (const auto& [key, a] : b.lact)
        out.set_lact(MorKey{yidx[key.first.src], yidx[key.first.dst], key.first.idx},
                     xidx[key.second], a);
    for (const auto& [key, a] : b.ract)
        out.set_ract(MorKey{xidx[key.first.src], xidx[key.first.dst], key.first.idx},
                     yidx[key.second], a);
    return out;
}

ValidationReport check_bimodule_map(const BimoduleRep& from, const BimoduleRep& to,
                                    const ComponentMats& comp) {
    ValidationReport rep;
    const Field& f = from.outer->field;
    const std::size_t ny = from.outer->object_count();
    const std::size_t nx = from.inner->object_count();
    auto comp_at = [&](std::size_t y, std::size_t x) {
        auto it = comp.find({y, x});
        if (it != comp.end())
            return it->second;
        return Mat(to.at(y, x), from.at(y, x));
    };
    for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t x = 0; x < nx; ++x) {
            Mat m = comp_at(y, x);
            if (m.rows() != to.at(y, x) || m.cols() != from.at(y, x))
                rep.add("component shape mismatch");
        }
    if (!rep.ok())
        return rep;
    for (const MorKey& fm : from.outer->all_basis())
        for (std::size_t x = 0; x < nx; ++x) {
            Mat lhs = comp_at(fm.dst, x).mul(from.lact_of(fm, x), f);
            Mat rhs = to.lact_of(fm, x).mul(comp_at(fm.src, x), f);
            if (!(lhs == rhs))
                rep.add("map does not intertwine the outer action");
        }
    for (const MorKey& gm : from.inner->all_basis())
        for (std::size_t y = 0; y < ny; ++y) {
            Mat lhs = comp_at(y, gm.src).mul(from.ract_of(gm, y), f);
            Mat rhs = to.ract_of(gm, y).mul(comp_at(y, gm.dst), f);
            if (!(lhs == rhs))
                rep.add("map does not intertwine the inner action");
        }
    return rep;
}

bool is_bimodule_iso(const BimoduleRep& from, const BimoduleRep& to, const ComponentMats& comp,
                     ValidationReport* why) {
    ValidationReport rep = check_bimodule_map(from, to, comp);
    const Field& f = from.outer->field;
    if (rep.ok()) {
        for (std::size_t y = 0; y < from.outer->object_count(); ++y)
            for (std::size_t x = 0; x < from.inner->object_count(); ++x) {
                auto it = comp.find({y, x});
                Mat m = (it != comp.end()) ? it->second : Mat(to.at(y, x), from.at(y, x));
                if (m.rows() != m.cols() || rank_of(m, f) != m.rows())
                    rep.add("component not bijective at (" + std::to_string(y) + "," +
                            std::to_string(x) + ")");
            }
    }
    if (why)
        *why = rep;
    return rep.ok();
}

TensorResult tensor_over_cat(const BimoduleRep& m, const BimoduleRep& n) {
    if (!(*m.inner == *n.outer))
        throw CategoryMismatch("tensor_over_cat: middle categories differ");
    const Field& f = m.outer->field;
    const FinLinCategory& mid = *m.inner;
    const std::size_t nz = mid.object_count();
    const std::size_t ny = m.outer->object_count();
    const std::size_t nx = n.inner->object_count();

    TensorResult out;
    out.bim.outer = m.outer;
    out.bim.inner = n.inner;
    out.bim.dims.assign(ny * nx, 0);

    for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t x = 0; x < nx; ++x) {
            TensorComponent tc;
            std::size_t ambient = 0;
            for (std::size_t z = 0; z < nz; ++z) {
                tc.z_offset.push_back(ambient);
                std::size_t blk = m.at(y, z) * n.at(z, x);
                tc.z_block.push_back(blk);
                ambient += blk;
            }
            /* relations m.f ⊗ n - m ⊗ f.n over every middle basis morphism */
            std::vector<Vec> rels;
            for (const MorKey& fm : mid.all_basis()) {
                const std::size_t zs = fm.src, zd = fm.dst;
                Mat mf = m.ract_of(fm, y);   /* m(y, zd) -> m(y, zs) */
                Mat fn = n.lact_of(fm, x);   /* n(zs, x) -> n(zd, x) */
                for (std::size_t mi = 0; mi < m.at(y, zd); ++mi) {
                    for (std::size_t ni = 0; ni < n.at(zs, x); ++ni) {
                        Vec rel(ambient, Scalar(0));
                        bool nzrel = false;
                        for (std::size_t mj = 0; mj < m.at(y, zs); ++mj) {
                            Scalar v = mf.at(mj, mi);
                            if (sgn(v) != 0) {
                                rel[tc.ambient_index(zs, mj, ni, n.at(zs, x))] = v;
                                nzrel = true;
                            }
                        }
                        for (std::size_t nj = 0; nj < n.at(zd, x); ++nj) {
                            Scalar v = fn.at(nj, ni);
                            if (sgn(v) != 0) {
                                std::size_t ix = tc.ambient_index(zd, mi, nj, n.at(zd, x));
                                rel[ix] = f.sub(rel[ix], v);
                                nzrel = true;
                            }
                        }
                        if (nzrel)
                            rels.push_back(std::move(rel));
                    }
                }
            }
            std::vector<Vec> gens;
            for (std::size_t i = 0; i < ambient; ++i) {
                Vec e(ambient, Scalar(0));
                e[i] = 1;
                gens.push_back(std::move(e));
            }
            tc.quotient = SubQuotient::build(ambient, gens, rels, f);
            out.bim.dims[out.bim.index(y, x)] = tc.quotient.dim();
            out.comps[{y, x}] = std::move(tc);
        }
    }

    /* induced actions on chosen representatives */
    for (const MorKey& fm : m.outer->all_basis()) {
        for (std::size_t x = 0; x < nx; ++x) {
            const TensorComponent& src = out.comps.at({fm.src, x});
            const TensorComponent& dst = out.comps.at({fm.dst, x});
            Mat act(dst.quotient.dim(), src.quotient.dim());
            for (std::size_t j = 0; j < src.quotient.dim(); ++j) {
                const Vec& rep = src.quotient.rep(j);
                Vec img(dst.quotient.ambient_dim(), Scalar(0));
                for (std::size_t z = 0; z < nz; ++z) {
                    Mat la = m.lact_of(fm, z); /* m(src,z) -> m(dst,z) */
                    std::size_t ndim = n.at(z, x);
                    for (std::size_t mi = 0; mi < m.at(fm.src, z); ++mi)
                        for (std::size_t ni = 0; ni < ndim; ++ni) {
                            Scalar v = rep[src.ambient_index(z, mi, ni, ndim)];
                            if (sgn(v) == 0)
                                continue;
                            for (std::size_t mj = 0; mj < m.at(fm.dst, z); ++mj) {
                                Scalar w = la.at(mj, mi);
                                if (sgn(w) != 0) {
                                    std::size_t ix = dst.ambient_index(z, mj, ni, ndim);
                                    img[ix] = f.add(img[ix], f.mul(v, w));
                                }
                            }
                        }
                }
                Vec coords = dst.quotient.coords(img, f);
                for (std::size_t i = 0; i < coords.size(); ++i)
                    act.set(i, j, coords[i]);
            }
            if (!act.is_zero())
                out.bim.set_lact(fm, x, std::move(act));
        }
    }
    for (const MorKey& gm : n.inner->all_basis()) {
        for (std::size_t y = 0; y < ny; ++y) {
            const TensorComponent& src = out.comps.at({y, gm.dst});
            const TensorComponent& dst = out.comps.at({y, gm.src});
            Mat act(dst.quotient.dim(), src.quotient.dim());
            for (std::size_t j = 0; j < src.quotient.dim(); ++j) {
                const Vec& rep = src.quotient.rep(j);
                Vec img(dst.quotient.ambient_dim(), Scalar(0));
                for (std::size_t z = 0; z < nz; ++z) {
                    Mat ra = n.ract_of(gm, z); /* n(z, dst) -> n(z, src) */
                    std::size_t ndim_src = n.at(z, gm.dst);
                    std::size_t ndim_dst = n.at(z, gm.src);
                    for (std::size_t mi = 0; mi < m.at(y, z); ++mi)
                        for (std::size_t ni = 0; ni < ndim_src; ++ni) {
                            Scalar v = rep[src.ambient_index(z, mi, ni, ndim_src)];
                            if (sgn(v) == 0)
                                continue;
                            for (std::size_t nj = 0; nj < ndim_dst; ++nj) {
                                Scalar w = ra.at(nj, ni);
                                if (sgn(w) != 0) {
                                    std::size_t ix = dst.ambient_index(z, mi, nj, ndim_dst);
                                    img[ix] = f.add(img[ix], f.mul(v, w));
                                }
                            }
                        }
                }
                Vec coords = dst.quotient.coords(img, f);
                for (std::size_t i = 0; i < coords.size(); ++i)
                    act.set(i, j, coords[i]);
            }
            if (!act.is_zero())
                out.bim.set_ract(gm, y, std::move(act));
        }
    }
    return out;
}

}  // namespace hmcat
