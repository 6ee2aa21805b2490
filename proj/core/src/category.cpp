#include "hmcat/category.hpp"

#include <algorithm>
#include <map>

#include "hmcat/linalg.hpp"

namespace hmcat {

const std::vector<std::string> FinLinCategory::empty_basis_{};

SparseVec sparse_normalize(SparseVec v, const Field& f) {
    std::map<std::size_t, Scalar> acc;
    for (auto& [i, c] : v) {
        auto it = acc.find(i);
        if (it == acc.end())
            acc[i] = f.canonical(c);
        else
            it->second = f.add(it->second, c);
    }
    SparseVec out;
    for (auto& [i, c] : acc)
        if (!f.is_zero(c))
            out.push_back({i, c});
    return out;
}

SparseVec sparse_add(const SparseVec& a, const SparseVec& b, const Field& f) {
    SparseVec v = a;
    v.insert(v.end(), b.begin(), b.end());
    return sparse_normalize(std::move(v), f);
}

SparseVec sparse_scale(const SparseVec& a, const Scalar& s, const Field& f) {
    SparseVec out;
    if (f.is_zero(s))
        return out;
    for (const auto& [i, c] : a) {
        Scalar v = f.mul(c, s);
        if (!f.is_zero(v))
            out.push_back({i, v});
    }
    return out;
}

std::optional<std::size_t> FinLinCategory::object_index(const std::string& id) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == id)
            return i;
    return std::nullopt;
}

std::size_t FinLinCategory::object_index_or_throw(const std::string& id) const {
    auto i = object_index(id);
    if (!i)
        throw UnknownObject("unknown object '" + id + "'");
    return *i;
}

std::size_t FinLinCategory::hom_dim(std::size_t src, std::size_t dst) const {
    auto it = hom.find({src, dst});
    return it == hom.end() ? 0 : it->second.size();
}

const std::vector<std::string>& FinLinCategory::hom_basis(std::size_t src,
                                                          std::size_t dst) const {
    auto it = hom.find({src, dst});
    return it == hom.end() ? empty_basis_ : it->second;
}

std::size_t FinLinCategory::total_hom_dim() const {
    std::size_t t = 0;
    for (const auto& [k, b] : hom)
        t += b.size();
    return t;
}

void FinLinCategory::set_hom(std::size_t src, std::size_t dst, std::vector<std::string> basis) {
    if (basis.empty())
        hom.erase({src, dst});
    else
        hom[{src, dst}] = std::move(basis);
}

void FinLinCategory::set_compose(const MorKey& g, const MorKey& f, SparseVec result) {
    result = sparse_normalize(std::move(result), field);
    if (result.empty())
        compose_table.erase({g, f});
    else
        compose_table[{g, f}] = std::move(result);
}

SparseVec FinLinCategory::compose(const MorKey& g, const MorKey& f) const {
    if (f.dst != g.src)
        throw Error("compose: morphisms are not composable");
    auto it = compose_table.find({g, f});
    return it == compose_table.end() ? SparseVec{} : it->second;
}

SparseVec FinLinCategory::compose_vec(std::size_t i, std::size_t j, std::size_t k,
                                      const SparseVec& gvec, const SparseVec& fvec) const {
    SparseVec out;
    for (const auto& [gi, gc] : gvec) {
        for (const auto& [fi, fc] : fvec) {
            SparseVec term = compose(MorKey{j, k, gi}, MorKey{i, j, fi});
            Scalar s = field.mul(gc, fc);
            for (const auto& [ri, rc] : term)
                out.push_back({ri, field.mul(s, rc)});
        }
    }
    return sparse_normalize(std::move(out), field);
}

std::vector<MorKey> FinLinCategory::all_basis() const {
    std::vector<MorKey> out;
    for (const auto& [k, b] : hom)
        for (std::size_t i = 0; i < b.size(); ++i)
            out.push_back(MorKey{k.first, k.second, i});
    return out;
}

bool FinLinCategory::operator==(const FinLinCategory& o) const {
    return field == o.field && objects == o.objects && hom == o.hom && identity == o.identity &&
           compose_table == o.compose_table;
}

namespace {

std::string mor_name(const FinLinCategory& c, const MorKey& m) {
    return c.hom_basis(m.src, m.dst)[m.idx] + ":" + c.objects[m.src] + "->" + c.objects[m.dst];
}

bool sparse_eq(const SparseVec& a, const SparseVec& b) {
    return a == b;
}

}  // namespace

ValidationReport validate_category(const FinLinCategory& c) {
    ValidationReport rep;
    const Field& f = c.field;

    if (c.identity.size() != c.objects.size()) {
        rep.add("identity table size does not match object count");
        return rep;
    }
    for (const auto& [key, basis] : c.hom) {
        if (key.first >= c.objects.size() || key.second >= c.objects.size())
            rep.add("hom key out of range");
        std::set<std::string> seen;
        for (const auto& id : basis)
            if (!seen.insert(id).second)
                rep.add("duplicate morphism id '" + id + "' in a hom space");
    }
    for (std::size_t x = 0; x < c.objects.size(); ++x) {
        for (const auto& [i, v] : c.identity[x]) {
            if (i >= c.hom_dim(x, x))
                rep.add("identity of '" + c.objects[x] + "' has an out-of-range coefficient");
        }
        if (sparse_normalize(c.identity[x], f).empty())
            rep.add("identity of '" + c.objects[x] + "' is zero");
    }
    for (const auto& [key, res] : c.compose_table) {
        const auto& [g, fm] = key;
        if (fm.dst != g.src || fm.idx >= c.hom_dim(fm.src, fm.dst) ||
            g.idx >= c.hom_dim(g.src, g.dst)) {
            rep.add("composition entry with a non-composable or dangling pair");
            continue;
        }
        for (const auto& [i, v] : res)
            if (i >= c.hom_dim(fm.src, g.dst))
                rep.add("composition result with out-of-range coefficient");
    }
    if (!rep.ok())
        return rep;

    /* identity axiom on every basis morphism */
    for (const MorKey& m : c.all_basis()) {
        SparseVec e{{m.idx, Scalar(1)}};
        SparseVec left = c.compose_vec(m.src, m.dst, m.dst, c.identity[m.dst], e);
        if (!sparse_eq(left, e))
            rep.add("identity failure: id_" + c.objects[m.dst] + " . " + mor_name(c, m));
        SparseVec right = c.compose_vec(m.src, m.src, m.dst, e, c.identity[m.src]);
        if (!sparse_eq(right, e))
            rep.add("identity failure: " + mor_name(c, m) + " . id_" + c.objects[m.src]);
    }

    /* associativity on every composable basis triple */
    for (const MorKey& fm : c.all_basis()) {
        for (const MorKey& gm : c.all_basis()) {
            if (gm.src != fm.dst)
                continue;
            SparseVec gf = c.compose(gm, fm);
            for (const MorKey& hm : c.all_basis()) {
                if (hm.src != gm.dst)
                    continue;
                SparseVec hg = c.compose(hm, gm);
                SparseVec lhs = c.compose_vec(fm.src, gm.src, hm.dst, hg, {{fm.idx, Scalar(1)}});
                SparseVec rhs = c.compose_vec(fm.src, hm.src, hm.dst, {{hm.idx, Scalar(1)}}, gf);
                if (!sparse_eq(lhs, rhs))
                    rep.add("associativity failure at (" + mor_name(c, hm) + ", " +
                            mor_name(c, gm) + ", " + mor_name(c, fm) + ")");
            }
        }
    }
    return rep;
}

FinLinCategory opposite(const FinLinCategory& c) {
    FinLinCategory o;
    o.field = c.field;
    o.objects = c.objects;
    o.identity = c.identity;
    for (const auto& [key, basis] : c.hom)
        o.hom[{key.second, key.first}] = basis;
    for (const auto& [key, res] : c.compose_table) {
        const auto& [g, fm] = key;
        MorKey fo{g.dst, g.src, g.idx};  /* g in the opposite */
        MorKey go{fm.dst, fm.src, fm.idx};
        /* (f_op after g_op) = (g after f) read backwards: new key (g_op=fm, f_op=g) */
        o.compose_table[{go, fo}] = res;
    }
    return o;
}

FinLinCategory box_tensor(const FinLinCategory& c, const FinLinCategory& d) {
    if (c.field != d.field)
        throw FieldMismatch("box tensor over different fields");
    FinLinCategory t;
    t.field = c.field;
    const std::size_t nd = d.object_count();
    for (const auto& a : c.objects)
        for (const auto& b : d.objects)
            t.objects.push_back("(" + a + "," + b + ")");

    auto pair_index = [nd](std::size_t i, std::size_t j) { return i * nd + j; };

    for (const auto& [ck, cb] : c.hom) {
        for (const auto& [dk, db] : d.hom) {
            std::vector<std::string> basis;
            for (const auto& fid : cb)
                for (const auto& gid : db)
                    basis.push_back(fid + "|" + gid);
            t.hom[{pair_index(ck.first, dk.first), pair_index(ck.second, dk.second)}] =
                std::move(basis);
        }
    }

    t.identity.resize(t.objects.size());
    for (std::size_t i = 0; i < c.object_count(); ++i) {
        for (std::size_t j = 0; j < nd; ++j) {
            SparseVec v;
            const std::size_t djj = d.hom_dim(j, j);
            for (const auto& [fi, fc] : c.identity[i])
                for (const auto& [gi, gc] : d.identity[j])
                    v.push_back({fi * djj + gi, t.field.mul(fc, gc)});
            t.identity[pair_index(i, j)] = sparse_normalize(std::move(v), t.field);
        }
    }

    for (const auto& [ckey, cres] : c.compose_table) {
        const auto& [cg, cf] = ckey;
        for (const auto& [dkey, dres] : d.compose_table) {
            const auto& [dg, df] = dkey;
            MorKey g{pair_index(cg.src, dg.src), pair_index(cg.dst, dg.dst),
                     cg.idx * d.hom_dim(dg.src, dg.dst) + dg.idx};
            MorKey fm{pair_index(cf.src, df.src), pair_index(cf.dst, df.dst),
                      cf.idx * d.hom_dim(df.src, df.dst) + df.idx};
            const std::size_t dres_dim = d.hom_dim(df.src, dg.dst);
            SparseVec v;
            for (const auto& [ri, rc] : cres)
                for (const auto& [sj, sc] : dres)
                    v.push_back({ri * dres_dim + sj, t.field.mul(rc, sc)});
            t.set_compose(g, fm, std::move(v));
        }
    }
    return t;
}

FinLinCategory enveloping(const FinLinCategory& c) {
    return box_tensor(c, opposite(c));
}

FinLinCategory contract(const FinLinCategory& c, const Partition& e) {
    /* partition sanity */
    std::set<std::string> seen;
    std::set<std::string> class_ids;
    std::size_t covered = 0;
    for (const auto& [cid, members] : e.classes) {
        if (!class_ids.insert(cid).second)
            throw InvalidPartition("duplicate class id '" + cid + "'");
        if (members.empty())
            throw InvalidPartition("empty class '" + cid + "'");
        for (const auto& m : members) {
            if (!c.object_index(m))
                throw InvalidPartition("class '" + cid + "' names unknown object '" + m + "'");
            if (!seen.insert(m).second)
                throw InvalidPartition("object '" + m + "' appears in two classes");
            ++covered;
        }
    }
    if (covered != c.object_count())
        throw InvalidPartition("partition does not cover all objects");

    FinLinCategory q;
    q.field = c.field;
    for (const auto& [cid, members] : e.classes)
        q.objects.push_back(cid);

    std::vector<std::vector<std::size_t>> members(e.classes.size());
    for (std::size_t ci = 0; ci < e.classes.size(); ++ci)
        for (const auto& m : e.classes[ci].second)
            members[ci].push_back(c.object_index_or_throw(m));

    /* block offsets: (class pair) -> per (x,y) start index */
    std::map<std::pair<std::size_t, std::size_t>,
             std::map<std::pair<std::size_t, std::size_t>, std::size_t>>
        offsets;

    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = 0; b < members.size(); ++b) {
            std::vector<std::string> plain;
            std::size_t off = 0;
            auto& offmap = offsets[{a, b}];
            for (std::size_t x : members[a]) {
                for (std::size_t y : members[b]) {
                    offmap[{x, y}] = off;
                    off += c.hom_dim(x, y);
                    for (const auto& id : c.hom_basis(x, y))
                        plain.push_back(id);
                }
            }
            if (plain.empty())
                continue;
            std::set<std::string> uniq(plain.begin(), plain.end());
            if (uniq.size() != plain.size()) {
                /* qualify every entry of this hom space */
                std::vector<std::string> qualified;
                for (std::size_t x : members[a])
                    for (std::size_t y : members[b])
                        for (const auto& id : c.hom_basis(x, y))
                            qualified.push_back(c.objects[x] + ">" + c.objects[y] + ":" + id);
                q.hom[{a, b}] = std::move(qualified);
            } else {
                q.hom[{a, b}] = std::move(plain);
            }
        }
    }

    q.identity.resize(q.objects.size());
    for (std::size_t a = 0; a < members.size(); ++a) {
        SparseVec v;
        for (std::size_t x : members[a]) {
            std::size_t off = offsets[{a, a}][{x, x}];
            for (const auto& [i, cval] : c.identity[x])
                v.push_back({off + i, cval});
        }
        q.identity[a] = sparse_normalize(std::move(v), q.field);
    }

    /* blockwise composition: (y2,z,g).(x,y1,f) = delta_{y1,y2} (g.f) */
    for (const auto& [key, res] : c.compose_table) {
        const auto& [g, fm] = key;
        auto class_of = [&](std::size_t obj) {
            for (std::size_t ci = 0; ci < members.size(); ++ci)
                for (std::size_t m : members[ci])
                    if (m == obj)
                        return ci;
            throw InvalidPartition("partition does not cover all objects");
        };
        std::size_t a = class_of(fm.src), b = class_of(fm.dst), cc = class_of(g.dst);
        MorKey qf{a, b, offsets[{a, b}][{fm.src, fm.dst}] + fm.idx};
        MorKey qg{b, cc, offsets[{b, cc}][{g.src, g.dst}] + g.idx};
        SparseVec v;
        std::size_t roff = offsets[{a, cc}][{fm.src, g.dst}];
        for (const auto& [i, cval] : res)
            v.push_back({roff + i, cval});
        q.set_compose(qg, qf, std::move(v));
    }
    return q;
}

namespace {

/* echelon-maintained span of vectors inside one hom space */
struct Span {
    std::vector<Vec> basis;
    bool try_add(const Vec& v, const Field& f) {
        if (vec_is_zero(v))
            return false;
        Mat m(v.size(), basis.size() + 1);
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (std::size_t i = 0; i < v.size(); ++i)
                m.set(i, j, basis[j][i]);
        for (std::size_t i = 0; i < v.size(); ++i)
            m.set(i, basis.size(), v[i]);
        if (rank_of(m, f) > basis.size()) {
            basis.push_back(v);
            return true;
        }
        return false;
    }
};

Vec sparse_to_dense(const SparseVec& v, std::size_t dim) {
    Vec out(dim, Scalar(0));
    for (const auto& [i, c] : v)
        out[i] = c;
    return out;
}

}  // namespace

bool is_convex(const FinLinCategory& c, const std::set<std::string>& subobjects) {
    std::set<std::size_t> inside;
    for (const auto& id : subobjects)
        inside.insert(c.object_index_or_throw(id));

    const std::size_t n = c.object_count();
    std::map<std::pair<std::size_t, std::size_t>, Span> through;

    auto compose_mor = [&](const MorKey& g, const MorKey& fm) {
        return c.compose(g, fm);
    };

    /* seed: two-step composites whose middle object is outside */
    for (std::size_t mid = 0; mid < n; ++mid) {
        if (inside.count(mid))
            continue;
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t z = 0; z < n; ++z) {
                std::size_t din = c.hom_dim(x, mid), dout = c.hom_dim(mid, z);
                if (din == 0 || dout == 0)
                    continue;
                for (std::size_t fi = 0; fi < din; ++fi)
                    for (std::size_t gi = 0; gi < dout; ++gi) {
                        SparseVec comp = compose_mor(MorKey{mid, z, gi}, MorKey{x, mid, fi});
                        if (!comp.empty())
                            through[{x, z}].try_add(sparse_to_dense(comp, c.hom_dim(x, z)),
                                                    c.field);
                    }
            }
        }
    }

    /* closure under pre- and post-composition; spans only grow */
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, Vec>> pending;
        for (const auto& [xz, span] : through) {
            auto [x, z] = xz;
            for (const Vec& v : span.basis) {
                /* post-compose: g . v for g : z -> w */
                for (std::size_t w = 0; w < n; ++w) {
                    std::size_t dg = c.hom_dim(z, w);
                    if (dg == 0)
                        continue;
                    for (std::size_t gi = 0; gi < dg; ++gi) {
                        SparseVec sv;
                        for (std::size_t i = 0; i < v.size(); ++i)
                            if (sgn(v[i]) != 0)
                                sv.push_back({i, v[i]});
                        SparseVec comp =
                            c.compose_vec(x, z, w, SparseVec{{gi, Scalar(1)}}, sv);
                        if (!comp.empty())
                            pending.push_back({{x, w}, sparse_to_dense(comp, c.hom_dim(x, w))});
                    }
                }
                /* pre-compose: v . a for a : u -> x */
                for (std::size_t u = 0; u < n; ++u) {
                    std::size_t da = c.hom_dim(u, x);
                    if (da == 0)
                        continue;
                    for (std::size_t ai = 0; ai < da; ++ai) {
                        SparseVec sv;
                        for (std::size_t i = 0; i < v.size(); ++i)
                            if (sgn(v[i]) != 0)
                                sv.push_back({i, v[i]});
                        SparseVec comp =
                            c.compose_vec(u, x, z, sv, SparseVec{{ai, Scalar(1)}});
                        if (!comp.empty())
                            pending.push_back({{u, z}, sparse_to_dense(comp, c.hom_dim(u, z))});
                    }
                }
            }
        }
        for (auto& [key, vec] : pending)
            if (through[key].try_add(vec, c.field))
                grew = true;
    }

    for (const auto& [xz, span] : through) {
        if (inside.count(xz.first) && inside.count(xz.second) && !span.basis.empty())
            return false;
    }
    return true;
}

FinLinCategory full_subcategory(const FinLinCategory& c, const std::vector<std::string>& objs) {
    FinLinCategory s;
    s.field = c.field;
    std::vector<std::size_t> idx;
    for (const auto& id : objs) {
        idx.push_back(c.object_index_or_throw(id));
        s.objects.push_back(id);
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
        s.identity.push_back(c.identity[idx[i]]);
        for (std::size_t j = 0; j < idx.size(); ++j) {
            const auto& basis = c.hom_basis(idx[i], idx[j]);
            if (!basis.empty())
                s.hom[{i, j}] = basis;
        }
    }
    auto local = [&](std::size_t global) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < idx.size(); ++i)
            if (idx[i] == global)
                return i;
        return std::nullopt;
    };
    for (const auto& [key, res] : c.compose_table) {
        const auto& [g, fm] = key;
        auto a = local(fm.src), b = local(fm.dst), cc = local(g.dst);
        if (a && b && cc)
            s.compose_table[{MorKey{*b, *cc, g.idx}, MorKey{*a, *b, fm.idx}}] = res;
    }
    return s;
}

FinLinCategory terminal_category(const Field& f, const std::string& object_id) {
    FinLinCategory c;
    c.field = f;
    c.objects = {object_id};
    c.hom[{0, 0}] = {"id"};
    c.identity = {SparseVec{{0, Scalar(1)}}};
    c.compose_table[{MorKey{0, 0, 0}, MorKey{0, 0, 0}}] = SparseVec{{0, Scalar(1)}};
    return c;
}

}  // namespace hmcat
