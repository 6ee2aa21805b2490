#include <hmcat/module.hpp>

#include "doctest.h"
#include "support/fixtures.hpp"

using namespace hmcat;

namespace {

/* multiplication map out of C (x)_C C on the chosen representatives */
ComponentMats mult_map_components(const TensorResult& t, const CatPtr& c) {
    const Field& f = c->field;
    ComponentMats out;
    for (const auto& [yx, comp] : t.comps) {
        auto [y, x] = yx;
        Mat m(c->hom_dim(x, y), comp.quotient.dim());
        for (std::size_t j = 0; j < comp.quotient.dim(); ++j) {
            const Vec& rep = comp.quotient.rep(j);
            for (std::size_t z = 0; z < c->object_count(); ++z) {
                std::size_t mdim = c->hom_dim(z, y), ndim = c->hom_dim(x, z);
                for (std::size_t mi = 0; mi < mdim; ++mi)
                    for (std::size_t ni = 0; ni < ndim; ++ni) {
                        Scalar v = rep[comp.ambient_index(z, mi, ni, ndim)];
                        if (sgn(v) == 0)
                            continue;
                        for (const auto& [ri, rc] :
                             c->compose(MorKey{z, y, mi}, MorKey{x, z, ni}))
                            m.add_to(ri, j, f.mul(v, rc), f);
                    }
            }
        }
        out[{y, x}] = std::move(m);
    }
    return out;
}

}  // namespace

TEST_CASE("regular bimodules validate and read the hom table") {
    auto one = fixtures::one_cat();
    BimoduleRep r1 = regular_bimodule(one);
    CHECK(validate_bimodule(r1).ok());
    CHECK(r1.total_dim() == 1);

    auto a2 = fixtures::a2_cat();
    BimoduleRep r2 = regular_bimodule(a2);
    CHECK(validate_bimodule(r2).ok());
    CHECK(r2.at(0, 0) == 1);
    CHECK(r2.at(1, 0) == 1); /* dim of morphisms 1 -> 2 */
    CHECK(r2.at(1, 1) == 1);
    CHECK(r2.at(0, 1) == 0);

    BimoduleRep rk = regular_bimodule(fixtures::kr_cat());
    CHECK(validate_bimodule(rk).ok());
    CHECK(rk.total_dim() == 4);

    CHECK(validate_bimodule(regular_bimodule(fixtures::a3_cat())).ok());
    CHECK(validate_bimodule(regular_bimodule(fixtures::full2_cat())).ok());
}

TEST_CASE("module validation catches identity failures") {
    auto a2 = fixtures::a2_cat();
    ModuleRep m = fixtures::p2_module(a2);
    CHECK(validate_module(m).ok());

    ModuleRep broken = m;
    broken.action.erase(MorKey{0, 0, 0}); /* id1 acts by zero now */
    auto rep = validate_module(broken);
    CHECK(!rep.ok());
}

TEST_CASE("nat_hom of the regular right module of the point") {
    auto one = fixtures::one_cat();
    ModuleRep k = fixtures::k_module(one, 1);
    NatHom h = nat_hom(k, k);
    CHECK(h.dim == 1);

    ModuleRep k2 = fixtures::k_module(one, 2);
    CHECK(nat_hom(k2, k2).dim == 4);
    CHECK_THROWS_AS(nat_hom(k, fixtures::p2_module(fixtures::a2_cat())), BaseMismatch);
}

TEST_CASE("tensor unit law: C (x)_C C is the regular bimodule") {
    for (const CatPtr& c : {fixtures::one_cat(), fixtures::a2_cat(), fixtures::kr_cat(),
                            fixtures::full2_cat(), fixtures::a3_cat()}) {
        BimoduleRep reg = regular_bimodule(c);
        TensorResult t = tensor_over_cat(reg, reg);
        CHECK(validate_bimodule(t.bim).ok());
        REQUIRE(t.bim.dims == reg.dims);
        ComponentMats mult = mult_map_components(t, c);
        ValidationReport why;
        CHECK(is_bimodule_iso(t.bim, reg, mult, &why));
        for (const auto& p : why.problems)
            FAIL_CHECK(p);
    }
}

TEST_CASE("tensor unit law for a one-sided module") {
    auto a2 = fixtures::a2_cat();
    auto one = fixtures::one_cat();
    ModuleRep m = fixtures::p2_module(a2);
    BimoduleRep mb = bimodule_of_right_module(m, one);
    CHECK(validate_bimodule(mb).ok());
    TensorResult t = tensor_over_cat(mb, regular_bimodule(a2));
    CHECK(validate_bimodule(t.bim).ok());
    CHECK(t.bim.dims == mb.dims);

    /* action pairing m (x) f -> m.f */
    const Field& f = a2->field;
    ComponentMats act;
    for (const auto& [yx, comp] : t.comps) {
        auto [y, x] = yx;
        Mat mm(mb.at(y, x), comp.quotient.dim());
        for (std::size_t j = 0; j < comp.quotient.dim(); ++j) {
            const Vec& rep = comp.quotient.rep(j);
            for (std::size_t z = 0; z < a2->object_count(); ++z) {
                std::size_t ndim = a2->hom_dim(x, z);
                for (std::size_t mi = 0; mi < mb.at(y, z); ++mi)
                    for (std::size_t ni = 0; ni < ndim; ++ni) {
                        Scalar v = rep[comp.ambient_index(z, mi, ni, ndim)];
                        if (sgn(v) == 0)
                            continue;
                        Mat a = m.action_of(MorKey{x, z, ni}); /* m(z) -> m(x) */
                        for (std::size_t r = 0; r < mb.at(y, x); ++r)
                            if (sgn(a.at(r, mi)) != 0)
                                mm.add_to(r, j, f.mul(v, a.at(r, mi)), f);
                    }
            }
        }
        act[yx] = std::move(mm);
    }
    CHECK(is_bimodule_iso(t.bim, mb, act));
}

TEST_CASE("restrict then extend recovers the module") {
    auto a3 = fixtures::a3_cat();
    ModuleRep m;
    m.variance = Variance::right;
    m.base = a3;
    m.dims = {1, 1, 0};
    m.set_action(MorKey{0, 0, 0}, Mat::identity(1));
    m.set_action(MorKey{1, 1, 0}, Mat::identity(1));
    m.set_action(MorKey{2, 2, 0}, Mat(0, 0));
    m.set_action(MorKey{0, 1, 0}, Mat::identity(1));
    REQUIRE(validate_module(m).ok());

    SubcategoryModule r = restrict_module(m, {"1", "2"});
    CHECK(validate_module(r.mod).ok());
    CHECK(r.mod.dims == std::vector<std::size_t>{1, 1});

    ModuleRep back = extend_module(r.mod, a3);
    CHECK(validate_module(back).ok());
    CHECK(back.dims == m.dims);
    CHECK(back.action == m.action);

    CHECK_THROWS_AS(restrict_module(m, {"1", "3"}), NotConvex);
}

TEST_CASE("restriction over all objects is the identity") {
    auto a2 = fixtures::a2_cat();
    ModuleRep m = fixtures::p2_module(a2);
    SubcategoryModule r = restrict_module(m, {"1", "2"});
    CHECK(*r.sub == *a2);
    CHECK(r.mod.dims == m.dims);
    CHECK(r.mod.action == m.action);
}

TEST_CASE("extension of the zero module is zero") {
    auto a3 = fixtures::a3_cat();
    SubcategoryModule r =
        restrict_module(zero_module(a3, Variance::right), {"1", "2"});
    ModuleRep z = extend_module(r.mod, a3);
    CHECK(z.total_dim() == 0);
    CHECK(validate_module(z).ok());
}

namespace {

/* Verify that pad/strip are mutually inverse between Hom_sub(N, r(M)) and
 * Hom_ambient(i(N), M), on the computed bases of both spaces. */
void check_adjunction(const CatPtr& ambient, const std::vector<std::string>& subobjs,
                      const ModuleRep& m, const ModuleRep& n_over_sub) {
    const Field& f = ambient->field;
    SubcategoryModule rm = restrict_module(m, subobjs);
    ModuleRep in = extend_module(n_over_sub, ambient);

    NatHom hd = nat_hom(n_over_sub, rm.mod); /* Hom_sub(N, rM) */
    NatHom hc = nat_hom(in, m);              /* Hom_ambient(iN, M) */
    REQUIRE(hd.dim == hc.dim);

    auto flatten = [&](const std::vector<Mat>& fam) {
        Vec v;
        for (const Mat& t : fam)
            for (std::size_t r = 0; r < t.rows(); ++r)
                for (std::size_t c = 0; c < t.cols(); ++c)
                    v.push_back(t.at(r, c));
        return v;
    };
    auto basis_matrix = [&](const NatHom& h) {
        std::size_t len = h.dim == 0 ? 0 : flatten(h.basis[0]).size();
        Mat b(len, h.dim);
        for (std::size_t j = 0; j < h.dim; ++j) {
            Vec col = flatten(h.basis[j]);
            for (std::size_t i = 0; i < col.size(); ++i)
                b.set(i, j, col[i]);
        }
        return b;
    };
    Mat hdmat = basis_matrix(hd), hcmat = basis_matrix(hc);

    Mat theta(hc.dim, hd.dim), zeta(hd.dim, hc.dim);
    for (std::size_t j = 0; j < hd.dim; ++j) {
        auto padded = adjunction_pad(*ambient, subobjs, hd.basis[j], in.dims, m.dims);
        auto sol = solve(hcmat, flatten(padded), f);
        REQUIRE(sol.has_value());
        for (std::size_t i = 0; i < hc.dim; ++i)
            theta.set(i, j, (*sol)[i]);
    }
    for (std::size_t j = 0; j < hc.dim; ++j) {
        auto stripped = adjunction_strip(*ambient, subobjs, hc.basis[j]);
        auto sol = solve(hdmat, flatten(stripped), f);
        REQUIRE(sol.has_value());
        for (std::size_t i = 0; i < hd.dim; ++i)
            zeta.set(i, j, (*sol)[i]);
    }
    CHECK(zeta.mul(theta, f) == Mat::identity(hd.dim));
    CHECK(theta.mul(zeta, f) == Mat::identity(hc.dim));
}

}  // namespace

TEST_CASE("adjunction between zero-extension and restriction") {
    /* valid shape: nothing maps into the subcategory from outside */
    auto a3 = fixtures::a3_cat();
    ModuleRep m;
    m.variance = Variance::right;
    m.base = a3;
    m.dims = {1, 1, 1};
    m.set_action(MorKey{0, 0, 0}, Mat::identity(1));
    m.set_action(MorKey{1, 1, 0}, Mat::identity(1));
    m.set_action(MorKey{2, 2, 0}, Mat::identity(1));
    m.set_action(MorKey{0, 1, 0}, Mat::identity(1));
    m.set_action(MorKey{1, 2, 0}, Mat::identity(1));
    m.set_action(MorKey{0, 2, 0}, Mat::identity(1));
    REQUIRE(validate_module(m).ok());

    std::vector<std::string> subobjs{"1", "2"};
    SubcategoryModule rm = restrict_module(m, subobjs);
    ModuleRep n = fixtures::p2_module(std::make_shared<FinLinCategory>(*rm.sub));
    n.base = rm.sub;
    check_adjunction(a3, subobjs, m, n);

    auto a2 = fixtures::a2_cat();
    SubcategoryModule r1 = restrict_module(fixtures::p2_module(a2), {"1"});
    ModuleRep n1 = fixtures::k_module(r1.sub, 1);
    n1.base = r1.sub;
    check_adjunction(a2, {"1"}, fixtures::p2_module(a2), n1);
}

TEST_CASE("bimodule restriction slices spaces and actions") {
    auto a3 = fixtures::a3_cat();
    BimoduleRep reg = regular_bimodule(a3);
    BimRestriction r = restrict_bimodule(reg, {"1", "2"}, {"1", "2"});
    CHECK(validate_bimodule(r.bim).ok());
    CHECK(r.bim.at(0, 0) == 1);
    CHECK(r.bim.at(1, 0) == 1);
    CHECK(r.bim.at(0, 1) == 0);
}

TEST_CASE("box-module view of a bimodule validates") {
    auto a2 = fixtures::a2_cat();
    BimoduleRep reg = regular_bimodule(a2);
    BoxModule bm = as_box_left_module(reg);
    CHECK(validate_module(bm.mod).ok());
    CHECK(bm.mod.total_dim() == reg.total_dim());
    CHECK(nat_hom_bimodule(reg, reg).dim == 1);
}
