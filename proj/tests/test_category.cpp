#include <hmcat/category.hpp>

#include "doctest.h"
#include "support/fixtures.hpp"

using namespace hmcat;

TEST_CASE("hand-built presentations validate") {
    for (const CatPtr& c : {fixtures::one_cat(), fixtures::a2_cat(), fixtures::a3_cat(),
                            fixtures::kr_cat(), fixtures::full2_cat()}) {
        CHECK(validate_category(*c).ok());
    }
}

TEST_CASE("a dropped identity composition is reported") {
    auto c = *fixtures::a2_cat();
    c.compose_table.erase({MorKey{1, 1, 0}, MorKey{0, 1, 0}}); /* id2 . a now 0 */
    auto rep = validate_category(c);
    CHECK(!rep.ok());
    bool found = false;
    for (const auto& p : rep.problems)
        found = found || p.find("identity failure: id_2 . a") != std::string::npos;
    CHECK(found);
}

TEST_CASE("associativity violations are reported") {
    auto c = *fixtures::full2_cat();
    /* drop e12 . e21, keeping everything else: (e21 e12) e21 != e21 (e12 e21) */
    c.compose_table.erase({MorKey{1, 0, 0}, MorKey{0, 1, 0}});
    auto rep = validate_category(c);
    CHECK(!rep.ok());
    bool assoc = false;
    for (const auto& p : rep.problems)
        assoc = assoc || p.find("associativity failure") != std::string::npos;
    CHECK(assoc);
}

TEST_CASE("opposite is an involution and flips arrows") {
    auto one = fixtures::one_cat();
    CHECK(opposite(*one) == *one);

    auto a2 = fixtures::a2_cat();
    FinLinCategory op = opposite(*a2);
    CHECK(op.hom_dim(1, 0) == 1);
    CHECK(op.hom_dim(0, 1) == 0);
    CHECK(validate_category(op).ok());

    auto kr = fixtures::kr_cat();
    CHECK(opposite(opposite(*kr)) == *kr);
}

TEST_CASE("box tensor dimensions multiply") {
    auto one = fixtures::one_cat();
    auto a2 = fixtures::a2_cat();

    FinLinCategory unit = box_tensor(*one, *a2);
    CHECK(unit.object_count() == 2);
    CHECK(validate_category(unit).ok());
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            CHECK(unit.hom_dim(x, y) == a2->hom_dim(x, y));

    FinLinCategory sq = box_tensor(*a2, *a2);
    /* ((1,1) -> (2,2)) has dimension dim hom(1,2)^2 = 1 */
    CHECK(sq.hom_dim(0, 3) == 1);
    CHECK(validate_category(sq).ok());

    /* oracle: total hom dimension of c (x) d is the product of totals */
    auto total = [](const FinLinCategory& c) {
        std::size_t t = 0;
        for (std::size_t x = 0; x < c.object_count(); ++x)
            for (std::size_t y = 0; y < c.object_count(); ++y)
                t += c.hom_dim(x, y);
        return t;
    };
    FinLinCategory mixed = box_tensor(*a2, opposite(*a2));
    CHECK(mixed.object_count() == 4);
    CHECK(total(mixed) == total(*a2) * total(*a2));
    CHECK(total(mixed) == 9);
}

TEST_CASE("enveloping categories") {
    auto one = fixtures::one_cat();
    FinLinCategory e1 = enveloping(*one);
    CHECK(e1.object_count() == 1);
    CHECK(e1.hom_dim(0, 0) == 1);
    CHECK(validate_category(e1).ok());

    FinLinCategory ea2 = enveloping(*fixtures::a2_cat());
    CHECK(ea2.object_count() == 4);
    std::size_t t = 0;
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y)
            t += ea2.hom_dim(x, y);
    CHECK(t == 9);
    CHECK(validate_category(ea2).ok());

    FinLinCategory ekr = enveloping(*fixtures::kr_cat());
    std::size_t tkr = 0;
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y)
            tkr += ekr.hom_dim(x, y);
    CHECK(tkr == 16);
    CHECK(validate_category(ekr).ok());
}

TEST_CASE("contract along the singleton partition is the identity presentation") {
    auto a2 = fixtures::a2_cat();
    Partition singles{{{"1", {"1"}}, {"2", {"2"}}}};
    FinLinCategory q = contract(*a2, singles);
    CHECK(q == *a2);
}

TEST_CASE("contracting FULL2 to a point gives the 2x2 matrix algebra") {
    auto c = fixtures::full2_cat();
    Partition all{{{"e", {"1", "2"}}}};
    FinLinCategory q = contract(*c, all);
    REQUIRE(q.object_count() == 1);
    REQUIRE(q.hom_dim(0, 0) == 4);
    CHECK(validate_category(q).ok());

    /* hand oracle: basis order is (x,y) blocks: e11, e21, e12, e22 and
     * composition must follow e(z,y).e(y,x) = e(z,x) with mismatches zero */
    auto name = [&](std::size_t i) { return q.hom_basis(0, 0)[i]; };
    CHECK(name(0) == "e11");
    CHECK(name(1) == "e21");
    CHECK(name(2) == "e12");
    CHECK(name(3) == "e22");
    auto target = [&](std::size_t gi, std::size_t fi) -> std::optional<std::size_t> {
        /* index -> (x,y) with x = idx/2? layout: x-major: (x=1: e11,e21)(x=2: e12,e22) */
        std::size_t fx = fi / 2 + 1, fy = fi % 2 + 1;
        std::size_t gx = gi / 2 + 1, gy = gi % 2 + 1;
        if (gx != fy)
            return std::nullopt; /* matrix units with mismatched middle */
        std::size_t rx = fx, ry = gy;
        return (rx - 1) * 2 + (ry - 1);
    };
    for (std::size_t gi = 0; gi < 4; ++gi) {
        for (std::size_t fi = 0; fi < 4; ++fi) {
            SparseVec got = q.compose(MorKey{0, 0, gi}, MorKey{0, 0, fi});
            auto want = target(gi, fi);
            if (!want) {
                CHECK(got.empty());
            } else {
                REQUIRE(got.size() == 1);
                CHECK(got[0].first == *want);
                CHECK(got[0].second == Scalar(1));
            }
        }
    }
}

TEST_CASE("contracting a2 to a point") {
    auto a2 = fixtures::a2_cat();
    Partition all{{{"e", {"1", "2"}}}};
    FinLinCategory q = contract(*a2, all);
    REQUIRE(q.object_count() == 1);
    CHECK(q.hom_dim(0, 0) == 3);
    CHECK(validate_category(q).ok());
    /* a . a = 0 in the contraction */
    std::size_t ai = 0;
    const auto& basis = q.hom_basis(0, 0);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == "a")
            ai = i;
    CHECK(q.compose(MorKey{0, 0, ai}, MorKey{0, 0, ai}).empty());
}

TEST_CASE("invalid partitions are rejected") {
    auto a2 = fixtures::a2_cat();
    CHECK_THROWS_AS(contract(*a2, Partition{{{"e", {"1"}}}}), InvalidPartition);
    CHECK_THROWS_AS(contract(*a2, Partition{{{"e", {"1", "1", "2"}}}}), InvalidPartition);
    CHECK_THROWS_AS(contract(*a2, Partition{{{"e", {"1", "zz"}}}}), InvalidPartition);
}

TEST_CASE("convexity") {
    auto a2 = fixtures::a2_cat();
    auto a3 = fixtures::a3_cat();
    CHECK(is_convex(*a2, {"1", "2"}));
    CHECK(is_convex(*a2, {"1"}));
    CHECK(is_convex(*a2, {"2"}));
    CHECK(is_convex(*a3, {"1", "2"}));
    CHECK(!is_convex(*a3, {"1", "3"}));
    CHECK_THROWS_AS(is_convex(*a2, {"zz"}), UnknownObject);

    /* agreement with the opposite category */
    FinLinCategory a3op = opposite(*a3);
    CHECK(is_convex(a3op, {"1", "2"}) == is_convex(*a3, {"1", "2"}));
    CHECK(is_convex(a3op, {"1", "3"}) == is_convex(*a3, {"1", "3"}));

    /* products of convex sets are convex in the box tensor */
    FinLinCategory prod = box_tensor(*a3, *a2);
    std::set<std::string> sq;
    for (const auto& u : {"1", "2"})
        for (const auto& v : {"1", "2"})
            sq.insert(std::string("(") + u + "," + v + ")");
    CHECK(is_convex(prod, sq));
    std::set<std::string> bad;
    for (const auto& u : {"1", "3"})
        for (const auto& v : {"1", "2"})
            bad.insert(std::string("(") + u + "," + v + ")");
    CHECK(!is_convex(prod, bad));
}

TEST_CASE("full subcategory keeps structure") {
    auto a3 = fixtures::a3_cat();
    FinLinCategory s = full_subcategory(*a3, {"1", "2"});
    CHECK(s.object_count() == 2);
    CHECK(s.hom_dim(0, 1) == 1);
    CHECK(validate_category(s).ok());
    CHECK(s == *fixtures::a2_cat());
}
