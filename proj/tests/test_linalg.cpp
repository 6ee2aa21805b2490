#include <hmcat/linalg.hpp>

#include <random>

#include "doctest.h"

using namespace hmcat;

namespace {

Mat from_rows(const std::vector<std::vector<int>>& rows) {
    Mat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c] != 0)
                m.set(r, c, Scalar(rows[r][c]));
    return m;
}

Mat random_sparse(std::mt19937& rng, std::size_t rows, std::size_t cols, const Field& f) {
    Mat m(rows, cols);
    std::uniform_int_distribution<int> coin(0, 3), val(-5, 5);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (coin(rng) == 0) {
                int v = val(rng);
                if (v != 0)
                    m.set(r, c, f.canonical(Scalar(v)));
            }
    return m;
}

}  // namespace

TEST_CASE("rank_kernel_image on the empty matrix") {
    Field f = Field::rationals();
    auto rki = rank_kernel_image(Mat(0, 0), f);
    CHECK(rki.rank == 0);
    CHECK(rki.kernel.empty());
    CHECK(rki.image.empty());
}

TEST_CASE("rank_kernel_image on the identity") {
    Field f = Field::rationals();
    auto rki = rank_kernel_image(Mat::identity(3), f);
    CHECK(rki.rank == 3);
    CHECK(rki.kernel.empty());
    CHECK(rki.image.size() == 3);
}

TEST_CASE("proportional rows give rank one and the expected kernel line") {
    Field f = Field::rationals();
    Mat m = from_rows({{1, 2}, {2, 4}});
    auto rki = rank_kernel_image(m, f);
    CHECK(rki.rank == 1);
    REQUIRE(rki.kernel.size() == 1);
    /* (-2, 1) up to scale */
    const Vec& v = rki.kernel[0];
    CHECK(v[0] * Scalar(1) == Scalar(-2) * v[1]);
    CHECK(vec_is_zero(m.apply(v, f)));
}

TEST_CASE("solve basics") {
    Field f = Field::rationals();
    SUBCASE("identity returns b") {
        Vec b{Scalar(3), Scalar("-1/2")};
        auto x = solve(Mat::identity(2), b, f);
        REQUIRE(x.has_value());
        CHECK(*x == b);
    }
    SUBCASE("rhs outside the image") {
        Mat z(2, 2);
        auto x = solve(z, Vec{Scalar(1), Scalar(0)}, f);
        CHECK(!x.has_value());
    }
    SUBCASE("underdetermined: any valid solution") {
        Mat m = from_rows({{1, 1}});
        auto x = solve(m, Vec{Scalar(1)}, f);
        REQUIRE(x.has_value());
        CHECK(m.apply(*x, f)[0] == Scalar(1));
        auto xr = solve(m, Vec{Scalar(1)}, f,
                        SolveOptions{SolveOptions::ColumnOrder::reverse});
        REQUIRE(xr.has_value());
        CHECK(m.apply(*xr, f)[0] == Scalar(1));
    }
}

TEST_CASE("homology_dim_at worked examples") {
    Field f = Field::rationals();
    CHECK(homology_dim_at(Mat(1, 1), Mat(1, 1), f) == 1);
    CHECK(homology_dim_at(Mat::identity(1), Mat(1, 1), f) == 0);
    Mat d_in = from_rows({{1}, {1}});
    CHECK(homology_dim_at(Mat(1, 2), d_in, f) == 1);
    Mat bad_out = from_rows({{1, 0}});
    CHECK_THROWS_AS(homology_dim_at(bad_out, d_in, f), CompositionNotZero);
}

TEST_CASE("kernel vectors are exact and rank matches the transpose") {
    std::mt19937 rng(20240811);
    for (const Field& f : {Field::rationals(), Field::prime(5)}) {
        for (int trial = 0; trial < 25; ++trial) {
            Mat m = random_sparse(rng, 6, 8, f);
            auto rki = rank_kernel_image(m, f);
            for (const Vec& v : rki.kernel)
                CHECK(vec_is_zero(m.apply(v, f)));
            CHECK(rki.rank + rki.kernel.size() == m.cols());
            CHECK(rank_of(m, f) == rank_of(m.transpose(), f));
        }
    }
}

TEST_CASE("solve works over a prime field") {
    Field f = Field::prime(7);
    Mat m = from_rows({{2, 1}, {0, 3}});
    Vec b{f.canonical(Scalar(5)), f.canonical(Scalar(4))};
    auto x = solve(m, b, f);
    REQUIRE(x.has_value());
    Vec mx = m.apply(*x, f);
    CHECK(f.canonical(mx[0]) == b[0]);
    CHECK(f.canonical(mx[1]) == b[1]);
    CHECK_THROWS_AS(Field::prime(6), Error);
}

TEST_CASE("SubQuotient picks deterministic representatives") {
    Field f = Field::rationals();
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < 3; ++i) {
        Vec e(3, Scalar(0));
        e[i] = 1;
        gens.push_back(e);
    }
    std::vector<Vec> rels{Vec{Scalar(1), Scalar(1), Scalar(0)}};
    SubQuotient q = SubQuotient::build(3, gens, rels, f);
    CHECK(q.dim() == 2);
    /* e0 + e1 = 0 in the quotient */
    Vec c0 = q.coords(gens[0], f);
    Vec c1 = q.coords(gens[1], f);
    for (std::size_t i = 0; i < q.dim(); ++i)
        CHECK(f.add(c1[i], Scalar(0)) == f.neg(c0[i]));
    CHECK(q.in_relations(rels[0], f));
    CHECK(!q.in_relations(gens[2], f));
}
