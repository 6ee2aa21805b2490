#pragma once

#include <hmcat/category.hpp>
#include <hmcat/module.hpp>

#include <memory>

/* Hand-built presentations used across the test suites. All are over Q unless
 * a field is passed. */
namespace fixtures {

using namespace hmcat;

inline CatPtr one_cat(const Field& f = Field::rationals(), const std::string& name = "*") {
    return std::make_shared<FinLinCategory>(terminal_category(f, name));
}

/* objects 1,2 and a single arrow a : 1 -> 2 */
inline CatPtr a2_cat(const Field& f = Field::rationals()) {
    FinLinCategory c;
    c.field = f;
    c.objects = {"1", "2"};
    c.hom[{0, 0}] = {"id1"};
    c.hom[{1, 1}] = {"id2"};
    c.hom[{0, 1}] = {"a"};
    c.identity = {{{0, Scalar(1)}}, {{0, Scalar(1)}}};
    auto e = [](std::size_t i) { return SparseVec{{i, Scalar(1)}}; };
    c.compose_table[{MorKey{0, 0, 0}, MorKey{0, 0, 0}}] = e(0);
    c.compose_table[{MorKey{1, 1, 0}, MorKey{1, 1, 0}}] = e(0);
    c.compose_table[{MorKey{1, 1, 0}, MorKey{0, 1, 0}}] = e(0); /* id2 . a */
    c.compose_table[{MorKey{0, 1, 0}, MorKey{0, 0, 0}}] = e(0); /* a . id1 */
    return std::make_shared<FinLinCategory>(std::move(c));
}

/* path category on 1 -> 2 -> 3 with nonzero composite ba */
inline CatPtr a3_cat(const Field& f = Field::rationals()) {
    FinLinCategory c;
    c.field = f;
    c.objects = {"1", "2", "3"};
    c.hom[{0, 0}] = {"id1"};
    c.hom[{1, 1}] = {"id2"};
    c.hom[{2, 2}] = {"id3"};
    c.hom[{0, 1}] = {"a"};
    c.hom[{1, 2}] = {"b"};
    c.hom[{0, 2}] = {"ba"};
    c.identity = {{{0, Scalar(1)}}, {{0, Scalar(1)}}, {{0, Scalar(1)}}};
    auto e = [](std::size_t i) { return SparseVec{{i, Scalar(1)}}; };
    auto id = [&](std::size_t x) { return MorKey{x, x, 0}; };
    MorKey a{0, 1, 0}, b{1, 2, 0}, ba{0, 2, 0};
    c.compose_table[{id(0), id(0)}] = e(0);
    c.compose_table[{id(1), id(1)}] = e(0);
    c.compose_table[{id(2), id(2)}] = e(0);
    c.compose_table[{id(1), a}] = e(0);
    c.compose_table[{a, id(0)}] = e(0);
    c.compose_table[{id(2), b}] = e(0);
    c.compose_table[{b, id(1)}] = e(0);
    c.compose_table[{id(2), ba}] = e(0);
    c.compose_table[{ba, id(0)}] = e(0);
    c.compose_table[{b, a}] = e(0); /* = ba */
    c.compose_table[{ba, id(0)}] = e(0);
    return std::make_shared<FinLinCategory>(std::move(c));
}

/* Kronecker: two arrows 1 -> 2 */
inline CatPtr kr_cat(const Field& f = Field::rationals()) {
    FinLinCategory c;
    c.field = f;
    c.objects = {"1", "2"};
    c.hom[{0, 0}] = {"id1"};
    c.hom[{1, 1}] = {"id2"};
    c.hom[{0, 1}] = {"a", "b"};
    c.identity = {{{0, Scalar(1)}}, {{0, Scalar(1)}}};
    auto e = [](std::size_t i) { return SparseVec{{i, Scalar(1)}}; };
    c.compose_table[{MorKey{0, 0, 0}, MorKey{0, 0, 0}}] = e(0);
    c.compose_table[{MorKey{1, 1, 0}, MorKey{1, 1, 0}}] = e(0);
    c.compose_table[{MorKey{1, 1, 0}, MorKey{0, 1, 0}}] = e(0);
    c.compose_table[{MorKey{1, 1, 0}, MorKey{0, 1, 1}}] = e(1);
    c.compose_table[{MorKey{0, 1, 0}, MorKey{0, 0, 0}}] = e(0);
    c.compose_table[{MorKey{0, 1, 1}, MorKey{0, 0, 0}}] = e(1);
    return std::make_shared<FinLinCategory>(std::move(c));
}

/* two objects, every hom space one-dimensional, matrix-unit composition:
 * e(z,y) . e(y,x) = e(z,x) */
inline CatPtr full2_cat(const Field& f = Field::rationals()) {
    FinLinCategory c;
    c.field = f;
    c.objects = {"1", "2"};
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            c.hom[{x, y}] = {"e" + c.objects[y] + c.objects[x]};
    c.identity = {{{0, Scalar(1)}}, {{0, Scalar(1)}}};
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t z = 0; z < 2; ++z)
                c.compose_table[{MorKey{y, z, 0}, MorKey{x, y, 0}}] = SparseVec{{0, Scalar(1)}};
    return std::make_shared<FinLinCategory>(std::move(c));
}

/* right module over a2: spaces (1,1), a acts by identity (the representable
 * at object 2) */
inline ModuleRep p2_module(const CatPtr& a2) {
    ModuleRep m;
    m.variance = Variance::right;
    m.base = a2;
    m.dims = {1, 1};
    m.set_action(MorKey{0, 0, 0}, Mat::identity(1));
    m.set_action(MorKey{1, 1, 0}, Mat::identity(1));
    m.set_action(MorKey{0, 1, 0}, Mat::identity(1));
    return m;
}

/* simple right module at the named object */
inline ModuleRep simple_module(const CatPtr& c, const std::string& obj) {
    ModuleRep m;
    m.variance = Variance::right;
    m.base = c;
    m.dims.assign(c->object_count(), 0);
    std::size_t i = c->object_index_or_throw(obj);
    m.dims[i] = 1;
    m.set_action(MorKey{i, i, 0}, Mat::identity(1)); /* assumes basis id at obj */
    return m;
}

/* right module over the terminal category with the given dimension */
inline ModuleRep k_module(const CatPtr& one, std::size_t d) {
    ModuleRep m;
    m.variance = Variance::right;
    m.base = one;
    m.dims = {d};
    m.set_action(MorKey{0, 0, 0}, Mat::identity(d));
    return m;
}

}  // namespace fixtures
