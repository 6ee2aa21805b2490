#include "hmcat/nerve.hpp"

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

}  // namespace

std::vector<std::vector<std::size_t>> weighted_path_counts(const FinLinCategory& c,
                                                           std::size_t n) {
    const std::size_t nobj = c.object_count();
    std::vector<std::vector<std::size_t>> paths(nobj, std::vector<std::size_t>(nobj, 0));
    if (n == 0) {
        for (std::size_t x = 0; x < nobj; ++x)
            paths[x][x] = 1;
        return paths;
    }
    for (std::size_t x = 0; x < nobj; ++x)
        for (std::size_t y = 0; y < nobj; ++y)
            paths[x][y] = c.hom_dim(x, y);
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<std::vector<std::size_t>> next(nobj, std::vector<std::size_t>(nobj, 0));
        for (std::size_t x = 0; x < nobj; ++x)
            for (std::size_t y = 0; y < nobj; ++y)
                for (std::size_t z = 0; z < nobj; ++z)
                    next[x][z] = sat_add(next[x][z], sat_mul(paths[x][y], c.hom_dim(y, z)));
        paths = std::move(next);
    }
    return paths;
}

std::size_t projected_nerve_dim(const FinLinCategory& c, std::size_t n) {
    auto paths = weighted_path_counts(c, n);
    std::size_t total = 0;
    for (const auto& row : paths)
        for (std::size_t v : row)
            total = sat_add(total, v);
    return total;
}

NerveBasis nerve_basis(const FinLinCategory& c, std::size_t n, std::optional<std::size_t> budget) {
    if (budget) {
        std::size_t projected = projected_nerve_dim(c, n);
        if (projected > *budget)
            throw BudgetExceeded(projected, *budget,
                                 "nerve at degree " + std::to_string(n) + " has " +
                                     std::to_string(projected) + " tuples, budget " +
                                     std::to_string(*budget));
    }
    NerveBasis nb;
    nb.degree = n;
    NerveTuple cur;
    auto emit = [&]() {
        nb.index[cur] = nb.elements.size();
        nb.elements.push_back(cur);
    };
    auto rec = [&](auto&& self) -> void {
        if (cur.mors.size() == n) {
            emit();
            return;
        }
        std::size_t last = cur.objs.back();
        for (std::size_t y = 0; y < c.object_count(); ++y) {
            std::size_t d = c.hom_dim(last, y);
            for (std::size_t k = 0; k < d; ++k) {
                cur.objs.push_back(y);
                cur.mors.push_back(k);
                self(self);
                cur.objs.pop_back();
                cur.mors.pop_back();
            }
        }
    };
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        cur.objs = {x};
        cur.mors.clear();
        rec(rec);
    }
    return nb;
}

}  // namespace hmcat
