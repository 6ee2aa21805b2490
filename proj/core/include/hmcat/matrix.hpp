#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "hmcat/field.hpp"

namespace hmcat {

using Vec = std::vector<Scalar>;

/* Sparse exact matrix in triplet storage; zero entries are never stored. */
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.entries_[{i, i}] = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void set(std::size_t r, std::size_t c, const Scalar& v) {
        check_index(r, c);
        if (sgn(v) == 0)
            entries_.erase({r, c});
        else
            entries_[{r, c}] = v;
    }

    void add_to(std::size_t r, std::size_t c, const Scalar& v, const Field& f) {
        check_index(r, c);
        auto it = entries_.find({r, c});
        Scalar s = (it == entries_.end()) ? f.canonical(v) : f.add(it->second, v);
        if (f.is_zero(s))
            entries_.erase({r, c});
        else
            entries_[{r, c}] = s;
    }

    Scalar at(std::size_t r, std::size_t c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Scalar(0) : it->second;
    }

    const std::map<std::pair<std::size_t, std::size_t>, Scalar>& entries() const {
        return entries_;
    }

    std::size_t nnz() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (const auto& [rc, v] : entries_)
            t.entries_[{rc.second, rc.first}] = v;
        return t;
    }

    Mat mul(const Mat& o, const Field& f) const;
    Mat plus(const Mat& o, const Field& f) const;
    Mat minus(const Mat& o, const Field& f) const;
    Mat scaled(const Scalar& s, const Field& f) const;
    Vec apply(const Vec& v, const Field& f) const;
    Vec column(std::size_t c) const;

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

private:
    void check_index(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_)
            throw Error("matrix index out of range");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, Scalar> entries_;
};

inline bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (sgn(x) != 0)
            return false;
    return true;
}

}  // namespace hmcat
