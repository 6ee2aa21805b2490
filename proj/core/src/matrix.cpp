#include "hmcat/matrix.hpp"

namespace hmcat {

Mat Mat::mul(const Mat& o, const Field& f) const {
    if (cols_ != o.rows_)
        throw Error("matrix product shape mismatch");
    /* group right factor by row */
    std::vector<std::vector<std::pair<std::size_t, const Scalar*>>> by_row(o.rows_);
    for (const auto& [rc, v] : o.entries_)
        by_row[rc.first].push_back({rc.second, &v});
    Mat out(rows_, o.cols_);
    for (const auto& [rc, v] : entries_) {
        for (const auto& [c2, v2] : by_row[rc.second])
            out.add_to(rc.first, c2, v * (*v2), f);
    }
    return out;
}

Mat Mat::plus(const Mat& o, const Field& f) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error("matrix sum shape mismatch");
    Mat out = *this;
    for (const auto& [rc, v] : o.entries_)
        out.add_to(rc.first, rc.second, v, f);
    return out;
}

Mat Mat::minus(const Mat& o, const Field& f) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error("matrix difference shape mismatch");
    Mat out = *this;
    for (const auto& [rc, v] : o.entries_)
        out.add_to(rc.first, rc.second, -v, f);
    return out;
}

Mat Mat::scaled(const Scalar& s, const Field& f) const {
    Mat out(rows_, cols_);
    if (f.is_zero(s))
        return out;
    for (const auto& [rc, v] : entries_)
        out.entries_[rc] = f.mul(v, s);
    return out;
}

Vec Mat::apply(const Vec& v, const Field& f) const {
    if (v.size() != cols_)
        throw Error("matrix-vector shape mismatch");
    Vec out(rows_, Scalar(0));
    for (const auto& [rc, e] : entries_) {
        if (sgn(v[rc.second]) != 0)
            out[rc.first] = f.add(out[rc.first], e * v[rc.second]);
    }
    return out;
}

Vec Mat::column(std::size_t c) const {
    Vec out(rows_, Scalar(0));
    for (const auto& [rc, v] : entries_)
        if (rc.second == c)
            out[rc.first] = v;
    return out;
}

}  // namespace hmcat
