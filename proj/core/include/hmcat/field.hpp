#pragma once

#include <gmpxx.h>

#include <string>

#include "hmcat/errors.hpp"

namespace hmcat {

/* Exact field scalar. Rationals are kept canonical by GMP; prime-field
 * elements are stored as integers in [0, p) with denominator 1. */
using Scalar = mpq_class;

class Field {
public:
    enum class Kind { rationals, prime };

    static Field rationals() { return Field(Kind::rationals, 0); }
    static Field prime(unsigned long p);

    Kind kind() const { return kind_; }
    unsigned long modulus() const { return p_; }

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }

    bool is_zero(const Scalar& a) const { return sgn(a) == 0; }

    Scalar add(const Scalar& a, const Scalar& b) const { return canonical(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return canonical(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return canonical(a * b); }
    Scalar neg(const Scalar& a) const { return canonical(-a); }
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    /* Reduce an exact rational into the field; for F_p the denominator must be
     * invertible mod p. */
    Scalar canonical(const Scalar& a) const;

    Scalar from_string(const std::string& s) const;
    std::string to_string(const Scalar& a) const;

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    Field(Kind k, unsigned long p) : kind_(k), p_(p), pz_(static_cast<long>(p)) {}

    Kind kind_;
    unsigned long p_;
    mpz_class pz_;
};

}  // namespace hmcat
