#include "hmcat/field.hpp"

namespace hmcat {

Field Field::prime(unsigned long p) {
    mpz_class pz(static_cast<long>(p));
    if (p < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 32) == 0)
        throw Error("field modulus " + std::to_string(p) + " is not prime");
    return Field(Kind::prime, p);
}

Scalar Field::canonical(const Scalar& a) const {
    if (kind_ == Kind::rationals) {
        Scalar r(a);
        r.canonicalize();
        return r;
    }
    mpz_class num = a.get_num();
    mpz_class den = a.get_den();
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pz_.get_mpz_t()) == 0)
        throw Error("denominator not invertible mod " + std::to_string(p_));
    mpz_class r = (num * dinv) % pz_;
    if (r < 0)
        r += pz_;
    return Scalar(r);
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a))
        throw Error("division by zero");
    if (kind_ == Kind::rationals) {
        Scalar r = 1 / a;
        r.canonicalize();
        return r;
    }
    Scalar c = canonical(a);
    mpz_class num = c.get_num();
    mpz_class ninv;
    if (mpz_invert(ninv.get_mpz_t(), num.get_mpz_t(), pz_.get_mpz_t()) == 0)
        throw Error("division by zero mod " + std::to_string(p_));
    return Scalar(ninv);
}

Scalar Field::from_string(const std::string& s) const {
    try {
        Scalar a(s);
        a.canonicalize();
        return canonical(a);
    } catch (const std::invalid_argument&) {
        throw Error("malformed scalar '" + s + "'");
    }
}

std::string Field::to_string(const Scalar& a) const {
    return a.get_str();
}

}  // namespace hmcat
