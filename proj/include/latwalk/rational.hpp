#pragma once

#include <gmpxx.h>

#include <string>

#include "latwalk/errors.hpp"

namespace latwalk {

using Int = mpz_class;
using Rat = mpq_class;  // GMP keeps these canonical: reduced, denominator > 0

inline std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw UsageError("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Int num = int_pow(base.get_num(), static_cast<unsigned long>(e < 0 ? -e : e));
    Int den = int_pow(base.get_den(), static_cast<unsigned long>(e < 0 ? -e : e));
    Rat r = (e > 0) ? Rat(num, den) : Rat(den, num);
    r.canonicalize();
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int binomial(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

}  // namespace latwalk
