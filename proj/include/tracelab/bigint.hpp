#pragma once
// Arbitrary-precision scalar types used throughout the library.
//
// Exact combinatorial identities are computed with GMP integers/rationals;
// conversions to floating point happen only at final reporting steps.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace tracelab {

using Bigint = mpz_class;
using Rational = mpq_class;

// Quotient of two big integers as a double, computed at 256-bit precision so
// that huge numerators/denominators (far beyond double range) still divide
// cleanly before the final rounding.
inline double bigint_ratio_to_double(const Bigint& num, const Bigint& den) {
    mpfr_t n, d;
    mpfr_init2(n, 256);
    mpfr_init2(d, 256);
    mpfr_set_z(n, num.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(d, den.get_mpz_t(), MPFR_RNDN);
    mpfr_div(n, n, d, MPFR_RNDN);
    double out = mpfr_get_d(n, MPFR_RNDN);
    mpfr_clear(n);
    mpfr_clear(d);
    return out;
}

inline double rational_to_double(const Rational& r) {
    return bigint_ratio_to_double(r.get_num(), r.get_den());
}

// Natural log of a positive big integer via MPFR (exact input, 256-bit log).
inline double bigint_log(const Bigint& v) {
    mpfr_t x;
    mpfr_init2(x, 256);
    mpfr_set_z(x, v.get_mpz_t(), MPFR_RNDN);
    mpfr_log(x, x, MPFR_RNDN);
    double out = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return out;
}

inline std::string bigint_str(const Bigint& v) { return v.get_str(); }

}  // namespace tracelab
