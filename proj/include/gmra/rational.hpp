#pragma once

#include <gmpxx.h>

#include <string>

namespace gmra {

// Exact rational scalar. All breakpoint arithmetic is exact; only function
// values are floating point.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Largest integer <= q.
mpz_class floor_q(const Rational& q);

inline mpz_class pow_z(long base, int power) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(power));
    return p;
}

// Canonical representative of q + Z in [-1/2, 1/2).
Rational reduce_mod1(const Rational& q);

double to_double(const Rational& q);

// Serialized form is always "p/q" with gcd(p,q) = 1 and q > 0.
std::string to_string(const Rational& q);

// Accepts "p/q" or a bare integer "p". Throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);

} // namespace gmra
