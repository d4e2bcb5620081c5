#pragma once

#include <gmpxx.h>

#include <cmath>
#include <span>
#include <string>

#include "partdet/error.hpp"

namespace partdet {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q" or "p" (q > 0 after canonicalization). Whitespace is not
/// tolerated; signs allowed on the numerator.
Rational parse_rational(const std::string& text);

/// "p/q" with q > 0, or "p" when the denominator is 1.
std::string rational_str(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// base^exp for exp >= 0.
inline BigInt big_pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

/// lcm of the denominators of a weight vector; used to clear fractional
/// exponents before exact big-integer comparison.
BigInt denominator_lcm(std::span<const Rational> values);

/// log2 of an exact positive rational, as double. Accurate enough for the
/// 1e-9 entropy band: both mpz sizes stay far below 2^53 bits here.
double log2_rational(const Rational& q);

}  // namespace partdet
