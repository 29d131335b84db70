#pragma once

// Exact integers and rationals. Both are GMP values; every helper here is a
// pure function.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fusionarith {

using Integer = mpz_class;
/// Always canonical: gcd(|num|, den) = 1 and den > 0.
using Rational = mpq_class;

Integer parse_integer(std::string_view text);

/// Accepts "p" or "p/q" in decimal; "1/0" and friends raise ParseError.
Rational parse_rational(std::string_view text);

Rational make_rational(const Integer& num, const Integer& den);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

/// Divisibility with the conventions x | 0 for all x, and 0 | y only for y = 0.
bool divides(const Integer& d, const Integer& n);

Integer ipow(const Integer& base, unsigned long exponent);
Rational rpow(const Rational& base, unsigned long exponent);

Integer floor_sqrt(const Integer& m);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// s >= 0 with s * s == m, or empty. Negative m is never a square.
std::optional<Integer> is_perfect_square(const Integer& m);

/// Prime factorisation of |n| by trial division; n must be nonzero.
std::map<Integer, unsigned long> factor_integer(const Integer& n);

/// Positive divisors of |n| (n nonzero), ascending.
std::vector<Integer> positive_divisors(const Integer& n);

bool is_squarefree(const Integer& n);

/// Writes m = core * square with core squarefree (sign of m kept in core).
/// m must be nonzero.
struct SquareSplit {
  Integer core;
  Integer root;  // m == core * root^2, root > 0
};
SquareSplit split_square(const Integer& m);

Integer euler_totient(const Integer& n);

/// p-adic valuation of nonzero n.
unsigned long valuation(const Integer& n, const Integer& p);

}  // namespace fusionarith
