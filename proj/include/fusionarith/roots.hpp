#pragma once

// Real roots, rational roots, factoring and discriminants of integer
// polynomials. Everything is decided with exact rational arithmetic.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fusionarith/polynomial.hpp"

namespace fusionarith {

/// Interval with rational endpoints. lo == hi with both ends closed is a
/// single exact point.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_open = false;
  bool hi_open = false;

  bool is_point() const { return lo == hi && !lo_open && !hi_open; }
  bool contains(const Rational& x) const;
  std::string to_string() const;
};

/// A subset of the real line; a missing end is infinite.
struct RealRange {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool lo_open = true;
  bool hi_open = true;

  static RealRange all_reals() { return {}; }
  /// (a, +inf)
  static RealRange above(const Rational& a) { return {a, std::nullopt, true, true}; }
  /// (-inf, b]
  static RealRange at_most(const Rational& b) { return {std::nullopt, b, true, false}; }
  static RealRange of(const Interval& iv) { return {iv.lo, iv.hi, iv.lo_open, iv.hi_open}; }
};

/// p, p', then negated remainders, each rescaled by a positive rational.
std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& p);

/// Number of distinct real roots of a squarefree p inside `range`.
std::size_t sturm_real_root_count(const IntPolynomial& p, const RealRange& range = RealRange::all_reals());

/// Roots inside `range` counted with multiplicity. p need not be squarefree.
std::size_t real_root_count_with_multiplicity(const IntPolynomial& p, const RealRange& range = RealRange::all_reals());

/// One isolating interval per real root of squarefree p, ascending.
/// Rational roots come back as exact points.
std::vector<Interval> isolate_real_roots(const IntPolynomial& p);

/// Shrinks an isolating interval of p until its width is at most `width`.
Interval refine_root(const IntPolynomial& p, Interval iv, const Rational& width);

/// Rational roots with multiplicity, ascending.
std::vector<Rational> rational_roots(const IntPolynomial& p);

struct Factorization {
  Integer content;                     // carries the sign of p
  std::vector<IntPolynomial> factors;  // primitive, positive leading coefficient, repeated by multiplicity

  IntPolynomial expand() const;
};

/// Irreducible factors over Q for 1 <= deg p <= 4.
Factorization factor_over_rationals(const IntPolynomial& p);

/// Resultant via the Sylvester determinant (fraction-free elimination).
Integer resultant(const IntPolynomial& a, const IntPolynomial& b);

/// Discriminant for degrees 2, 3 and 4.
Integer poly_discriminant(const IntPolynomial& p);

}  // namespace fusionarith
