#pragma once

#include <compare>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fusionarith/integer.hpp"

namespace fusionarith {

/// Univariate polynomial with integer coefficients, constant term first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial has no coefficients and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  /// Coefficients listed from the leading term down, e.g. {1, -3, 1} is x^2-3x+1.
  static IntPolynomial from_descending(std::span<const Integer> coefficients);
  static IntPolynomial from_descending(std::initializer_list<long> coefficients);
  static IntPolynomial x_minus(const Integer& root);
  /// `denominator * x - numerator`, the primitive linear polynomial with root q.
  static IntPolynomial linear_with_root(const Rational& q);

  /// Parses text such as "x^3-28x^2+196x-343" or "2x^2 - 1".
  static IntPolynomial parse(std::string_view text);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const { return !is_zero() && leading() == 1; }

  std::span<const Integer> coefficients() const noexcept { return coeffs_; }
  /// Coefficient of x^i (zero past the degree).
  const Integer& coeff(std::size_t i) const;
  const Integer& leading() const;

  Integer eval(const Integer& x) const;
  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const;
  /// Sign of p(x) as x -> +infinity (or -infinity when `negative`).
  int sign_at_infinity(bool negative) const;

  IntPolynomial derivative() const;
  /// gcd of the coefficients with the sign of the leading coefficient.
  Integer content() const;
  IntPolynomial primitive_part() const;
  /// p(x + c).
  IntPolynomial shifted(const Integer& c) const;

  std::string to_string() const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const Integer& k, const IntPolynomial& p);
  IntPolynomial operator-() const;

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Canonical order: by degree, then lexicographically by coefficient from
  /// the constant term upward.
  friend std::strong_ordering operator<=>(const IntPolynomial& a, const IntPolynomial& b);

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

/// Polynomial over the rationals; used where exact division is needed.
class RatPolynomial {
 public:
  RatPolynomial() = default;
  explicit RatPolynomial(std::vector<Rational> coefficients);
  explicit RatPolynomial(const IntPolynomial& p);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const Rational& coeff(std::size_t i) const;
  const Rational& leading() const;

  /// Multiplies by the positive rational that makes the result a primitive
  /// integer polynomial. Signs at every point are preserved.
  IntPolynomial positive_primitive() const;

  friend RatPolynomial operator-(const RatPolynomial& a, const RatPolynomial& b);
  friend RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division over Q: a = q * b + r with deg r < deg b.
std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b);

/// Exact quotient a / b; throws PreconditionError when b does not divide a in Q[x]
/// or the quotient has non-integer coefficients.
IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b);

/// Primitive gcd with positive leading coefficient. gcd(0, 0) is 0.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

/// p / gcd(p, p'), primitive with positive leading coefficient.
IntPolynomial squarefree_part(const IntPolynomial& p);

bool is_squarefree(const IntPolynomial& p);

}  // namespace fusionarith
