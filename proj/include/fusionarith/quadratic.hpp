#pragma once

#include <string>
#include <string_view>

#include "fusionarith/integer.hpp"

namespace fusionarith {

/// Element (a + b*sqrt(n)) / 2 of Q(sqrt(n)) with n a positive squarefree
/// integer. Rationals use n = 1 and b = 0; a rational combines with any field.
///
/// Literal syntax: "14+5r5", "(3+r5)/2", "-r2", "1/2", "3/2-1/2r5".
class QuadraticFieldElement {
 public:
  QuadraticFieldElement() : a_(0), b_(0), n_(1) {}
  QuadraticFieldElement(long value) : a_(2 * value), b_(0), n_(1) {}  // NOLINT: implicit by design
  QuadraticFieldElement(const Integer& value) : a_(2 * value), b_(0), n_(1) {}  // NOLINT
  QuadraticFieldElement(const Rational& value) : a_(2 * value), b_(0), n_(1) {}  // NOLINT
  /// (a + b sqrt(n)) / 2; n > 0, square factors of n are moved into b.
  QuadraticFieldElement(const Rational& a, const Rational& b, const Integer& n);

  static QuadraticFieldElement parse(std::string_view text);
  static QuadraticFieldElement sqrt(const Integer& n) { return {0, 2, n}; }

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  const Integer& n() const noexcept { return n_; }
  Rational rational_part() const { return a_ / 2; }
  Rational sqrt_coefficient() const { return b_ / 2; }

  bool is_rational() const noexcept { return b_ == 0; }
  bool is_zero() const noexcept { return a_ == 0 && b_ == 0; }
  int sign() const;
  /// a, b integers with a^2 = n b^2 (mod 4).
  bool is_algebraic_integer() const;
  /// Image under sqrt(n) -> -sqrt(n).
  QuadraticFieldElement conjugate() const { return {a_, -b_, n_}; }
  Rational norm() const { return (a_ * a_ - n_ * b_ * b_) / 4; }
  Rational trace() const { return a_; }

  std::string to_string() const;

  friend QuadraticFieldElement operator+(const QuadraticFieldElement& x, const QuadraticFieldElement& y);
  friend QuadraticFieldElement operator-(const QuadraticFieldElement& x, const QuadraticFieldElement& y);
  friend QuadraticFieldElement operator*(const QuadraticFieldElement& x, const QuadraticFieldElement& y);
  friend QuadraticFieldElement operator/(const QuadraticFieldElement& x, const QuadraticFieldElement& y);
  QuadraticFieldElement operator-() const { return {-a_, -b_, n_}; }
  QuadraticFieldElement& operator+=(const QuadraticFieldElement& y) { return *this = *this + y; }

  friend bool operator==(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.n_ == y.n_;
  }

 private:
  Rational a_;
  Rational b_;
  Integer n_;
};

/// The common generator of two elements; throws MixedFieldError if they differ.
Integer common_field(const QuadraticFieldElement& x, const QuadraticFieldElement& y);

}  // namespace fusionarith
