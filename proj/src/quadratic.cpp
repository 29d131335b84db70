#include "fusionarith/quadratic.hpp"

#include <cctype>

#include "fusionarith/error.hpp"

namespace fusionarith {

QuadraticFieldElement::QuadraticFieldElement(const Rational& a, const Rational& b, const Integer& n)
    : a_(a), b_(b), n_(n) {
  if (n_ <= 0) throw PreconditionError("quadratic field generator must be positive, got " + n_.get_str());
  const SquareSplit split = split_square(n_);
  n_ = split.core;
  b_ *= split.root;
  if (n_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (b_ == 0) n_ = 1;
}

int QuadraticFieldElement::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const Rational lhs = a_ * a_;
  const Rational rhs = n_ * b_ * b_;
  return lhs > rhs ? sa : (lhs < rhs ? sb : 0);
}

bool QuadraticFieldElement::is_algebraic_integer() const {
  if (a_.get_den() != 1 || b_.get_den() != 1) return false;
  const Integer diff = a_.get_num() * a_.get_num() - n_ * b_.get_num() * b_.get_num();
  return divides(4, diff);
}

Integer common_field(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
  if (x.n() == 1) return y.n();
  if (y.n() == 1 || x.n() == y.n()) return x.n();
  throw MixedFieldError("cannot combine elements of Q(sqrt(" + x.n().get_str() + ")) and Q(sqrt(" + y.n().get_str() + "))");
}

QuadraticFieldElement operator+(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
  return {x.a_ + y.a_, x.b_ + y.b_, common_field(x, y)};
}

QuadraticFieldElement operator-(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
  return {x.a_ - y.a_, x.b_ - y.b_, common_field(x, y)};
}

QuadraticFieldElement operator*(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
  const Integer n = common_field(x, y);
  // ((a + b r)(c + d r)) / 4 = ((ac + n bd) + (ad + bc) r) / 4
  return {(x.a_ * y.a_ + n * x.b_ * y.b_) / 2, (x.a_ * y.b_ + x.b_ * y.a_) / 2, n};
}

QuadraticFieldElement operator/(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
  if (y.is_zero()) throw PreconditionError("division by zero in a quadratic field");
  const Integer n = common_field(x, y);
  const Rational norm = y.norm();
  if (norm == 0) throw PreconditionError("zero norm divisor");
  const QuadraticFieldElement num = x * y.conjugate();
  return {num.a_ / norm, num.b_ / norm, n};
}

std::string QuadraticFieldElement::to_string() const {
  if (b_ == 0) return fusionarith::to_string(Rational(a_ / 2));
  const std::string root = "r" + n_.get_str();
  if (a_.get_den() == 1 && b_.get_den() == 1 && (mpz_odd_p(a_.get_num_mpz_t()) || mpz_odd_p(b_.get_num_mpz_t()))) {
    std::string s = "(";
    if (a_ != 0) s += a_.get_num().get_str();
    if (b_ > 0 && a_ != 0) s += "+";
    if (b_ == -1) s += "-";
    else if (b_ != 1) s += b_.get_num().get_str();
    return s + root + ")/2";
  }
  const Rational p = a_ / 2;
  const Rational q = b_ / 2;
  std::string s;
  if (p != 0) s += fusionarith::to_string(p);
  if (q > 0 && p != 0) s += "+";
  if (q == -1) s += "-";
  else if (q != 1) s += fusionarith::to_string(q);
  return s + root;
}

namespace {

// Sum of terms like "14", "1/2", "5r5", "-r2", "1/2r5".
QuadraticFieldElement parse_sum(std::string_view s, std::string_view whole) {
  const auto fail = [&](const std::string& why) -> QuadraticFieldElement {
    throw ParseError("bad quadratic literal '" + std::string(whole) + "': " + why);
  };
  if (s.empty()) return fail("empty");
  QuadraticFieldElement total;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = pos + 1;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string_view term = s.substr(pos, end - pos);
    pos = end;
    int sign = 1;
    if (term.front() == '+' || term.front() == '-') {
      sign = term.front() == '-' ? -1 : 1;
      term.remove_prefix(1);
    }
    if (term.empty()) return fail("dangling sign");
    const auto r = term.find('r');
    if (r == std::string_view::npos) {
      total += QuadraticFieldElement(Rational(sign * parse_rational(term)));
      continue;
    }
    std::string_view coeff = term.substr(0, r);
    if (!coeff.empty() && coeff.back() == '*') coeff.remove_suffix(1);
    const Rational c = coeff.empty() ? Rational(1) : parse_rational(coeff);
    const Integer n = parse_integer(term.substr(r + 1));
    if (n <= 0) return fail("generator must be positive");
    total += QuadraticFieldElement(0, 2 * sign * c, n);
  }
  return total;
}

}  // namespace

QuadraticFieldElement QuadraticFieldElement::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw ParseError("empty quadratic literal");
  if (s.front() == '(') {
    const auto close = s.find(')');
    if (close == std::string::npos) throw ParseError("unbalanced parenthesis in '" + std::string(text) + "'");
    const QuadraticFieldElement inner = parse_sum(std::string_view(s).substr(1, close - 1), text);
    std::string_view rest = std::string_view(s).substr(close + 1);
    if (rest.empty()) return inner;
    if (rest.front() != '/') throw ParseError("expected '/' after ')' in '" + std::string(text) + "'");
    const Rational den = parse_rational(rest.substr(1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return inner / QuadraticFieldElement(den);
  }
  return parse_sum(s, text);
}

}  // namespace fusionarith
