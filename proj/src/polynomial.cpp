#include "fusionarith/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "fusionarith/error.hpp"

namespace fusionarith {

namespace {

const Integer kZero = 0;
const Rational kZeroQ = 0;

}  // namespace

// --- IntPolynomial ----------------------------------------------------------

IntPolynomial::IntPolynomial(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::from_descending(std::span<const Integer> coefficients) {
  return IntPolynomial(std::vector<Integer>(coefficients.rbegin(), coefficients.rend()));
}

IntPolynomial IntPolynomial::from_descending(std::initializer_list<long> coefficients) {
  std::vector<Integer> c;
  for (long v : coefficients) c.emplace_back(v);
  std::reverse(c.begin(), c.end());
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::x_minus(const Integer& root) { return IntPolynomial(std::vector<Integer>{-root, 1}); }

IntPolynomial IntPolynomial::linear_with_root(const Rational& q) {
  return IntPolynomial(std::vector<Integer>{-q.get_num(), q.get_den()});
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Integer& IntPolynomial::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : kZero; }

const Integer& IntPolynomial::leading() const {
  if (coeffs_.empty()) throw PreconditionError("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Integer IntPolynomial::eval(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPolynomial::eval(const Rational& x) const {
  // Horner on the homogenised form keeps everything integral until the end.
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  Integer acc = 0;
  Integer den_power = 1;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * num + *it * den_power;
    den_power *= den;
  }
  if (coeffs_.empty()) return 0;
  return make_rational(acc, den_power / den);
}

int IntPolynomial::sign_at(const Rational& x) const { return sgn(eval(x)); }

int IntPolynomial::sign_at_infinity(bool negative) const {
  if (is_zero()) return 0;
  int s = sgn(leading());
  if (negative && degree() % 2 == 1) s = -s;
  return s;
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<Integer> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return IntPolynomial(std::move(d));
}

Integer IntPolynomial::content() const {
  if (is_zero()) return 0;
  Integer g = 0;
  for (const auto& c : coeffs_) g = ::gcd(g, c);
  return leading() < 0 ? Integer(-g) : g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return {};
  const Integer c = content();
  std::vector<Integer> out;
  out.reserve(coeffs_.size());
  for (const auto& v : coeffs_) out.push_back(v / c);
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::shifted(const Integer& c) const {
  // Horner with the polynomial (x + c).
  IntPolynomial acc;
  const IntPolynomial x_plus_c(std::vector<Integer>{c, 1});
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x_plus_c + IntPolynomial(std::vector<Integer>{*it});
  return acc;
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Integer& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Integer mag = abs(c);
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (i == 0 || mag != 1) out += mag.get_str();
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw ParseError("empty polynomial");
  std::vector<Integer> coeffs;
  std::size_t pos = 0;
  const auto fail = [&](const std::string& why) { throw ParseError("bad polynomial '" + std::string(text) + "': " + why); };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected '+' or '-'");
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    Integer c = start == pos ? Integer(1) : Integer(s.substr(start, pos - start), 10);
    bool has_digits = start != pos;
    if (pos < s.size() && s[pos] == '*') ++pos;
    std::size_t power = 0;
    if (pos < s.size() && s[pos] == 'x') {
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t e0 = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (e0 == pos) fail("missing exponent");
        power = std::stoul(s.substr(e0, pos - e0));
      }
    } else if (!has_digits) {
      fail("empty term");
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1);
    coeffs[power] += sign * c;
  }
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
  return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial IntPolynomial::operator-() const {
  std::vector<Integer> out;
  for (const auto& c : coeffs_) out.push_back(-c);
  return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const Integer& k, const IntPolynomial& p) {
  std::vector<Integer> out;
  for (const auto& c : p.coeffs_) out.push_back(k * c);
  return IntPolynomial(std::move(out));
}

std::strong_ordering operator<=>(const IntPolynomial& a, const IntPolynomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    const int c = cmp(a.coeffs_[i], b.coeffs_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

// --- RatPolynomial ----------------------------------------------------------

RatPolynomial::RatPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

RatPolynomial::RatPolynomial(const IntPolynomial& p) {
  for (const auto& c : p.coefficients()) coeffs_.emplace_back(c);
}

void RatPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& RatPolynomial::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : kZeroQ; }

const Rational& RatPolynomial::leading() const {
  if (coeffs_.empty()) throw PreconditionError("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

IntPolynomial RatPolynomial::positive_primitive() const {
  Integer den_lcm = 1;
  for (const auto& c : coeffs_) den_lcm = lcm(den_lcm, c.get_den());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : coeffs_) {
    out.push_back(c.get_num() * (den_lcm / c.get_den()));
    g = ::gcd(g, out.back());
  }
  if (g > 1) {
    for (auto& v : out) v /= g;
  }
  return IntPolynomial(std::move(out));
}

RatPolynomial operator-(const RatPolynomial& a, const RatPolynomial& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
  return RatPolynomial(std::move(out));
}

RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RatPolynomial(std::move(out));
}

std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Rational> rem;
  for (int i = 0; i <= a.degree(); ++i) rem.push_back(a.coeff(static_cast<std::size_t>(i)));
  const int db = b.degree();
  std::vector<Rational> quot(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0);
  for (int i = a.degree(); i >= db; --i) {
    const Rational factor = rem[static_cast<std::size_t>(i)] / b.leading();
    quot[static_cast<std::size_t>(i - db)] = factor;
    if (factor == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= factor * b.coeff(static_cast<std::size_t>(j));
  }
  return {RatPolynomial(std::move(quot)), RatPolynomial(std::move(rem))};
}

IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  auto [q, r] = divmod(RatPolynomial(a), RatPolynomial(b));
  if (!r.is_zero()) throw PreconditionError(b.to_string() + " does not divide " + a.to_string());
  std::vector<Integer> out;
  for (int i = 0; i <= q.degree(); ++i) {
    const Rational& c = q.coeff(static_cast<std::size_t>(i));
    if (c.get_den() != 1) throw PreconditionError("quotient of " + a.to_string() + " by " + b.to_string() + " is not integral");
    out.push_back(c.get_num());
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  RatPolynomial x(a);
  RatPolynomial y(b);
  while (!y.is_zero()) {
    auto r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return {};
  IntPolynomial g = x.positive_primitive();
  return g.leading() < 0 ? -g : g;
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.is_zero()) throw PreconditionError("squarefree part of the zero polynomial");
  const IntPolynomial g = gcd(p, p.derivative());
  IntPolynomial q = g.degree() <= 0 ? p.primitive_part() : exact_quotient(p.primitive_part(), g).primitive_part();
  return q;
}

bool is_squarefree(const IntPolynomial& p) {
  if (p.is_zero()) return false;
  return gcd(p, p.derivative()).degree() <= 0;
}

}  // namespace fusionarith
