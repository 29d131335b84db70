#include "fusionarith/integer.hpp"

#include <algorithm>
#include <cctype>

#include "fusionarith/error.hpp"

namespace fusionarith {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

bool is_decimal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) text.remove_prefix(1);
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Integer parse_integer(std::string_view text) {
  text = trim(text);
  if (!is_decimal(text)) throw ParseError("not an integer: '" + std::string(text) + "'");
  if (text.front() == '+') text.remove_prefix(1);
  return Integer(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer num = parse_integer(text.substr(0, slash));
  const Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  return make_rational(num, den);
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ParseError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool divides(const Integer& d, const Integer& n) {
  if (n == 0) return true;
  if (d == 0) return false;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational rpow(const Rational& base, unsigned long exponent) {
  return make_rational(ipow(base.get_num(), exponent), ipow(base.get_den(), exponent));
}

Integer floor_sqrt(const Integer& m) {
  if (m < 0) throw PreconditionError("floor_sqrt of a negative integer");
  Integer out;
  mpz_sqrt(out.get_mpz_t(), m.get_mpz_t());
  return out;
}

Integer floor(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer ceil(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

std::optional<Integer> is_perfect_square(const Integer& m) {
  if (m < 0) return std::nullopt;
  if (mpz_perfect_square_p(m.get_mpz_t()) == 0) return std::nullopt;
  return floor_sqrt(m);
}

std::map<Integer, unsigned long> factor_integer(const Integer& n) {
  if (n == 0) throw PreconditionError("cannot factor zero");
  std::map<Integer, unsigned long> out;
  Integer rest = abs(n);
  for (Integer p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
    while (divides(p, rest)) {
      rest /= p;
      ++out[p];
    }
  }
  if (rest > 1) ++out[rest];
  return out;
}

std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factor_integer(n)) {
    const std::size_t count = divs.size();
    Integer power = 1;
    for (unsigned long k = 1; k <= e; ++k) {
      power *= p;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * power);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factor_integer(n)) {
    if (e > 1) return false;
  }
  return true;
}

SquareSplit split_square(const Integer& m) {
  if (m == 0) throw PreconditionError("split_square of zero");
  SquareSplit out{m < 0 ? Integer(-1) : Integer(1), 1};
  for (const auto& [p, e] : factor_integer(m)) {
    if (e % 2 == 1) out.core *= p;
    out.root *= ipow(p, e / 2);
  }
  return out;
}

Integer euler_totient(const Integer& n) {
  if (n <= 0) throw PreconditionError("totient needs a positive integer");
  Integer out = 1;
  for (const auto& [p, e] : factor_integer(n)) out *= (p - 1) * ipow(p, e - 1);
  return out;
}

unsigned long valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw PreconditionError("valuation of zero");
  unsigned long v = 0;
  Integer rest = n;
  while (divides(p, rest)) {
    rest /= p;
    ++v;
  }
  return v;
}

}  // namespace fusionarith
