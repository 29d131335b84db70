#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"

#include "fusionarith/error.hpp"
#include "fusionarith/integer.hpp"
#include "fusionarith/polynomial.hpp"
#include "fusionarith/quadratic.hpp"
#include "fusionarith/roots.hpp"

using namespace fusionarith;

TEST_CASE("rational parsing is exact and canonical") {
  CHECK(to_string(parse_rational("4/8")) == "1/2");
  CHECK(to_string(parse_rational("-3/6")) == "-1/2");
  CHECK(to_string(parse_rational("6/3")) == "2");
  CHECK(to_string(parse_rational("  12 ")) == "12");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_integer("3/4"), ParseError);
  CHECK(parse_integer("-343") == -343);
}

TEST_CASE("divisibility conventions") {
  CHECK(divides(5, 0));
  CHECK(divides(0, 0));
  CHECK_FALSE(divides(0, 3));
  CHECK(divides(-4, 12));
  CHECK_FALSE(divides(7, 50));
}

TEST_CASE("integer helpers agree with naive computation") {
  for (long n = 1; n <= 400; ++n) {
    std::vector<Integer> naive;
    for (long d = 1; d <= n; ++d) {
      if (n % d == 0) naive.push_back(d);
    }
    CHECK(positive_divisors(n) == naive);
    long phi = 0;
    for (long k = 1; k <= n; ++k) phi += std::gcd(k, n) == 1;
    CHECK(euler_totient(n) == phi);
    Integer product = 1;
    for (const auto& [p, e] : factor_integer(n)) product *= ipow(p, e);
    CHECK(product == n);
    const auto split = split_square(n);
    CHECK(split.core * split.root * split.root == n);
    CHECK(is_squarefree(split.core));
    const long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    CHECK(floor_sqrt(n) == r);
    CHECK(is_perfect_square(n).has_value() == (r * r == n));
  }
  CHECK(valuation(729, 3) == 6);
  CHECK(floor(Rational(-7, 2)) == -4);
  CHECK(ceil(Rational(-7, 2)) == -3);
  CHECK_FALSE(is_perfect_square(-4).has_value());
}

TEST_CASE("polynomial text round trip") {
  for (const char* s : {"x^3-28x^2+196x-343", "x^2-12x+18", "-x", "2x^4-1", "x", "7", "0"}) {
    CHECK(IntPolynomial::parse(s).to_string() == s);
  }
  CHECK(IntPolynomial::parse("3*x^3 - 2 x + 1").to_string() == "3x^3-2x+1");
  CHECK(IntPolynomial::parse("x^2+x^2").to_string() == "2x^2");
  CHECK_THROWS_AS(IntPolynomial::parse("x^"), ParseError);
  CHECK_THROWS_AS(IntPolynomial::parse("y+1"), ParseError);
}

TEST_CASE("polynomial arithmetic matches pointwise evaluation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-9, 9);
  const auto random_poly = [&](int deg) {
    std::vector<Integer> c;
    for (int i = 0; i <= deg; ++i) c.push_back(coef(rng));
    if (c.back() == 0) c.back() = 1;
    return IntPolynomial(c);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_poly(trial % 4 + 1);
    const auto b = random_poly(trial % 3 + 1);
    for (long x = -3; x <= 3; ++x) {
      CHECK((a * b).eval(Integer(x)) == a.eval(Integer(x)) * b.eval(Integer(x)));
      CHECK((a - b).eval(Integer(x)) == a.eval(Integer(x)) - b.eval(Integer(x)));
    }
    const RatPolynomial A(a), B(b);
    const auto [q, r] = divmod(A, B);
    CHECK(r.degree() < b.degree());
    CHECK((A - q * B - r).is_zero());
    CHECK(exact_quotient(a * b, b) == a);
    const auto g = gcd(a * b, b);
    CHECK(g.degree() == b.primitive_part().degree());
  }
}

TEST_CASE("content and derivative") {
  const auto p = IntPolynomial::parse("-6x^2+4x-2");
  CHECK(p.content() == -2);
  CHECK(p.primitive_part().to_string() == "3x^2-2x+1");
  CHECK(IntPolynomial::parse("x^3-3x+1").derivative().to_string() == "3x^2-3");
  CHECK(IntPolynomial::parse("x^2").shifted(1).to_string() == "x^2+2x+1");
}

TEST_CASE("sturm counts on known polynomials") {
  CHECK(sturm_real_root_count(IntPolynomial::parse("x^3-3x+1")) == 3);
  CHECK(sturm_real_root_count(IntPolynomial::parse("x^2+1")) == 0);
  CHECK(sturm_real_root_count(IntPolynomial::parse("x^3-2")) == 1);
  // Endpoint roots: (0, 1] contains 1, (1, 2) does not.
  const auto p = IntPolynomial::parse("x^2-1");
  CHECK(sturm_real_root_count(p, {Rational(0), Rational(1), true, false}) == 1);
  CHECK(sturm_real_root_count(p, {Rational(1), Rational(2), true, true}) == 0);
  CHECK(sturm_real_root_count(p, {Rational(-1), Rational(1), false, false}) == 2);
  CHECK_THROWS_AS(sturm_real_root_count(IntPolynomial::parse("x^2-2x+1")), PreconditionError);
  CHECK(real_root_count_with_multiplicity(IntPolynomial::parse("x^3-2x^2+x")) == 3);
}

TEST_CASE("root isolation brackets every root once") {
  const auto p = IntPolynomial::parse("x^3-54x^2+405x-729");
  const auto ivs = isolate_real_roots(p);
  REQUIRE(ivs.size() == 3);
  for (const auto& iv : ivs) {
    const auto narrow = refine_root(p, iv, Rational(1, 1000000));
    CHECK(narrow.hi - narrow.lo <= Rational(1, 1000000));
    CHECK(sturm_real_root_count(p, RealRange::of(narrow)) == 1);
  }
  const auto with_rational = isolate_real_roots(IntPolynomial::parse("x^3-28x^2+196x-343"));
  REQUIRE(with_rational.size() == 3);
  CHECK(with_rational[1].to_string() == "[7]");
}

TEST_CASE("rational roots and factoring") {
  CHECK(rational_roots(IntPolynomial::parse("2x^2-3x+1")) == std::vector<Rational>{Rational(1, 2), Rational(1)});
  const auto f = factor_over_rationals(IntPolynomial::parse("x^3-28x^2+196x-343"));
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].to_string() == "x-7");
  CHECK(f.factors[1].to_string() == "x^2-21x+49");
  const auto quartic = IntPolynomial::parse("x^4+4");  // (x^2-2x+2)(x^2+2x+2)
  const auto g = factor_over_rationals(quartic);
  CHECK(g.factors.size() == 2);
  CHECK(g.expand() == quartic);
  CHECK(factor_over_rationals(IntPolynomial::parse("x^4-10x^2+1")).factors.size() == 1);
  CHECK(factor_over_rationals(IntPolynomial::parse("-2x^2+8")).expand() == IntPolynomial::parse("-2x^2+8"));
  CHECK_THROWS_AS(factor_over_rationals(IntPolynomial::parse("x^5-1")), UnsupportedDegree);
  CHECK_THROWS_AS(factor_over_rationals(IntPolynomial::parse("3")), PreconditionError);
}

TEST_CASE("discriminants against closed forms") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coef(-20, 20);
  for (int trial = 0; trial < 300; ++trial) {
    const Integer b = coef(rng), c = coef(rng), d = coef(rng);
    CHECK(poly_discriminant(IntPolynomial({c.get_si(), b.get_si(), 1})) == b * b - 4 * c);
    const Integer cubic = b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
    CHECK(poly_discriminant(IntPolynomial({d.get_si(), c.get_si(), b.get_si(), 1})) == cubic);
  }
  // x^4 + a has discriminant 256 a^3.
  for (long a = -6; a <= 6; ++a) {
    if (a == 0) continue;
    CHECK(poly_discriminant(IntPolynomial({a, 0, 0, 0, 1})) == 256 * ipow(a, 3));
  }
  CHECK_THROWS_AS(poly_discriminant(IntPolynomial::parse("x^5+1")), UnsupportedDegree);
}

TEST_CASE("quadratic field literals") {
  CHECK(QuadraticFieldElement::parse("3/2-1/2r5").to_string() == "(3-r5)/2");
  CHECK(QuadraticFieldElement::parse("r8").to_string() == "2r2");
  CHECK(QuadraticFieldElement::parse("14+5r5").to_string() == "14+5r5");
  CHECK(QuadraticFieldElement::parse("-r2").to_string() == "-r2");
  CHECK(QuadraticFieldElement::parse("1/2").to_string() == "1/2");
  CHECK(QuadraticFieldElement::parse("r4") == QuadraticFieldElement(2));
  CHECK_THROWS_AS(QuadraticFieldElement::parse("1+"), ParseError);
}

TEST_CASE("quadratic field arithmetic") {
  const auto phi = QuadraticFieldElement::parse("(1+r5)/2");
  CHECK(phi * phi - phi == QuadraticFieldElement(1));
  CHECK((QuadraticFieldElement(10) / QuadraticFieldElement::parse("(3-r5)/2")).to_string() == "15+5r5");
  CHECK(phi.norm() == -1);
  CHECK(phi.trace() == 1);
  CHECK(phi.is_algebraic_integer());
  CHECK_FALSE(QuadraticFieldElement::parse("1/2+r5").is_algebraic_integer());
  CHECK_THROWS_AS(QuadraticFieldElement::sqrt(2) + QuadraticFieldElement::sqrt(3), MixedFieldError);
  CHECK(common_field(QuadraticFieldElement(3), QuadraticFieldElement::sqrt(7)) == 7);
}

TEST_CASE("quadratic sign is exact") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coef(-40, 40);
  for (int trial = 0; trial < 2000; ++trial) {
    const long a = coef(rng), b = coef(rng);
    const QuadraticFieldElement x(a, b, 2);
    const double value = (a + b * std::sqrt(2.0)) / 2;
    const int expect = value > 1e-9 ? 1 : value < -1e-9 ? -1 : 0;
    CHECK(x.sign() == expect);
  }
  // a^2 = n b^2 exactly at a non-square n never happens, so the only zero is 0.
  CHECK(QuadraticFieldElement(Rational(0), Rational(0), 3).sign() == 0);
  CHECK(QuadraticFieldElement::parse("7-5r2").sign() == -1);
  CHECK(QuadraticFieldElement::parse("99-70r2").sign() == 1);
}
