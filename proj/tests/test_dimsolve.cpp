#include "doctest.h"

#include "fusionarith/dimsolve.hpp"
#include "fusionarith/error.hpp"

using namespace fusionarith;

namespace {

using Pairs = std::vector<std::pair<Integer, Integer>>;

Pairs pairs(std::initializer_list<std::pair<long, long>> xs) {
  Pairs out;
  for (const auto& [a, b] : xs) out.emplace_back(a, b);
  return out;
}

}  // namespace

TEST_CASE("square constraints") {
  const auto c = fp_square_constraints({5, QuadraticFieldElement::parse("14+5r5"), 1});
  CHECK(c.A == 56);
  CHECK(c.B == 10);
  CHECK_THROWS_AS(fp_square_constraints({5, QuadraticFieldElement::parse("1/8+r5"), 1}), InfeasibleInstance);
  CHECK_THROWS_AS(fp_square_constraints({5, QuadraticFieldElement::parse("1+r2"), 1}), MixedFieldError);
  CHECK_THROWS_AS(fp_square_constraints({4, QuadraticFieldElement(1), 1}), PreconditionError);
}

TEST_CASE("algebraic integer check") {
  CHECK(algebraic_integer_check(1, 1, 5));
  CHECK(algebraic_integer_check(5, 1, 5));
  CHECK_FALSE(algebraic_integer_check(1, 1, 2));
  CHECK(algebraic_integer_check(2, 2, 2));
}

TEST_CASE("decompositions of 14+5r5 by term count") {
  const auto by = enumerate_decompositions_by_count(5, QuadraticFieldElement::parse("14+5r5"), 1, 9);
  for (const auto& [k, sols] : by) {
    if (k == 4) {
      REQUIRE(sols.size() == 1);
      CHECK(sols[0].terms == pairs({{1, 1}, {1, 1}, {3, 1}, {5, 1}}));
    } else if (k == 5) {
      REQUIRE(sols.size() == 1);
      CHECK(sols[0].terms == pairs({{1, 1}, {1, 1}, {1, 1}, {3, 1}, {2, 2}}));
    } else if (k == 8) {
      REQUIRE(sols.size() == 1);
      CHECK(sols[0].terms == pairs({{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {3, 1}}));
    } else {
      CHECK(sols.empty());
    }
  }
}

TEST_CASE("every decomposition expands back to its target") {
  for (const char* t : {"14+5r5", "(3+r5)/2", "6+2r5", "9+4r5"}) {
    const auto target = QuadraticFieldElement::parse(t);
    for (int k = 1; k <= 6; ++k) {
      for (const auto& d : enumerate_decompositions({5, target, k})) {
        CHECK(d.expand(5) == target);
        CHECK(d.terms.size() == static_cast<std::size_t>(k));
      }
    }
  }
}

TEST_CASE("dim-6 targets have no decomposition") {
  for (const char* t : {"3+3r2", "4+3r2", "5+3r2"}) {
    for (int k = 1; k <= 3; ++k) CHECK(enumerate_decompositions({2, QuadraticFieldElement::parse(t), k}).empty());
  }
  CHECK(enumerate_decompositions({5, QuadraticFieldElement::parse("(3+r5)/2"), 1}).size() == 1);
}

TEST_CASE("integer square decompositions") {
  CHECK(enumerate_integer_square_decompositions(4, 2, 4) == std::vector<std::vector<Integer>>{{1, 2}});
  CHECK(enumerate_integer_square_decompositions(4, 3, 4) == std::vector<std::vector<Integer>>{{1, 1, 1}});
  CHECK(enumerate_integer_square_decompositions(5, 3, 5).empty());
  CHECK(enumerate_integer_square_decompositions(3, 1, 3).empty());
  CHECK_THROWS_AS(enumerate_integer_square_decompositions(2, 3, 4), PreconditionError);
}

TEST_CASE("trace bound") {
  CHECK(trace_bound_feasible(2, 2, 10));
  CHECK_FALSE(trace_bound_feasible(4, 4, 10));
  CHECK_FALSE(trace_bound_feasible(5, 2, 8));
}
