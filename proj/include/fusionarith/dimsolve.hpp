#pragma once

// Dimension decompositions: sums of squares of quadratic integers
// (a + b sqrt(n))/2, and sums of integer squared dimensions.

#include <map>
#include <utility>
#include <vector>

#include "fusionarith/quadratic.hpp"

namespace fusionarith {

struct QuadraticTarget {
  Integer n;                     // squarefree, positive
  QuadraticFieldElement target;  // what the non-integer simples must sum to
  int terms = 1;
};

struct SquareConstraints {
  Integer A;  // sum of alpha^2 + n beta^2
  Integer B;  // sum of alpha * beta
};

/// A = 4 * rational part, B = 2 * coefficient of sqrt(n).
SquareConstraints fp_square_constraints(const QuadraticTarget& target);

struct Decomposition {
  std::vector<std::pair<Integer, Integer>> terms;  // (alpha, beta), sorted by (beta, alpha)

  /// Sum of ((alpha + beta sqrt(n)) / 2)^2.
  QuadraticFieldElement expand(const Integer& n) const;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

bool algebraic_integer_check(const Integer& alpha, const Integer& beta, const Integer& n);

/// Every multiset of `target.terms` pairs with alpha, beta >= 1 meeting the
/// constraints, each pair an algebraic integer. Sorted.
std::vector<Decomposition> enumerate_decompositions(const QuadraticTarget& target);

/// Same search keyed by term count, for counts lo..hi.
std::map<int, std::vector<Decomposition>> enumerate_decompositions_by_count(const Integer& n, const QuadraticFieldElement& target,
                                                                            int lo, int hi);

/// Multisets of `term_count` positive integers summing to total - 1, each
/// dividing divisor_bound. Each multiset ascending; the list sorted.
std::vector<std::vector<Integer>> enumerate_integer_square_decompositions(const Integer& total, int term_count,
                                                                          const Integer& divisor_bound);

/// dim > n1 + (3/2) n2, the trace inequality for an orbit with no square
/// dimension conjugate to (3 - sqrt 5)/2.
bool trace_bound_feasible(const Integer& n1, const Integer& n2, const Integer& dim);

}  // namespace fusionarith
