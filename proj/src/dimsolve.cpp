#include "fusionarith/dimsolve.hpp"

#include <algorithm>

#include "fusionarith/error.hpp"

namespace fusionarith {

namespace {

struct Search {
  Integer n;
  std::vector<std::pair<Integer, Integer>> current;  // (alpha, beta)
  std::vector<Decomposition> found;

  // Pairs are chosen in nondecreasing (beta, alpha) order so each multiset
  // is produced once.
  void run(const Integer& a_left, const Integer& b_left, int k, const Integer& min_beta, const Integer& min_alpha) {
    if (k == 0) {
      if (a_left == 0 && b_left == 0) found.push_back({current});
      return;
    }
    const Integer rest_a = (k - 1) * (1 + n);  // cheapest possible other terms
    const Integer rest_b = k - 1;
    for (Integer beta = min_beta; n * beta * beta + 1 + rest_a <= a_left && beta + rest_b <= b_left; ++beta) {
      const Integer alpha0 = beta == min_beta ? min_alpha : Integer(1);
      for (Integer alpha = alpha0; alpha * alpha + n * beta * beta + rest_a <= a_left && alpha * beta + rest_b <= b_left; ++alpha) {
        if (!algebraic_integer_check(alpha, beta, n)) continue;
        current.emplace_back(alpha, beta);
        run(a_left - alpha * alpha - n * beta * beta, b_left - alpha * beta, k - 1, beta, alpha);
        current.pop_back();
      }
    }
  }
};

void partitions(const Integer& left, int k, const std::vector<Integer>& parts, std::size_t from, std::vector<Integer>& current,
                std::vector<std::vector<Integer>>& out) {
  if (k == 0) {
    if (left == 0) out.push_back(current);
    return;
  }
  for (std::size_t i = from; i < parts.size(); ++i) {
    if (parts[i] * k > left) break;
    current.push_back(parts[i]);
    partitions(left - parts[i], k - 1, parts, i, current, out);
    current.pop_back();
  }
}

}  // namespace

SquareConstraints fp_square_constraints(const QuadraticTarget& t) {
  if (t.n <= 0 || !is_squarefree(t.n)) throw PreconditionError("field generator must be squarefree and positive");
  if (!t.target.is_rational() && t.target.n() != t.n) throw MixedFieldError("target " + t.target.to_string() + " is not in Q(sqrt(" + t.n.get_str() + "))");
  const Rational A = 4 * t.target.rational_part();
  const Rational B = 2 * t.target.sqrt_coefficient();
  if (A.get_den() != 1 || B.get_den() != 1)
    throw InfeasibleInstance("target " + t.target.to_string() + " gives non-integral constraints A=" + to_string(A) + ", B=" + to_string(B));
  return {A.get_num(), B.get_num()};
}

QuadraticFieldElement Decomposition::expand(const Integer& n) const {
  QuadraticFieldElement sum;
  for (const auto& [alpha, beta] : terms) {
    const QuadraticFieldElement x(alpha, beta, n);
    sum += x * x;
  }
  return sum;
}

bool algebraic_integer_check(const Integer& alpha, const Integer& beta, const Integer& n) {
  if (n <= 0 || !is_squarefree(n)) throw PreconditionError("n must be squarefree and positive");
  return divides(4, alpha * alpha - n * beta * beta);
}

std::vector<Decomposition> enumerate_decompositions(const QuadraticTarget& target) {
  if (target.terms < 1) throw PreconditionError("need at least one term");
  const auto [A, B] = fp_square_constraints(target);
  Search s{target.n, {}, {}};
  if (A > 0 && B > 0) s.run(A, B, target.terms, 1, 1);
  return s.found;
}

std::map<int, std::vector<Decomposition>> enumerate_decompositions_by_count(const Integer& n, const QuadraticFieldElement& target,
                                                                            int lo, int hi) {
  std::map<int, std::vector<Decomposition>> out;
  for (int k = lo; k <= hi; ++k) out[k] = enumerate_decompositions({n, target, k});
  return out;
}

std::vector<std::vector<Integer>> enumerate_integer_square_decompositions(const Integer& total, int term_count,
                                                                          const Integer& divisor_bound) {
  if (term_count < 1 || total < term_count) throw PreconditionError("need total >= term_count >= 1");
  if (divisor_bound == 0) throw PreconditionError("divisor bound must be nonzero");
  std::vector<std::vector<Integer>> out;
  std::vector<Integer> current;
  partitions(total - 1, term_count, positive_divisors(divisor_bound), 0, current, out);
  return out;
}

bool trace_bound_feasible(const Integer& n1, const Integer& n2, const Integer& dim) {
  return Rational(dim) > Rational(n1) + make_rational(3 * n2, 2);
}

}  // namespace fusionarith
