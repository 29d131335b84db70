#pragma once

// Candidate formal-codegree families for one branch of the class equation.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fusionarith/polynomial.hpp"

namespace fusionarith {

enum class ResidualMode {
  exact,    // sum of 1/f_i over the orbit equals the residual
  at_most,  // sum of 1/f_i over the orbit is at most the residual
  less_than,
};

struct ClassEquationInstance {
  Integer global_dim;
  std::vector<Rational> fixed_codegrees;
  /// Given directly instead of through fixed codegrees (e.g. a bound b/a <= 3/5).
  std::optional<Rational> residual;
  int orbit_degree = 1;
  std::optional<Integer> product_divides;  // default global_dim^n
  std::optional<std::pair<Integer, Integer>> product_range;  // inclusive
  /// Strict lower bounds for the orbit's roots in ascending order. An empty
  /// list means every root must exceed 1.
  std::vector<Rational> root_lower_bounds;
  std::optional<Integer> membership_conductor;
  std::vector<std::pair<Integer, Integer>> excluded_quadratic_subfields;  // (d, N)
  bool excluded_real_subfield_only = true;
  std::optional<Integer> required_quadratic_field;
  std::optional<std::pair<Integer, Integer>> scan_range;  // inclusive, for e1
  ResidualMode mode = ResidualMode::exact;
  /// Filter names to skip; used by mutation tests.
  std::set<std::string> disabled_filters;

  Integer product_bound() const;
  std::vector<Rational> lower_bounds() const;
};

/// Canonical pipeline order.
inline const std::vector<std::string>& filter_names() {
  static const std::vector<std::string> names{"d-number",  "totally-real",           "totally-positive",
                                              "cyclotomic", "cyclic-cubic-membership", "quadratic-subfield"};
  return names;
}

struct FilterResult {
  std::string filter;
  bool passed = false;
  std::string witness;
};

struct Certificate {
  IntPolynomial candidate;
  Integer product;
  std::vector<FilterResult> filters;  // evaluated filters, stopping at the first failure
  bool survived = false;
  bool boundary = false;  // just outside the default scan; must never survive
  std::string field;      // "disc D = d*k^2" for quadratic factors, if any
  std::vector<Rational> rational_roots;  // with multiplicity, ascending
  std::vector<IntPolynomial> factors;    // irreducible factors over Q

  std::optional<std::string> rejected_by() const;
};

struct ProductInfo {
  Integer product;
  Rational forced;    // r * P; the forced e_{n-1} (exact mode) or its upper bound
  bool amgm_feasible;  // P >= (n/r)^n, a necessary condition for positive roots
};

struct EnumerationResult {
  Rational residual;
  std::vector<ProductInfo> products;
  std::vector<Certificate> certificates;  // survivors first
  std::size_t survivors() const;
};

/// r = 1 - sum 1/f over the fixed codegrees, unless given directly.
Rational residual_target(const ClassEquationInstance& instance);

void validate(const ClassEquationInstance& instance);

std::vector<Integer> admissible_products(const ClassEquationInstance& instance);
std::vector<ProductInfo> admissible_product_info(const ClassEquationInstance& instance);

struct ForcedCoefficients {
  Integer product;                 // e_n
  std::optional<Integer> e_second;  // e_{n-1}, when forced
};

ForcedCoefficients forced_coefficients(const ClassEquationInstance& instance, const Integer& product);

/// x^n - e1 x^(n-1) + e2 x^(n-2) - ... from elementary symmetric values e1..en.
IntPolynomial from_elementary(const std::vector<Integer>& e);

Certificate run_filter_pipeline(const IntPolynomial& p, const ClassEquationInstance& instance);

EnumerationResult enumerate_candidates(const ClassEquationInstance& instance, unsigned jobs = 1);

}  // namespace fusionarith
