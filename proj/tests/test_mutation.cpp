// Each filter in the dim-7 pipeline must be load-bearing: switching it off
// has to change the survivor set.

#include "doctest.h"

#include "fusionarith/codegree.hpp"

using namespace fusionarith;

namespace {

ClassEquationInstance dim7() {
  ClassEquationInstance inst;
  inst.global_dim = 7;
  inst.fixed_codegrees = {7, 7, 7};
  inst.orbit_degree = 3;
  inst.root_lower_bounds = {Rational(7, 4), Rational(7, 2), 7};
  for (long k = 1; k <= 4; ++k) inst.excluded_quadratic_subfields.emplace_back(5, ipow(7, k));
  return inst;
}

std::vector<std::string> survivors(const ClassEquationInstance& inst) {
  std::vector<std::string> out;
  for (const auto& c : enumerate_candidates(inst).certificates) {
    if (c.survived) out.push_back(c.candidate.to_string());
  }
  return out;
}

void check_load_bearing(const std::string& filter) {
  const auto baseline = survivors(dim7());
  auto mutated = dim7();
  mutated.disabled_filters = {filter};
  INFO("without " << filter);
  CHECK(survivors(mutated) != baseline);
}

}  // namespace

TEST_CASE("dim-7 without d-number") { check_load_bearing("d-number"); }
TEST_CASE("dim-7 without totally-real") { check_load_bearing("totally-real"); }
TEST_CASE("dim-7 without totally-positive") { check_load_bearing("totally-positive"); }
TEST_CASE("dim-7 without cyclotomic") { check_load_bearing("cyclotomic"); }
TEST_CASE("dim-7 without quadratic-subfield") { check_load_bearing("quadratic-subfield"); }
