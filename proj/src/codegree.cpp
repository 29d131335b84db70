#include "fusionarith/codegree.hpp"

#include <algorithm>
#include <thread>

#include "fusionarith/algint.hpp"
#include "fusionarith/error.hpp"
#include "fusionarith/roots.hpp"

namespace fusionarith {

namespace {

struct Candidate {
  Integer product;
  IntPolynomial poly;
  bool boundary = false;
};

std::string describe_quadratic_field(const IntPolynomial& q) {
  const Integer disc = poly_discriminant(q);
  if (auto s = is_perfect_square(disc)) return "disc " + disc.get_str() + " = " + s->get_str() + "^2";
  const SquareSplit split = split_square(disc);
  std::string out = "disc " + disc.get_str() + " = " + split.core.get_str();
  if (split.root != 1) out += "*" + split.root.get_str() + "^2";
  return out;
}

// Squarefree part of the discriminant of each irreducible quadratic factor.
std::vector<std::pair<IntPolynomial, Integer>> quadratic_factors(const Factorization& f) {
  std::vector<std::pair<IntPolynomial, Integer>> out;
  for (const auto& q : f.factors) {
    if (q.degree() == 2) out.emplace_back(q, split_square(poly_discriminant(q)).core);
  }
  return out;
}

FilterResult check_d_number(const IntPolynomial& p) {
  const auto v = is_d_number(p);
  if (v.passes) return {"d-number", true, "(a_n)^i divides (a_i)^n for all i"};
  const int n = p.degree();
  const int i = *v.failing_index;
  const Integer an = abs(p.coeff(0));
  const Integer ai = abs(p.coeff(static_cast<std::size_t>(n - i)));
  return {"d-number", false,
          "i=" + std::to_string(i) + ": " + an.get_str() + "^" + std::to_string(i) + " does not divide " + ai.get_str() + "^" +
              std::to_string(n)};
}

FilterResult check_totally_real(const IntPolynomial& p) {
  const IntPolynomial s = squarefree_part(p);
  const std::size_t real = sturm_real_root_count(s);
  const std::string counts = std::to_string(real) + " of " + std::to_string(s.degree()) + " distinct roots real";
  return {"totally-real", real == static_cast<std::size_t>(s.degree()), counts};
}

FilterResult check_totally_positive(const IntPolynomial& p, const std::vector<Rational>& bounds) {
  const std::size_t nonpositive = real_root_count_with_multiplicity(p, RealRange::at_most(0));
  if (nonpositive > 0) return {"totally-positive", false, std::to_string(nonpositive) + " roots <= 0"};
  std::string ok = "sorted roots exceed";
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const std::size_t below = real_root_count_with_multiplicity(p, RealRange::at_most(bounds[i]));
    if (below > i) {
      return {"totally-positive", false,
              "root " + std::to_string(i + 1) + " not above " + to_string(bounds[i]) + " (" + std::to_string(below) + " roots <= " +
                  to_string(bounds[i]) + ")"};
    }
    ok += (i ? ", " : " ") + to_string(bounds[i]);
  }
  return {"totally-positive", true, ok};
}

FilterResult check_cyclotomic(const IntPolynomial& p) {
  const bool pass = passes_cyclotomic_test(p);
  if (p.degree() <= 2) return {"cyclotomic", pass, "degree <= 2"};
  if (factor_over_rationals(p).factors.size() > 1) return {"cyclotomic", pass, "reducible"};
  const Integer disc = poly_discriminant(p);
  if (pass) return {"cyclotomic", true, "disc " + disc.get_str() + " = " + is_perfect_square(disc)->get_str() + "^2"};
  return {"cyclotomic", false, "disc " + disc.get_str() + " is not a square"};
}

FilterResult check_membership(const Factorization& f, const Integer& conductor) {
  const std::string name = "cyclic-cubic-membership";
  std::string note;
  for (const auto& q : f.factors) {
    if (q.degree() == 1) {
      note += (note.empty() ? "" : "; ") + std::string("rational root of ") + q.to_string();
      continue;
    }
    if (q.degree() == 2) {
      return {name, false, "factor " + q.to_string() + " generates Q(sqrt(" + split_square(poly_discriminant(q)).core.get_str() + ")), not in a cubic field"};
    }
    const auto v = cyclic_cubic_membership(q, conductor);
    if (!v.member) return {name, false, "conductor " + conductor.get_str() + ": " + v.reason};
    note += (note.empty() ? "" : "; ") + v.reason;
  }
  return {name, true, note};
}

FilterResult check_quadratic_subfield(const Factorization& f, const ClassEquationInstance& inst) {
  const std::string name = "quadratic-subfield";
  const auto quads = quadratic_factors(f);
  for (const auto& [q, d] : quads) {
    std::vector<std::string> moduli;
    for (const auto& [ed, en] : inst.excluded_quadratic_subfields) {
      if (ed == d) moduli.push_back(en.get_str());
    }
    if (!moduli.empty()) {
      std::string list;
      for (const auto& m : moduli) list += (list.empty() ? "" : ",") + m;
      return {name, false, "factor " + q.to_string() + " generates Q(sqrt(" + d.get_str() + ")), excluded for N in {" + list + "}; d=" + d.get_str()};
    }
  }
  if (inst.required_quadratic_field) {
    const Integer& want = *inst.required_quadratic_field;
    const bool found = std::any_of(quads.begin(), quads.end(), [&](const auto& qd) { return qd.second == want; });
    if (!found) {
      if (quads.empty()) return {name, false, "no irreducible quadratic factor; need Q(sqrt(" + want.get_str() + "))"};
      return {name, false, "field Q(sqrt(" + quads.front().second.get_str() + ")) is not Q(sqrt(" + want.get_str() + "))"};
    }
  }
  if (quads.empty()) return {name, true, "no irreducible quadratic factor"};
  return {name, true, "Q(sqrt(" + quads.front().second.get_str() + ")) allowed"};
}

bool enabled(const ClassEquationInstance& inst, const std::string& name) { return inst.disabled_filters.count(name) == 0; }

std::vector<Candidate> generate(const ClassEquationInstance& inst, const std::vector<ProductInfo>& products) {
  std::vector<Candidate> out;
  const int n = inst.orbit_degree;
  for (const auto& info : products) {
    const Integer& P = info.product;
    if (n == 1) {
      out.push_back({P, from_elementary({P})});
      continue;
    }
    if (n == 2 && inst.mode == ResidualMode::exact) {
      out.push_back({P, from_elementary({info.forced.get_num(), P})});
      continue;
    }
    Integer lo = 1;
    Integer hi = info.forced.get_num();
    if (inst.mode == ResidualMode::at_most) hi = floor(info.forced);
    if (inst.mode == ResidualMode::less_than) hi = ceil(info.forced) - 1;
    const bool defaulted = !inst.scan_range.has_value();
    if (!defaulted) {
      lo = std::max(lo, inst.scan_range->first);
      hi = std::min(hi, inst.scan_range->second);
    }
    for (Integer e1 = lo; e1 <= hi; ++e1) {
      if (n == 2) out.push_back({P, from_elementary({e1, P})});
      else out.push_back({P, from_elementary({e1, info.forced.get_num(), P})});
    }
    if (n == 3 && defaulted) out.push_back({P, from_elementary({hi + 1, info.forced.get_num(), P}), true});
  }
  return out;
}

}  // namespace

Integer ClassEquationInstance::product_bound() const {
  return product_divides ? *product_divides : ipow(global_dim, static_cast<unsigned long>(orbit_degree));
}

std::vector<Rational> ClassEquationInstance::lower_bounds() const {
  if (!root_lower_bounds.empty()) return root_lower_bounds;
  return std::vector<Rational>(static_cast<std::size_t>(orbit_degree), Rational(1));
}

std::optional<std::string> Certificate::rejected_by() const {
  for (const auto& f : filters) {
    if (!f.passed) return f.filter;
  }
  return std::nullopt;
}

std::size_t EnumerationResult::survivors() const {
  return static_cast<std::size_t>(std::count_if(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.survived; }));
}

Rational residual_target(const ClassEquationInstance& instance) {
  if (instance.residual) {
    if (!instance.fixed_codegrees.empty()) throw PreconditionError("give either a residual or fixed codegrees, not both");
    if (*instance.residual <= 0) throw InfeasibleInstance("residual " + to_string(*instance.residual) + " is not positive");
    return *instance.residual;
  }
  Rational r = 1;
  for (const auto& f : instance.fixed_codegrees) {
    if (f <= 0) throw PreconditionError("fixed codegrees must be positive, got " + to_string(f));
    r -= 1 / f;
  }
  if (r <= 0) throw InfeasibleInstance("residual " + to_string(r) + " is not positive");
  return r;
}

void validate(const ClassEquationInstance& inst) {
  if (inst.global_dim <= 0) throw PreconditionError("global dimension must be positive");
  if (inst.orbit_degree < 1) throw PreconditionError("orbit degree must be at least 1");
  if (inst.orbit_degree > 3) throw UnsupportedDegree("orbit degree " + std::to_string(inst.orbit_degree) + " is not supported (max 3)");
  if (inst.mode != ResidualMode::exact && inst.orbit_degree == 3) throw PreconditionError("inequality residual modes support orbit degree <= 2");
  residual_target(inst);
  if (inst.product_bound() <= 0) throw PreconditionError("product bound must be positive");
  if (!inst.root_lower_bounds.empty()) {
    if (inst.root_lower_bounds.size() != static_cast<std::size_t>(inst.orbit_degree))
      throw PreconditionError("need one root lower bound per root");
    if (!std::is_sorted(inst.root_lower_bounds.begin(), inst.root_lower_bounds.end()))
      throw PreconditionError("root lower bounds must be ascending");
  }
  if (inst.membership_conductor) cyclic_cubic_generator(*inst.membership_conductor);
  for (const auto& [d, N] : inst.excluded_quadratic_subfields) {
    if (quadratic_subfield_in_cyclotomic(d, N, inst.excluded_real_subfield_only))
      throw PreconditionError("exclusion of Q(sqrt(" + d.get_str() + ")) for N=" + N.get_str() + " is unjustified: the field is contained");
  }
  if (inst.scan_range && inst.scan_range->first > inst.scan_range->second) throw PreconditionError("empty scan range");
}

std::vector<ProductInfo> admissible_product_info(const ClassEquationInstance& inst) {
  validate(inst);
  const Rational r = residual_target(inst);
  const int n = inst.orbit_degree;
  Rational bound_product = 1;
  for (const auto& b : inst.lower_bounds()) bound_product *= b;
  const Rational amgm = rpow(n / r, static_cast<unsigned long>(n));
  std::vector<ProductInfo> out;
  for (const auto& P : positive_divisors(inst.product_bound())) {
    const Rational forced = r * P;
    if (inst.mode == ResidualMode::exact) {
      if (forced.get_den() != 1) continue;
      if (n == 1 && forced != 1) continue;
    } else if (forced < 1 || (inst.mode == ResidualMode::less_than && forced == 1)) {
      continue;
    }
    if (inst.product_range && (P < inst.product_range->first || P > inst.product_range->second)) continue;
    if (!(P > bound_product)) continue;
    out.push_back({P, forced, P >= amgm});
  }
  return out;
}

std::vector<Integer> admissible_products(const ClassEquationInstance& instance) {
  std::vector<Integer> out;
  for (const auto& info : admissible_product_info(instance)) out.push_back(info.product);
  return out;
}

ForcedCoefficients forced_coefficients(const ClassEquationInstance& instance, const Integer& product) {
  const Rational r = residual_target(instance);
  if (product <= 0) throw PreconditionError("product must be positive");
  ForcedCoefficients out{product, std::nullopt};
  if (instance.mode != ResidualMode::exact) return out;
  const Rational forced = r * product;
  if (forced.get_den() != 1) throw PreconditionError("r*P = " + to_string(forced) + " is not an integer; product rejected");
  out.e_second = forced.get_num();
  return out;
}

IntPolynomial from_elementary(const std::vector<Integer>& e) {
  const std::size_t n = e.size();
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  for (std::size_t i = 1; i <= n; ++i) c[n - i] = (i % 2 ? -1 : 1) * e[i - 1];
  return IntPolynomial(std::move(c));
}

Certificate run_filter_pipeline(const IntPolynomial& p, const ClassEquationInstance& inst) {
  if (!p.is_monic()) throw PreconditionError("candidate must be monic: " + p.to_string());
  Certificate cert;
  cert.candidate = p;
  cert.product = abs(p.coeff(0));
  const Factorization f = factor_over_rationals(p);
  cert.factors = f.factors;
  cert.rational_roots = rational_roots(p);
  const auto quads = quadratic_factors(f);
  if (!quads.empty()) cert.field = describe_quadratic_field(quads.front().first);
  else if (p.degree() == 2) cert.field = describe_quadratic_field(p);

  const auto run = [&](const std::string& name, auto&& check) {
    if (!enabled(inst, name)) return true;
    cert.filters.push_back(check());
    return cert.filters.back().passed;
  };
  const auto bounds = inst.lower_bounds();
  bool ok = run("d-number", [&] { return check_d_number(p); }) && run("totally-real", [&] { return check_totally_real(p); }) &&
            run("totally-positive", [&] { return check_totally_positive(p, bounds); }) &&
            run("cyclotomic", [&] { return check_cyclotomic(p); });
  if (ok && inst.membership_conductor) ok = run("cyclic-cubic-membership", [&] { return check_membership(f, *inst.membership_conductor); });
  if (ok && (!inst.excluded_quadratic_subfields.empty() || inst.required_quadratic_field))
    ok = run("quadratic-subfield", [&] { return check_quadratic_subfield(f, inst); });
  cert.survived = ok;
  return cert;
}

EnumerationResult enumerate_candidates(const ClassEquationInstance& inst, unsigned jobs) {
  EnumerationResult out;
  out.residual = residual_target(inst);
  out.products = admissible_product_info(inst);
  const auto candidates = generate(inst, out.products);
  out.certificates.resize(candidates.size());

  const auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < candidates.size(); i += step) {
      out.certificates[i] = run_filter_pipeline(candidates[i].poly, inst);
      out.certificates[i].product = candidates[i].product;
      out.certificates[i].boundary = candidates[i].boundary;
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, candidates.size()))));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
    for (auto& t : pool) t.join();
  }
  for (const auto& c : out.certificates) {
    if (c.boundary && c.survived) throw PreconditionError("boundary candidate " + c.candidate.to_string() + " survived; default scan range is unsound");
  }
  std::stable_sort(out.certificates.begin(), out.certificates.end(), [](const Certificate& a, const Certificate& b) {
    if (a.survived != b.survived) return a.survived;
    return !a.boundary && b.boundary;
  });
  return out;
}

}  // namespace fusionarith
