#include "fusionarith/casefile.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "fusionarith/algint.hpp"
#include "fusionarith/dimsolve.hpp"
#include "fusionarith/error.hpp"
#include "fusionarith/roots.hpp"

namespace fusionarith {

namespace {

// ---------------------------------------------------------------- reading

std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
}

void require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
}

void check_keys(const Json& obj, const std::string& path, const std::set<std::string>& allowed) {
  require_object(obj, path);
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw SchemaError(at(path, key), "unknown key");
  }
}

const Json& need(const Json& obj, const std::string& path, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(at(path, key), "missing required key");
  return *it;
}

const Json* maybe(const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string number_text(const Json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw SchemaError(path, "expected an exact number (integer or string)");
}

template <typename F>
auto parse_at(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw SchemaError(path, e.what());
  } catch (const MixedFieldError& e) {
    throw SchemaError(path, e.what());
  } catch (const PreconditionError& e) {
    throw SchemaError(path, e.what());
  }
}

Integer get_integer(const Json& v, const std::string& path) {
  const std::string text = number_text(v, path);
  return parse_at(path, [&] { return parse_integer(text); });
}

Integer get_positive(const Json& v, const std::string& path) {
  Integer x = get_integer(v, path);
  if (x <= 0) throw SchemaError(path, "must be positive");
  return x;
}

Rational get_rational(const Json& v, const std::string& path) {
  const std::string text = number_text(v, path);
  return parse_at(path, [&] { return parse_rational(text); });
}

int get_int(const Json& v, const std::string& path, int lo, int hi) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi) throw SchemaError(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

bool get_bool(const Json& v, const std::string& path) {
  if (!v.is_boolean()) throw SchemaError(path, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

QuadraticFieldElement get_quadratic(const Json& v, const std::string& path) {
  if (v.is_array()) {
    if (v.size() != 3) throw SchemaError(path, "expected [a, b, n] meaning (a + b sqrt(n))/2");
    const Rational a = get_rational(v[0], at(path, 0));
    const Rational b = get_rational(v[1], at(path, 1));
    const Integer n = get_positive(v[2], at(path, 2));
    return parse_at(path, [&] { return QuadraticFieldElement(a, b, n); });
  }
  const std::string text = number_text(v, path);
  return parse_at(path, [&] { return QuadraticFieldElement::parse(text); });
}

IntPolynomial get_polynomial(const Json& v, const std::string& path) {
  const std::string text = get_string(v, path);
  return parse_at(path, [&] { return IntPolynomial::parse(text); });
}

std::pair<Integer, Integer> get_range(const Json& v, const std::string& path) {
  require_array(v, path);
  if (v.size() != 2) throw SchemaError(path, "expected [low, high]");
  auto r = std::make_pair(get_integer(v[0], at(path, 0)), get_integer(v[1], at(path, 1)));
  if (r.first > r.second) throw SchemaError(path, "empty range");
  return r;
}

std::pair<int, int> get_term_counts(const Json& params, const std::string& path) {
  const Json* single = maybe(params, "terms");
  const Json* range = maybe(params, "term_counts");
  if ((single == nullptr) == (range == nullptr)) throw SchemaError(at(path, "terms"), "give exactly one of terms or term_counts");
  if (single) {
    const int k = get_int(*single, at(path, "terms"), 1, 64);
    return {k, k};
  }
  const std::string p = at(path, "term_counts");
  require_array(*range, p);
  if (range->size() != 2) throw SchemaError(p, "expected [low, high]");
  const int lo = get_int((*range)[0], at(p, 0), 1, 64);
  const int hi = get_int((*range)[1], at(p, 1), 1, 64);
  if (lo > hi) throw SchemaError(p, "empty range");
  return {lo, hi};
}

ClassEquationInstance parse_class_equation(const Json& p, const std::string& path) {
  check_keys(p, path,
             {"global_dim", "fixed_codegrees", "residual", "orbit_degree", "product_divides", "product_range", "root_lower_bounds",
              "membership_conductor", "excluded_quadratic_subfields", "excluded_real_subfield_only", "required_quadratic_field",
              "scan_range", "mode", "disabled_filters"});
  ClassEquationInstance inst;
  inst.global_dim = get_positive(need(p, path, "global_dim"), at(path, "global_dim"));
  inst.orbit_degree = get_int(need(p, path, "orbit_degree"), at(path, "orbit_degree"), 1, 3);
  if (const Json* f = maybe(p, "fixed_codegrees")) {
    const std::string fp = at(path, "fixed_codegrees");
    require_array(*f, fp);
    for (std::size_t i = 0; i < f->size(); ++i) inst.fixed_codegrees.push_back(get_rational((*f)[i], at(fp, i)));
  }
  if (const Json* r = maybe(p, "residual")) {
    if (maybe(p, "fixed_codegrees")) throw SchemaError(at(path, "residual"), "give either residual or fixed_codegrees");
    inst.residual = get_rational(*r, at(path, "residual"));
  }
  if (const Json* d = maybe(p, "product_divides")) inst.product_divides = get_positive(*d, at(path, "product_divides"));
  if (const Json* r = maybe(p, "product_range")) inst.product_range = get_range(*r, at(path, "product_range"));
  if (const Json* b = maybe(p, "root_lower_bounds")) {
    const std::string bp = at(path, "root_lower_bounds");
    require_array(*b, bp);
    for (std::size_t i = 0; i < b->size(); ++i) inst.root_lower_bounds.push_back(get_rational((*b)[i], at(bp, i)));
  }
  if (const Json* c = maybe(p, "membership_conductor")) inst.membership_conductor = get_positive(*c, at(path, "membership_conductor"));
  if (const Json* ex = maybe(p, "excluded_quadratic_subfields")) {
    const std::string ep = at(path, "excluded_quadratic_subfields");
    require_array(*ex, ep);
    for (std::size_t i = 0; i < ex->size(); ++i) {
      const std::string item = at(ep, i);
      check_keys((*ex)[i], item, {"d", "N"});
      inst.excluded_quadratic_subfields.emplace_back(get_integer(need((*ex)[i], item, "d"), at(item, "d")),
                                                     get_positive(need((*ex)[i], item, "N"), at(item, "N")));
    }
  }
  if (const Json* r = maybe(p, "excluded_real_subfield_only")) inst.excluded_real_subfield_only = get_bool(*r, at(path, "excluded_real_subfield_only"));
  if (const Json* q = maybe(p, "required_quadratic_field")) inst.required_quadratic_field = get_positive(*q, at(path, "required_quadratic_field"));
  if (const Json* s = maybe(p, "scan_range")) inst.scan_range = get_range(*s, at(path, "scan_range"));
  if (const Json* m = maybe(p, "mode")) {
    const std::string mode = get_string(*m, at(path, "mode"));
    if (mode == "exact") inst.mode = ResidualMode::exact;
    else if (mode == "at-most") inst.mode = ResidualMode::at_most;
    else if (mode == "less-than") inst.mode = ResidualMode::less_than;
    else throw SchemaError(at(path, "mode"), "expected exact, at-most or less-than");
  }
  if (const Json* d = maybe(p, "disabled_filters")) {
    const std::string dp = at(path, "disabled_filters");
    require_array(*d, dp);
    for (std::size_t i = 0; i < d->size(); ++i) {
      const std::string name = get_string((*d)[i], at(dp, i));
      const auto& names = filter_names();
      if (std::find(names.begin(), names.end(), name) == names.end()) throw SchemaError(at(dp, i), "unknown filter " + name);
      inst.disabled_filters.insert(name);
    }
  }
  try {
    validate(inst);
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
  return inst;
}

DimDecompositionParams parse_dim_decomposition(const Json& p, const std::string& path) {
  check_keys(p, path, {"n", "target", "constraints", "terms", "term_counts"});
  DimDecompositionParams out;
  out.n = get_positive(need(p, path, "n"), at(path, "n"));
  if (!is_squarefree(out.n)) throw SchemaError(at(path, "n"), "must be squarefree");
  const Json* target = maybe(p, "target");
  const Json* constraints = maybe(p, "constraints");
  if ((target == nullptr) == (constraints == nullptr)) throw SchemaError(at(path, "target"), "give exactly one of target or constraints");
  if (target) {
    out.target = get_quadratic(*target, at(path, "target"));
  } else {
    const std::string cp = at(path, "constraints");
    check_keys(*constraints, cp, {"A", "B"});
    const Integer A = get_integer(need(*constraints, cp, "A"), at(cp, "A"));
    const Integer B = get_integer(need(*constraints, cp, "B"), at(cp, "B"));
    out.target = QuadraticFieldElement(make_rational(A, 2), B, out.n);
  }
  if (!out.target.is_rational() && out.target.n() != out.n)
    throw SchemaError(at(path, "target"), "target " + out.target.to_string() + " is not in Q(sqrt(" + out.n.get_str() + "))");
  std::tie(out.min_terms, out.max_terms) = get_term_counts(p, path);
  return out;
}

IntegerDecompositionParams parse_integer_decomposition(const Json& p, const std::string& path) {
  check_keys(p, path, {"total", "divisor_bound", "terms", "term_counts"});
  IntegerDecompositionParams out;
  out.total = get_positive(need(p, path, "total"), at(path, "total"));
  out.divisor_bound = get_positive(need(p, path, "divisor_bound"), at(path, "divisor_bound"));
  std::tie(out.min_terms, out.max_terms) = get_term_counts(p, path);
  if (out.total < out.max_terms) throw SchemaError(at(path, "total"), "total must be at least the largest term count");
  return out;
}

CandidateSMatrix parse_smatrix(const Json& p, const std::string& path) {
  check_keys(p, path, {"kind", "declared_dim", "unit_index", "labels", "entries"});
  CandidateSMatrix s;
  if (const Json* k = maybe(p, "kind")) {
    const std::string kind = get_string(*k, at(path, "kind"));
    if (kind == "modular") s.kind = SMatrixKind::modular;
    else if (kind == "super-modular-hat") s.kind = SMatrixKind::super_modular_hat;
    else throw SchemaError(at(path, "kind"), "expected modular or super-modular-hat");
  }
  s.declared_dim = get_quadratic(need(p, path, "declared_dim"), at(path, "declared_dim"));
  if (const Json* u = maybe(p, "unit_index")) s.unit_index = static_cast<std::size_t>(get_int(*u, at(path, "unit_index"), 0, 1 << 20));
  if (const Json* l = maybe(p, "labels")) {
    const std::string lp = at(path, "labels");
    require_array(*l, lp);
    for (std::size_t i = 0; i < l->size(); ++i) s.labels.push_back(get_string((*l)[i], at(lp, i)));
  }
  const Json& rows = need(p, path, "entries");
  const std::string rp = at(path, "entries");
  require_array(rows, rp);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_array(rows[i], at(rp, i));
    std::vector<QuadraticFieldElement> row;
    for (std::size_t j = 0; j < rows[i].size(); ++j) row.push_back(get_quadratic(rows[i][j], at(at(rp, i), j)));
    s.entries.push_back(std::move(row));
  }
  try {
    validate(s);
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
  return s;
}

const std::vector<std::string>& membership_filter_names() {
  static const std::vector<std::string> names{"d-number", "totally-real", "totally-positive", "cyclotomic", "cyclic-cubic-membership"};
  return names;
}

FieldMembershipParams parse_field_membership(const Json& p, const std::string& path) {
  check_keys(p, path, {"polynomials", "family", "parameter", "filters", "conductor"});
  FieldMembershipParams out;
  const Json* list = maybe(p, "polynomials");
  const Json* family = maybe(p, "family");
  if ((list == nullptr) == (family == nullptr)) throw SchemaError(at(path, "polynomials"), "give exactly one of polynomials or family");
  if (list) {
    const std::string lp = at(path, "polynomials");
    require_array(*list, lp);
    for (std::size_t i = 0; i < list->size(); ++i) {
      IntPolynomial q = get_polynomial((*list)[i], at(lp, i));
      out.polynomials.emplace_back(q.to_string(), q);
    }
  } else {
    const std::string pattern = get_string(*family, at(path, "family"));
    const std::string pp = at(path, "parameter");
    const Json& param = need(p, path, "parameter");
    check_keys(param, pp, {"name", "from", "to"});
    const std::string name = get_string(need(param, pp, "name"), at(pp, "name"));
    const std::string slot = "{" + name + "}";
    if (pattern.find(slot) == std::string::npos) throw SchemaError(at(path, "family"), "pattern does not mention " + slot);
    const Integer from = get_integer(need(param, pp, "from"), at(pp, "from"));
    const Integer to = get_integer(need(param, pp, "to"), at(pp, "to"));
    if (from < 0 || from > to) throw SchemaError(pp, "need 0 <= from <= to");
    if (to - from > 100000) throw SchemaError(pp, "family too large");
    for (Integer m = from; m <= to; ++m) {
      std::string text = pattern;
      for (auto pos = text.find(slot); pos != std::string::npos; pos = text.find(slot)) text.replace(pos, slot.size(), m.get_str());
      IntPolynomial q = parse_at(at(path, "family"), [&] { return IntPolynomial::parse(text); });
      out.polynomials.emplace_back(m.get_str(), q);
    }
  }
  for (std::size_t i = 0; i < out.polynomials.size(); ++i) {
    const auto& q = out.polynomials[i].second;
    if (q.degree() < 1 || !q.is_monic()) throw SchemaError(list ? at(at(path, "polynomials"), i) : at(path, "family"), "polynomials must be monic of degree >= 1");
  }
  const std::string fp = at(path, "filters");
  const Json& filters = need(p, path, "filters");
  require_array(filters, fp);
  for (std::size_t i = 0; i < filters.size(); ++i) {
    const std::string name = get_string(filters[i], at(fp, i));
    const auto& names = membership_filter_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw SchemaError(at(fp, i), "unknown filter " + name);
    out.filters.push_back(name);
  }
  if (const Json* c = maybe(p, "conductor")) {
    out.conductor = get_positive(*c, at(path, "conductor"));
    try {
      cyclic_cubic_generator(*out.conductor);
    } catch (const Error& e) {
      throw SchemaError(at(path, "conductor"), e.what());
    }
  }
  const bool wants_membership = std::find(out.filters.begin(), out.filters.end(), "cyclic-cubic-membership") != out.filters.end();
  if (wants_membership && !out.conductor) throw SchemaError(at(path, "conductor"), "required by cyclic-cubic-membership");
  return out;
}

GaloisStructureParams parse_galois_structure(const Json& p, const std::string& path) {
  check_keys(p, path, {"moduli"});
  GaloisStructureParams out;
  const std::string mp = at(path, "moduli");
  const Json& m = need(p, path, "moduli");
  require_array(m, mp);
  if (m.empty()) throw SchemaError(mp, "need at least one modulus");
  for (std::size_t i = 0; i < m.size(); ++i) {
    Integer N = get_integer(m[i], at(mp, i));
    if (N < 3) throw SchemaError(at(mp, i), "modulus must be at least 3");
    out.moduli.push_back(N);
  }
  return out;
}

// Keys each kind accepts in its expected block.
std::set<std::string> expected_keys(const std::string& kind) {
  if (kind == "class-equation") return {"products", "survivors", "survivor_count", "rejected_by"};
  if (kind == "dim-decomposition" || kind == "integer-decomposition") return {"solutions", "survivor_count"};
  if (kind == "smatrix-verify")
    return {"orthogonal", "dimension_consistent", "fusion_integral", "galois_permutation", "codegrees", "survivor_count"};
  if (kind == "field-membership") return {"survivors", "parameter_values", "survivor_count"};
  return {"structures", "survivor_count"};
}

CaseFile load_at(const Json& doc, const std::string& path) {
  check_keys(doc, path, {"schema", "name", "kind", "comment", "parameters", "expected", "annotations", "subcases"});
  const Json& schema = need(doc, path, "schema");
  if (!schema.is_number_integer() || schema.get<long long>() != kCaseSchema)
    throw SchemaError(at(path, "schema"), "unsupported schema version (expected " + std::to_string(kCaseSchema) + ")");
  CaseFile c;
  c.name = get_string(need(doc, path, "name"), at(path, "name"));
  if (c.name.empty()) throw SchemaError(at(path, "name"), "must not be empty");
  c.kind = get_string(need(doc, path, "kind"), at(path, "kind"));
  if (const Json* cm = maybe(doc, "comment")) c.comment = get_string(*cm, at(path, "comment"));
  c.parameters = need(doc, path, "parameters");
  const std::string pp = at(path, "parameters");
  if (c.kind == "class-equation") c.params = parse_class_equation(c.parameters, pp);
  else if (c.kind == "dim-decomposition") c.params = parse_dim_decomposition(c.parameters, pp);
  else if (c.kind == "integer-decomposition") c.params = parse_integer_decomposition(c.parameters, pp);
  else if (c.kind == "smatrix-verify") c.params = parse_smatrix(c.parameters, pp);
  else if (c.kind == "field-membership") c.params = parse_field_membership(c.parameters, pp);
  else if (c.kind == "galois-structure") c.params = parse_galois_structure(c.parameters, pp);
  else throw SchemaError(at(path, "kind"), "unknown kind " + c.kind);
  if (const Json* e = maybe(doc, "expected")) {
    check_keys(*e, at(path, "expected"), expected_keys(c.kind));
    c.expected = *e;
  }
  c.annotations = Json::array();
  if (const Json* a = maybe(doc, "annotations")) {
    require_array(*a, at(path, "annotations"));
    c.annotations = *a;
  }
  if (const Json* s = maybe(doc, "subcases")) {
    const std::string sp = at(path, "subcases");
    require_array(*s, sp);
    for (std::size_t i = 0; i < s->size(); ++i) c.subcases.push_back(load_at((*s)[i], at(sp, i)));
  }
  return c;
}

// ---------------------------------------------------------------- running

std::string factor_string(const std::vector<IntPolynomial>& factors) {
  std::string out;
  for (const auto& f : factors) out += "(" + f.to_string() + ")";
  return out;
}

Json strings(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.get_str());
  return out;
}

std::string canonical_poly(const Json& v) {
  try {
    return IntPolynomial::parse(v.get<std::string>()).to_string();
  } catch (const std::exception&) {
    return v.dump();
  }
}

std::string canonical_number(const Json& v) {
  try {
    if (v.is_number_integer()) return v.dump();
    return to_string(parse_rational(v.get<std::string>()));
  } catch (const std::exception&) {
    return v.dump();
  }
}

std::string canonical_quadratic(const Json& v) {
  try {
    return QuadraticFieldElement::parse(v.is_string() ? v.get<std::string>() : v.dump()).to_string();
  } catch (const std::exception&) {
    return v.dump();
  }
}

std::string show(const std::vector<std::string>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
  return out + "}";
}

void compare_sets(const std::string& key, std::vector<std::string> want, std::vector<std::string> got, std::vector<std::string>& mismatches) {
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  if (want != got) mismatches.push_back(key + ": expected " + show(want) + ", got " + show(got));
}

void compare_count(const Json& expected, std::size_t got, std::vector<std::string>& mismatches) {
  if (const Json* c = maybe(expected, "survivor_count")) {
    if (!c->is_number_integer() || c->get<long long>() != static_cast<long long>(got))
      mismatches.push_back("survivor_count: expected " + c->dump() + ", got " + std::to_string(got));
  }
}

struct Outcome {
  Json result;
  std::size_t survivors = 0;
};

Outcome run_class_equation(const ClassEquationInstance& inst, unsigned jobs) {
  const EnumerationResult e = enumerate_candidates(inst, jobs);
  Outcome out;
  out.result["residual"] = to_string(e.residual);
  out.result["mode"] = inst.mode == ResidualMode::exact ? "exact" : inst.mode == ResidualMode::at_most ? "at-most" : "less-than";
  Json products = Json::array();
  for (const auto& p : e.products) {
    Json j;
    j["product"] = p.product.get_str();
    j["forced"] = to_string(p.forced);
    j["amgm_feasible"] = p.amgm_feasible;
    products.push_back(j);
  }
  out.result["products"] = products;
  Json certs = Json::array();
  Json survivors = Json::array();
  for (const auto& c : e.certificates) {
    Json j;
    j["candidate"] = c.candidate.to_string();
    j["product"] = c.product.get_str();
    j["verdict"] = c.survived ? std::string("SURVIVES") : "rejected by " + c.rejected_by().value_or("?");
    j["boundary"] = c.boundary;
    j["factors"] = factor_string(c.factors);
    Json roots = Json::array();
    for (const auto& r : c.rational_roots) roots.push_back(to_string(r));
    j["rational_roots"] = roots;
    j["field"] = c.field;
    Json filters = Json::array();
    for (const auto& f : c.filters) {
      Json fj;
      fj["filter"] = f.filter;
      fj["passed"] = f.passed;
      fj["witness"] = f.witness;
      filters.push_back(fj);
    }
    j["filters"] = filters;
    certs.push_back(j);
    if (c.survived) survivors.push_back(c.candidate.to_string());
  }
  out.result["survivors"] = survivors;
  out.result["certificates"] = certs;
  out.survivors = e.survivors();
  return out;
}

void check_class_equation(const Json& expected, const Outcome& o, std::vector<std::string>& mismatches) {
  if (const Json* p = maybe(expected, "products")) {
    std::vector<std::string> want, got;
    for (const auto& v : *p) want.push_back(canonical_number(v));
    for (const auto& v : o.result["products"]) got.push_back(v["product"].get<std::string>());
    compare_sets("products", want, got, mismatches);
  }
  if (const Json* s = maybe(expected, "survivors")) {
    std::vector<std::string> want, got;
    for (const auto& v : *s) want.push_back(canonical_poly(v));
    for (const auto& v : o.result["survivors"]) got.push_back(v.get<std::string>());
    compare_sets("survivors", want, got, mismatches);
  }
  if (const Json* r = maybe(expected, "rejected_by")) {
    for (const auto& [poly, filter] : r->items()) {
      const std::string want_poly = canonical_poly(Json(poly));
      const Json* found = nullptr;
      for (const auto& c : o.result["certificates"]) {
        if (c["candidate"] == want_poly) found = &c;
      }
      const std::string want = filter.is_string() ? "rejected by " + filter.get<std::string>() : filter.dump();
      if (!found) mismatches.push_back("rejected_by: " + want_poly + " was not generated");
      else if ((*found)["verdict"] != want)
        mismatches.push_back("rejected_by: " + want_poly + " expected " + want + ", got " + (*found)["verdict"].get<std::string>());
    }
  }
  compare_count(expected, o.survivors, mismatches);
}

template <typename T>
Json pairs_json(const std::vector<std::pair<T, T>>& terms) {
  Json out = Json::array();
  for (const auto& [a, b] : terms) out.push_back(Json::array({a.get_str(), b.get_str()}));
  return out;
}

Outcome run_dim_decomposition(const DimDecompositionParams& p) {
  Outcome out;
  const SquareConstraints sc = fp_square_constraints({p.n, p.target, 1});
  out.result["target"] = p.target.to_string();
  out.result["constraints"] = {{"A", sc.A.get_str()}, {"B", sc.B.get_str()}};
  Json by = Json::array();
  for (const auto& [k, sols] : enumerate_decompositions_by_count(p.n, p.target, p.min_terms, p.max_terms)) {
    Json s = Json::array();
    for (const auto& d : sols) s.push_back(pairs_json(d.terms));
    by.push_back({{"terms", k}, {"solutions", s}});
    out.survivors += sols.size();
  }
  out.result["by_count"] = by;
  return out;
}

Outcome run_integer_decomposition(const IntegerDecompositionParams& p) {
  Outcome out;
  Json by = Json::array();
  for (int k = p.min_terms; k <= p.max_terms; ++k) {
    Json s = Json::array();
    for (const auto& sol : enumerate_integer_square_decompositions(p.total, k, p.divisor_bound)) s.push_back(strings(sol));
    out.survivors += s.size();
    by.push_back({{"terms", k}, {"solutions", s}});
  }
  out.result["by_count"] = by;
  return out;
}

// Solutions are compared as canonical strings of their JSON form, with
// numbers normalised and each multiset sorted.
std::string canonical_solution(const Json& sol, bool pairs) {
  std::vector<std::string> parts;
  for (const auto& item : sol) {
    if (pairs && item.is_array() && item.size() == 2) {
      // Sort key (beta, alpha) to match the solver's order.
      const std::string a = canonical_number(item[0]);
      const std::string b = canonical_number(item[1]);
      parts.push_back(std::string(20 - std::min<std::size_t>(20, b.size()), '0') + b + "|" +
                      std::string(20 - std::min<std::size_t>(20, a.size()), '0') + a + "|(" + a + "," + b + ")");
    } else {
      const std::string x = canonical_number(item);
      parts.push_back(std::string(20 - std::min<std::size_t>(20, x.size()), '0') + x + "|" + x);
    }
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " " : "") + parts[i].substr(parts[i].rfind('|') + 1);
  return out + "]";
}

void check_decomposition(const Json& expected, const Outcome& o, bool pairs, std::vector<std::string>& mismatches) {
  if (const Json* s = maybe(expected, "solutions")) {
    std::map<std::string, const Json*> want_by;
    for (const auto& [k, v] : s->items()) want_by[k] = &v;
    for (const auto& entry : o.result["by_count"]) {
      const std::string k = std::to_string(entry["terms"].get<int>());
      std::vector<std::string> want, got;
      if (auto it = want_by.find(k); it != want_by.end()) {
        for (const auto& sol : *it->second) want.push_back(canonical_solution(sol, pairs));
        want_by.erase(it);
      }
      for (const auto& sol : entry["solutions"]) got.push_back(canonical_solution(sol, pairs));
      compare_sets("solutions[" + k + " terms]", want, got, mismatches);
    }
    for (const auto& [k, v] : want_by) mismatches.push_back("solutions: term count " + k + " was not enumerated");
  }
  compare_count(expected, o.survivors, mismatches);
}

Outcome run_smatrix(const CandidateSMatrix& s) {
  Outcome out;
  const bool hat = s.kind == SMatrixKind::super_modular_hat;
  out.result["kind"] = hat ? "super-modular-hat" : "modular";
  out.result["field"] = s.field().get_str();
  Json labels = Json::array();
  for (std::size_t x = 0; x < s.size(); ++x) labels.push_back(s.label(x));
  out.result["labels"] = labels;

  const auto orth = check_orthogonality(s);
  out.result["orthogonality"] = {{"passed", orth.orthogonal}, {"witness", orth.witness}};

  QuadraticFieldElement sum;
  for (std::size_t x = 0; x < s.size(); ++x) sum += s.dim(x) * s.dim(x);
  const bool consistent = dimension_consistency(s);
  out.result["dimension_consistency"] = {{"passed", consistent}, {"sum_of_squares", sum.to_string()}, {"declared", s.declared_dim.to_string()}};

  const auto fusion = verlinde_fusion(s);
  Json rules = Json::array();
  if (fusion.nonnegative_integral) {
    for (std::size_t x = 0; x < s.size(); ++x) {
      for (std::size_t y = x; y < s.size(); ++y) {
        std::string rhs;
        for (std::size_t z = 0; z < s.size(); ++z) {
          const long c = fusion.coefficient(x, y, z);
          if (c == 0) continue;
          rhs += (rhs.empty() ? "" : "+") + (c == 1 ? std::string() : std::to_string(c)) + s.label(z);
        }
        rules.push_back(s.label(x) + "*" + s.label(y) + " = " + (rhs.empty() ? "0" : rhs));
      }
    }
  }
  out.result["fusion"] = {{"normalisation", hat ? "naive" : "verlinde"},
                          {"nonnegative_integral", fusion.nonnegative_integral},
                          {"witness", fusion.witness},
                          {"rules", rules}};

  Json codegrees = Json::array();
  for (const auto& f : formal_codegrees(s)) codegrees.push_back(f.to_string());
  out.result["codegrees"] = codegrees;

  const auto g = find_galois_permutation(s);
  Json gj;
  gj["found"] = g.found;
  gj["permutation"] = g.cycles(s);
  gj["reason"] = g.reason;
  gj["unit_image"] = g.unit_image ? s.label(*g.unit_image) : std::string();
  gj["unit_image_dim_square_one"] = g.unit_image_dim_square_one;
  out.result["galois"] = gj;
  out.survivors = orth.orthogonal && consistent && fusion.nonnegative_integral ? 1 : 0;
  return out;
}

void check_smatrix(const Json& expected, const Outcome& o, std::vector<std::string>& mismatches) {
  const auto flag = [&](const char* key, const Json& got) {
    if (const Json* w = maybe(expected, key)) {
      if (*w != got) mismatches.push_back(std::string(key) + ": expected " + w->dump() + ", got " + got.dump());
    }
  };
  flag("orthogonal", o.result["orthogonality"]["passed"]);
  flag("dimension_consistent", o.result["dimension_consistency"]["passed"]);
  flag("fusion_integral", o.result["fusion"]["nonnegative_integral"]);
  flag("galois_permutation", o.result["galois"]["permutation"]);
  if (const Json* c = maybe(expected, "codegrees")) {
    std::vector<std::string> want, got;
    for (const auto& v : *c) want.push_back(canonical_quadratic(v));
    for (const auto& v : o.result["codegrees"]) got.push_back(v.get<std::string>());
    if (want != got) mismatches.push_back("codegrees: expected " + show(want) + ", got " + show(got));
  }
  compare_count(expected, o.survivors, mismatches);
}

FilterResult membership_filter(const std::string& name, const IntPolynomial& q, const FieldMembershipParams& p) {
  if (name == "d-number") {
    const auto v = is_d_number(q);
    return {name, v.passes, v.passes ? "" : "fails at i=" + std::to_string(*v.failing_index)};
  }
  if (name == "totally-real") return {name, is_totally_real(q), ""};
  if (name == "totally-positive") return {name, is_totally_positive(q), ""};
  if (name == "cyclotomic") return {name, passes_cyclotomic_test(q), ""};
  const auto f = factor_over_rationals(q);
  for (const auto& factor : f.factors) {
    if (factor.degree() == 1) continue;
    if (factor.degree() != 3) return {name, false, "factor " + factor.to_string() + " has degree " + std::to_string(factor.degree())};
    const auto v = cyclic_cubic_membership(factor, *p.conductor);
    if (!v.member) return {name, false, v.reason};
  }
  return {name, true, ""};
}

Outcome run_field_membership(const FieldMembershipParams& p) {
  Outcome out;
  Json rows = Json::array();
  Json survivors = Json::array();
  Json values = Json::array();
  for (const auto& [label, q] : p.polynomials) {
    Json row;
    row["parameter"] = label;
    row["polynomial"] = q.to_string();
    bool ok = true;
    Json filters = Json::array();
    for (const auto& name : p.filters) {
      const FilterResult r = membership_filter(name, q, p);
      ok = ok && r.passed;
      filters.push_back({{"filter", r.filter}, {"passed", r.passed}, {"witness", r.witness}});
    }
    row["filters"] = filters;
    row["verdict"] = ok ? "SURVIVES" : "rejected";
    rows.push_back(row);
    if (ok) {
      survivors.push_back(q.to_string());
      values.push_back(label);
      ++out.survivors;
    }
  }
  out.result["filters"] = p.filters;
  out.result["polynomials"] = rows;
  out.result["survivors"] = survivors;
  out.result["parameter_values"] = values;
  return out;
}

void check_field_membership(const Json& expected, const Outcome& o, std::vector<std::string>& mismatches) {
  if (const Json* s = maybe(expected, "survivors")) {
    std::vector<std::string> want, got;
    for (const auto& v : *s) want.push_back(canonical_poly(v));
    for (const auto& v : o.result["survivors"]) got.push_back(v.get<std::string>());
    compare_sets("survivors", want, got, mismatches);
  }
  if (const Json* s = maybe(expected, "parameter_values")) {
    std::vector<std::string> want, got;
    for (const auto& v : *s) want.push_back(canonical_number(v));
    for (const auto& v : o.result["parameter_values"]) got.push_back(v.get<std::string>());
    compare_sets("parameter_values", want, got, mismatches);
  }
  compare_count(expected, o.survivors, mismatches);
}

Outcome run_galois_structure(const GaloisStructureParams& p) {
  Outcome out;
  Json rows = Json::array();
  for (const auto& N : p.moduli) {
    const auto g = cyclotomic_galois_structure(N);
    rows.push_back({{"modulus", N.get_str()}, {"orders", strings(g.orders)}, {"order", g.order().get_str()}});
  }
  out.result["structures"] = rows;
  out.survivors = p.moduli.size();
  return out;
}

void check_galois_structure(const Json& expected, const Outcome& o, std::vector<std::string>& mismatches) {
  if (const Json* s = maybe(expected, "structures")) {
    for (const auto& [N, orders] : s->items()) {
      const Json* row = nullptr;
      for (const auto& r : o.result["structures"]) {
        if (r["modulus"] == canonical_number(Json(N))) row = &r;
      }
      if (!row) {
        mismatches.push_back("structures: modulus " + N + " was not computed");
        continue;
      }
      std::vector<std::string> want, got;
      for (const auto& v : orders) want.push_back(canonical_number(v));
      for (const auto& v : (*row)["orders"]) got.push_back(v.get<std::string>());
      if (want != got) mismatches.push_back("structures[" + N + "]: expected " + show(want) + ", got " + show(got));
    }
  }
  compare_count(expected, o.survivors, mismatches);
}

CaseStatus combine(CaseStatus own, const std::vector<Report>& subs) {
  auto worst = own;
  const auto rank = [](CaseStatus s) {
    switch (s) {
      case CaseStatus::pass: return 0;
      case CaseStatus::no_expectation: return 1;
      case CaseStatus::fail: return 2;
      case CaseStatus::error: return 3;
    }
    return 3;
  };
  for (const auto& r : subs) {
    if (rank(r.status) > rank(worst)) worst = r.status;
  }
  return worst;
}

// ---------------------------------------------------------------- text

std::string text_class_equation(const Json& r) {
  std::ostringstream out;
  out << "residual: " << r["residual"].get<std::string>() << " (" << r["mode"].get<std::string>() << ")\n";
  out << "products:";
  if (r["products"].empty()) out << " none";
  for (const auto& p : r["products"]) {
    out << " " << p["product"].get<std::string>() << " [r*P = " << p["forced"].get<std::string>()
        << (p["amgm_feasible"].get<bool>() ? "" : ", AM-GM infeasible") << "]";
  }
  out << "\n";
  for (const auto& c : r["certificates"]) {
    out << c["candidate"].get<std::string>() << "  " << c["verdict"].get<std::string>();
    std::string detail;
    for (const auto& f : c["filters"]) {
      if (!f["passed"].get<bool>()) detail = f["witness"].get<std::string>();
    }
    if (!detail.empty()) out << ": " << detail;
    if (c["factors"].get<std::string>().find(")(") != std::string::npos) out << "; factors " << c["factors"].get<std::string>();
    if (!c["rational_roots"].empty()) {
      out << "; rational roots";
      for (const auto& x : c["rational_roots"]) out << " " << x.get<std::string>();
    }
    if (!c["field"].get<std::string>().empty()) out << "; " << c["field"].get<std::string>();
    if (c["boundary"].get<bool>()) out << " [boundary]";
    out << "\n";
  }
  return out.str();
}

std::string text_decomposition(const Json& r, bool pairs) {
  std::ostringstream out;
  if (r.contains("target")) {
    out << "target: " << r["target"].get<std::string>() << "  A = " << r["constraints"]["A"].get<std::string>()
        << ", B = " << r["constraints"]["B"].get<std::string>() << "\n";
  }
  for (const auto& entry : r["by_count"]) {
    out << entry["terms"].get<int>() << " terms: ";
    if (entry["solutions"].empty()) out << "none";
    bool first = true;
    for (const auto& sol : entry["solutions"]) {
      out << (first ? "" : "; ");
      first = false;
      bool inner = true;
      for (const auto& t : sol) {
        out << (inner ? "" : " ");
        inner = false;
        if (pairs) out << "(" << t[0].get<std::string>() << "," << t[1].get<std::string>() << ")";
        else out << t.get<std::string>();
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string yes_no(const Json& b) { return b.get<bool>() ? "PASS" : "FAIL"; }

std::string text_smatrix(const Json& r) {
  std::ostringstream out;
  out << "field: Q(sqrt(" << r["field"].get<std::string>() << ")), " << r["kind"].get<std::string>() << "\n";
  out << "orthogonality: " << yes_no(r["orthogonality"]["passed"]) << " (" << r["orthogonality"]["witness"].get<std::string>() << ")\n";
  out << "dimension consistency: " << yes_no(r["dimension_consistency"]["passed"]) << " (sum of squares "
      << r["dimension_consistency"]["sum_of_squares"].get<std::string>() << ", declared "
      << r["dimension_consistency"]["declared"].get<std::string>() << ")\n";
  out << r["fusion"]["normalisation"].get<std::string>() << " fusion non-negative integral: " << yes_no(r["fusion"]["nonnegative_integral"]);
  if (!r["fusion"]["witness"].get<std::string>().empty()) out << " (" << r["fusion"]["witness"].get<std::string>() << ")";
  out << "\n";
  for (const auto& rule : r["fusion"]["rules"]) out << "  " << rule.get<std::string>() << "\n";
  out << "formal codegrees:";
  for (const auto& c : r["codegrees"]) out << " " << c.get<std::string>();
  out << "\n";
  const Json& g = r["galois"];
  if (g["found"].get<bool>()) {
    out << "galois permutation: " << g["permutation"].get<std::string>() << "; unit maps to " << g["unit_image"].get<std::string>()
        << (g["unit_image_dim_square_one"].get<bool>() ? " (d^2 = 1)" : " (d^2 != 1)") << "\n";
  } else {
    out << "galois permutation: none (" << g["reason"].get<std::string>() << ")\n";
  }
  return out.str();
}

std::string text_field_membership(const Json& r) {
  std::ostringstream out;
  for (const auto& row : r["polynomials"]) {
    out << row["polynomial"].get<std::string>() << "  " << row["verdict"].get<std::string>();
    std::string failed;
    for (const auto& f : row["filters"]) {
      if (!f["passed"].get<bool>()) failed += (failed.empty() ? "" : ", ") + f["filter"].get<std::string>();
    }
    if (!failed.empty()) out << " by " << failed;
    out << "\n";
  }
  return out.str();
}

std::string text_galois(const Json& r) {
  std::ostringstream out;
  for (const auto& row : r["structures"]) {
    out << "(Z/" << row["modulus"].get<std::string>() << ")^x =";
    bool first = true;
    for (const auto& o : row["orders"]) {
      out << (first ? " " : " x ") << "Z" << o.get<std::string>();
      first = false;
    }
    out << "  order " << row["order"].get<std::string>() << "\n";
  }
  return out.str();
}

void render_text(const Report& r, std::ostringstream& out, const std::string& indent) {
  std::ostringstream body;
  body << "case " << r.name << " [" << r.kind << "]: " << to_string(r.status) << "\n";
  if (!r.result.is_null()) {
    if (r.kind == "class-equation") body << text_class_equation(r.result);
    else if (r.kind == "dim-decomposition") body << text_decomposition(r.result, true);
    else if (r.kind == "integer-decomposition") body << text_decomposition(r.result, false);
    else if (r.kind == "smatrix-verify") body << text_smatrix(r.result);
    else if (r.kind == "field-membership") body << text_field_membership(r.result);
    else if (r.kind == "galois-structure") body << text_galois(r.result);
    body << "survivors: " << r.survivors << "\n";
  }
  for (const auto& m : r.mismatches) body << "mismatch: " << m << "\n";
  if (!r.error.empty()) body << "error: " << r.error << "\n";
  if (r.wall_time_ms) body << "wall time: " << *r.wall_time_ms << " ms\n";
  std::istringstream lines(body.str());
  for (std::string line; std::getline(lines, line);) out << indent << line << "\n";
  for (const auto& s : r.subcases) render_text(s, out, indent + "  ");
}

}  // namespace

// ---------------------------------------------------------------- public

CaseFile load_case(const Json& doc) { return load_at(doc, "$"); }

CaseFile load_case(std::istream& in) {
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("$", std::string("malformed JSON: ") + e.what());
  }
  return load_case(doc);
}

CaseFile load_case_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("$", "cannot open " + path.string());
  return load_case(in);
}

std::vector<std::filesystem::path> list_case_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > 10 && name.ends_with(".case.json")) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(CaseStatus status) {
  switch (status) {
    case CaseStatus::pass: return "PASS";
    case CaseStatus::fail: return "FAIL";
    case CaseStatus::no_expectation: return "NO-EXPECTATION";
    case CaseStatus::error: return "ERROR";
  }
  return "ERROR";
}

CaseStatus parse_status(const std::string& text) {
  if (text == "PASS") return CaseStatus::pass;
  if (text == "FAIL") return CaseStatus::fail;
  if (text == "NO-EXPECTATION") return CaseStatus::no_expectation;
  if (text == "ERROR") return CaseStatus::error;
  throw ParseError("unknown status " + text);
}

Report run_case(const CaseFile& c, const RunOptions& options) {
  Report r;
  r.name = c.name;
  r.kind = c.kind;
  r.input = c.parameters;
  r.expected = c.expected;
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o;
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ClassEquationInstance>) o = run_class_equation(p, options.jobs);
          else if constexpr (std::is_same_v<T, DimDecompositionParams>) o = run_dim_decomposition(p);
          else if constexpr (std::is_same_v<T, IntegerDecompositionParams>) o = run_integer_decomposition(p);
          else if constexpr (std::is_same_v<T, CandidateSMatrix>) o = run_smatrix(p);
          else if constexpr (std::is_same_v<T, FieldMembershipParams>) o = run_field_membership(p);
          else o = run_galois_structure(p);
        },
        c.params);
    r.result = o.result;
    r.survivors = o.survivors;
    if (c.expected.is_null()) {
      r.status = CaseStatus::no_expectation;
    } else {
      if (c.kind == "class-equation") check_class_equation(c.expected, o, r.mismatches);
      else if (c.kind == "dim-decomposition") check_decomposition(c.expected, o, true, r.mismatches);
      else if (c.kind == "integer-decomposition") check_decomposition(c.expected, o, false, r.mismatches);
      else if (c.kind == "smatrix-verify") check_smatrix(c.expected, o, r.mismatches);
      else if (c.kind == "field-membership") check_field_membership(c.expected, o, r.mismatches);
      else check_galois_structure(c.expected, o, r.mismatches);
      r.status = r.mismatches.empty() ? CaseStatus::pass : CaseStatus::fail;
    }
  } catch (const std::exception& e) {
    r.result = Json();
    r.survivors = 0;
    r.status = CaseStatus::error;
    r.error = e.what();
  }
  for (const auto& s : c.subcases) r.subcases.push_back(run_case(s, options));
  r.status = combine(r.status, r.subcases);
  if (options.timing) {
    r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

std::vector<Report> run_cases(const std::vector<CaseFile>& cases, const RunOptions& options) {
  std::vector<Report> out(cases.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(cases.size())));
  RunOptions inner = options;
  if (workers > 1) inner.jobs = 1;
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) out[i] = run_case(cases[i], inner);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < workers; ++j) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

Json report_to_json(const Report& r) {
  Json j;
  j["report_schema"] = kReportSchema;
  j["tool_version"] = r.tool_version;
  j["name"] = r.name;
  j["kind"] = r.kind;
  j["status"] = to_string(r.status);
  j["survivors"] = r.survivors;
  j["input"] = r.input;
  j["expected"] = r.expected;
  j["mismatches"] = r.mismatches;
  j["error"] = r.error;
  j["result"] = r.result;
  Json subs = Json::array();
  for (const auto& s : r.subcases) subs.push_back(report_to_json(s));
  j["subcases"] = subs;
  if (r.wall_time_ms) j["wall_time_ms"] = *r.wall_time_ms;
  return j;
}

Report report_from_json(const Json& j) {
  const std::string path = "$";
  const Json& schema = need(j, path, "report_schema");
  if (schema != kReportSchema) throw SchemaError(at(path, "report_schema"), "unsupported report schema");
  Report r;
  r.tool_version = get_string(need(j, path, "tool_version"), at(path, "tool_version"));
  r.name = get_string(need(j, path, "name"), at(path, "name"));
  r.kind = get_string(need(j, path, "kind"), at(path, "kind"));
  r.status = parse_status(get_string(need(j, path, "status"), at(path, "status")));
  r.survivors = need(j, path, "survivors").get<std::size_t>();
  r.input = need(j, path, "input");
  r.expected = need(j, path, "expected");
  r.mismatches = need(j, path, "mismatches").get<std::vector<std::string>>();
  r.error = get_string(need(j, path, "error"), at(path, "error"));
  r.result = need(j, path, "result");
  for (const auto& s : need(j, path, "subcases")) r.subcases.push_back(report_from_json(s));
  if (const Json* w = maybe(j, "wall_time_ms")) r.wall_time_ms = w->get<double>();
  return r;
}

std::string render_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::json) return report_to_json(r).dump(2) + "\n";
  std::ostringstream out;
  render_text(r, out, "");
  return out.str();
}

std::string render_reports(const std::vector<Report>& reports, ReportFormat format) {
  if (format == ReportFormat::json) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return arr.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < reports.size(); ++i) out += (i ? "\n" : "") + render_report(reports[i], format);
  return out;
}

bool succeeded(const Report& r) { return r.status == CaseStatus::pass || r.status == CaseStatus::no_expectation; }

}  // namespace fusionarith
