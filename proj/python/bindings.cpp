#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fusionarith/algint.hpp"
#include "fusionarith/casefile.hpp"
#include "fusionarith/codegree.hpp"
#include "fusionarith/dimsolve.hpp"
#include "fusionarith/error.hpp"
#include "fusionarith/roots.hpp"
#include "fusionarith/smatrix.hpp"

namespace py = pybind11;
using namespace fusionarith;

// Integers cross the boundary as Python ints, rationals as fractions.Fraction.
namespace pybind11::detail {

template <>
struct type_caster<Integer> {
  PYBIND11_TYPE_CASTER(Integer, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    value = Integer(py::str(src).cast<std::string>());
    return true;
  }
  static handle cast(const Integer& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
  }
};

template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (PyLong_Check(src.ptr())) {
      value = Rational(Integer(py::str(src).cast<std::string>()));
      return true;
    }
    if (!py::isinstance(src, py::module_::import("fractions").attr("Fraction"))) return false;
    value = make_rational(Integer(py::str(src.attr("numerator")).cast<std::string>()),
                          Integer(py::str(src.attr("denominator")).cast<std::string>()));
    return true;
  }
  static handle cast(const Rational& v, return_value_policy, handle) {
    const auto num = reinterpret_steal<object>(type_caster<Integer>::cast(v.get_num(), return_value_policy::move, {}));
    const auto den = reinterpret_steal<object>(type_caster<Integer>::cast(v.get_den(), return_value_policy::move, {}));
    return py::module_::import("fractions").attr("Fraction")(num, den).release();
  }
};

}  // namespace pybind11::detail

namespace {

IntPolynomial poly(const std::string& text) { return IntPolynomial::parse(text); }

std::string run_case_json(const std::string& text, bool timing) {
  std::istringstream in(text);
  return render_report(run_case(load_case(in), {1, timing}), ReportFormat::json);
}

std::string run_case_text(const std::string& text) {
  std::istringstream in(text);
  return render_report(run_case(load_case(in)), ReportFormat::text);
}

CandidateSMatrix smatrix(const std::vector<std::vector<std::string>>& entries, const Integer& declared_dim, bool hat) {
  CandidateSMatrix s;
  for (const auto& row : entries) {
    auto& out = s.entries.emplace_back();
    for (const auto& e : row) out.push_back(QuadraticFieldElement::parse(e));
  }
  s.declared_dim = declared_dim;
  s.kind = hat ? SMatrixKind::super_modular_hat : SMatrixKind::modular;
  validate(s);
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = kToolVersion;
  m.attr("CASES_DIR") = FUSIONARITH_CASES_DIR;

  auto base = py::register_exception<Error>(m, "FusionArithError", PyExc_ValueError);
  py::register_exception<UnsupportedDegree>(m, "UnsupportedDegree", base);
  py::register_exception<PreconditionError>(m, "PreconditionError", base);
  py::register_exception<InfeasibleInstance>(m, "InfeasibleInstance", base);
  py::register_exception<MixedFieldError>(m, "MixedFieldError", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<SchemaError>(m, "SchemaError", base);

  m.def("normalize", [](const std::string& p) { return poly(p).to_string(); }, py::arg("poly"));
  m.def("discriminant", [](const std::string& p) { return poly_discriminant(poly(p)); }, py::arg("poly"));
  m.def("rational_roots", [](const std::string& p) { return rational_roots(poly(p)); }, py::arg("poly"));
  m.def(
      "factor",
      [](const std::string& p) {
        std::vector<std::string> out;
        for (const auto& f : factor_over_rationals(poly(p)).factors) out.push_back(f.to_string());
        return out;
      },
      py::arg("poly"));
  m.def(
      "real_root_count",
      [](const std::string& p, std::optional<Rational> lo, std::optional<Rational> hi, bool lo_open, bool hi_open) {
        return sturm_real_root_count(squarefree_part(poly(p)), RealRange{lo, hi, lo_open, hi_open});
      },
      py::arg("poly"), py::arg("lo") = py::none(), py::arg("hi") = py::none(), py::arg("lo_open") = true, py::arg("hi_open") = false);

  m.def("is_d_number", [](const std::string& p) { return is_d_number(poly(p)).passes; }, py::arg("poly"));
  m.def("is_totally_real", [](const std::string& p) { return is_totally_real(poly(p)); }, py::arg("poly"));
  m.def("is_totally_positive", [](const std::string& p) { return is_totally_positive(poly(p)); }, py::arg("poly"));
  m.def("passes_cyclotomic_test", [](const std::string& p) { return passes_cyclotomic_test(poly(p)); }, py::arg("poly"));
  m.def(
      "in_cyclic_cubic_field", [](const std::string& p, const Integer& conductor) { return in_cyclic_cubic_field(poly(p), conductor); },
      py::arg("poly"), py::arg("conductor"));
  m.def("galois_structure", [](const Integer& n) { return cyclotomic_galois_structure(n).orders; }, py::arg("modulus"));

  m.def(
      "decompositions",
      [](const Integer& n, const std::string& target, int terms) {
        std::vector<std::vector<std::pair<Integer, Integer>>> out;
        for (const auto& d : enumerate_decompositions({n, QuadraticFieldElement::parse(target), terms})) out.push_back(d.terms);
        return out;
      },
      py::arg("n"), py::arg("target"), py::arg("terms"));

  m.def(
      "galois_permutation",
      [](const std::vector<std::vector<std::string>>& entries, const Integer& declared_dim, bool hat) -> std::optional<std::string> {
        const auto s = smatrix(entries, declared_dim, hat);
        const auto g = find_galois_permutation(s);
        if (!g.found) return std::nullopt;
        return g.cycles(s);
      },
      py::arg("entries"), py::arg("declared_dim"), py::arg("hat") = false);
  m.def(
      "formal_codegrees",
      [](const std::vector<std::vector<std::string>>& entries, const Integer& declared_dim, bool hat) {
        std::vector<std::string> out;
        for (const auto& c : formal_codegrees(smatrix(entries, declared_dim, hat))) out.push_back(c.to_string());
        return out;
      },
      py::arg("entries"), py::arg("declared_dim"), py::arg("hat") = false);

  m.def("run_case_json", &run_case_json, py::arg("case_text"), py::arg("timing") = false,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_case_text", &run_case_text, py::arg("case_text"), py::call_guard<py::gil_scoped_release>());
}
