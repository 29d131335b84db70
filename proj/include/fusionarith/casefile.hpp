#pragma once

// Declarative case files, their dispatch, and deterministic reports.

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "fusionarith/codegree.hpp"
#include "fusionarith/quadratic.hpp"
#include "fusionarith/smatrix.hpp"

namespace fusionarith {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kCaseSchema = 1;
inline constexpr int kReportSchema = 1;

inline const std::vector<std::string>& case_kinds() {
  static const std::vector<std::string> kinds{"class-equation", "dim-decomposition", "integer-decomposition",
                                              "smatrix-verify", "field-membership",  "galois-structure"};
  return kinds;
}

struct DimDecompositionParams {
  Integer n;
  QuadraticFieldElement target;
  int min_terms = 1;
  int max_terms = 1;
};

struct IntegerDecompositionParams {
  Integer total;
  Integer divisor_bound;
  int min_terms = 1;
  int max_terms = 1;
};

struct FieldMembershipParams {
  /// (label, polynomial); the label is the family parameter value or the
  /// polynomial itself.
  std::vector<std::pair<std::string, IntPolynomial>> polynomials;
  std::vector<std::string> filters;
  std::optional<Integer> conductor;
};

struct GaloisStructureParams {
  std::vector<Integer> moduli;
};

using CaseParams = std::variant<ClassEquationInstance, DimDecompositionParams, IntegerDecompositionParams, CandidateSMatrix,
                                FieldMembershipParams, GaloisStructureParams>;

struct CaseFile {
  std::string name;
  std::string kind;
  std::string comment;
  CaseParams params;
  Json parameters;   // echo of the input, key order preserved
  Json expected;     // null when absent
  Json annotations;  // free-form notes, never computed on
  std::vector<CaseFile> subcases;
};

/// Throws SchemaError (with a JSON path) or ParseError.
CaseFile load_case(std::istream& in);
CaseFile load_case(const Json& doc);
CaseFile load_case_file(const std::filesystem::path& path);

/// Bundled case files (*.case.json) in a directory, sorted by file name.
std::vector<std::filesystem::path> list_case_files(const std::filesystem::path& dir);

enum class CaseStatus { pass, fail, no_expectation, error };
std::string to_string(CaseStatus status);
CaseStatus parse_status(const std::string& text);

struct Report {
  std::string name;
  std::string kind;
  CaseStatus status = CaseStatus::no_expectation;
  Json input;
  Json result;  // kind-specific payload; null on error
  std::size_t survivors = 0;
  Json expected;
  std::vector<std::string> mismatches;
  std::string error;
  std::string tool_version = kToolVersion;
  std::optional<double> wall_time_ms;  // only when timing is requested
  std::vector<Report> subcases;

  friend bool operator==(const Report&, const Report&) = default;
};

struct RunOptions {
  unsigned jobs = 1;
  bool timing = false;
};

/// Module errors are captured as status ERROR, never thrown.
Report run_case(const CaseFile& c, const RunOptions& options = {});

/// Cases run concurrently up to options.jobs; reports keep input order.
std::vector<Report> run_cases(const std::vector<CaseFile>& cases, const RunOptions& options = {});

Json report_to_json(const Report& r);
Report report_from_json(const Json& j);

enum class ReportFormat { text, json };

std::string render_report(const Report& r, ReportFormat format);
/// Several reports; json renders one array.
std::string render_reports(const std::vector<Report>& reports, ReportFormat format);

/// True for PASS and NO-EXPECTATION.
bool succeeded(const Report& r);

}  // namespace fusionarith
