// fusion-arith: run bundled or user case files and print certificate reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fusionarith/casefile.hpp"
#include "fusionarith/error.hpp"

#ifndef FUSIONARITH_CASES_DIR
#define FUSIONARITH_CASES_DIR "cases"
#endif

namespace fa = fusionarith;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

unsigned default_jobs() {
  if (const char* env = std::getenv("FUSION_ARITH_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring FUSION_ARITH_JOBS=" << env << "\n";
  }
  return 1;
}

std::vector<std::string> resolve(const std::vector<std::string>& cases, bool all, const std::string& dir) {
  std::vector<std::string> paths;
  if (all) {
    for (const auto& p : fa::list_case_files(dir)) paths.push_back(p.string());
  }
  for (const auto& c : cases) {
    if (std::filesystem::exists(c)) {
      paths.push_back(c);
      continue;
    }
    // Bare names refer to bundled cases.
    const auto bundled = std::filesystem::path(dir) / (c + ".case.json");
    paths.push_back(std::filesystem::exists(bundled) ? bundled.string() : c);
  }
  return paths;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic checks for fusion category classification cases", "fusion-arith"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fa::kToolVersion);

  std::string cases_dir = FUSIONARITH_CASES_DIR;
  app.add_option("--cases-dir", cases_dir, "Directory of bundled *.case.json files")->capture_default_str();

  auto* run = app.add_subcommand("run", "Run case files and report certificates");
  std::vector<std::string> run_cases;
  bool all = false;
  std::string format = "text";
  std::string out_path;
  unsigned jobs = default_jobs();
  bool timing = false;
  run->add_option("cases", run_cases, "Case files or bundled case names");
  run->add_flag("--all", all, "Run every bundled case");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  run->add_option("--out", out_path, "Write the report to a file instead of stdout");
  run->add_option("--jobs,-j", jobs, "Worker threads (default from FUSION_ARITH_JOBS, else 1)")->check(CLI::PositiveNumber);
  run->add_flag("--timing", timing, "Include wall time in reports");

  auto* check = app.add_subcommand("validate", "Check case files against the schema without running them");
  std::vector<std::string> check_cases;
  check->add_option("cases", check_cases, "Case files or bundled case names")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (*check) {
    int status = kExitPass;
    for (const auto& path : resolve(check_cases, false, cases_dir)) {
      try {
        const auto c = fa::load_case_file(path);
        std::cout << path << ": ok (" << c.name << ", " << c.kind << ")\n";
      } catch (const fa::Error& e) {
        std::cerr << path << ": " << e.what() << "\n";
        status = kExitUsage;
      }
    }
    return status;
  }

  if (!all && run_cases.empty()) {
    std::cerr << "run: give case files or --all\n";
    return kExitUsage;
  }
  std::vector<fa::CaseFile> cases;
  try {
    for (const auto& path : resolve(run_cases, all, cases_dir)) cases.push_back(fa::load_case_file(path));
  } catch (const fa::SchemaError& e) {
    std::cerr << "schema error at " << e.what() << "\n";
    return kExitUsage;
  } catch (const fa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (cases.empty()) {
    std::cerr << "run: no case files found\n";
    return kExitUsage;
  }

  const auto reports = fa::run_cases(cases, {jobs, timing});
  const auto fmt = format == "json" ? fa::ReportFormat::json : fa::ReportFormat::text;
  std::string text = fa::render_reports(reports, fmt);
  if (fmt == fa::ReportFormat::text) {
    std::size_t passed = 0;
    for (const auto& r : reports) passed += r.status == fa::CaseStatus::pass;
    text += "\n" + std::to_string(passed) + "/" + std::to_string(reports.size()) + " cases passed\n";
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitUsage;
    }
    out << text;
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && fa::succeeded(r);
  return ok ? kExitPass : kExitFail;
}
