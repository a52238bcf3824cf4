#pragma once

#include "dunkl/geometry.hpp"
#include "dunkl/symbols.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dunkl::cli {

inline const std::vector<std::string> kSuites{"geometry", "measure", "heat", "kernels", "testing", "lifting", "operator"};

struct RunConfig {
  std::string group = "z2";            // preset name, or a root-system JSON object (serialized)
  std::optional<std::string> group_json;
  std::vector<double> kappa{1.0};
  std::string symbol = "smooth_invariant";
  SymbolParams symbol_params;
  std::vector<std::string> suites{"all"};
  std::map<std::string, double> tolerances;  // overrides by check name
  std::uint64_t seed = 1;
  std::string out = "reports";
};

/// Parses the JSON config text. Throws ConfigError.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base = {});
/// Expands "all" and validates suite names, kappa and symbol. Throws ConfigError.
void validate(RunConfig& cfg);
RootSystemSpec make_spec(const RunConfig& cfg);

enum class Kind { Hard, Soft, Info };
enum class Status { Pass, Fail, Drift, Skip };

struct Row {
  std::string name;
  std::string anchor;  // formula-only LaTeX
  double value = 0.0;
  double tolerance = 0.0;
  Kind kind = Kind::Hard;
  Status status = Status::Pass;
  std::string note;
};

struct CsvDump {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct SuiteReport {
  std::string suite;
  std::string group;
  std::vector<double> kappa;
  std::string symbol;
  std::uint64_t seed = 0;
  std::vector<Row> rows;
  std::vector<CsvDump> dumps;
};

/// Error raised inside a suite, carrying the suite name and the probe being evaluated.
struct SuiteError : Error {
  SuiteError(const std::string& suite, const std::string& probe, const std::string& what)
      : Error("suite " + suite + ": " + what + (probe.empty() ? "" : " at probe " + probe)) {}
};

SuiteReport run_suite(const RunConfig& cfg, const std::string& suite);

/// Writes <suite>.json and <suite>_<dump>.csv into dir.
void write_report(const std::filesystem::path& dir, const SuiteReport& report);
/// Fresh timestamped subdirectory of root (run-YYYYmmddTHHMMSSZ[-k]).
std::filesystem::path make_run_dir(const std::filesystem::path& root);

/// 0 all pass, 2 only soft drift, 1 some hard failure.
int exit_code(const std::vector<SuiteReport>& reports);

/// Reads the reports of dir (or of its newest run-* subdirectory) and prints
/// one row per check. Throws MissingReports. Returns the same code as exit_code.
int summary(const std::filesystem::path& dir, std::ostream& out);

std::string to_string(Kind k);
std::string to_string(Status s);

}  // namespace dunkl::cli
