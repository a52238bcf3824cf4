// dunkl-czo-lab: run verification suites from a JSON config and summarize reports.
#include "lab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace dunkl;

namespace {

constexpr int kConfigExit = 3;
constexpr int kModuleExit = 4;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--kappa expects comma separated numbers, got '" + text + "'");
    }
  }
  return out;
}

nlohmann::json resolved(const cli::RunConfig& cfg) {
  nlohmann::json j;
  j["group"] = cfg.group_json ? nlohmann::json::parse(*cfg.group_json) : nlohmann::json(cfg.group);
  j["kappa"] = cfg.kappa;
  j["symbol"] = {{"name", cfg.symbol}, {"c", cfg.symbol_params.c}, {"constant", cfg.symbol_params.constant}};
  j["suites"] = cfg.suites;
  j["tolerances"] = cfg.tolerances;
  j["seed"] = cfg.seed;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dunkl commutator lab: verification suites and reports"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> suites;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> kappa;
  std::optional<std::string> group;
  auto* run = app.add_subcommand("run", "run suites and write reports into a new timestamped directory");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--suite", suites, "suite name (repeatable): geometry measure heat kernels testing lifting operator all");
  run->add_option("--seed", seed, "RNG seed");
  run->add_option("--out", out_dir, "report root directory");
  run->add_option("--kappa", kappa, "comma separated multiplicities");
  run->add_option("--group", group, "group preset (z2, z2xz2, b2, i2_6, trivial1, trivial2) or root-system JSON file");

  std::string summary_dir;
  auto* summary = app.add_subcommand("summary", "print one row per check of the newest reports");
  summary->add_option("--out", summary_dir, "report directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (*summary) {
    try {
      return cli::summary(summary_dir, std::cout);
    } catch (const MissingReports& e) {
      std::cerr << "MissingReports: " << e.what() << "\n";
      return kConfigExit;
    }
  }

  cli::RunConfig cfg;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config '" + config_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    const fs::path base = fs::path(config_path).parent_path();
    cfg = cli::parse_config(text.str(), base);
    if (!suites.empty()) cfg.suites = suites;
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.out = *out_dir;
    if (kappa) cfg.kappa = parse_list(*kappa);
    if (group) {
      if (group->ends_with(".json")) {
        std::ifstream g(*group);
        if (!g) throw ConfigError("cannot read root system file '" + *group + "'");
        std::stringstream gs;
        gs << g.rdbuf();
        cfg.group_json = gs.str();
      } else {
        cfg.group_json.reset();
      }
      cfg.group = *group;
    }
    cli::validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "ConfigError: " << e.what() << "\n";
    return kConfigExit;
  }

  std::vector<cli::SuiteReport> reports;
  const fs::path dir = cli::make_run_dir(cfg.out);
  {
    std::ofstream c(dir / "config.json", std::ios::binary);
    c << resolved(cfg).dump(2) << "\n";
  }
  for (const std::string& suite : cfg.suites) {
    try {
      reports.push_back(cli::run_suite(cfg, suite));
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return kModuleExit;
    }
    cli::write_report(dir, reports.back());
    int failed = 0;
    for (const auto& row : reports.back().rows) failed += row.status == cli::Status::Fail || row.status == cli::Status::Drift;
    std::cout << suite << ": " << reports.back().rows.size() << " checks, " << failed << " not passing" << std::endl;
  }
  std::cout << "reports written to " << dir.string() << "\n";
  return cli::exit_code(reports);
}
