#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "resil/scenario.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network resilience laboratory"};
  app.set_version_flag("--version", std::string(resil::kVersion));
  app.require_subcommand(1);

  std::string run_path;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  unsigned jobs = 1;
  CLI::App* run = app.add_subcommand("run", "execute a scenario file");
  run->add_option("scenario", run_path, "scenario JSON file")->required();
  CLI::Option* seed_opt =
      run->add_option("--seed", seed, "override the scenario's seed");
  run->add_option("--out", out_dir, "directory for result files");
  run->add_option("--jobs", jobs, "worker threads for replicates")
      ->check(CLI::Range(1u, 1024u));

  std::string validate_path;
  CLI::App* validate =
      app.add_subcommand("validate", "check a scenario file without running it");
  validate->add_option("scenario", validate_path, "scenario JSON file")
      ->required();

  std::string csv_path;
  std::string kind;
  CLI::App* plot =
      app.add_subcommand("plot", "write a python plot script for a result csv");
  plot->add_option("csv", csv_path, "result csv produced by run")->required();
  std::string kind_help = "plot kind (";
  for (const std::string& k : resil::plot_kinds()) {
    if (kind_help.back() != '(') kind_help += ", ";
    kind_help += k;
  }
  kind_help += ")";
  plot->add_option("--kind", kind, kind_help)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (run->parsed()) {
      resil::RunOptions options;
      if (seed_opt->count() > 0) options.seed_override = seed;
      options.out_dir = out_dir;
      options.jobs = jobs;
      const resil::RunReport report = resil::run_scenario(run_path, options);
      for (const std::string& w : report.warnings)
        std::cerr << "warning: " << w << '\n';
      for (const std::string& o : report.outputs) std::cout << o << '\n';
      std::cout << report.manifest_path << '\n';
    } else if (validate->parsed()) {
      resil::validate_scenario_file(validate_path);
      std::cout << validate_path << ": ok\n";
    } else if (plot->parsed()) {
      std::cout << resil::emit_plot_script(csv_path, kind) << '\n';
    }
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
