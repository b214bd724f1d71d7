// Command-line runner for decentralized zeroth-order experiments.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpoem/experiment.hpp"

namespace {

int report(dpoem::ExitCode code, const char* kind, const std::string& message) {
  nlohmann::json line{{"error", kind}, {"exit_code", static_cast<int>(code)}, {"message", message}};
  std::cerr << line.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized parameter-free zeroth-order optimization simulator"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run every algorithm in a config and write traces + summary");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();

  auto* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("config", config_path, "Experiment config (JSON)")->required();

  auto* tune = app.add_subcommand("tune-dsf", "Grid-search the DSF stepsize and smoothing constants");
  tune->add_option("config", config_path, "Experiment config (JSON)")->required();

  std::string dataset;
  std::string out_dir = dpoem::data_directory().string();
  std::string base_url = dpoem::kDefaultDataUrl;
  auto* fetch = app.add_subcommand("fetch-data", "Download mushrooms, a9a or w8a");
  fetch->add_option("name", dataset, "Dataset name")->required()->check(CLI::IsMember({"mushrooms", "a9a", "w8a"}));
  fetch->add_option("--out", out_dir, "Target directory")->capture_default_str();
  fetch->add_option("--base-url", base_url, "Mirror URL")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report(dpoem::kExitConfig, "usage", e.what());
  }

  try {
    if (*validate) {
      const auto problems = dpoem::validate_config_file(config_path);
      if (problems.empty()) {
        std::cout << "ok\n";
        return dpoem::kExitOk;
      }
      for (const auto& p : problems) std::cout << "error: " << p << '\n';
      return dpoem::kExitConfig;
    }
    if (*run) {
      const auto cfg = dpoem::load_config(config_path);
      const auto result = dpoem::run_experiment(cfg);
      std::cout << result.summary.dump(2) << '\n';
      return dpoem::kExitOk;
    }
    if (*tune) {
      const auto cfg = dpoem::load_config(config_path);
      const auto tuned = dpoem::tune_experiment_dsf(cfg);
      nlohmann::json out{{"eta0", tuned.best.eta0},
                         {"mu0", tuned.best.mu0},
                         {"final_f_xbar", tuned.best_objective},
                         {"grid_objectives", tuned.objectives}};
      std::cout << out.dump(2) << '\n';
      return dpoem::kExitOk;
    }
    if (*fetch) {
      const auto res = dpoem::fetch_dataset(dataset, out_dir, base_url);
      std::cout << res.path.string() << ' ' << res.sha256 << ' ' << res.bytes << '\n';
      return dpoem::kExitOk;
    }
  } catch (const dpoem::ConfigError& e) {
    return report(dpoem::kExitConfig, "config", e.what());
  } catch (const dpoem::DataError& e) {
    return report(dpoem::kExitData, "data", e.what());
  } catch (const std::exception& e) {
    return report(dpoem::kExitRuntime, "runtime", e.what());
  }
  return dpoem::kExitRuntime;
}
