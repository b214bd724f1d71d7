#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpoem/baselines.hpp"
#include "dpoem/data.hpp"
#include "dpoem/metrics.hpp"
#include "dpoem/network.hpp"
#include "dpoem/problem.hpp"

namespace dpoem {

/// Invalid experiment description. what() lists every violation, one per line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Process exit codes of the command-line runner.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitData = 3,
  kExitRuntime = 4,
};

/// Declarative description of one experiment. Loaded from a flat JSON object
/// whose keys match the field names below; unknown keys are rejected.
struct ExperimentConfig {
  std::string label = "experiment";

  // Data: exactly one of `dataset` (path, or mushrooms/a9a/w8a in the data
  // directory) and `synthetic` (linear | distance).
  std::string dataset;
  std::string synthetic;
  std::optional<std::size_t> dim;
  std::string label_scheme = "auto";
  bool scale_features = false;
  std::size_t max_samples = 0;
  double synthetic_noise = 0.0;
  double synthetic_spread = 0.0;

  std::size_t agents = 20;
  std::string graph = "erdos_renyi";
  double edge_probability = 0.25;

  double radius = 1.0;
  double r_eps = 0.1;
  std::size_t horizon = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> algorithms = {"dpoem", "dsf_t", "dsf_d"};

  std::vector<double> dsf_eta0_grid = {0.01, 0.1, 1.0, 10.0};
  std::vector<double> dsf_mu0_grid = {1e-3, 1e-2, 1e-1, 1.0};
  double dsf_stepsize_exponent = 0.5;
  double dsf_smoothing_exponent = 1.0;
  double dsf_d_eta0 = 1.0;
  double dsf_d_mu0 = 1.0;
  std::size_t dsf_tune_horizon = 0;  // 0: use `horizon`

  std::size_t metric_stride = 10;
  std::string output_dir = "runs";
  std::size_t reference_iterations = 0;  // 0: no reference solve

  nlohmann::json to_json() const;
  std::vector<DsfConfig> dsf_grid() const;
  DsfConfig dsf_default() const;
};

/// Every violation in `doc`; empty when valid.
std::vector<std::string> validate_config(const nlohmann::json& doc);
/// Reads and validates a config file. Throws ConfigError if it cannot be read or parsed.
std::vector<std::string> validate_config_file(const std::filesystem::path& path);

/// Throws ConfigError listing every violation.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Dataset cache directory: $DPOEM_DATA_DIR, else ~/.cache/dpoem.
std::filesystem::path data_directory();

/// The context every algorithm in an experiment shares.
struct ExperimentContext {
  std::shared_ptr<const Dataset> dataset;  // null for synthetic problems
  Partition partition;
  Graph graph{1};
  int graph_attempts = 1;
  Problem problem;
  std::optional<double> f_star;  // analytic optimum when known
  bool f_star_is_reference = false;
  std::uint64_t fingerprint = 0;
};

ExperimentContext build_context(const ExperimentConfig& cfg);

struct AlgorithmRun {
  std::string name;  // dpoem | dsf_t | dsf_d
  RunTrace trace;
  std::optional<DsfConfig> dsf;
  std::vector<double> grid_objectives;  // dsf_t only
  double wall_seconds = 0.0;
};

struct ExperimentResult {
  ExperimentContext context;
  std::vector<AlgorithmRun> runs;
  nlohmann::json summary;
};

/// Builds the shared context, runs each requested algorithm on it, and (when
/// `write` is set) writes `<label>__<algorithm>.csv` per run plus
/// `<label>__summary.json` into the output directory.
ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write = true);

/// DSF-T grid search on the experiment's context.
DsfTuningResult tune_experiment_dsf(const ExperimentConfig& cfg);

inline constexpr const char* kTraceHeader =
    "t,oracle_calls_total,comm_rounds_total,f_xbar,f_xtilde,consensus_error,rbar_mean,G_max,"
    "eta_mean,mu_mean";

std::string trace_csv(const RunTrace& trace);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// Dataset download helper.

struct FetchResult {
  std::filesystem::path path;
  std::string sha256;
  std::size_t bytes = 0;
};

inline constexpr const char* kDefaultDataUrl =
    "https://www.csie.ntu.edu.tw/~cjlin/libsvmtools/datasets/binary";

/// Downloads `<base_url>/<name>` for name in {mushrooms, a9a, w8a} into
/// `out_dir` and records its SHA-256 in `out_dir/datasets.lock`. A file that is
/// already recorded in the lock must hash to the recorded value.
FetchResult fetch_dataset(const std::string& name, const std::filesystem::path& out_dir,
                          const std::string& base_url = kDefaultDataUrl);

std::string sha256_hex(const std::string& bytes);

}  // namespace dpoem
