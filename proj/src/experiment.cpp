#include "dpoem/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dpoem/algorithm.hpp"
#include "dpoem/reference.hpp"
#include "dpoem/rng.hpp"

namespace dpoem {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::map<std::string, std::size_t>& known_dimensions() {
  static const std::map<std::string, std::size_t> dims{{"mushrooms", 112}, {"a9a", 123}, {"w8a", 300}};
  return dims;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += sep;
    out += items[k];
  }
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

class Reader {
 public:
  Reader(const json& doc, std::vector<std::string>& errors) : doc_(doc), errors_(errors) {}

  void string(const char* key, std::string& out) {
    if (const json* v = find(key)) {
      if (v->is_string()) out = v->get<std::string>();
      else errors_.push_back(std::string("'") + key + "' must be a string");
    }
  }
  void boolean(const char* key, bool& out) {
    if (const json* v = find(key)) {
      if (v->is_boolean()) out = v->get<bool>();
      else errors_.push_back(std::string("'") + key + "' must be true or false");
    }
  }
  void real(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (v->is_number()) out = v->get<double>();
      else errors_.push_back(std::string("'") + key + "' must be a number");
    }
  }
  template <class Unsigned>
  void count(const char* key, Unsigned& out) {
    if (const json* v = find(key)) {
      if (v->is_number_unsigned() || (v->is_number_integer() && v->get<std::int64_t>() >= 0))
        out = v->get<Unsigned>();
      else errors_.push_back(std::string("'") + key + "' must be a non-negative integer");
    }
  }
  void optional_count(const char* key, std::optional<std::size_t>& out) {
    if (const json* v = find(key); v && !v->is_null()) {
      std::size_t value = 0;
      count(key, value);
      out = value;
    }
  }
  void strings(const char* key, std::vector<std::string>& out) {
    if (const json* v = find(key)) {
      if (v->is_array() && std::all_of(v->begin(), v->end(), [](const json& e) { return e.is_string(); }))
        out = v->get<std::vector<std::string>>();
      else errors_.push_back(std::string("'") + key + "' must be a list of strings");
    }
  }
  void reals(const char* key, std::vector<double>& out) {
    if (const json* v = find(key)) {
      if (v->is_array() && std::all_of(v->begin(), v->end(), [](const json& e) { return e.is_number(); }))
        out = v->get<std::vector<double>>();
      else errors_.push_back(std::string("'") + key + "' must be a list of numbers");
    }
  }

 private:
  const json* find(const char* key) const {
    const auto it = doc_.find(key);
    return it == doc_.end() ? nullptr : &*it;
  }

  const json& doc_;
  std::vector<std::string>& errors_;
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "label", "dataset", "synthetic", "dim", "label_scheme", "scale_features", "max_samples",
      "synthetic_noise", "synthetic_spread", "agents", "graph", "edge_probability", "radius",
      "r_eps", "horizon", "seed", "algorithms", "dsf_eta0_grid", "dsf_mu0_grid",
      "dsf_stepsize_exponent", "dsf_smoothing_exponent", "dsf_d_eta0", "dsf_d_mu0",
      "dsf_tune_horizon", "metric_stride", "output_dir", "reference_iterations"};
  return keys;
}

ExperimentConfig read_config(const json& doc, std::vector<std::string>& errors) {
  ExperimentConfig cfg;
  if (!doc.is_object()) {
    errors.push_back("config must be a JSON object");
    return cfg;
  }
  for (const auto& [key, value] : doc.items())
    if (!known_keys().count(key)) errors.push_back("unknown key '" + key + "'");

  Reader r(doc, errors);
  r.string("label", cfg.label);
  r.string("dataset", cfg.dataset);
  r.string("synthetic", cfg.synthetic);
  r.optional_count("dim", cfg.dim);
  r.string("label_scheme", cfg.label_scheme);
  r.boolean("scale_features", cfg.scale_features);
  r.count("max_samples", cfg.max_samples);
  r.real("synthetic_noise", cfg.synthetic_noise);
  r.real("synthetic_spread", cfg.synthetic_spread);
  r.count("agents", cfg.agents);
  r.string("graph", cfg.graph);
  r.real("edge_probability", cfg.edge_probability);
  r.real("radius", cfg.radius);
  r.real("r_eps", cfg.r_eps);
  r.count("horizon", cfg.horizon);
  r.count("seed", cfg.seed);
  r.strings("algorithms", cfg.algorithms);
  r.reals("dsf_eta0_grid", cfg.dsf_eta0_grid);
  r.reals("dsf_mu0_grid", cfg.dsf_mu0_grid);
  r.real("dsf_stepsize_exponent", cfg.dsf_stepsize_exponent);
  r.real("dsf_smoothing_exponent", cfg.dsf_smoothing_exponent);
  r.real("dsf_d_eta0", cfg.dsf_d_eta0);
  r.real("dsf_d_mu0", cfg.dsf_d_mu0);
  r.count("dsf_tune_horizon", cfg.dsf_tune_horizon);
  r.count("metric_stride", cfg.metric_stride);
  r.string("output_dir", cfg.output_dir);
  r.count("reference_iterations", cfg.reference_iterations);

  if (cfg.label.empty() || cfg.label.find_first_of("/\\") != std::string::npos)
    errors.push_back("label must be a non-empty name without path separators");
  if (cfg.dataset.empty() == cfg.synthetic.empty())
    errors.push_back("exactly one of 'dataset' and 'synthetic' must be set");
  if (!cfg.synthetic.empty()) {
    if (cfg.synthetic != "linear" && cfg.synthetic != "distance")
      errors.push_back("synthetic must be 'linear' or 'distance'");
    if (!cfg.dim || *cfg.dim == 0) errors.push_back("synthetic problems need a positive 'dim'");
  }
  if (cfg.label_scheme != "auto" && cfg.label_scheme != "pm1" && cfg.label_scheme != "01" &&
      cfg.label_scheme != "12")
    errors.push_back("label_scheme must be one of auto, pm1, 01, 12");
  if (!(cfg.synthetic_noise >= 0.0)) errors.push_back("synthetic_noise must be >= 0");
  if (!(cfg.synthetic_spread >= 0.0)) errors.push_back("synthetic_spread must be >= 0");
  if (cfg.agents < 1) errors.push_back("agents must be >= 1");
  if (cfg.graph != "erdos_renyi" && cfg.graph != "path" && cfg.graph != "ring" && cfg.graph != "complete")
    errors.push_back("graph must be one of erdos_renyi, path, ring, complete");
  if (cfg.graph == "erdos_renyi" && cfg.agents < 2)
    errors.push_back("erdos_renyi graphs need at least 2 agents");
  if (!(cfg.edge_probability > 0.0 && cfg.edge_probability <= 1.0))
    errors.push_back("edge_probability must lie in (0, 1]");
  if (!(cfg.radius > 0.0)) errors.push_back("radius must be positive");
  if (!(cfg.r_eps > 0.0)) errors.push_back("r_eps must be positive");
  else if (cfg.radius > 0.0 && cfg.r_eps > 2.0 * cfg.radius)
    errors.push_back("r_eps exceeds diameter 2R");
  if (cfg.horizon < 1) errors.push_back("horizon must be >= 1");
  if (cfg.algorithms.empty()) errors.push_back("algorithms must not be empty");
  std::set<std::string> seen;
  for (const auto& a : cfg.algorithms) {
    if (a != "dpoem" && a != "dsf_t" && a != "dsf_d") errors.push_back("unknown algorithm '" + a + "'");
    if (!seen.insert(a).second) errors.push_back("algorithm '" + a + "' listed twice");
  }
  if (cfg.dsf_eta0_grid.empty() || cfg.dsf_mu0_grid.empty()) errors.push_back("DSF grids must not be empty");
  for (double v : cfg.dsf_eta0_grid)
    if (!(v > 0.0)) errors.push_back("dsf_eta0_grid entries must be positive");
  for (double v : cfg.dsf_mu0_grid)
    if (!(v > 0.0)) errors.push_back("dsf_mu0_grid entries must be positive");
  if (!(cfg.dsf_stepsize_exponent > 0.0 && cfg.dsf_stepsize_exponent <= 1.0))
    errors.push_back("dsf_stepsize_exponent must lie in (0, 1]");
  if (!(cfg.dsf_smoothing_exponent > 0.0)) errors.push_back("dsf_smoothing_exponent must be positive");
  if (!(cfg.dsf_d_eta0 > 0.0) || !(cfg.dsf_d_mu0 > 0.0)) errors.push_back("dsf_d_eta0 and dsf_d_mu0 must be positive");
  if (cfg.metric_stride < 1) errors.push_back("metric_stride must be >= 1");
  if (cfg.output_dir.empty()) errors.push_back("output_dir must not be empty");
  return cfg;
}

json parse_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file '" + path.string() + "'"});
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({"config file '" + path.string() + "' is not valid JSON: " + e.what()});
  }
}

LabelScheme scheme_from(const std::string& name) {
  if (name == "pm1") return LabelScheme::kPlusMinusOne;
  if (name == "01") return LabelScheme::kZeroOne;
  if (name == "12") return LabelScheme::kOneTwo;
  return LabelScheme::kAuto;
}

fs::path resolve_dataset(const std::string& name) {
  if (fs::exists(name)) return name;
  if (known_dimensions().count(name)) {
    const fs::path cached = data_directory() / name;
    if (fs::exists(cached)) return cached;
    throw DataError(0, "dataset '" + name + "' not found in " + data_directory().string() +
                           " (run: dpoem fetch-data " + name + " --out " +
                           data_directory().string() + ")");
  }
  throw DataError(0, "dataset file '" + name + "' does not exist");
}

Vector gaussian(std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal;
  Vector v(static_cast<Eigen::Index>(d));
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = normal(rng);
  return v;
}

void build_synthetic(const ExperimentConfig& cfg, ExperimentContext& ctx) {
  const std::size_t d = *cfg.dim;
  const std::size_t n = cfg.agents;
  ObjectiveSet objs;
  if (cfg.synthetic == "linear") {
    Vector mean = Vector::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i) {
      Rng rng = make_stream(cfg.seed, StreamTag::kSynthetic, i);
      Vector c = gaussian(d, rng) / std::sqrt(static_cast<double>(d));
      mean += c / static_cast<double>(n);
      objs.push_back(std::make_shared<SyntheticObjective>(SyntheticObjective::linear(c, cfg.synthetic_noise)));
    }
    ctx.f_star = -cfg.radius * mean.norm();
  } else {
    Rng rng = make_stream(cfg.seed, StreamTag::kSynthetic, n);
    Vector center = gaussian(d, rng);
    center *= 0.5 * cfg.radius / center.norm();
    for (std::size_t i = 0; i < n; ++i) {
      Vector c = center;
      if (cfg.synthetic_spread > 0.0) {
        Rng own = make_stream(cfg.seed, StreamTag::kSynthetic, i);
        Vector u = gaussian(d, own);
        c += cfg.synthetic_spread * u / u.norm();
      }
      objs.push_back(std::make_shared<SyntheticObjective>(SyntheticObjective::distance(c, cfg.synthetic_noise)));
    }
    if (cfg.synthetic_spread == 0.0) ctx.f_star = 0.0;
  }
  ctx.problem.objectives = std::move(objs);
  ctx.problem.x0 = Vector::Zero(static_cast<Eigen::Index>(d));
}

void build_dataset(const ExperimentConfig& cfg, ExperimentContext& ctx) {
  LibsvmOptions opts;
  opts.labels = scheme_from(cfg.label_scheme);
  opts.dim = cfg.dim;
  if (!opts.dim) {
    const auto it = known_dimensions().find(cfg.dataset);
    if (it != known_dimensions().end()) opts.dim = it->second;
  }
  Dataset ds = load_libsvm(resolve_dataset(cfg.dataset).string(), opts);
  if (cfg.max_samples > 0 && cfg.max_samples < ds.samples.size())
    ds = subsample(ds, cfg.max_samples, cfg.seed);
  if (cfg.scale_features) scale_max_abs(ds);
  if (cfg.agents > ds.samples.size())
    throw DataError(0, "dataset has " + std::to_string(ds.samples.size()) + " samples but " +
                           std::to_string(cfg.agents) + " agents were requested");
  auto shared = std::make_shared<const Dataset>(std::move(ds));
  ctx.partition = partition_iid(*shared, cfg.agents, cfg.seed);
  ctx.problem.objectives = make_hinge_objectives(shared, ctx.partition);
  ctx.problem.x0 = Vector::Zero(static_cast<Eigen::Index>(shared->dim));
  ctx.dataset = std::move(shared);
}

Graph build_graph(const ExperimentConfig& cfg, int& attempts) {
  attempts = 1;
  if (cfg.agents == 1) return Graph(1);
  if (cfg.graph == "path") return Graph::path(cfg.agents);
  if (cfg.graph == "ring") return Graph::ring(cfg.agents);
  if (cfg.graph == "complete") return Graph::complete(cfg.agents);
  return erdos_renyi(cfg.agents, cfg.edge_probability, cfg.seed, 1000, &attempts);
}

std::uint64_t context_hash(const ExperimentContext& ctx) {
  std::uint64_t h = ctx.problem.fingerprint();
  auto fold = [&h](std::uint64_t v) {
    std::uint64_t s = h ^ v;
    h = splitmix64(s);
  };
  if (ctx.dataset) fold(fingerprint(*ctx.dataset));
  for (const auto& shard : ctx.partition.assignments) {
    fold(shard.size());
    for (std::size_t k : shard) fold(k);
  }
  for (const auto& obj : ctx.problem.objectives) {
    if (const auto* syn = dynamic_cast<const SyntheticObjective*>(obj.get())) {
      fold(static_cast<std::uint64_t>(syn->kind()));
      for (Eigen::Index k = 0; k < syn->vector().size(); ++k) {
        double v = syn->vector()[k];
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        fold(bits);
      }
    }
  }
  return h;
}

void attach_reference(const ExperimentConfig& cfg, ExperimentContext& ctx) {
  if (cfg.reference_iterations == 0 || (ctx.f_star && !ctx.f_star_is_reference)) return;
  std::uint64_t key = ctx.fingerprint ^ cfg.reference_iterations;
  const fs::path cache = data_directory() / ("reference-" + hex64(splitmix64(key)) + ".txt");
  if (ctx.dataset && fs::exists(cache)) {
    std::ifstream in(cache);
    double value = 0.0;
    if (in >> value) {
      ctx.f_star = value;
      ctx.f_star_is_reference = true;
      return;
    }
  }
  const ReferenceSolution ref = reference_minimum(ctx.problem.objectives, ctx.problem.ball,
                                                  cfg.reference_iterations);
  ctx.f_star = ref.f_star;
  ctx.f_star_is_reference = true;
  if (ctx.dataset) {
    std::error_code ec;
    fs::create_directories(cache.parent_path(), ec);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g\n", ref.f_star);
    if (!ec) write_file_atomic(cache, buf);
  }
}

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

json run_summary(const ExperimentContext& ctx, const AlgorithmRun& run, const ExperimentConfig& cfg) {
  const RunTrace& tr = run.trace;
  json s;
  s["final_f_xbar"] = tr.final_f_xbar;
  const OutputSelection out = select_output(tr.output);
  s["tau"] = out.tau;
  s["f_xtilde_tau"] = full_objective(ctx.problem.objectives, out.x_out);
  if (run.name == "dpoem") {
    const BoundCheck check = poem_bound_check(tr.output.history(), ctx.problem.ball.diameter(), cfg.r_eps);
    s["bound_check"] = {{"pass", check.pass}, {"lhs", check.lhs}, {"rhs", check.rhs}, {"margin", check.margin}};
  }
  if (ctx.f_star) {
    s["final_gap_xbar"] = tr.final_f_xbar - *ctx.f_star;
    s["gap_xtilde_tau"] = s["f_xtilde_tau"].get<double>() - *ctx.f_star;
  }
  s["oracle_calls_per_agent"] = tr.agent_oracle_calls.empty() ? 0 : tr.agent_oracle_calls.front();
  s["comm_rounds_per_agent"] = tr.agent_comm_rounds.empty() ? 0 : tr.agent_comm_rounds.front();
  s["oracle_calls_total"] = tr.rounds.empty() ? 0 : tr.rounds.back().oracle_calls_total;
  s["gradient_bound_violations"] = tr.gradient_bound_violations;
  s["final_consensus_error"] = consensus_error(tr.final_iterates);
  s["wall_seconds"] = run.wall_seconds;
  s["context_fingerprint"] = hex64(tr.context_fingerprint);
  if (run.dsf) {
    s["dsf"] = {{"eta0", run.dsf->eta0},
                {"mu0", run.dsf->mu0},
                {"stepsize_exponent", run.dsf->stepsize_exponent},
                {"smoothing_exponent", run.dsf->smoothing_exponent}};
  }
  if (!run.grid_objectives.empty()) s["grid_objectives"] = run.grid_objectives;
  return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems, "\n")), problems_(std::move(problems)) {}

json ExperimentConfig::to_json() const {
  json j{{"label", label},
         {"label_scheme", label_scheme},
         {"scale_features", scale_features},
         {"max_samples", max_samples},
         {"synthetic_noise", synthetic_noise},
         {"synthetic_spread", synthetic_spread},
         {"agents", agents},
         {"graph", graph},
         {"edge_probability", edge_probability},
         {"radius", radius},
         {"r_eps", r_eps},
         {"horizon", horizon},
         {"seed", seed},
         {"algorithms", algorithms},
         {"dsf_eta0_grid", dsf_eta0_grid},
         {"dsf_mu0_grid", dsf_mu0_grid},
         {"dsf_stepsize_exponent", dsf_stepsize_exponent},
         {"dsf_smoothing_exponent", dsf_smoothing_exponent},
         {"dsf_d_eta0", dsf_d_eta0},
         {"dsf_d_mu0", dsf_d_mu0},
         {"dsf_tune_horizon", dsf_tune_horizon},
         {"metric_stride", metric_stride},
         {"output_dir", output_dir},
         {"reference_iterations", reference_iterations}};
  if (!dataset.empty()) j["dataset"] = dataset;
  if (!synthetic.empty()) j["synthetic"] = synthetic;
  if (dim) j["dim"] = *dim;
  return j;
}

std::vector<DsfConfig> ExperimentConfig::dsf_grid() const {
  std::vector<DsfConfig> grid;
  for (double eta0 : dsf_eta0_grid)
    for (double mu0 : dsf_mu0_grid)
      grid.push_back({eta0, mu0, dsf_stepsize_exponent, dsf_smoothing_exponent});
  return grid;
}

DsfConfig ExperimentConfig::dsf_default() const {
  return {dsf_d_eta0, dsf_d_mu0, dsf_stepsize_exponent, dsf_smoothing_exponent};
}

std::vector<std::string> validate_config(const json& doc) {
  std::vector<std::string> errors;
  read_config(doc, errors);
  return errors;
}

std::vector<std::string> validate_config_file(const fs::path& path) {
  return validate_config(parse_json_file(path));
}

ExperimentConfig parse_config(const json& doc) {
  std::vector<std::string> errors;
  ExperimentConfig cfg = read_config(doc, errors);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
  return parse_config(parse_json_file(path));
}

fs::path data_directory() {
  if (const char* dir = std::getenv("DPOEM_DATA_DIR"); dir && *dir) return dir;
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "dpoem";
  return fs::path(".dpoem-data");
}

ExperimentContext build_context(const ExperimentConfig& cfg) {
  ExperimentContext ctx;
  if (cfg.synthetic.empty()) build_dataset(cfg, ctx);
  else build_synthetic(cfg, ctx);
  ctx.graph = build_graph(cfg, ctx.graph_attempts);
  ctx.problem.mixing = MixingMatrix::metropolis(ctx.graph);
  ctx.problem.ball = FeasibleBall{cfg.radius};
  ctx.problem.validate();
  ctx.fingerprint = context_hash(ctx);
  attach_reference(cfg, ctx);
  return ctx;
}

std::string trace_csv(const RunTrace& trace) {
  std::string out = kTraceHeader;
  out += '\n';
  char buf[64];
  for (const auto& row : trace.rows) {
    std::snprintf(buf, sizeof buf, "%zu,%llu,%llu", row.t,
                  static_cast<unsigned long long>(row.oracle_calls_total),
                  static_cast<unsigned long long>(row.comm_rounds_total));
    out += buf;
    for (double v : {row.f_xbar, row.f_xtilde, row.consensus_error, row.rbar_mean, row.G_max,
                     row.eta_mean, row.mu_mean}) {
      out += ',';
      append_number(out, v);
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write) {
  ExperimentResult result;
  result.context = build_context(cfg);
  const Problem& problem = result.context.problem;

  TraceOptions opts;
  opts.metric_stride = cfg.metric_stride;

  for (const auto& name : cfg.algorithms) {
    AlgorithmRun run;
    run.name = name;
    const auto start = std::chrono::steady_clock::now();
    if (name == "dpoem") {
      run.trace = run_dpoem(problem, {cfg.r_eps, cfg.horizon, cfg.seed}, opts);
    } else if (name == "dsf_d") {
      run.dsf = cfg.dsf_default();
      run.trace = run_dsf(problem, *run.dsf, cfg.horizon, cfg.seed, opts);
    } else {
      const auto grid = cfg.dsf_grid();
      const std::size_t tune_horizon = cfg.dsf_tune_horizon ? cfg.dsf_tune_horizon : cfg.horizon;
      const DsfTuningResult tuned = tune_dsf(problem, grid, tune_horizon, cfg.seed);
      run.dsf = tuned.best;
      run.grid_objectives = tuned.objectives;
      run.trace = run_dsf(problem, *run.dsf, cfg.horizon, cfg.seed, opts);
    }
    run.trace.algorithm = name;
    run.trace.context_fingerprint = result.context.fingerprint;
    run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.runs.push_back(std::move(run));
  }

  json summary;
  summary["label"] = cfg.label;
  summary["config"] = cfg.to_json();
  summary["context_fingerprint"] = hex64(result.context.fingerprint);
  summary["sigma"] = problem.mixing.sigma();
  summary["graph_edges"] = result.context.graph.edge_count();
  summary["graph_attempts"] = result.context.graph_attempts;
  summary["dimension"] = problem.dimension();
  if (result.context.dataset) summary["samples"] = result.context.dataset->samples.size();
  if (result.context.f_star) {
    summary["f_star"] = *result.context.f_star;
    summary["f_star_source"] = result.context.f_star_is_reference ? "reference_solver" : "analytic";
  }
  for (const auto& run : result.runs) summary["algorithms"][run.name] = run_summary(result.context, run, cfg);
  result.summary = summary;

  if (write) {
    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);
    for (const auto& run : result.runs)
      write_file_atomic(dir / (cfg.label + "__" + run.name + ".csv"), trace_csv(run.trace));
    write_file_atomic(dir / (cfg.label + "__summary.json"), summary.dump(2) + "\n");
  }
  return result;
}

DsfTuningResult tune_experiment_dsf(const ExperimentConfig& cfg) {
  const ExperimentContext ctx = build_context(cfg);
  const auto grid = cfg.dsf_grid();
  const std::size_t horizon = cfg.dsf_tune_horizon ? cfg.dsf_tune_horizon : cfg.horizon;
  return tune_dsf(ctx.problem, grid, horizon, cfg.seed);
}

}  // namespace dpoem
