#include "resil/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <utility>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "resil/buffering.hpp"
#include "resil/cascades.hpp"
#include "resil/interdependent.hpp"
#include "resil/parallel.hpp"
#include "resil/percolation.hpp"
#include "resil/rng.hpp"
#include "resil/truth.hpp"

namespace resil {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw std::invalid_argument(path + ": " + why);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) fail(join(path, item.key()), "unknown key");
  }
}

const json& member(const json& obj, const std::string& path,
                   const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(join(path, key), "missing required key");
  return *it;
}

std::string get_string(const json& obj, const std::string& path,
                       const std::string& key) {
  const json& j = member(obj, path, key);
  if (!j.is_string()) fail(join(path, key), "must be a string");
  return j.get<std::string>();
}

double get_double(const json& obj, const std::string& path,
                  const std::string& key) {
  const json& j = member(obj, path, key);
  if (!j.is_number()) fail(join(path, key), "must be a number");
  return j.get<double>();
}

double get_double_or(const json& obj, const std::string& path,
                     const std::string& key, double fallback) {
  return obj.contains(key) ? get_double(obj, path, key) : fallback;
}

std::uint64_t get_uint(const json& obj, const std::string& path,
                       const std::string& key) {
  const json& j = member(obj, path, key);
  if (!j.is_number_unsigned())
    fail(join(path, key), "must be a non-negative integer");
  return j.get<std::uint64_t>();
}

std::uint64_t get_uint_or(const json& obj, const std::string& path,
                          const std::string& key, std::uint64_t fallback) {
  return obj.contains(key) ? get_uint(obj, path, key) : fallback;
}

std::uint32_t get_u32(const json& obj, const std::string& path,
                      const std::string& key) {
  const std::uint64_t v = get_uint(obj, path, key);
  if (v > 0xffffffffull) fail(join(path, key), "value too large");
  return static_cast<std::uint32_t>(v);
}

std::uint32_t get_u32_or(const json& obj, const std::string& path,
                         const std::string& key, std::uint32_t fallback) {
  return obj.contains(key) ? get_u32(obj, path, key) : fallback;
}

bool get_bool_or(const json& obj, const std::string& path,
                 const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& j = obj.at(key);
  if (!j.is_boolean()) fail(join(path, key), "must be a boolean");
  return j.get<bool>();
}

std::vector<double> get_double_array(const json& obj, const std::string& path,
                                     const std::string& key) {
  const json& j = member(obj, path, key);
  if (!j.is_array() || j.empty()) fail(join(path, key), "must be a non-empty array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& x : j) {
    if (!x.is_number()) fail(join(path, key), "must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::uint32_t> get_u32_array(const json& obj,
                                         const std::string& path,
                                         const std::string& key) {
  const json& j = member(obj, path, key);
  if (!j.is_array() || j.empty()) fail(join(path, key), "must be a non-empty array");
  std::vector<std::uint32_t> out;
  out.reserve(j.size());
  for (const json& x : j) {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() > 0xffffffffull)
      fail(join(path, key), "must contain only non-negative integers");
    out.push_back(x.get<std::uint32_t>());
  }
  return out;
}

void check_grid(const std::vector<double>& grid, const std::string& path,
                double lo, double hi, bool increasing) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= lo && grid[i] <= hi))
      fail(path, "values must be in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
    if (increasing && i > 0 && grid[i] <= grid[i - 1])
      fail(path, "must be strictly increasing");
  }
}

// Re-labels "generator.*" messages from GeneratorSpec::validate with the
// actual JSON path ("generator_a.n: ...").
[[noreturn]] void rethrow_with_path(const std::invalid_argument& e,
                                    const std::string& path) {
  std::string msg = e.what();
  const std::string prefix = "generator.";
  if (msg.rfind(prefix, 0) == 0) msg = path + "." + msg.substr(prefix.size());
  throw std::invalid_argument(msg);
}

GeneratorSpec parse_generator(const json& root, const std::string& path) {
  const json& obj = root;
  if (!obj.is_object()) fail(path, "must be an object");
  const std::string kind_name = get_string(obj, path, "kind");
  const auto kind = generator_kind_from_string(kind_name);
  if (!kind) fail(join(path, "kind"), "unknown generator kind \"" + kind_name + "\"");

  GeneratorSpec spec;
  spec.kind = *kind;
  switch (*kind) {
    case GeneratorKind::erdos_renyi:
      check_keys(obj, path, {"kind", "n", "mean_degree"});
      spec.n = get_u32(obj, path, "n");
      spec.mean_degree = get_double(obj, path, "mean_degree");
      break;
    case GeneratorKind::preferential_attachment:
      check_keys(obj, path, {"kind", "n", "attach_m"});
      spec.n = get_u32(obj, path, "n");
      spec.attach_m = get_u32(obj, path, "attach_m");
      break;
    case GeneratorKind::config_power_law:
      check_keys(obj, path, {"kind", "n", "gamma", "k_min", "k_max"});
      spec.n = get_u32(obj, path, "n");
      spec.gamma = get_double(obj, path, "gamma");
      spec.k_min = get_u32_or(obj, path, "k_min", 1);
      spec.k_max = get_u32(obj, path, "k_max");
      break;
    case GeneratorKind::config_exponential:
      check_keys(obj, path, {"kind", "n", "mean_degree", "k_min", "k_max"});
      spec.n = get_u32(obj, path, "n");
      spec.mean_degree = get_double(obj, path, "mean_degree");
      spec.k_min = get_u32_or(obj, path, "k_min", 1);
      spec.k_max = get_u32(obj, path, "k_max");
      break;
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    rethrow_with_path(e, path);
  }
  return spec;
}

RemovalStrategy parse_strategy(const json& obj, const std::string& path,
                               const std::string& key) {
  const std::string name = get_string(obj, path, key);
  try {
    return removal_strategy_from_string(name);
  } catch (const std::invalid_argument&) {
    fail(join(path, key), "unknown removal strategy \"" + name + "\"");
  }
}

struct ParamRange {
  bool is_range = false;
  std::vector<double> values;
  double low = 0.0, high = 0.0;
};

ParamRange parse_param_range(const json& obj, const std::string& path,
                             const std::string& key, std::uint32_t count) {
  const json& j = member(obj, path, key);
  ParamRange out;
  if (j.is_array()) {
    out.values = get_double_array(obj, path, key);
    if (out.values.size() != count)
      fail(join(path, key), "must have one entry per source");
    for (double x : out.values)
      if (!(x > 0.0 && x < 1.0))
        fail(join(path, key), "values must be in (0, 1)");
    return out;
  }
  if (j.is_object()) {
    check_keys(j, join(path, key), {"low", "high"});
    out.is_range = true;
    out.low = get_double(j, join(path, key), "low");
    out.high = get_double(j, join(path, key), "high");
    if (!(out.low > 0.0 && out.low < 1.0 && out.high > 0.0 && out.high < 1.0))
      fail(join(path, key), "bounds must be in (0, 1)");
    if (out.low > out.high) fail(join(path, key), "low exceeds high");
    return out;
  }
  fail(join(path, key), "must be an array or {\"low\", \"high\"} object");
}

std::vector<double> materialize(const ParamRange& range, std::uint32_t count,
                                Rng& rng) {
  if (!range.is_range) return range.values;
  std::vector<double> out(count);
  for (std::uint32_t i = 0; i < count; ++i)
    out[i] = range.low + (range.high - range.low) * rng.real();
  return out;
}

// Per-round means across replicate cascade traces; shorter cascades hold
// their final state.
void write_averaged_trace_csv(std::ostream& out,
                              const std::vector<CascadeResult>& results) {
  out << "round,new_failures,cumulative_failed,survivor_fraction\n";
  std::size_t max_rounds = 0;
  for (const CascadeResult& r : results)
    max_rounds = std::max(max_rounds, r.rounds.size());
  const auto reps = static_cast<double>(results.size());
  char buf[200];
  for (std::size_t round = 0; round <= max_rounds; ++round) {
    double new_mean = 0.0, cum_mean = 0.0, surv_mean = 0.0;
    for (const CascadeResult& r : results) {
      std::size_t cum = r.initial_failures;
      double nf = round == 0 ? r.initial_failures : 0.0;
      for (std::size_t i = 0; i < std::min(round, r.rounds.size()); ++i)
        cum += r.rounds[i];
      if (round >= 1 && round <= r.rounds.size()) nf = r.rounds[round - 1];
      new_mean += nf;
      cum_mean += static_cast<double>(cum);
      surv_mean += r.survivor_by_round[std::min(round, r.rounds.size())];
    }
    std::snprintf(buf, sizeof(buf), "%zu,%.10g,%.10g,%.10g", round,
                  new_mean / reps, cum_mean / reps, surv_mean / reps);
    out << buf << '\n';
  }
}

struct Ctx {
  std::uint64_t seed = 0;
  bool seed_overridden = false;
  unsigned jobs = 1;
  std::string out_dir;
  std::string output;
  json extras = json::object();
  std::vector<std::string> warnings;
  std::vector<std::string> outputs;
};

std::string output_path(const Ctx& ctx, const std::string& suffix) {
  return (std::filesystem::path(ctx.out_dir) / (ctx.output + suffix)).string();
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path);
}

void emit_csv(Ctx& ctx, const std::string& suffix, const std::string& content) {
  const std::string path = output_path(ctx, suffix);
  write_text_file(path, content);
  ctx.outputs.push_back(path);
}

// ---- percolation_sweep ----

struct PercolationParams {
  std::uint64_t seed = 0;
  std::string output;
  GeneratorSpec gen;
  RemovalStrategy strategy = RemovalStrategy::random;
  std::vector<double> f_grid;
  std::uint32_t replicates = 1;
  bool path_length = true;
  std::uint64_t path_pair_budget = kDefaultPathPairBudget;
};

PercolationParams parse_percolation(const json& root) {
  check_keys(root, "", {"experiment", "output", "seed", "generator", "removal",
                        "f_grid", "replicates", "path_length", "path_pair_budget"});
  PercolationParams p;
  p.seed = get_uint_or(root, "", "seed", 0);
  p.output = root.contains("output") ? get_string(root, "", "output")
                                     : std::string("percolation_sweep");
  p.gen = parse_generator(member(root, "", "generator"), "generator");
  const json& removal = member(root, "", "removal");
  if (!removal.is_object()) fail("removal", "must be an object");
  check_keys(removal, "removal", {"strategy"});
  p.strategy = parse_strategy(removal, "removal", "strategy");
  p.f_grid = get_double_array(root, "", "f_grid");
  check_grid(p.f_grid, "f_grid", 0.0, 1.0, true);
  p.replicates = get_u32_or(root, "", "replicates", 1);
  if (p.replicates == 0) fail("replicates", "must be >= 1");
  p.path_length = get_bool_or(root, "", "path_length", true);
  p.path_pair_budget =
      get_uint_or(root, "", "path_pair_budget", kDefaultPathPairBudget);
  if (p.path_pair_budget == 0) fail("path_pair_budget", "must be >= 1");
  return p;
}

void exec_percolation(const PercolationParams& p, Ctx& ctx) {
  RemovalPlan plan{p.strategy, ctx.seed};
  SweepOptions options;
  options.compute_path_length = p.path_length;
  options.path_pair_budget = p.path_pair_budget;
  options.jobs = ctx.jobs;
  const PercolationCurve curve = percolation_sweep(
      p.gen.with_seed(ctx.seed), plan, p.f_grid, p.replicates, ctx.seed, options);
  std::ostringstream csv;
  write_percolation_csv(csv, curve);
  emit_csv(ctx, ".csv", csv.str());
  ctx.extras["replicates"] = p.replicates;
}

// ---- watts ----

struct WattsParams {
  std::uint64_t seed = 0;
  std::string output;
  GeneratorSpec gen;
  double phi = 0.5;
  std::uint32_t seed_count = 1;
  std::uint32_t replicates = 1;
};

WattsParams parse_watts(const json& root) {
  check_keys(root, "", {"experiment", "output", "seed", "generator", "phi",
                        "seed_count", "replicates"});
  WattsParams p;
  p.seed = get_uint_or(root, "", "seed", 0);
  p.output = root.contains("output") ? get_string(root, "", "output")
                                     : std::string("watts");
  p.gen = parse_generator(member(root, "", "generator"), "generator");
  p.phi = get_double(root, "", "phi");
  if (!(p.phi > 0.0 && p.phi <= 1.0)) fail("phi", "must be in (0, 1]");
  p.seed_count = get_u32_or(root, "", "seed_count", 1);
  if (p.seed_count == 0) fail("seed_count", "must be >= 1");
  if (p.seed_count > p.gen.n) fail("seed_count", "exceeds generator.n");
  p.replicates = get_u32_or(root, "", "replicates", 1);
  if (p.replicates == 0) fail("replicates", "must be >= 1");
  return p;
}

void exec_watts(const WattsParams& p, Ctx& ctx) {
  std::vector<CascadeResult> results(p.replicates);
  parallel_for_index(p.replicates, ctx.jobs, [&](std::size_t r) {
    const std::uint64_t rep = ctx.seed ^ static_cast<std::uint64_t>(r);
    const Graph g = generate(p.gen.with_seed(rep));
    results[r] = watts_cascade(g, ThresholdCascadeSpec{p.phi, p.seed_count, rep});
  });
  std::ostringstream csv;
  write_averaged_trace_csv(csv, results);
  emit_csv(ctx, ".csv", csv.str());
  double survivors = 0.0;
  for (const CascadeResult& r : results) survivors += r.survivor_fraction;
  ctx.extras["replicates"] = p.replicates;
  ctx.extras["mean_survivor_fraction"] = survivors / p.replicates;
}

// ---- motter_lai ----

struct MotterParams {
  std::uint64_t seed = 0;
  std::string output;
  GeneratorSpec gen;
  double alpha = 0.0;
  RemovalStrategy trigger_strategy = RemovalStrategy::random;
  double trigger_fraction = 0.0;
  std::uint32_t replicates = 1;
};

MotterParams parse_motter(const json& root) {
  check_keys(root, "",
             {"experiment", "output", "seed", "generator", "alpha", "trigger",
              "replicates"});
  MotterParams p;
  p.seed = get_uint_or(root, "", "seed", 0);
  p.output = root.contains("output") ? get_string(root, "", "output")
                                     : std::string("motter_lai");
  p.gen = parse_generator(member(root, "", "generator"), "generator");
  p.alpha = get_double(root, "", "alpha");
  if (!(p.alpha >= 0.0)) fail("alpha", "must be >= 0");
  const json& trigger = member(root, "", "trigger");
  if (!trigger.is_object()) fail("trigger", "must be an object");
  check_keys(trigger, "trigger", {"strategy", "fraction"});
  p.trigger_strategy = parse_strategy(trigger, "trigger", "strategy");
  p.trigger_fraction = get_double(trigger, "trigger", "fraction");
  if (!(p.trigger_fraction >= 0.0 && p.trigger_fraction <= 1.0))
    fail("trigger.fraction", "must be in [0, 1]");
  p.replicates = get_u32_or(root, "", "replicates", 1);
  if (p.replicates == 0) fail("replicates", "must be >= 1");
  return p;
}

void exec_motter(const MotterParams& p, Ctx& ctx) {
  std::vector<CascadeResult> results(p.replicates);
  parallel_for_index(p.replicates, ctx.jobs, [&](std::size_t r) {
    const std::uint64_t rep = ctx.seed ^ static_cast<std::uint64_t>(r);
    const Graph g = generate(p.gen.with_seed(rep));
    LoadCascadeSpec spec;
    spec.alpha = p.alpha;
    spec.trigger = RemovalPlan{p.trigger_strategy, rep};
    spec.trigger_fraction = p.trigger_fraction;
    results[r] = motter_lai_cascade(g, spec);
  });
  std::ostringstream csv;
  write_averaged_trace_csv(csv, results);
  emit_csv(ctx, ".csv", csv.str());
  double survivors = 0.0;
  for (const CascadeResult& r : results) survivors += r.survivor_fraction;
  ctx.extras["replicates"] = p.replicates;
  ctx.extras["mean_survivor_fraction"] = survivors / p.replicates;
}

// ---- weighted_beta ----

struct BetaParams {
  std::uint64_t seed = 0;
  std::string output;
  GeneratorSpec gen;
  std::vector<double> beta_grid;
  std::vector<double> f_grid;
  double alpha = 0.0;
  std::uint32_t replicates = 1;
};

BetaParams parse_beta(const json& root) {
  check_keys(root, "", {"experiment", "output", "seed", "generator",
                        "beta_grid", "f_grid", "alpha", "replicates"});
  BetaParams p;
  p.seed = get_uint_or(root, "", "seed", 0);
  p.output = root.contains("output") ? get_string(root, "", "output")
                                     : std::string("weighted_beta");
  p.gen = parse_generator(member(root, "", "generator"), "generator");
  p.beta_grid = get_double_array(root, "", "beta_grid");
  p.f_grid = get_double_array(root, "", "f_grid");
  check_grid(p.f_grid, "f_grid", 0.0, 1.0, false);
  p.alpha = get_double(root, "", "alpha");
  if (!(p.alpha >= 0.0)) fail("alpha", "must be >= 0");
  p.replicates = get_u32_or(root, "", "replicates", 1);
  if (p.replicates == 0) fail("replicates", "must be >= 1");
  return p;
}

void exec_beta(const BetaParams& p, Ctx& ctx) {
  const BetaSweepResult sweep =
      weighted_cascade_sweep(p.gen.with_seed(ctx.seed), p.beta_grid, p.f_grid,
                             p.alpha, p.replicates, ctx.seed, ctx.jobs);
  std::ostringstream csv;
  write_beta_sweep_csv(csv, sweep);
  emit_csv(ctx, ".csv", csv.str());
  ctx.extras["replicates"] = p.replicates;
}

// ---- interdependent ----

struct InterParams {
  std::uint64_t seed = 0;
  std::string output;
  GeneratorSpec gen_a;
  GeneratorSpec gen_b;
  std::vector<double> p_grid;
  std::uint32_t replicates = 1;
  bool coupled = true;
};

InterParams parse_inter(const json& root) {
  check_keys(root, "", {"experiment", "output", "seed", "generator_a",
                        "generator_b", "p_grid", "replicates", "coupled"});
  InterParams p;
  p.seed = get_uint_or(root, "", "seed", 0);
  p.output = root.contains("output") ? get_string(root, "", "output")
                                     : std::string("interdependent");
  p.gen_a = parse_generator(member(root, "", "generator_a"), "generator_a");
  p.gen_b = parse_generator(member(root, "", "generator_b"), "generator_b");
  if (p.gen_a.n != p.gen_b.n) fail("generator_b.n", "must equal generator_a.n");
  p.p_grid = get_double_array(root, "", "p_grid");
  check_grid(p.p_grid, "p_grid", 0.0, 1.0, true);
  p.replicates = get_u32_or(root, "", "replicates", 1);
  if (p.replicates == 0) fail("replicates", "must be >= 1");
  p.coupled = get_bool_or(root, "", "coupled", true);
  return p;
}

void exec_inter(const InterParams& p, Ctx& ctx) {
  PcSweepOptions options;
  options.coupled = p.coupled;
  options.jobs = ctx.jobs;
  const PcSweepResult sweep = pc_sweep(p.gen_a.with_seed(ctx.seed),
                                       p.gen_b.with_seed(ctx.seed), p.p_grid,
                                       p.replicates, ctx.seed, options);
  std::ostringstream csv;
  write_pc_sweep_csv(csv, sweep);
  emit_csv(ctx, ".csv", csv.str());
  ctx.extras["replicates"] = p.replicates;
  ctx.extras["coupled"] = p.coupled;
  if (sweep.critical_fraction)
    ctx.extras["critical_fraction"] = *sweep.critical_fraction;
  else
    ctx.extras["critical_fraction"] = nullptr;
  ctx.extras["straddles_transition"] = sweep.straddles_transition;
  if (!sweep.straddles_transition)
    ctx.warnings.push_back(
        "p_grid does not straddle the collapse transition; the critical "
        "fraction estimate is unreliable");
}

// ---- buffering ----

struct BufferParams {
  std::uint64_t seed = 0;
  std::string output;
  std::uint32_t n_agents = 0;
  std::uint32_t n_functions = 0;
  std::vector<std::uint32_t> v_grid;
  std::vector<std::uint32_t> c_grid;
  double removal_fraction = 0.0;
  FunctionDemand demand;
  std::uint32_t replicates = 1;
};

BufferParams parse_buffer(const json& root) {
  check_keys(root, "",
             {"experiment", "output", "seed", "n_agents", "n_functions",
              "v_grid", "c_grid", "removal_fraction", "demand", "replicates"});
  BufferParams p;
  p.seed = get_uint_or(root, "", "seed", 0);
  p.output = root.contains("output") ? get_string(root, "", "output")
                                     : std::string("buffering");
  p.n_agents = get_u32(root, "", "n_agents");
  if (p.n_agents == 0) fail("n_agents", "must be >= 1");
  p.n_functions = get_u32(root, "", "n_functions");
  if (p.n_functions == 0) fail("n_functions", "must be >= 1");
  p.v_grid = get_u32_array(root, "", "v_grid");
  for (std::size_t i = 0; i < p.v_grid.size(); ++i) {
    if (p.v_grid[i] < 1 || p.v_grid[i] > p.n_functions)
      fail("v_grid", "values must be in [1, n_functions]");
    if (i > 0 && p.v_grid[i] <= p.v_grid[i - 1])
      fail("v_grid", "must be strictly increasing");
  }
  p.c_grid = get_u32_array(root, "", "c_grid");
  for (std::size_t i = 0; i < p.c_grid.size(); ++i) {
    if (p.c_grid[i] == 0) fail("c_grid", "values must be >= 1");
    if (i > 0 && p.c_grid[i] <= p.c_grid[i - 1])
      fail("c_grid", "must be strictly increasing");
  }
  p.removal_fraction = get_double(root, "", "removal_fraction");
  if (!(p.removal_fraction >= 0.0 && p.removal_fraction <= 1.0))
    fail("removal_fraction", "must be in [0, 1]");
  p.demand.required = get_u32_array(root, "", "demand");
  if (p.demand.required.size() != p.n_functions)
    fail("demand", "must have one entry per function");
  if (p.demand.total() == 0) fail("demand", "total must be >= 1");
  p.replicates = get_u32_or(root, "", "replicates", 1);
  if (p.replicates == 0) fail("replicates", "must be >= 1");
  return p;
}

void exec_buffer(const BufferParams& p, Ctx& ctx) {
  const DegeneracySurface surface = degeneracy_sweep(
      p.n_agents, p.n_functions, p.v_grid, p.c_grid, p.removal_fraction,
      p.demand, p.replicates, ctx.seed, ctx.jobs);
  std::ostringstream csv;
  write_surface_csv(csv, surface);
  emit_csv(ctx, ".csv", csv.str());
  ctx.extras["replicates"] = p.replicates;
}

// ---- truth ----

struct TruthParams {
  std::uint64_t seed = 0;
  std::string output;
  std::uint32_t n_sources = 0;
  std::uint32_t n_claims = 0;
  ParamRange a;
  ParamRange b;
  double d = 0.5;
  double level = 0.95;
  double threshold = 0.5;
  std::optional<std::uint32_t> corrupt_source;
  double tol = 1e-8;
  std::uint32_t max_iter = 2000;
};

TruthParams parse_truth(const json& root) {
  check_keys(root, "",
             {"experiment", "output", "seed", "n_sources", "n_claims", "a", "b",
              "d", "level", "threshold", "corrupt_source", "tol", "max_iter"});
  TruthParams p;
  p.seed = get_uint_or(root, "", "seed", 0);
  p.output = root.contains("output") ? get_string(root, "", "output")
                                     : std::string("truth");
  p.n_sources = get_u32(root, "", "n_sources");
  if (p.n_sources < 2) fail("n_sources", "must be >= 2");
  p.n_claims = get_u32(root, "", "n_claims");
  if (p.n_claims < 2) fail("n_claims", "must be >= 2");
  p.a = parse_param_range(root, "", "a", p.n_sources);
  p.b = parse_param_range(root, "", "b", p.n_sources);
  p.d = get_double(root, "", "d");
  if (!(p.d >= 0.0 && p.d <= 1.0)) fail("d", "must be in [0, 1]");
  p.level = get_double_or(root, "", "level", 0.95);
  if (!(p.level > 0.0 && p.level < 1.0)) fail("level", "must be in (0, 1)");
  p.threshold = get_double_or(root, "", "threshold", 0.5);
  if (!(p.threshold >= 0.0 && p.threshold <= 1.0))
    fail("threshold", "must be in [0, 1]");
  if (root.contains("corrupt_source")) {
    const std::uint32_t idx = get_u32(root, "", "corrupt_source");
    if (idx >= p.n_sources) fail("corrupt_source", "source index out of range");
    p.corrupt_source = idx;
  }
  p.tol = get_double_or(root, "", "tol", 1e-8);
  if (!(p.tol > 0.0)) fail("tol", "must be positive");
  p.max_iter = get_u32_or(root, "", "max_iter", 2000);
  if (p.max_iter == 0) fail("max_iter", "must be >= 1");
  return p;
}

void exec_truth(const TruthParams& p, Ctx& ctx) {
  Rng param_rng(derive_seed(ctx.seed, seed_tag::synth, 1));
  const std::vector<double> a = materialize(p.a, p.n_sources, param_rng);
  const std::vector<double> b = materialize(p.b, p.n_sources, param_rng);
  const SynthData data =
      synth_generate(p.n_sources, p.n_claims, a, b, p.d, ctx.seed);
  const SourceClaimNetwork net = p.corrupt_source
                                     ? flip_source(data.net, *p.corrupt_source)
                                     : data.net;
  EmOptions options;
  options.tol = p.tol;
  options.max_iter = p.max_iter;
  CredibilityEstimate est = em_estimate(net, options);
  est = confidence_intervals(std::move(est), net, p.level);

  std::ostringstream sources_csv;
  write_source_estimates_csv(sources_csv, est);
  emit_csv(ctx, "_sources.csv", sources_csv.str());
  std::ostringstream claims_csv;
  write_claim_posteriors_csv(claims_csv, est, p.threshold);
  emit_csv(ctx, "_claims.csv", claims_csv.str());

  ctx.extras["log_likelihood"] = est.log_likelihood;
  ctx.extras["em_iterations"] = est.iterations;
  if (p.corrupt_source) {
    const Classification cls = classify_and_rerank(est, p.threshold);
    for (std::size_t pos = 0; pos < cls.source_ranking.size(); ++pos) {
      if (cls.source_ranking[pos] == *p.corrupt_source) {
        ctx.extras["corrupt_source_rank"] = pos;
        break;
      }
    }
  }
}

// ---- dispatch ----

constexpr const char* kExperimentKinds[] = {
    "percolation_sweep", "watts",     "motter_lai", "weighted_beta",
    "interdependent",    "buffering", "truth"};

void parse_and_maybe_exec(const json& root, Ctx* ctx) {
  if (!root.is_object()) fail("scenario", "must be a JSON object");
  const std::string experiment = get_string(root, "", "experiment");
  if (experiment == "percolation_sweep") {
    const PercolationParams p = parse_percolation(root);
    if (!ctx) return;
    if (!ctx->seed_overridden) ctx->seed = p.seed;
    ctx->output = p.output;
    exec_percolation(p, *ctx);
  } else if (experiment == "watts") {
    const WattsParams p = parse_watts(root);
    if (!ctx) return;
    if (!ctx->seed_overridden) ctx->seed = p.seed;
    ctx->output = p.output;
    exec_watts(p, *ctx);
  } else if (experiment == "motter_lai") {
    const MotterParams p = parse_motter(root);
    if (!ctx) return;
    if (!ctx->seed_overridden) ctx->seed = p.seed;
    ctx->output = p.output;
    exec_motter(p, *ctx);
  } else if (experiment == "weighted_beta") {
    const BetaParams p = parse_beta(root);
    if (!ctx) return;
    if (!ctx->seed_overridden) ctx->seed = p.seed;
    ctx->output = p.output;
    exec_beta(p, *ctx);
  } else if (experiment == "interdependent") {
    const InterParams p = parse_inter(root);
    if (!ctx) return;
    if (!ctx->seed_overridden) ctx->seed = p.seed;
    ctx->output = p.output;
    exec_inter(p, *ctx);
  } else if (experiment == "buffering") {
    const BufferParams p = parse_buffer(root);
    if (!ctx) return;
    if (!ctx->seed_overridden) ctx->seed = p.seed;
    ctx->output = p.output;
    exec_buffer(p, *ctx);
  } else if (experiment == "truth") {
    const TruthParams p = parse_truth(root);
    if (!ctx) return;
    if (!ctx->seed_overridden) ctx->seed = p.seed;
    ctx->output = p.output;
    exec_truth(p, *ctx);
  } else {
    std::string known;
    for (const char* k : kExperimentKinds) {
      if (!known.empty()) known += ", ";
      known += k;
    }
    fail("experiment",
         "unknown experiment kind \"" + experiment + "\" (expected one of: " +
             known + ")");
  }
}

json load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

}  // namespace

RunReport run_scenario(const std::string& scenario_path,
                       const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const json root = load_scenario(scenario_path);
  if (!root.is_object()) fail("scenario", "must be a JSON object");

  Ctx ctx;
  ctx.out_dir = options.out_dir;
  ctx.jobs = options.jobs == 0 ? 1 : options.jobs;
  if (options.seed_override) {
    ctx.seed = *options.seed_override;
    ctx.seed_overridden = true;
  }
  parse_and_maybe_exec(root, &ctx);

  const auto elapsed = std::chrono::steady_clock::now() - start;
  json manifest;
  manifest["experiment"] = get_string(root, "", "experiment");
  manifest["scenario"] =
      std::filesystem::path(scenario_path).filename().string();
  manifest["seed"] = ctx.seed;
  manifest["jobs"] = ctx.jobs;
  manifest["tool_version"] = kVersion;
  json outs = json::array();
  for (const std::string& o : ctx.outputs)
    outs.push_back(std::filesystem::path(o).filename().string());
  manifest["outputs"] = outs;
  manifest["warnings"] = ctx.warnings;
  for (const auto& item : ctx.extras.items()) manifest[item.key()] = item.value();
  manifest["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();

  RunReport report;
  report.experiment = manifest["experiment"].get<std::string>();
  report.outputs = ctx.outputs;
  report.warnings = ctx.warnings;
  report.manifest_path = output_path(ctx, ".manifest.json");
  write_text_file(report.manifest_path, manifest.dump(2) + "\n");
  return report;
}

void validate_scenario_file(const std::string& scenario_path) {
  const json root = load_scenario(scenario_path);
  parse_and_maybe_exec(root, nullptr);
}

namespace {

struct PlotKindSpec {
  const char* name;
  const char* header;
  const char* body;
};

const PlotKindSpec kPlotKinds[] = {
    {"percolation", "f,S_mean,S_std,L_mean,replicates",
     R"PY(f = [float(r["f"]) for r in rows]
s = [float(r["S_mean"]) for r in rows]
err = [float(r["S_std"]) for r in rows]
plt.errorbar(f, s, yerr=err, marker="o", capsize=3)
plt.xlabel("removed fraction f")
plt.ylabel("giant component fraction S")
plt.ylim(-0.02, 1.02)
)PY"},
    {"trace", "round,new_failures,cumulative_failed,survivor_fraction",
     R"PY(rounds = [int(float(r["round"])) for r in rows]
surv = [float(r["survivor_fraction"]) for r in rows]
new = [float(r["new_failures"]) for r in rows]
fig, ax1 = plt.subplots()
ax1.bar(rounds, new, color="tab:red", alpha=0.4, label="new failures")
ax1.set_xlabel("round")
ax1.set_ylabel("new failures")
ax2 = ax1.twinx()
ax2.plot(rounds, surv, marker="o", color="tab:blue", label="survivor fraction")
ax2.set_ylabel("survivor fraction")
ax2.set_ylim(-0.02, 1.02)
)PY"},
    {"beta", "beta,f,round,new_failures,cumulative_failed,survivor_fraction",
     R"PY(series = {}
for r in rows:
    series.setdefault(r["beta"], []).append((float(r["f"]), float(r["survivor_fraction"])))
for beta, pts in sorted(series.items(), key=lambda kv: float(kv[0])):
    pts.sort()
    plt.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label="beta=" + beta)
plt.xlabel("removed fraction f")
plt.ylabel("surviving giant fraction G'/G")
plt.legend()
)PY"},
    {"interdependent", "p,mutual_survivor_mean,mutual_survivor_std,replicates",
     R"PY(p = [float(r["p"]) for r in rows]
s = [float(r["mutual_survivor_mean"]) for r in rows]
err = [float(r["mutual_survivor_std"]) for r in rows]
plt.errorbar(p, s, yerr=err, marker="o", capsize=3)
plt.xlabel("initial removal fraction p")
plt.ylabel("mutual survivor fraction")
plt.ylim(-0.02, 1.02)
)PY"},
    {"buffering", "versatility,capacity,restored_mean,restored_std,replicates",
     R"PY(vs = sorted({int(r["versatility"]) for r in rows})
cs = sorted({int(r["capacity"]) for r in rows})
grid = [[float("nan")] * len(vs) for _ in cs]
for r in rows:
    grid[cs.index(int(r["capacity"]))][vs.index(int(r["versatility"]))] = float(r["restored_mean"])
im = plt.imshow(grid, origin="lower", aspect="auto", vmin=0.0, vmax=1.0, cmap="viridis")
plt.colorbar(im, label="mean restored fraction")
plt.xticks(range(len(vs)), vs)
plt.yticks(range(len(cs)), cs)
plt.xlabel("versatility")
plt.ylabel("capacity")
)PY"},
    {"truth_sources", "source_id,a_hat,b_hat,ci_low,ci_high",
     R"PY(ids = [int(r["source_id"]) for r in rows]
a = [float(r["a_hat"]) for r in rows]
b = [float(r["b_hat"]) for r in rows]
lo = [max(0.0, x - float(r["ci_low"])) for x, r in zip(a, rows)]
hi = [max(0.0, float(r["ci_high"]) - x) for x, r in zip(a, rows)]
plt.errorbar(ids, a, yerr=[lo, hi], fmt="o", capsize=3, label="a (true-claim rate)")
plt.plot(ids, b, "x", color="tab:red", label="b (false-claim rate)")
plt.xlabel("source")
plt.ylabel("estimate")
plt.ylim(-0.02, 1.02)
plt.legend()
)PY"},
    {"truth_claims", "claim_id,posterior_true,label",
     R"PY(post = [float(r["posterior_true"]) for r in rows]
plt.hist(post, bins=20, range=(0.0, 1.0), color="tab:blue", alpha=0.7)
plt.xlabel("posterior probability of truth")
plt.ylabel("claims")
)PY"},
};

std::string py_quote(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == '"') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<std::string> plot_kinds() {
  std::vector<std::string> names;
  for (const PlotKindSpec& k : kPlotKinds) names.emplace_back(k.name);
  return names;
}

std::string emit_plot_script(const std::string& csv_path,
                             const std::string& kind) {
  const PlotKindSpec* spec = nullptr;
  for (const PlotKindSpec& k : kPlotKinds)
    if (kind == k.name) spec = &k;
  if (!spec) {
    std::string known;
    for (const std::string& k : plot_kinds()) {
      if (!known.empty()) known += ", ";
      known += k;
    }
    throw std::invalid_argument("kind: unknown plot kind \"" + kind +
                                "\" (expected one of: " + known + ")");
  }

  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + csv_path);
  std::string header;
  if (!std::getline(in, header))
    throw std::invalid_argument("csv: file is empty");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header != spec->header) {
    std::istringstream have_stream(header), want_stream(spec->header);
    std::vector<std::string> have, want;
    std::string col;
    while (std::getline(have_stream, col, ',')) have.push_back(col);
    while (std::getline(want_stream, col, ',')) want.push_back(col);
    for (const std::string& w : want)
      if (std::find(have.begin(), have.end(), w) == have.end())
        throw std::invalid_argument("csv: missing column \"" + w + "\" for kind " +
                                    kind);
    throw std::invalid_argument("csv: header does not match kind " +
                                std::string(kind) + " (expected \"" +
                                spec->header + "\")");
  }

  // The script locates its CSV as a sibling so the pair can move together.
  std::ostringstream script;
  script << "#!/usr/bin/env python3\n"
         << "import csv\n"
         << "import os\n"
         << "import matplotlib\n"
         << "matplotlib.use(\"Agg\")\n"
         << "import matplotlib.pyplot as plt\n\n"
         << "path = os.path.join(os.path.dirname(os.path.abspath(__file__)), \""
         << py_quote(std::filesystem::path(csv_path).filename().string())
         << "\")\n"
         << "with open(path, newline=\"\") as fh:\n"
         << "    rows = list(csv.DictReader(fh))\n\n"
         << spec->body << "plt.grid(True, alpha=0.3)\n"
         << "out = path.rsplit(\".\", 1)[0] + \".png\"\n"
         << "plt.savefig(out, dpi=150, bbox_inches=\"tight\")\n"
         << "print(out)\n";
  const std::string script_path = csv_path + ".plot.py";
  write_text_file(script_path, script.str());
  return script_path;
}

}  // namespace resil
