#ifndef BLC_BENCH_HPP
#define BLC_BENCH_HPP

// Experiment harness: trains the decision-focused learner, the plain-regret
// variant and ridge regression, evaluates them by post-hoc regret on held-out
// instances and writes report tables.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blc/data.hpp"
#include "blc/predictor.hpp"
#include "blc/registry.hpp"

namespace blc {

enum class Method { BLC, BL, Ridge };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

LinearModel train_ridge(const Dataset& train, double lambda);

struct EvalResult {
  double mean = 0.0;
  /// Population standard deviation.
  double std = 0.0;
  double tov_mean = 0.0;
  std::vector<double> per_instance;
};

EvalResult evaluate_model(const Problem& problem, const LinearModel& model,
                          std::span<const Instance> test, std::size_t threads = 0);

struct BenchConfig {
  /// Generation recipe; its seed is replaced by each bench seed.
  GenSpec gen;
  /// When set, instances are loaded from this file instead of generated.
  std::optional<std::string> dataset_path;
  LossConfig loss;
  std::vector<std::uint64_t> seeds{1};
  TrainConfig train;
  double ridge_lambda = 1e-6;
  double train_frac = 0.7;
  std::vector<Method> methods{Method::BLC, Method::BL, Method::Ridge};
  std::size_t seed_threads = 0;

  void validate() const;
  nlohmann::json to_json() const;
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  Method method = Method::Ridge;
  bool ok = false;
  std::string error;
  double mean = 0.0;
  double std = 0.0;
  double tov_mean = 0.0;
  double train_seconds = 0.0;
  std::vector<double> alpha;
};

struct ReportRow {
  std::string method;
  /// Mean and population std, across seeds, of each seed's mean test PReg.
  double mean = 0.0;
  double std = 0.0;
  double runtime = 0.0;
  std::size_t ok_seeds = 0;
  std::size_t failed_seeds = 0;
};

struct BenchReport {
  nlohmann::json config;
  std::vector<ReportRow> rows;
  std::vector<SeedOutcome> runs;
  double tov_mean = 0.0;
};

BenchReport run_benchmark(const BenchConfig& cfg);

/// Deterministic report content: no wall-clock values.
nlohmann::json report_to_json(const BenchReport& report);
/// Per-method and per-run training times.
nlohmann::json timing_to_json(const BenchReport& report);

/// Aligned text table (two decimals) and CSV, rendered from the report JSON
/// plus an optional timing JSON.
std::string render_text(const nlohmann::json& report, const nlohmann::json* timing);
std::string render_csv(const nlohmann::json& report, const nlohmann::json* timing);

/// Writes report.json, timing.json, report.csv and report.txt into `dir`.
void write_report(const BenchReport& report, const std::string& dir);

}  // namespace blc

#endif  // BLC_BENCH_HPP
