#ifndef BLC_PREDICTOR_HPP
#define BLC_PREDICTOR_HPP

// Linear model theta_hat = A alpha and its coordinate-descent trainer.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "blc/problem.hpp"
#include "json.hpp"

namespace blc {

struct LinearModel {
  std::vector<double> alpha;
  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

std::vector<double> predict(const Matrix& features, const LinearModel& model);

enum class InitKind { Ridge, Ones, SeededRandom };
enum class LossMode { PostHoc, PlainRegret };

struct TrainConfig {
  Interval i0{-1000.0, 1000.0};
  std::size_t max_passes = 20;
  double tol = 1e-6;
  std::size_t grid_n = 1000;
  InitKind init = InitKind::Ridge;
  /// Explicit starting coefficients; overrides `init` when nonempty.
  std::vector<double> start;
  std::uint64_t init_seed = 0;
  double ridge_lambda = 1e-6;
  LossMode loss_mode = LossMode::PostHoc;
  /// Zoom levels around the coarse grid optimum when losses are rational.
  std::size_t refine_levels = 2;
  /// Wall-clock budget in seconds, checked between coordinate updates; 0 = none.
  double time_budget_s = 0.0;
  /// Worker threads for the per-instance loop; 0 = hardware concurrency.
  std::size_t threads = 0;

  void validate() const;
  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
};

std::string to_string(InitKind kind);
std::string to_string(LossMode mode);

/// Failure inside one instance's pipeline, tagged with the instance index.
class InstanceError : public std::runtime_error {
 public:
  InstanceError(std::size_t index, const std::string& what)
      : std::runtime_error("instance " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Keeps `current` when it already attains the minimum of L (within 1e-12);
/// otherwise returns argmin's representative point.
double pick_representative(const PiecewiseFn& L, double current, std::size_t grid_n);

/// Pooled ridge regression of every feature row onto its parameter.
/// Throws std::invalid_argument when the normal matrix is singular.
LinearModel fit_ridge(std::span<const Instance> data, double lambda);

struct TrainStep {
  std::size_t pass = 0;
  std::size_t coordinate = 0;
  double gamma_before = 0.0;
  double gamma_after = 0.0;
  /// Mean training loss before and after the update.
  double loss_before = 0.0;
  double loss_after = 0.0;
  /// True when the loss was materialized on a grid.
  bool gridded = false;
  std::vector<double> alpha;
};

struct TrainResult {
  LinearModel model;
  /// Mean training loss at the initial model, then after every coordinate update.
  std::vector<double> loss_history;
  std::vector<TrainStep> steps;
  std::size_t passes = 0;
  bool converged = false;
  bool out_of_time = false;
  /// Summed loss of the last coordinate update, for inspection.
  PiecewiseFn last_loss;
};

TrainResult train(const Problem& problem, std::span<const Instance> data, const TrainConfig& cfg);

/// Mean per-instance loss of `model` computed numerically (solve, correct,
/// evaluate), using PReg or plain regret according to `mode`.
double mean_loss(const Problem& problem, std::span<const Instance> data, const LinearModel& model,
                 LossMode mode, std::size_t threads = 0);

nlohmann::json model_to_json(const LinearModel& model, const TrainConfig& cfg,
                             std::span<const double> loss_history);
LinearModel model_from_json(const nlohmann::json& j);

}  // namespace blc

#endif  // BLC_PREDICTOR_HPP
