#ifndef BLC_PROBLEM_HPP
#define BLC_PROBLEM_HPP

// Problem-adapter contract shared by all optimization problems, plus the
// generic post-hoc regret assembly.
//
// For one coordinate k of the linear model, every unknown parameter becomes a
// linear form slope*gamma + intercept of the free coefficient gamma. An
// adapter turns those forms into pieces of gamma carrying the estimated
// solution (convert), repairs each estimated solution against the true
// parameters (correct), and the generic code below turns the corrected pieces
// into the per-instance loss.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "blc/matrix.hpp"
#include "blc/piecewise.hpp"
#include "blc/solutions.hpp"

namespace blc {

enum class Sense { Minimize, Maximize };

/// One training/test observation. `values` carries known per-instance data
/// (knapsack item values); it is empty for other problems.
struct Instance {
  Matrix features;
  std::vector<double> theta;
  std::vector<double> values;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// theta_hat(gamma) = slope * gamma + intercept, componentwise.
struct ParamVector {
  std::vector<double> slope;
  std::vector<double> intercept;

  std::size_t size() const { return slope.size(); }
  Linear form(std::size_t j) const { return {slope[j], intercept[j]}; }
  double at(std::size_t j, double gamma) const { return slope[j] * gamma + intercept[j]; }
  std::vector<double> at(double gamma) const;
};

/// slope = A e_k, intercept = A (alpha - alpha_k e_k). k is zero-based.
ParamVector construct_coordinate(const Matrix& features, std::span<const double> alpha,
                                 std::size_t k);

struct ConvertPiece {
  Interval span;
  Segment objective;
  Solution solution;
};

struct CorrectPiece {
  Interval span;
  Segment corrected;
  Solution solution;
  Segment penalty = Constant{0.0};
};

/// Numeric predict -> solve -> correct -> regret for one parameter vector.
struct PostHocOutcome {
  double estimated = 0.0;
  double corrected = 0.0;
  double penalty = 0.0;
  double tov = 0.0;
  double preg = 0.0;
  /// |estimated - tov|, the objective-only regret used by the plain baseline.
  double plain_regret = 0.0;
};

class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual Sense sense() const = 0;
  virtual std::size_t num_params() const = 0;

  /// Throws std::invalid_argument when the instance does not fit the problem.
  virtual void validate(const Instance& inst) const;

  virtual std::vector<ConvertPiece> convert(const Instance& inst, const ParamVector& p,
                                            Interval i0) const = 0;
  virtual std::vector<CorrectPiece> correct(const Instance& inst,
                                            std::span<const ConvertPiece> pieces) const = 0;
  virtual double true_optimal_value(const Instance& inst) const = 0;
  virtual PostHocOutcome evaluate_numeric(const Instance& inst,
                                          std::span<const double> theta_hat,
                                          double tov) const = 0;
  /// True iff the piece's corrected solution, materialized at gamma, is
  /// feasible under the instance's true parameters.
  virtual bool feasible(const Instance& inst, const CorrectPiece& piece,
                        double gamma) const = 0;

  PostHocOutcome evaluate_numeric(const Instance& inst,
                                  std::span<const double> theta_hat) const {
    return evaluate_numeric(inst, theta_hat, true_optimal_value(inst));
  }
};

/// E(gamma) as a piecewise function over the partition of the convert pieces.
PiecewiseFn estimated_objective(std::span<const ConvertPiece> pieces);

/// Post-hoc regret as a function of gamma. Minimize: corrected - tov + pen;
/// Maximize: tov - corrected + pen.
PiecewiseFn evaluate_preg(std::span<const ConvertPiece> convert,
                          std::span<const CorrectPiece> correct, double tov, Sense sense);

/// Sum of per-instance losses. Exact for constant/linear operands; otherwise
/// materialized as grid_n constant cells valued at their centers.
PiecewiseFn assemble_loss(std::span<const PiecewiseFn> per_instance, std::size_t grid_n);

/// grid_n equal constant cells over `window`, each valued at the exact sum at
/// its center.
PiecewiseFn materialize_sum(std::span<const PiecewiseFn> per_instance, Interval window,
                            std::size_t grid_n);

/// Exact sum of per-instance losses at one point.
double sum_at(std::span<const PiecewiseFn> per_instance, double gamma);

/// Construct -> Convert -> Correct -> Evaluate for one instance.
PiecewiseFn posthoc_loss(const Problem& problem, const Instance& inst, const ParamVector& p,
                         Interval i0, double tov);

/// |E(gamma) - tov|; skips correction entirely.
PiecewiseFn plain_regret_loss(const Problem& problem, const Instance& inst,
                              const ParamVector& p, Interval i0, double tov);

}  // namespace blc

#endif  // BLC_PROBLEM_HPP
