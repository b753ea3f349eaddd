#ifndef BLC_KNAPSACK_HPP
#define BLC_KNAPSACK_HPP

// 0-1 knapsack with unknown item weights. Values and capacity are known.

#include <span>
#include <vector>

#include "blc/problem.hpp"

namespace blc {

inline constexpr std::size_t kMaxKnapsackItems = 25;

struct KnapsackInstance {
  std::vector<double> values;
  double capacity = 0.0;

  std::size_t n_items() const { return values.size(); }
  void validate() const;
};

enum class KnapsackCorrection {
  RatioAsc,    // drop lowest value/weight first
  WeightDesc,  // drop heaviest first
  RemoveAll,   // drop everything once infeasible
};

struct KnapsackPenalty {
  enum class Kind { None, Proportional, PerItem };
  Kind kind = Kind::None;
  /// Per-item fractions for Proportional; a single entry applies to all.
  std::vector<double> sigma;
  double per_item = 0.0;
};

double subset_value(std::span<const double> values, Mask items);
double subset_weight(std::span<const double> weights, Mask items);

/// Enumerates every subset by depth-first branching, intersects each
/// subset's feasible gamma-interval with i0 and takes the upper envelope of
/// their constant values. Ties go to the lexicographically smallest mask.
std::vector<ConvertPiece> convert_knapsack(const KnapsackInstance& inst, const ParamVector& p,
                                           Interval i0);

/// Removes selected items in the mode's order until the true weights fit.
KnapsackRepair repair_selection(const KnapsackInstance& inst, Mask selected,
                                std::span<const double> theta, KnapsackCorrection mode);

CorrectPiece correct_knapsack(const KnapsackInstance& inst, const ConvertPiece& piece,
                              std::span<const double> theta, KnapsackCorrection mode);

Segment penalty_knapsack(const KnapsackInstance& inst, const CorrectPiece& piece,
                         const KnapsackPenalty& penalty);
double removal_penalty(const KnapsackInstance& inst, Mask removed,
                       const KnapsackPenalty& penalty);

class KnapsackProblem final : public Problem {
 public:
  KnapsackProblem(std::size_t n_items, double capacity, KnapsackCorrection correction,
                  KnapsackPenalty penalty);

  std::string name() const override { return "knapsack"; }
  Sense sense() const override { return Sense::Maximize; }
  std::size_t num_params() const override { return n_items_; }
  void validate(const Instance& inst) const override;

  std::vector<ConvertPiece> convert(const Instance& inst, const ParamVector& p,
                                    Interval i0) const override;
  std::vector<CorrectPiece> correct(const Instance& inst,
                                    std::span<const ConvertPiece> pieces) const override;
  double true_optimal_value(const Instance& inst) const override;
  using Problem::evaluate_numeric;
  PostHocOutcome evaluate_numeric(const Instance& inst, std::span<const double> theta_hat,
                                  double tov) const override;
  bool feasible(const Instance& inst, const CorrectPiece& piece, double gamma) const override;

  double capacity() const { return capacity_; }

 private:
  KnapsackInstance view(const Instance& inst) const { return {inst.values, capacity_}; }

  std::size_t n_items_;
  double capacity_;
  KnapsackCorrection correction_;
  KnapsackPenalty penalty_;
};

}  // namespace blc

#endif  // BLC_KNAPSACK_HPP
