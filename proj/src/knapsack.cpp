#include "blc/knapsack.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "blc/oracles.hpp"

namespace blc {

void KnapsackInstance::validate() const {
  if (values.empty()) throw std::invalid_argument("knapsack without items");
  if (values.size() > kMaxKnapsackItems) {
    throw std::invalid_argument("knapsack supports at most 25 items");
  }
  if (!(capacity > 0.0)) throw std::invalid_argument("knapsack capacity must be positive");
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("knapsack values must be nonnegative");
  }
}

double subset_value(std::span<const double> values, Mask items) {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (items & (Mask{1} << i)) s += values[i];
  }
  return s;
}

double subset_weight(std::span<const double> weights, Mask items) {
  return subset_value(weights, items);
}

namespace {

struct Candidate {
  double bound;  // right end for Left sets, left end for Right sets
  double value;
  Mask items;
};

bool better(double v, Mask m, double bv, Mask bm) {
  if (!std::isfinite(bv)) return v > bv;
  const double tol = 1e-12 * std::max(1.0, std::abs(bv));
  if (v > bv + tol) return true;
  if (v < bv - tol) return false;
  return lex_less(m, bm);
}

struct Enumeration {
  const KnapsackInstance& inst;
  const ParamVector& p;
  Interval i0;
  Candidate always{0.0, 0.0, 0};
  std::vector<Candidate> left;   // feasible on [i0.lo, bound]
  std::vector<Candidate> right;  // feasible on [bound, i0.hi]

  // Items are decided in index order, so sums accumulate in the same order
  // as subset_value.
  void branch(std::size_t i, Mask items, double value, double slope, double intercept) {
    if (i == inst.n_items()) {
      record(items, value, slope, intercept);
      return;
    }
    branch(i + 1, items, value, slope, intercept);
    branch(i + 1, items | (Mask{1} << i), value + inst.values[i], slope + p.slope[i],
           intercept + p.intercept[i]);
  }

  // Feasible set of slope*g + intercept <= C within i0.
  void record(Mask items, double value, double slope, double intercept) {
    const double slack = inst.capacity - intercept;
    if (slope == 0.0) {
      if (slack >= 0.0 && better(value, items, always.value, always.items)) {
        always = {0.0, value, items};
      }
      return;
    }
    const double r = slack / slope;
    if (slope > 0.0) {
      if (r >= i0.hi) {
        if (better(value, items, always.value, always.items)) always = {0.0, value, items};
      } else if (r > i0.lo + kBreakpointTol) {
        left.push_back({r, value, items});
      }
    } else {
      if (r <= i0.lo) {
        if (better(value, items, always.value, always.items)) always = {0.0, value, items};
      } else if (r < i0.hi - kBreakpointTol) {
        right.push_back({r, value, items});
      }
    }
  }
};

}  // namespace

std::vector<ConvertPiece> convert_knapsack(const KnapsackInstance& inst, const ParamVector& p,
                                           Interval i0) {
  inst.validate();
  if (!i0.bounded()) throw DomainError("convert_knapsack needs a bounded initial domain");
  if (p.size() != inst.n_items()) {
    throw std::invalid_argument("parameter count does not match item count");
  }

  Enumeration en{inst, p, i0, {}, {}, {}};
  en.branch(0, 0, 0.0, 0.0, 0.0);

  std::vector<double> cuts;
  cuts.reserve(en.left.size() + en.right.size());
  for (const auto& c : en.left) cuts.push_back(c.bound);
  for (const auto& c : en.right) cuts.push_back(c.bound);
  cuts = interior_cuts(std::move(cuts), i0);
  cuts.push_back(i0.hi);

  // Left sets sorted by bound descending: a prefix covers any cell whose right
  // end is below their bounds. Right sets ascending, symmetric.
  auto& left = en.left;
  auto& right = en.right;
  std::sort(left.begin(), left.end(),
            [](const Candidate& a, const Candidate& b) { return a.bound > b.bound; });
  std::sort(right.begin(), right.end(),
            [](const Candidate& a, const Candidate& b) { return a.bound < b.bound; });

  std::vector<ConvertPiece> out;
  Candidate best_right{0.0, -kInf, 0};
  std::size_t ri = 0;
  // left_best[k]: best of left[0..k]. Cells run left to right, so the covering
  // prefix of left sets only shrinks.
  std::vector<Candidate> left_best(left.size());
  for (std::size_t k = 0; k < left.size(); ++k) {
    left_best[k] = left[k];
    if (k > 0 && !better(left[k].value, left[k].items, left_best[k - 1].value,
                         left_best[k - 1].items)) {
      left_best[k] = left_best[k - 1];
    }
  }
  std::size_t li = left.size();  // number of left sets covering the cell

  double lo = i0.lo;
  for (double hi : cuts) {
    while (ri < right.size() && right[ri].bound <= lo + kBreakpointTol) {
      if (better(right[ri].value, right[ri].items, best_right.value, best_right.items)) {
        best_right = right[ri];
      }
      ++ri;
    }
    while (li > 0 && left[li - 1].bound < hi - kBreakpointTol) --li;

    Candidate best = en.always;
    if (ri > 0 && better(best_right.value, best_right.items, best.value, best.items)) {
      best = best_right;
    }
    if (li > 0 && better(left_best[li - 1].value, left_best[li - 1].items, best.value,
                         best.items)) {
      best = left_best[li - 1];
    }

    if (!out.empty() && std::get<ItemSubset>(out.back().solution).items == best.items) {
      out.back().span.hi = hi;
    } else {
      out.push_back({{lo, hi}, Constant{best.value}, ItemSubset{best.items}});
    }
    lo = hi;
  }
  return out;
}

KnapsackRepair repair_selection(const KnapsackInstance& inst, Mask selected,
                                std::span<const double> theta, KnapsackCorrection mode) {
  KnapsackRepair out{selected, 0, false};
  if (subset_weight(theta, selected) <= inst.capacity) return out;

  if (mode == KnapsackCorrection::RemoveAll) {
    out.kept = 0;
    out.removed = selected;
    return out;
  }

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < inst.n_items(); ++i) {
    if (selected & (Mask{1} << i)) order.push_back(i);
  }
  if (mode == KnapsackCorrection::RatioAsc) {
    std::vector<double> ratio(inst.n_items(), 0.0);
    for (std::size_t i : order) {
      if (theta[i] <= 0.0) out.clamped = true;
      ratio[i] = inst.values[i] / std::max(theta[i], 1e-12);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ratio[a] < ratio[b]; });
  } else {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return theta[a] > theta[b]; });
  }
  for (std::size_t i : order) {
    if (subset_weight(theta, out.kept) <= inst.capacity) break;
    out.kept &= ~(Mask{1} << i);
    out.removed |= Mask{1} << i;
  }
  return out;
}

CorrectPiece correct_knapsack(const KnapsackInstance& inst, const ConvertPiece& piece,
                              std::span<const double> theta, KnapsackCorrection mode) {
  const auto* sel = std::get_if<ItemSubset>(&piece.solution);
  if (!sel) throw std::invalid_argument("correct_knapsack expects an ItemSubset");
  const KnapsackRepair fix = repair_selection(inst, sel->items, theta, mode);
  return CorrectPiece{piece.span, Constant{subset_value(inst.values, fix.kept)}, fix,
                      Constant{0.0}};
}

double removal_penalty(const KnapsackInstance& inst, Mask removed,
                       const KnapsackPenalty& penalty) {
  switch (penalty.kind) {
    case KnapsackPenalty::Kind::None:
      return 0.0;
    case KnapsackPenalty::Kind::Proportional: {
      if (penalty.sigma.empty()) throw std::invalid_argument("proportional penalty without sigma");
      if (penalty.sigma.size() != 1 && penalty.sigma.size() != inst.n_items()) {
        throw std::invalid_argument("sigma must have one entry or one per item");
      }
      double total = 0.0;
      for (std::size_t i = 0; i < inst.n_items(); ++i) {
        const double s = penalty.sigma.size() == 1 ? penalty.sigma[0] : penalty.sigma[i];
        if (s < 0.0) throw std::invalid_argument("sigma must be nonnegative");
        if (removed & (Mask{1} << i)) total += s * inst.values[i];
      }
      return total;
    }
    case KnapsackPenalty::Kind::PerItem:
      if (penalty.per_item < 0.0) throw std::invalid_argument("penalty constant K must be nonnegative");
      return penalty.per_item * std::popcount(removed);
  }
  return 0.0;
}

Segment penalty_knapsack(const KnapsackInstance& inst, const CorrectPiece& piece,
                         const KnapsackPenalty& penalty) {
  const auto* fix = std::get_if<KnapsackRepair>(&piece.solution);
  if (!fix) throw std::invalid_argument("penalty_knapsack expects a KnapsackRepair");
  return Constant{removal_penalty(inst, fix->removed, penalty)};
}

KnapsackProblem::KnapsackProblem(std::size_t n_items, double capacity,
                                 KnapsackCorrection correction, KnapsackPenalty penalty)
    : n_items_(n_items), capacity_(capacity), correction_(correction),
      penalty_(std::move(penalty)) {
  if (n_items_ == 0 || n_items_ > kMaxKnapsackItems) {
    throw std::invalid_argument("knapsack supports 1 to 25 items");
  }
  if (!(capacity_ > 0.0)) throw std::invalid_argument("knapsack capacity must be positive");
  // Surface bad penalty constants at construction time.
  removal_penalty(KnapsackInstance{std::vector<double>(n_items_, 0.0), capacity_}, 0, penalty_);
}

void KnapsackProblem::validate(const Instance& inst) const {
  Problem::validate(inst);
  if (inst.values.size() != n_items_) {
    throw std::invalid_argument("knapsack instance needs one value per item");
  }
}

std::vector<ConvertPiece> KnapsackProblem::convert(const Instance& inst, const ParamVector& p,
                                                   Interval i0) const {
  validate(inst);
  return convert_knapsack(view(inst), p, i0);
}

std::vector<CorrectPiece> KnapsackProblem::correct(const Instance& inst,
                                                   std::span<const ConvertPiece> pieces) const {
  const KnapsackInstance ki = view(inst);
  std::vector<CorrectPiece> out;
  out.reserve(pieces.size());
  for (const auto& piece : pieces) {
    CorrectPiece cp = correct_knapsack(ki, piece, inst.theta, correction_);
    cp.penalty = penalty_knapsack(ki, cp, penalty_);
    out.push_back(std::move(cp));
  }
  return out;
}

double KnapsackProblem::true_optimal_value(const Instance& inst) const {
  validate(inst);
  return knapsack_exhaustive(inst.values, inst.theta, capacity_).optimal_value;
}

PostHocOutcome KnapsackProblem::evaluate_numeric(const Instance& inst,
                                                 std::span<const double> theta_hat,
                                                 double tov) const {
  validate(inst);
  const KnapsackInstance ki = view(inst);
  const OracleResult est = knapsack_exhaustive(inst.values, theta_hat, capacity_);
  const Mask chosen = std::get<ItemSubset>(est.solution).items;
  const KnapsackRepair fix = repair_selection(ki, chosen, inst.theta, correction_);
  PostHocOutcome out;
  out.tov = tov;
  out.estimated = est.optimal_value;
  out.corrected = subset_value(inst.values, fix.kept);
  out.penalty = removal_penalty(ki, fix.removed, penalty_);
  out.preg = tov - out.corrected + out.penalty;
  out.plain_regret = std::abs(out.estimated - tov);
  return out;
}

bool KnapsackProblem::feasible(const Instance& inst, const CorrectPiece& piece,
                               double /*gamma*/) const {
  const auto* fix = std::get_if<KnapsackRepair>(&piece.solution);
  if (!fix) throw std::invalid_argument("knapsack piece carries no repair descriptor");
  return knapsack_feasible(fix->kept, inst.theta, capacity_);
}

}  // namespace blc
