#include "blc/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace blc {

std::vector<double> ParamVector::at(double gamma) const {
  std::vector<double> out(size());
  for (std::size_t j = 0; j < size(); ++j) out[j] = at(j, gamma);
  return out;
}

ParamVector construct_coordinate(const Matrix& features, std::span<const double> alpha,
                                 std::size_t k) {
  if (alpha.size() != features.cols()) {
    throw std::invalid_argument("coefficient count does not match feature count");
  }
  if (k >= alpha.size()) throw std::invalid_argument("coordinate index out of range");
  ParamVector p;
  p.slope.resize(features.rows());
  p.intercept.resize(features.rows());
  for (std::size_t j = 0; j < features.rows(); ++j) {
    double rest = 0.0;
    for (std::size_t l = 0; l < alpha.size(); ++l) {
      if (l != k) rest += features(j, l) * alpha[l];
    }
    p.slope[j] = features(j, k);
    p.intercept[j] = rest;
  }
  return p;
}

void Problem::validate(const Instance& inst) const {
  if (inst.theta.size() != num_params() || inst.features.rows() != num_params()) {
    throw std::invalid_argument(name() + ": instance has " +
                                std::to_string(inst.theta.size()) + " parameters, expected " +
                                std::to_string(num_params()));
  }
}

PiecewiseFn estimated_objective(std::span<const ConvertPiece> pieces) {
  if (pieces.empty()) throw std::invalid_argument("no convert pieces");
  std::vector<Piece> out;
  out.reserve(pieces.size());
  for (const auto& p : pieces) out.push_back({p.span, p.objective});
  return PiecewiseFn({pieces.front().span.lo, pieces.back().span.hi}, std::move(out));
}

PiecewiseFn evaluate_preg(std::span<const ConvertPiece> convert,
                          std::span<const CorrectPiece> correct, double tov, Sense sense) {
  if (convert.empty() || correct.empty()) throw std::invalid_argument("no pieces to evaluate");
  // Every corrected piece must sit inside one convert piece.
  std::size_t c = 0;
  for (const auto& piece : correct) {
    while (c < convert.size() && convert[c].span.hi < piece.span.hi - kBreakpointTol) ++c;
    if (c == convert.size() || piece.span.lo < convert[c].span.lo - kBreakpointTol) {
      throw std::invalid_argument("correct pieces do not refine the convert partition");
    }
  }
  if (std::abs(correct.front().span.lo - convert.front().span.lo) > kBreakpointTol ||
      std::abs(correct.back().span.hi - convert.back().span.hi) > kBreakpointTol) {
    throw std::invalid_argument("correct pieces do not cover the convert domain");
  }

  const double sign = sense == Sense::Minimize ? 1.0 : -1.0;
  std::vector<Piece> out;
  out.reserve(correct.size());
  for (const auto& piece : correct) {
    Segment s = segment_scale(piece.corrected, sign);
    s = segment_add(s, Constant{-sign * tov});
    s = segment_add(s, piece.penalty);
    out.push_back({piece.span, s});
  }
  return PiecewiseFn({convert.front().span.lo, convert.back().span.hi}, std::move(out));
}

double sum_at(std::span<const PiecewiseFn> per_instance, double gamma) {
  double s = 0.0;
  for (const auto& f : per_instance) s += f(gamma);
  return s;
}

PiecewiseFn materialize_sum(std::span<const PiecewiseFn> per_instance, Interval window,
                            std::size_t grid_n) {
  if (grid_n < 2) throw std::invalid_argument("grid_n must be at least 2");
  if (!window.bounded()) throw DomainError("grid materialization needs a bounded domain");
  std::vector<Piece> cells;
  cells.reserve(grid_n);
  const double w = window.width() / static_cast<double>(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    const double lo = i == 0 ? window.lo : window.lo + w * static_cast<double>(i);
    const double hi = i + 1 == grid_n ? window.hi : window.lo + w * static_cast<double>(i + 1);
    cells.push_back({{lo, hi}, Constant{sum_at(per_instance, 0.5 * (lo + hi))}});
  }
  return PiecewiseFn(window, std::move(cells));
}

PiecewiseFn assemble_loss(std::span<const PiecewiseFn> per_instance, std::size_t grid_n) {
  if (per_instance.empty()) throw std::invalid_argument("no losses to assemble");
  bool rational = false;
  for (const auto& f : per_instance) rational = rational || f.has_rational();

  if (rational) return materialize_sum(per_instance, per_instance.front().domain(), grid_n);

  // Pairwise tree reduction keeps intermediate functions small.
  std::vector<PiecewiseFn> level(per_instance.begin(), per_instance.end());
  while (level.size() > 1) {
    std::vector<PiecewiseFn> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(add(level[i], level[i + 1]).simplified());
    }
    if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
    level = std::move(next);
  }
  return std::move(level.front());
}

PiecewiseFn posthoc_loss(const Problem& problem, const Instance& inst, const ParamVector& p,
                         Interval i0, double tov) {
  const auto convert = problem.convert(inst, p, i0);
  const auto correct = problem.correct(inst, convert);
  return evaluate_preg(convert, correct, tov, problem.sense());
}

PiecewiseFn plain_regret_loss(const Problem& problem, const Instance& inst,
                              const ParamVector& p, Interval i0, double tov) {
  const PiecewiseFn gap = shift(estimated_objective(problem.convert(inst, p, i0)), -tov);
  return pointwise_max(gap, scale(gap, -1.0));
}

}  // namespace blc
