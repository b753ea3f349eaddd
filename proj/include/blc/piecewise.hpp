#ifndef BLC_PIECEWISE_HPP
#define BLC_PIECEWISE_HPP

// Exact piecewise functions of one real variable.
//
// A PiecewiseFn is an ordered list of pieces covering a domain interval. Each
// piece carries a constant, linear or rational-linear segment. Functions need
// not be continuous: at a shared breakpoint the left piece owns the value.

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace blc {

/// Breakpoints closer than this are merged.
inline constexpr double kBreakpointTol = 1e-12;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool bounded() const { return lo > -kInf && hi < kInf; }
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return x >= lo && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Constant {
  double value = 0.0;
  friend bool operator==(const Constant&, const Constant&) = default;
};

struct Linear {
  double slope = 0.0;
  double intercept = 0.0;
  double operator()(double x) const { return slope * x + intercept; }
  friend bool operator==(const Linear&, const Linear&) = default;
};

/// (num_slope * x + num_intercept) / (den_slope * x + den_intercept)
struct RationalLinear {
  double num_slope = 0.0;
  double num_intercept = 0.0;
  double den_slope = 0.0;
  double den_intercept = 1.0;
  friend bool operator==(const RationalLinear&, const RationalLinear&) = default;
};

using Segment = std::variant<Constant, Linear, RationalLinear>;

double eval(const Segment& s, double x);
bool is_rational(const Segment& s);

/// Builds the cheapest segment kind for a*x+b (Constant when a == 0).
Segment make_linear(double slope, double intercept);
/// Builds a rational segment, degrading to Linear/Constant when the
/// denominator is constant or the ratio is constant.
Segment make_rational(double num_slope, double num_intercept, double den_slope,
                      double den_intercept);

Segment segment_add(const Segment& f, const Segment& g);
Segment segment_scale(const Segment& f, double s);

struct Piece {
  Interval span;
  Segment seg;
};

class PiecewiseFn {
 public:
  PiecewiseFn() = default;
  /// Validates contiguity and ordering; throws std::invalid_argument.
  PiecewiseFn(Interval domain, std::vector<Piece> pieces);

  static PiecewiseFn constant(Interval domain, double value);
  static PiecewiseFn linear(Interval domain, double slope, double intercept);
  static PiecewiseFn single(Interval domain, Segment seg);

  const Interval& domain() const { return domain_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  bool empty() const { return pieces_.empty(); }
  bool has_rational() const;

  /// Index of the piece owning x (left-closed rule at breakpoints).
  std::size_t locate(double x) const;
  double operator()(double x) const;

  /// Merges adjacent pieces carrying identical segments.
  PiecewiseFn simplified() const;

 private:
  Interval domain_{0.0, 0.0};
  std::vector<Piece> pieces_;
};

double eval(const PiecewiseFn& f, double x);

PiecewiseFn add(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn subtract(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn pointwise_max(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn pointwise_min(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn scale(const PiecewiseFn& f, double s);
/// Adds a constant to every piece; valid for rational pieces too.
PiecewiseFn shift(const PiecewiseFn& f, double c);

struct Minimum {
  double at = 0.0;
  double value = 0.0;
};

/// Global minimizer. Exact over constant and linear pieces (a minimizing
/// constant piece reports its midpoint); rational pieces are sampled on
/// grid_n uniform points. Ties go to the smallest argument.
Minimum argmin(const PiecewiseFn& f, std::size_t grid_n);

/// Lower envelope of lines over a bounded interval. Returns the minimizing
/// line index per sub-interval; equal lines resolve to the lower index.
std::vector<std::pair<Interval, std::size_t>> lower_envelope(
    std::span<const Linear> lines, Interval on);

/// Sorted, deduplicated cut points strictly inside `on`.
std::vector<double> interior_cuts(std::vector<double> points, Interval on);

nlohmann::json to_json(const PiecewiseFn& f);
PiecewiseFn piecewise_from_json(const nlohmann::json& j);

}  // namespace blc

#endif  // BLC_PIECEWISE_HPP
