#include "blc/piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace blc {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool near(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

Linear as_linear(const Segment& s) {
  return std::visit(
      Overloaded{[](const Constant& c) { return Linear{0.0, c.value}; },
                 [](const Linear& l) { return l; },
                 [](const RationalLinear&) -> Linear {
                   throw std::invalid_argument(
                       "rational segment where a linear one is required");
                 }},
      s);
}

bool same_segment(const Segment& f, const Segment& g) {
  if (f.index() != g.index()) return false;
  constexpr double tol = 1e-12;
  return std::visit(
      Overloaded{[&](const Constant& c) {
                   return near(c.value, std::get<Constant>(g).value, tol);
                 },
                 [&](const Linear& l) {
                   const auto& o = std::get<Linear>(g);
                   return near(l.slope, o.slope, tol) &&
                          near(l.intercept, o.intercept, tol);
                 },
                 [&](const RationalLinear& r) { return r == std::get<RationalLinear>(g); }},
      f);
}

void require_same_domain(const PiecewiseFn& f, const PiecewiseFn& g) {
  if (f.empty() || g.empty()) throw std::invalid_argument("empty piecewise function");
  const auto& a = f.domain();
  const auto& b = g.domain();
  if (std::abs(a.lo - b.lo) > kBreakpointTol || std::abs(a.hi - b.hi) > kBreakpointTol) {
    throw DomainError("piecewise operands have different domains");
  }
}

// Union of both breakpoint sets; each cell paired with the operand segments
// active on its interior.
struct Cell {
  Interval span;
  const Segment* f;
  const Segment* g;
};

std::vector<Cell> merge_cells(const PiecewiseFn& f, const PiecewiseFn& g) {
  require_same_domain(f, g);
  std::vector<double> cuts;
  cuts.reserve(f.size() + g.size());
  for (const auto& p : f.pieces()) cuts.push_back(p.span.hi);
  for (const auto& p : g.pieces()) cuts.push_back(p.span.hi);
  const Interval dom = f.domain();
  cuts = interior_cuts(std::move(cuts), dom);

  std::vector<Cell> cells;
  cells.reserve(cuts.size() + 1);
  double lo = dom.lo;
  std::size_t i = 0, j = 0;
  auto emit = [&](double hi) {
    const double m = 0.5 * (lo + hi);
    while (i + 1 < f.size() && f.pieces()[i].span.hi < m) ++i;
    while (j + 1 < g.size() && g.pieces()[j].span.hi < m) ++j;
    cells.push_back({{lo, hi}, &f.pieces()[i].seg, &g.pieces()[j].seg});
    lo = hi;
  };
  for (double c : cuts) emit(c);
  emit(dom.hi);
  return cells;
}

PiecewiseFn envelope(const PiecewiseFn& f, const PiecewiseFn& g, bool upper) {
  std::vector<Piece> out;
  for (const auto& cell : merge_cells(f, g)) {
    const Linear lf = as_linear(*cell.f);
    const Linear lg = as_linear(*cell.g);
    const double ds = lf.slope - lg.slope;
    const double di = lf.intercept - lg.intercept;
    std::vector<double> cut;
    if (ds != 0.0) cut.push_back(-di / ds);
    cut = interior_cuts(std::move(cut), cell.span);
    double lo = cell.span.lo;
    auto emit = [&](double hi) {
      const double m = 0.5 * (lo + hi);
      const bool f_wins = upper ? lf(m) >= lg(m) : lf(m) <= lg(m);
      out.push_back({{lo, hi}, f_wins ? *cell.f : *cell.g});
      lo = hi;
    };
    for (double c : cut) emit(c);
    emit(cell.span.hi);
  }
  return PiecewiseFn(f.domain(), std::move(out));
}

}  // namespace

double eval(const Segment& s, double x) {
  return std::visit(
      Overloaded{[](const Constant& c) { return c.value; },
                 [x](const Linear& l) { return l(x); },
                 [x](const RationalLinear& r) {
                   return (r.num_slope * x + r.num_intercept) /
                          (r.den_slope * x + r.den_intercept);
                 }},
      s);
}

bool is_rational(const Segment& s) { return std::holds_alternative<RationalLinear>(s); }

Segment make_linear(double slope, double intercept) {
  if (slope == 0.0) return Constant{intercept};
  return Linear{slope, intercept};
}

Segment make_rational(double num_slope, double num_intercept, double den_slope,
                      double den_intercept) {
  if (den_slope == 0.0) {
    if (den_intercept == 0.0) throw std::invalid_argument("zero denominator");
    return make_linear(num_slope / den_intercept, num_intercept / den_intercept);
  }
  // num = k * den  =>  constant k
  const double cross = num_slope * den_intercept - num_intercept * den_slope;
  const double scale = std::max({std::abs(num_slope * den_intercept),
                                 std::abs(num_intercept * den_slope), 1e-300});
  if (std::abs(cross) <= 1e-12 * scale) return Constant{num_slope / den_slope};
  return RationalLinear{num_slope, num_intercept, den_slope, den_intercept};
}

Segment segment_add(const Segment& f, const Segment& g) {
  if (const auto* r = std::get_if<RationalLinear>(&f)) {
    const auto* c = std::get_if<Constant>(&g);
    if (!c) throw std::invalid_argument("rational segments only combine with constants");
    return make_rational(r->num_slope + c->value * r->den_slope,
                         r->num_intercept + c->value * r->den_intercept, r->den_slope,
                         r->den_intercept);
  }
  if (is_rational(g)) return segment_add(g, f);
  const Linear a = as_linear(f);
  const Linear b = as_linear(g);
  return make_linear(a.slope + b.slope, a.intercept + b.intercept);
}

Segment segment_scale(const Segment& f, double s) {
  return std::visit(
      Overloaded{[s](const Constant& c) -> Segment { return Constant{c.value * s}; },
                 [s](const Linear& l) { return make_linear(l.slope * s, l.intercept * s); },
                 [s](const RationalLinear& r) -> Segment {
                   if (s == 0.0) return Constant{0.0};
                   return RationalLinear{r.num_slope * s, r.num_intercept * s,
                                         r.den_slope, r.den_intercept};
                 }},
      f);
}

PiecewiseFn::PiecewiseFn(Interval domain, std::vector<Piece> pieces)
    : domain_(domain), pieces_(std::move(pieces)) {
  if (!(domain_.lo <= domain_.hi)) throw std::invalid_argument("interval with lo > hi");
  if (pieces_.empty()) throw std::invalid_argument("piecewise function without pieces");
  if (pieces_.front().span.lo != domain_.lo || pieces_.back().span.hi != domain_.hi) {
    throw std::invalid_argument("pieces do not cover the domain");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!(pieces_[i].span.lo <= pieces_[i].span.hi)) {
      throw std::invalid_argument("piece with lo > hi");
    }
    if (i + 1 < pieces_.size() && pieces_[i].span.hi != pieces_[i + 1].span.lo) {
      throw std::invalid_argument("pieces are not contiguous");
    }
  }
}

PiecewiseFn PiecewiseFn::constant(Interval domain, double value) {
  return single(domain, Constant{value});
}

PiecewiseFn PiecewiseFn::linear(Interval domain, double slope, double intercept) {
  return single(domain, make_linear(slope, intercept));
}

PiecewiseFn PiecewiseFn::single(Interval domain, Segment seg) {
  return PiecewiseFn(domain, {Piece{domain, std::move(seg)}});
}

bool PiecewiseFn::has_rational() const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [](const Piece& p) { return is_rational(p.seg); });
}

std::size_t PiecewiseFn::locate(double x) const {
  if (pieces_.empty()) throw std::invalid_argument("empty piecewise function");
  if (!(x >= domain_.lo && x <= domain_.hi)) {
    throw DomainError("point " + std::to_string(x) + " outside domain [" +
                      std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) + "]");
  }
  const auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                                   [](const Piece& p, double v) { return p.span.hi < v; });
  return static_cast<std::size_t>(it - pieces_.begin());
}

double PiecewiseFn::operator()(double x) const { return eval(pieces_[locate(x)].seg, x); }

PiecewiseFn PiecewiseFn::simplified() const {
  std::vector<Piece> out;
  for (const auto& p : pieces_) {
    if (!out.empty() && same_segment(out.back().seg, p.seg)) {
      out.back().span.hi = p.span.hi;
    } else {
      out.push_back(p);
    }
  }
  return PiecewiseFn(domain_, std::move(out));
}

double eval(const PiecewiseFn& f, double x) { return f(x); }

PiecewiseFn add(const PiecewiseFn& f, const PiecewiseFn& g) {
  std::vector<Piece> out;
  for (const auto& cell : merge_cells(f, g)) {
    out.push_back({cell.span, segment_add(*cell.f, *cell.g)});
  }
  return PiecewiseFn(f.domain(), std::move(out));
}

PiecewiseFn subtract(const PiecewiseFn& f, const PiecewiseFn& g) {
  return add(f, scale(g, -1.0));
}

PiecewiseFn pointwise_max(const PiecewiseFn& f, const PiecewiseFn& g) {
  return envelope(f, g, true);
}

PiecewiseFn pointwise_min(const PiecewiseFn& f, const PiecewiseFn& g) {
  return envelope(f, g, false);
}

PiecewiseFn scale(const PiecewiseFn& f, double s) {
  std::vector<Piece> out;
  out.reserve(f.size());
  for (const auto& p : f.pieces()) out.push_back({p.span, segment_scale(p.seg, s)});
  return PiecewiseFn(f.domain(), std::move(out));
}

PiecewiseFn shift(const PiecewiseFn& f, double c) {
  std::vector<Piece> out;
  out.reserve(f.size());
  for (const auto& p : f.pieces()) out.push_back({p.span, segment_add(p.seg, Constant{c})});
  return PiecewiseFn(f.domain(), std::move(out));
}

Minimum argmin(const PiecewiseFn& fn, std::size_t grid_n) {
  if (fn.empty()) throw std::invalid_argument("argmin of an empty function");
  if (!fn.domain().bounded()) throw DomainError("argmin needs a bounded domain");
  if (grid_n < 2) throw std::invalid_argument("grid_n must be at least 2");

  const PiecewiseFn f = fn.simplified();
  bool found = false;
  Minimum best;
  auto consider = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) return;
    const double tol = 1e-12 * std::max(1.0, std::abs(v));
    if (!found || v < best.value - tol || (v <= best.value + tol && x < best.at)) {
      best = {x, v};
      found = true;
    }
  };

  for (std::size_t i = 0; i < f.size(); ++i) {
    const Piece& p = f.pieces()[i];
    if (std::holds_alternative<Constant>(p.seg)) {
      consider(p.span.mid());
    } else if (const auto* l = std::get_if<Linear>(&p.seg)) {
      consider(p.span.lo);
      consider(p.span.hi);
      // The left end of a non-first piece belongs to its neighbour.
      if (i > 0 && l->slope > 0.0) {
        const double step = std::min(0.5 * p.span.width(), 1e-9 * std::max(1.0, std::abs(p.span.lo)));
        consider(p.span.lo + step);
      }
    } else {
      const double w = p.span.width();
      for (std::size_t k = 0; k < grid_n; ++k) {
        consider(p.span.lo + w * static_cast<double>(k) / static_cast<double>(grid_n - 1));
      }
    }
  }
  if (!found) throw std::invalid_argument("argmin found no finite value");
  return best;
}

std::vector<double> interior_cuts(std::vector<double> points, Interval on) {
  std::sort(points.begin(), points.end());
  std::vector<double> out;
  for (double p : points) {
    if (!std::isfinite(p)) continue;
    if (p <= on.lo + kBreakpointTol || p >= on.hi - kBreakpointTol) continue;
    if (!out.empty() && p - out.back() <= kBreakpointTol) continue;
    out.push_back(p);
  }
  return out;
}

std::vector<std::pair<Interval, std::size_t>> lower_envelope(std::span<const Linear> lines,
                                                             Interval on) {
  if (lines.empty()) throw std::invalid_argument("lower envelope of no lines");
  if (!on.bounded()) throw DomainError("lower envelope needs a bounded interval");

  // Sweep left to right. At each point choose the line that is minimal just
  // to the right of it: lowest value, then lowest slope, then lowest index.
  auto pick_at = [&](double x) {
    std::size_t best = 0;
    double bv = lines[0](x);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const double v = lines[i](x);
      const double tol = 1e-12 * std::max(1.0, std::abs(bv));
      if (v < bv - tol) {
        best = i;
        bv = v;
      } else if (v <= bv + tol && lines[i].slope < lines[best].slope) {
        best = i;
        bv = v;
      }
    }
    return best;
  };

  std::vector<std::pair<Interval, std::size_t>> out;
  double x = on.lo;
  std::size_t cur = pick_at(x);
  while (x < on.hi) {
    double next = on.hi;
    const Linear& c = lines[cur];
    for (const auto& l : lines) {
      if (l.slope >= c.slope) continue;
      const double cross = (l.intercept - c.intercept) / (c.slope - l.slope);
      if (cross > x + kBreakpointTol && cross < next) next = cross;
    }
    if (next >= on.hi - kBreakpointTol) next = on.hi;
    if (!out.empty() && out.back().second == cur) {
      out.back().first.hi = next;
    } else {
      out.push_back({{x, next}, cur});
    }
    x = next;
    if (x < on.hi) cur = pick_at(x);
  }
  return out;
}

nlohmann::json to_json(const PiecewiseFn& f) {
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& p : f.pieces()) {
    nlohmann::json s;
    s["lo"] = p.span.lo;
    s["hi"] = p.span.hi;
    std::visit(Overloaded{[&](const Constant& c) {
                            s["kind"] = "const";
                            s["coef"] = {c.value};
                          },
                          [&](const Linear& l) {
                            s["kind"] = "lin";
                            s["coef"] = {l.slope, l.intercept};
                          },
                          [&](const RationalLinear& r) {
                            s["kind"] = "rat";
                            s["coef"] = {r.num_slope, r.num_intercept, r.den_slope,
                                         r.den_intercept};
                          }},
               p.seg);
    segs.push_back(std::move(s));
  }
  return {{"domain", {f.domain().lo, f.domain().hi}}, {"segments", std::move(segs)}};
}

PiecewiseFn piecewise_from_json(const nlohmann::json& j) {
  const auto& d = j.at("domain");
  const Interval dom{d.at(0).get<double>(), d.at(1).get<double>()};
  std::vector<Piece> pieces;
  for (const auto& s : j.at("segments")) {
    const auto kind = s.at("kind").get<std::string>();
    const auto coef = s.at("coef").get<std::vector<double>>();
    Segment seg;
    if (kind == "const" && coef.size() == 1) {
      seg = Constant{coef[0]};
    } else if (kind == "lin" && coef.size() == 2) {
      seg = Linear{coef[0], coef[1]};
    } else if (kind == "rat" && coef.size() == 4) {
      seg = RationalLinear{coef[0], coef[1], coef[2], coef[3]};
    } else {
      throw std::invalid_argument("bad segment kind or coefficient count: " + kind);
    }
    pieces.push_back({{s.at("lo").get<double>(), s.at("hi").get<double>()}, seg});
  }
  return PiecewiseFn(dom, std::move(pieces));
}

}  // namespace blc
