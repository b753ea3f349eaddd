#ifndef BLC_TESTS_REFERENCE_HPP
#define BLC_TESTS_REFERENCE_HPP

// Reference implementations written independently of the library, used as
// test oracles.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "blc/piecewise.hpp"

namespace ref {

/// Max flow by repeated maximum-bottleneck augmentation on a dense
/// capacity matrix (parallel edges are summed).
inline double max_flow(int n, const std::vector<std::pair<int, int>>& edges,
                       const std::vector<double>& caps, int s, int t) {
  std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    r[edges[e].first][edges[e].second] += std::max(0.0, caps[e]);
  }
  double total = 0.0;
  for (int iter = 0; iter < 100000; ++iter) {
    std::vector<double> width(n, 0.0);
    std::vector<int> parent(n, -1);
    std::vector<bool> done(n, false);
    width[s] = std::numeric_limits<double>::infinity();
    for (;;) {
      int u = -1;
      for (int v = 0; v < n; ++v) {
        if (!done[v] && width[v] > 0.0 && (u < 0 || width[v] > width[u])) u = v;
      }
      if (u < 0 || u == t) break;
      done[u] = true;
      for (int v = 0; v < n; ++v) {
        const double w = std::min(width[u], r[u][v]);
        if (!done[v] && w > width[v]) {
          width[v] = w;
          parent[v] = u;
        }
      }
    }
    if (width[t] <= 1e-12) break;
    const double f = width[t];
    for (int v = t; v != s; v = parent[v]) {
      r[parent[v]][v] -= f;
      r[v][parent[v]] += f;
    }
    total += f;
  }
  return total;
}

/// Best knapsack value by include/exclude recursion. Feasibility is checked
/// on complete subsets because predicted weights may be negative.
inline double knapsack(const std::vector<double>& v, const std::vector<double>& w, double cap) {
  std::function<double(std::size_t, double, double)> go = [&](std::size_t i, double load,
                                                               double value) -> double {
    if (i == v.size()) return load <= cap ? value : -1.0;
    return std::max(go(i + 1, load, value), go(i + 1, load + w[i], value + v[i]));
  };
  return go(0, 0.0, 0.0);
}

/// Cheapest vertex set covering every edge except `excluded`, by recursion
/// on the first uncovered edge.
inline double vertex_cover(int n, const std::vector<std::pair<int, int>>& edges,
                           const std::vector<double>& costs, std::size_t excluded) {
  std::vector<bool> in(n, false);
  std::function<double(double)> go = [&](double spent) -> double {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (e == excluded) continue;
      const auto [a, b] = edges[e];
      if (in[a] || in[b]) continue;
      in[a] = true;
      double best = go(spent + costs[a]);
      in[a] = false;
      in[b] = true;
      best = std::min(best, go(spent + costs[b]));
      in[b] = false;
      return best;
    }
    return spent;
  };
  return go(0.0);
}

/// Solves M x = y by Gaussian elimination with partial pivoting.
inline std::vector<double> solve(std::vector<std::vector<double>> M, std::vector<double> y) {
  const std::size_t n = y.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(M[r][c]) > std::abs(M[p][c])) p = r;
    }
    if (std::abs(M[p][c]) < 1e-300) throw std::runtime_error("singular");
    std::swap(M[p], M[c]);
    std::swap(y[p], y[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = M[r][c] / M[c][c];
      for (std::size_t k = c; k < n; ++k) M[r][k] -= f * M[c][k];
      y[r] -= f * y[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = y[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= M[i][k] * x[k];
    x[i] = s / M[i][i];
  }
  return x;
}

/// Random constant/linear piecewise function with up to max_pieces pieces.
inline blc::PiecewiseFn random_piecewise(std::mt19937_64& rng, blc::Interval dom,
                                         int max_pieces) {
  std::uniform_int_distribution<int> count(1, max_pieces);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::uniform_real_distribution<double> where(dom.lo, dom.hi);
  std::bernoulli_distribution linear(0.6);
  const int k = count(rng);
  std::vector<double> cuts;
  for (int i = 1; i < k; ++i) cuts.push_back(where(rng));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<blc::Piece> pieces;
  double lo = dom.lo;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    const double hi = i < cuts.size() ? cuts[i] : dom.hi;
    if (hi - lo < 1e-6 && i < cuts.size()) continue;
    blc::Segment s = linear(rng) ? blc::Segment{blc::Linear{coef(rng), coef(rng)}}
                                 : blc::Segment{blc::Constant{coef(rng)}};
    pieces.push_back({{lo, hi}, s});
    lo = hi;
  }
  pieces.back().span.hi = dom.hi;
  return blc::PiecewiseFn(dom, std::move(pieces));
}

}  // namespace ref

#endif  // BLC_TESTS_REFERENCE_HPP
