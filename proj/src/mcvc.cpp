#include "blc/mcvc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "blc/oracles.hpp"

namespace blc {

void VcGraph::validate() const {
  if (n < 1 || n > kMaxCoverVertices) {
    throw std::invalid_argument("vertex cover graphs need 1 to 20 vertices");
  }
  if (edges.empty()) throw std::invalid_argument("vertex cover graph without edges");
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop in graph");
  }
}

nlohmann::json to_json(const VcGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges) edges.push_back({u, v});
  return {{"n", g.n}, {"edges", std::move(edges)}};
}

VcGraph graph_from_json(const nlohmann::json& j) {
  VcGraph g;
  g.n = j.at("n").get<int>();
  for (const auto& e : j.at("edges")) g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  g.validate();
  return g;
}

VcGraph make_sample_graph(int n, int m, std::uint64_t seed) {
  if (n < 2 || m < n - 1 || m > n * (n - 1) / 2) {
    throw std::invalid_argument("sample graph needs n-1 <= m <= n(n-1)/2");
  }
  std::mt19937_64 rng(seed);
  VcGraph g{n, {}};
  std::set<std::pair<int, int>> used;
  auto add = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    if (u == v || used.count({u, v})) return false;
    used.insert({u, v});
    g.edges.emplace_back(u, v);
    return true;
  };
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    add(parent(rng), v);
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  while (static_cast<int>(g.edges.size()) < m) add(pick(rng), pick(rng));
  return g;
}

std::size_t excluded_edge(std::span<const double> edge_values) {
  if (edge_values.empty()) throw std::invalid_argument("no edge values");
  std::size_t best = 0;
  for (std::size_t e = 1; e < edge_values.size(); ++e) {
    if (edge_values[e] < edge_values[best]) best = e;
  }
  return best;
}

bool covers_all_but(const VcGraph& g, Mask vertices, std::size_t excluded) {
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (e == excluded) continue;
    const auto [u, v] = g.edges[e];
    if (!(vertices & (Mask{1} << u)) && !(vertices & (Mask{1} << v))) return false;
  }
  return true;
}

CoverTable::CoverTable(const VcGraph& g) {
  g.validate();
  const Mask limit = Mask{1} << g.n;
  std::vector<Mask> order(limit);
  std::iota(order.begin(), order.end(), Mask{0});
  std::sort(order.begin(), order.end(), lex_less);
  table_.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (Mask m : order) {
      if (covers_all_but(g, m, e)) table_[e].push_back(m);
    }
  }
}

std::vector<ConvertPiece> convert_mcvc(const VcGraph& g, const CoverTable& table,
                                       const ParamVector& p, Interval i0) {
  if (!i0.bounded()) throw DomainError("convert_mcvc needs a bounded initial domain");
  if (p.size() != g.num_params()) {
    throw std::invalid_argument("parameter count does not match vertices plus edges");
  }
  const std::size_t nv = static_cast<std::size_t>(g.n);

  std::vector<Linear> edge_forms;
  edge_forms.reserve(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) edge_forms.push_back(p.form(nv + e));

  std::vector<ConvertPiece> out;
  std::vector<Linear> costs;
  for (const auto& [sub, excluded] : lower_envelope(edge_forms, i0)) {
    const auto covers = table.covers(excluded);
    costs.clear();
    costs.reserve(covers.size());
    for (Mask m : covers) {
      Linear c{0.0, 0.0};
      for (std::size_t v = 0; v < nv; ++v) {
        if (m & (Mask{1} << v)) {
          c.slope += p.slope[v];
          c.intercept += p.intercept[v];
        }
      }
      costs.push_back(c);
    }
    for (const auto& [piece, idx] : lower_envelope(costs, sub)) {
      out.push_back({piece, make_linear(costs[idx].slope, costs[idx].intercept),
                     VertexPick{covers[idx], static_cast<int>(excluded)}});
    }
  }
  return out;
}

std::vector<ConvertPiece> convert_mcvc(const VcGraph& g, const ParamVector& p, Interval i0) {
  return convert_mcvc(g, CoverTable(g), p, i0);
}

Mask repair_cover(const VcGraph& g, Mask picked, std::span<const double> true_edge_values) {
  const std::size_t excluded = excluded_edge(true_edge_values);
  Mask fixed = picked;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (e == excluded) continue;
    const auto [u, v] = g.edges[e];
    if (!(picked & (Mask{1} << u)) && !(picked & (Mask{1} << v))) {
      fixed |= (Mask{1} << u) | (Mask{1} << v);
    }
  }
  return fixed;
}

CorrectPiece correct_cover(const VcGraph& g, const ConvertPiece& piece,
                           std::span<const double> theta) {
  const auto* pick = std::get_if<VertexPick>(&piece.solution);
  if (!pick) throw std::invalid_argument("correct_cover expects a VertexPick");
  if (theta.size() != g.num_params()) throw std::invalid_argument("theta size mismatch");
  const std::size_t nv = static_cast<std::size_t>(g.n);
  const auto edge_values = theta.subspan(nv);
  const Mask fixed = repair_cover(g, pick->vertices, edge_values);
  double cost = 0.0;
  for (std::size_t v = 0; v < nv; ++v) {
    if (fixed & (Mask{1} << v)) cost += theta[v];
  }
  return CorrectPiece{piece.span, Constant{cost},
                      VertexPick{fixed, static_cast<int>(excluded_edge(edge_values))},
                      Constant{0.0}};
}

McvcProblem::McvcProblem(VcGraph g) : g_(std::move(g)), table_(g_) {}

std::vector<ConvertPiece> McvcProblem::convert(const Instance& inst, const ParamVector& p,
                                               Interval i0) const {
  validate(inst);
  return convert_mcvc(g_, table_, p, i0);
}

std::vector<CorrectPiece> McvcProblem::correct(const Instance& inst,
                                               std::span<const ConvertPiece> pieces) const {
  std::vector<CorrectPiece> out;
  out.reserve(pieces.size());
  for (const auto& piece : pieces) out.push_back(correct_cover(g_, piece, inst.theta));
  return out;
}

double McvcProblem::true_optimal_value(const Instance& inst) const {
  validate(inst);
  const std::span<const double> theta(inst.theta);
  return mcvc_exhaustive(g_, theta.first(g_.n), theta.subspan(g_.n)).optimal_value;
}

PostHocOutcome McvcProblem::evaluate_numeric(const Instance& inst,
                                             std::span<const double> theta_hat,
                                             double tov) const {
  validate(inst);
  const std::size_t nv = static_cast<std::size_t>(g_.n);
  const OracleResult est = mcvc_exhaustive(g_, theta_hat.first(nv), theta_hat.subspan(nv));
  const std::span<const double> theta(inst.theta);
  const Mask fixed =
      repair_cover(g_, std::get<VertexPick>(est.solution).vertices, theta.subspan(nv));
  PostHocOutcome out;
  out.tov = tov;
  out.estimated = est.optimal_value;
  for (std::size_t v = 0; v < nv; ++v) {
    if (fixed & (Mask{1} << v)) out.corrected += theta[v];
  }
  out.preg = out.corrected - tov;
  out.plain_regret = std::abs(out.estimated - tov);
  return out;
}

bool McvcProblem::feasible(const Instance& inst, const CorrectPiece& piece,
                           double /*gamma*/) const {
  const auto* pick = std::get_if<VertexPick>(&piece.solution);
  if (!pick) throw std::invalid_argument("mcvc piece carries no vertex pick");
  return cover_feasible(g_, pick->vertices, std::span<const double>(inst.theta).subspan(g_.n));
}

}  // namespace blc
