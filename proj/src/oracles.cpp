#include "blc/oracles.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace blc {

OracleResult maxflow_numeric(const FlowNetwork& net, std::span<const double> caps) {
  net.validate();
  if (caps.size() != net.edges.size()) throw std::invalid_argument("capacity count mismatch");
  const auto adjacency = residual_adjacency(net);
  std::vector<double> residual(2 * net.edges.size(), 0.0);
  for (std::size_t e = 0; e < net.edges.size(); ++e) residual[2 * e] = caps[e];

  FlowPaths flow;
  double value = 0.0;
  std::vector<std::uint8_t> active(residual.size());
  for (;;) {
    for (std::size_t a = 0; a < residual.size(); ++a) active[a] = residual[a] > kFlowEps;
    const auto path = shortest_augmenting_path(net, adjacency, active);
    if (!path) break;
    double bn = kInf;
    for (int arc : *path) bn = std::min(bn, residual[arc]);
    for (int arc : *path) {
      residual[arc] -= bn;
      residual[arc ^ 1] += bn;
    }
    flow.paths.push_back(*path);
    flow.flows.push_back(bn);
    value += bn;
  }
  return {value, std::move(flow)};
}

OracleResult knapsack_exhaustive(std::span<const double> values,
                                 std::span<const double> weights, double capacity) {
  if (values.size() != weights.size()) throw std::invalid_argument("values/weights size mismatch");
  if (values.size() > kMaxKnapsackItems) throw std::invalid_argument("too many items");
  const Mask limit = Mask{1} << values.size();
  Mask best = 0;
  double best_value = 0.0;
  for (Mask m = 1; m < limit; ++m) {
    if (subset_weight(weights, m) > capacity) continue;
    const double v = subset_value(values, m);
    if (v > best_value || (v == best_value && lex_less(m, best))) {
      best = m;
      best_value = v;
    }
  }
  return {best_value, ItemSubset{best}};
}

OracleResult mcvc_exhaustive(const VcGraph& g, std::span<const double> costs,
                             std::span<const double> edge_values) {
  g.validate();
  if (g.n > 16) throw std::invalid_argument("exhaustive vertex cover limited to 16 vertices");
  if (costs.size() != static_cast<std::size_t>(g.n) || edge_values.size() != g.edges.size()) {
    throw std::invalid_argument("cost/edge value size mismatch");
  }
  const std::size_t excluded = excluded_edge(edge_values);
  const Mask limit = Mask{1} << g.n;
  bool found = false;
  Mask best = 0;
  double best_cost = 0.0;
  for (Mask m = 0; m < limit; ++m) {
    if (!covers_all_but(g, m, excluded)) continue;
    double c = 0.0;
    for (int v = 0; v < g.n; ++v) {
      if (m & (Mask{1} << v)) c += costs[v];
    }
    if (!found || c < best_cost || (c == best_cost && lex_less(m, best))) {
      found = true;
      best = m;
      best_cost = c;
    }
  }
  return {best_cost, VertexPick{best, static_cast<int>(excluded)}};
}

bool flow_feasible(const FlowNetwork& net, const FlowPaths& flow, std::span<const double> caps) {
  if (flow.paths.size() != flow.flows.size()) {
    throw std::invalid_argument("flow decomposition has mismatched paths and amounts");
  }
  const int arcs = 2 * static_cast<int>(net.edges.size());
  for (std::size_t i = 0; i < flow.paths.size(); ++i) {
    const auto& path = flow.paths[i];
    if (path.empty()) {
      if (flow.flows[i] != 0.0) throw std::invalid_argument("flow on an empty path");
      continue;
    }
    int at = net.source;
    for (int arc : path) {
      if (arc < 0 || arc >= arcs) throw std::invalid_argument("arc id out of range");
      if (arc_tail(net, arc) != at) throw std::invalid_argument("path is not a walk");
      at = arc_head(net, arc);
    }
    if (at != net.sink) throw std::invalid_argument("path does not end at the sink");
    if (flow.flows[i] < -1e-9) return false;
  }
  const std::vector<double> load = edge_loads(net, flow);
  for (std::size_t e = 0; e < load.size(); ++e) {
    const double tol = 1e-9 * std::max(1.0, std::abs(caps[e]));
    if (load[e] < -tol || load[e] > caps[e] + tol) return false;
  }
  return true;
}

bool knapsack_feasible(Mask items, std::span<const double> weights, double capacity) {
  if (weights.size() < static_cast<std::size_t>(std::bit_width(items))) {
    throw std::invalid_argument("item mask references a missing item");
  }
  return subset_weight(weights, items) <= capacity;
}

bool cover_feasible(const VcGraph& g, Mask vertices, std::span<const double> edge_values) {
  if (edge_values.size() != g.edges.size()) throw std::invalid_argument("edge value size mismatch");
  if (g.n < 32 && (vertices >> g.n) != 0) {
    throw std::invalid_argument("vertex mask references a missing vertex");
  }
  return covers_all_but(g, vertices, excluded_edge(edge_values));
}

bool feasibility_check(const Problem& problem, const Instance& inst, const CorrectPiece& piece,
                       double gamma) {
  return problem.feasible(inst, piece, gamma);
}

}  // namespace blc
