#include "blc/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>

#include "blc/oracles.hpp"

namespace blc {

void FlowNetwork::validate() const {
  if (n < 2) throw std::invalid_argument("network needs at least two vertices");
  if (source < 0 || source >= n || sink < 0 || sink >= n) {
    throw std::invalid_argument("source or sink out of range");
  }
  if (source == sink) throw std::invalid_argument("source equals sink");
  for (const auto& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.from == e.to) throw std::invalid_argument("self-loop in network");
  }
}

nlohmann::json to_json(const FlowNetwork& net) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : net.edges) edges.push_back({e.from, e.to});
  return {{"n", net.n}, {"s", net.source}, {"t", net.sink}, {"edges", std::move(edges)}};
}

FlowNetwork network_from_json(const nlohmann::json& j) {
  FlowNetwork net;
  net.n = j.at("n").get<int>();
  net.source = j.at("s").get<int>();
  net.sink = j.at("t").get<int>();
  for (const auto& e : j.at("edges")) {
    net.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  }
  net.validate();
  return net;
}

FlowNetwork make_sample_network(int n, int m, std::uint64_t seed) {
  if (n < 2 || m < n - 1) throw std::invalid_argument("sample network needs m >= n-1");
  if (static_cast<long>(m) > static_cast<long>(n) * (n - 1)) {
    throw std::invalid_argument("too many edges for a simple directed graph");
  }
  std::mt19937_64 rng(seed);
  FlowNetwork net{n, 0, n - 1, {}};
  std::vector<int> inner;
  for (int v = 1; v < n - 1; ++v) inner.push_back(v);
  std::shuffle(inner.begin(), inner.end(), rng);
  std::set<std::pair<int, int>> used;
  int prev = 0;
  for (int v : inner) {
    net.edges.push_back({prev, v});
    used.insert({prev, v});
    prev = v;
  }
  net.edges.push_back({prev, n - 1});
  used.insert({prev, n - 1});
  std::uniform_int_distribution<int> pick(0, n - 1);
  while (static_cast<int>(net.edges.size()) < m) {
    const int u = pick(rng);
    const int v = pick(rng);
    if (u == v || v == 0 || u == n - 1 || used.count({u, v})) continue;
    used.insert({u, v});
    net.edges.push_back({u, v});
  }
  return net;
}

int arc_tail(const FlowNetwork& net, int arc) {
  const auto& e = net.edges[arc_edge(arc)];
  return arc_is_reverse(arc) ? e.to : e.from;
}

int arc_head(const FlowNetwork& net, int arc) {
  const auto& e = net.edges[arc_edge(arc)];
  return arc_is_reverse(arc) ? e.from : e.to;
}

std::vector<std::vector<int>> residual_adjacency(const FlowNetwork& net) {
  std::vector<std::vector<int>> adj(net.n);
  for (int arc = 0; arc < 2 * static_cast<int>(net.edges.size()); ++arc) {
    adj[arc_tail(net, arc)].push_back(arc);
  }
  for (auto& out : adj) {
    std::sort(out.begin(), out.end(), [&](int a, int b) {
      const int ha = arc_head(net, a), hb = arc_head(net, b);
      return ha != hb ? ha < hb : a < b;
    });
  }
  return adj;
}

std::optional<std::vector<int>> shortest_augmenting_path(
    const FlowNetwork& net, const std::vector<std::vector<int>>& adjacency,
    std::span<const std::uint8_t> active) {
  std::vector<int> parent(net.n, -1);
  std::vector<bool> seen(net.n, false);
  std::deque<int> queue{net.source};
  seen[net.source] = true;
  while (!queue.empty() && !seen[net.sink]) {
    const int u = queue.front();
    queue.pop_front();
    for (int arc : adjacency[u]) {
      if (!active[arc]) continue;
      const int v = arc_head(net, arc);
      if (seen[v]) continue;
      seen[v] = true;
      parent[v] = arc;
      queue.push_back(v);
    }
  }
  if (!seen[net.sink]) return std::nullopt;
  std::vector<int> path;
  for (int v = net.sink; v != net.source; v = arc_tail(net, parent[v])) {
    path.push_back(parent[v]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Linear> plan_edge_loads(const FlowNetwork& net, const PathFlowPlan& plan) {
  std::vector<Linear> load(net.edges.size());
  for (const auto& pf : plan) {
    const Linear f = std::holds_alternative<Constant>(pf.flow)
                         ? Linear{0.0, std::get<Constant>(pf.flow).value}
                         : std::get<Linear>(pf.flow);
    for (int arc : pf.arcs) {
      auto& l = load[arc_edge(arc)];
      const double sign = arc_is_reverse(arc) ? -1.0 : 1.0;
      l.slope += sign * f.slope;
      l.intercept += sign * f.intercept;
    }
  }
  return load;
}

std::vector<double> edge_loads(const FlowNetwork& net, const FlowPaths& flow) {
  std::vector<double> load(net.edges.size(), 0.0);
  for (std::size_t i = 0; i < flow.paths.size(); ++i) {
    for (int arc : flow.paths[i]) {
      load[arc_edge(arc)] += arc_is_reverse(arc) ? -flow.flows[i] : flow.flows[i];
    }
  }
  return load;
}

namespace {

bool vanishes_on(const Linear& r, Interval on) {
  return std::abs(r(on.lo)) <= kFlowEps && std::abs(r(on.hi)) <= kFlowEps;
}

struct ConvertState {
  const FlowNetwork& net;
  std::vector<std::vector<int>> adjacency;
  std::vector<ConvertPiece> out;
};

// Residual arc capacities are linear forms of gamma. Split where any of them
// changes sign, augment along the shortest path, split again where the
// bottleneck arc changes, and recurse on the updated residual network.
void expand(ConvertState& st, const std::vector<Linear>& residual, Interval on,
            const PathFlowPlan& plan, Linear total) {
  std::vector<double> roots;
  for (const auto& r : residual) {
    if (r.slope == 0.0 || vanishes_on(r, on)) continue;
    if ((r(on.lo) > 0.0) != (r(on.hi) > 0.0)) roots.push_back(-r.intercept / r.slope);
  }
  roots = interior_cuts(std::move(roots), on);
  if (!roots.empty()) {
    double lo = on.lo;
    roots.push_back(on.hi);
    for (double hi : roots) {
      expand(st, residual, {lo, hi}, plan, total);
      lo = hi;
    }
    return;
  }

  const double mid = on.mid();
  std::vector<std::uint8_t> active(residual.size());
  for (std::size_t a = 0; a < residual.size(); ++a) active[a] = residual[a](mid) > kFlowEps;
  const auto path = shortest_augmenting_path(st.net, st.adjacency, active);
  if (!path) {
    st.out.push_back({on, make_linear(total.slope, total.intercept), plan});
    return;
  }

  // Bottleneck candidates in edge-id order so ties saturate the smallest id.
  std::vector<int> by_edge = *path;
  std::sort(by_edge.begin(), by_edge.end(),
            [](int a, int b) { return arc_edge(a) < arc_edge(b); });
  std::vector<Linear> lines;
  lines.reserve(by_edge.size());
  for (int arc : by_edge) lines.push_back(residual[arc]);

  for (const auto& [sub, idx] : lower_envelope(lines, on)) {
    const Linear bn = lines[idx];
    std::vector<Linear> next = residual;
    for (int arc : *path) {
      next[arc].slope -= bn.slope;
      next[arc].intercept -= bn.intercept;
      next[arc ^ 1].slope += bn.slope;
      next[arc ^ 1].intercept += bn.intercept;
    }
    next[by_edge[idx]] = Linear{0.0, 0.0};
    PathFlowPlan next_plan = plan;
    next_plan.push_back({*path, make_linear(bn.slope, bn.intercept)});
    expand(st, next, sub, next_plan,
           Linear{total.slope + bn.slope, total.intercept + bn.intercept});
  }
}

}  // namespace

std::vector<ConvertPiece> convert_maxflow(const FlowNetwork& net, const ParamVector& p,
                                          Interval i0) {
  net.validate();
  if (!i0.bounded()) throw DomainError("convert_maxflow needs a bounded initial domain");
  if (p.size() != net.edges.size()) {
    throw std::invalid_argument("parameter count does not match edge count");
  }
  ConvertState st{net, residual_adjacency(net), {}};
  std::vector<Linear> residual(2 * net.edges.size(), Linear{0.0, 0.0});
  for (std::size_t e = 0; e < net.edges.size(); ++e) residual[2 * e] = p.form(e);
  expand(st, residual, i0, {}, Linear{0.0, 0.0});
  return std::move(st.out);
}

std::vector<CorrectPiece> correct_scale(const FlowNetwork& net, const ConvertPiece& piece,
                                        std::span<const double> theta) {
  const auto* plan = std::get_if<PathFlowPlan>(&piece.solution);
  if (!plan) throw std::invalid_argument("correct_scale expects a PathFlowPlan");
  const std::vector<Linear> load = plan_edge_loads(net, *plan);
  const Linear total = std::holds_alternative<Constant>(piece.objective)
                           ? Linear{0.0, std::get<Constant>(piece.objective).value}
                           : std::get<Linear>(piece.objective);

  std::vector<std::size_t> loaded;
  for (std::size_t e = 0; e < load.size(); ++e) {
    if (!vanishes_on(load[e], piece.span)) loaded.push_back(e);
  }

  // lambda = min(1, theta_e / g_e). Each comparison is linear in gamma because
  // the numerators are constants, so the binding term only changes at roots.
  std::vector<double> cuts;
  auto root = [&](double slope, double intercept) {
    if (slope != 0.0) cuts.push_back(-intercept / slope);
  };
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    const Linear& g = load[loaded[i]];
    const double th = theta[loaded[i]];
    root(g.slope, g.intercept);
    root(-g.slope, th - g.intercept);
    for (std::size_t j = i + 1; j < loaded.size(); ++j) {
      const Linear& h = load[loaded[j]];
      const double tf = theta[loaded[j]];
      root(th * h.slope - tf * g.slope, th * h.intercept - tf * g.intercept);
    }
  }
  cuts = interior_cuts(std::move(cuts), piece.span);
  cuts.push_back(piece.span.hi);

  std::vector<CorrectPiece> out;
  int prev_choice = -2;
  double lo = piece.span.lo;
  for (double hi : cuts) {
    const double mid = 0.5 * (lo + hi);
    int choice = -1;
    double best = 1.0;
    for (std::size_t e : loaded) {
      const double g = load[e](mid);
      if (g <= kFlowEps) continue;
      const double ratio = theta[e] / g;
      if (ratio < best) {
        best = ratio;
        choice = static_cast<int>(e);
      }
    }
    if (choice == prev_choice) {
      out.back().span.hi = hi;
    } else {
      CorrectPiece cp;
      cp.span = {lo, hi};
      if (choice < 0) {
        cp.corrected = make_linear(total.slope, total.intercept);
        cp.solution = ScaledFlow{*plan, Constant{1.0}};
      } else {
        const Linear& g = load[choice];
        const double th = theta[choice];
        cp.corrected = make_rational(th * total.slope, th * total.intercept, g.slope,
                                     g.intercept);
        cp.solution = ScaledFlow{*plan, make_rational(0.0, th, g.slope, g.intercept)};
      }
      out.push_back(std::move(cp));
    }
    prev_choice = choice;
    lo = hi;
  }
  return out;
}

ReaugmentedFlow reaugment(const FlowNetwork& net, std::span<const std::vector<int>> paths,
                          std::span<const double> theta) {
  std::vector<double> residual(2 * net.edges.size(), 0.0);
  for (std::size_t e = 0; e < net.edges.size(); ++e) residual[2 * e] = theta[e];
  ReaugmentedFlow out;
  for (const auto& path : paths) {
    double bn = kInf;
    for (int arc : path) bn = std::min(bn, residual[arc]);
    if (path.empty() || bn <= kFlowEps) {
      ++out.wasted;
      bn = 0.0;
    } else {
      for (int arc : path) {
        residual[arc] -= bn;
        residual[arc ^ 1] += bn;
      }
    }
    out.flow.paths.push_back(path);
    out.flow.flows.push_back(bn);
  }
  return out;
}

CorrectPiece correct_reaugment(const FlowNetwork& net, const ConvertPiece& piece,
                               std::span<const double> theta) {
  const auto* plan = std::get_if<PathFlowPlan>(&piece.solution);
  if (!plan) throw std::invalid_argument("correct_reaugment expects a PathFlowPlan");
  std::vector<std::vector<int>> paths;
  paths.reserve(plan->size());
  for (const auto& pf : *plan) paths.push_back(pf.arcs);
  ReaugmentedFlow fixed = reaugment(net, paths, theta);
  double value = 0.0;
  for (double f : fixed.flow.flows) value += f;
  return CorrectPiece{piece.span, Constant{value}, std::move(fixed), Constant{0.0}};
}

Segment penalty_wasted(const CorrectPiece& piece, double K) {
  if (K < 0.0) throw std::invalid_argument("penalty constant K must be nonnegative");
  const auto* fixed = std::get_if<ReaugmentedFlow>(&piece.solution);
  if (!fixed) throw std::invalid_argument("penalty_wasted expects a re-augmented flow");
  return Constant{K * fixed->wasted};
}

double scale_factor(const FlowNetwork& net, const FlowPaths& flow,
                    std::span<const double> theta) {
  const std::vector<double> load = edge_loads(net, flow);
  double lambda = 1.0;
  for (std::size_t e = 0; e < load.size(); ++e) {
    if (load[e] > kFlowEps) lambda = std::min(lambda, theta[e] / load[e]);
  }
  return std::max(lambda, 0.0);
}

MaxflowProblem::MaxflowProblem(FlowNetwork net, FlowCorrection correction,
                               double wasted_penalty)
    : net_(std::move(net)), correction_(correction), wasted_penalty_(wasted_penalty) {
  net_.validate();
  if (wasted_penalty_ < 0.0) throw std::invalid_argument("penalty constant K must be nonnegative");
}

std::vector<ConvertPiece> MaxflowProblem::convert(const Instance& inst, const ParamVector& p,
                                                  Interval i0) const {
  validate(inst);
  return convert_maxflow(net_, p, i0);
}

std::vector<CorrectPiece> MaxflowProblem::correct(const Instance& inst,
                                                  std::span<const ConvertPiece> pieces) const {
  std::vector<CorrectPiece> out;
  for (const auto& piece : pieces) {
    if (correction_ == FlowCorrection::Scale) {
      for (auto& cp : correct_scale(net_, piece, inst.theta)) out.push_back(std::move(cp));
    } else {
      CorrectPiece cp = correct_reaugment(net_, piece, inst.theta);
      cp.penalty = penalty_wasted(cp, wasted_penalty_);
      out.push_back(std::move(cp));
    }
  }
  return out;
}

double MaxflowProblem::true_optimal_value(const Instance& inst) const {
  validate(inst);
  return maxflow_numeric(net_, inst.theta).optimal_value;
}

PostHocOutcome MaxflowProblem::evaluate_numeric(const Instance& inst,
                                                std::span<const double> theta_hat,
                                                double tov) const {
  validate(inst);
  const OracleResult est = maxflow_numeric(net_, theta_hat);
  const auto& flow = std::get<FlowPaths>(est.solution);
  PostHocOutcome out;
  out.tov = tov;
  out.estimated = est.optimal_value;
  if (correction_ == FlowCorrection::Scale) {
    out.corrected = scale_factor(net_, flow, inst.theta) * est.optimal_value;
  } else {
    const ReaugmentedFlow fixed = reaugment(net_, flow.paths, inst.theta);
    for (double f : fixed.flow.flows) out.corrected += f;
    out.penalty = wasted_penalty_ * fixed.wasted;
  }
  out.preg = tov - out.corrected + out.penalty;
  out.plain_regret = std::abs(out.estimated - tov);
  return out;
}

bool MaxflowProblem::feasible(const Instance& inst, const CorrectPiece& piece,
                              double gamma) const {
  if (const auto* scaled = std::get_if<ScaledFlow>(&piece.solution)) {
    const double lambda = eval(scaled->lambda, gamma);
    FlowPaths flow;
    for (const auto& pf : scaled->plan) {
      flow.paths.push_back(pf.arcs);
      flow.flows.push_back(lambda * eval(pf.flow, gamma));
    }
    return flow_feasible(net_, flow, inst.theta);
  }
  if (const auto* fixed = std::get_if<ReaugmentedFlow>(&piece.solution)) {
    return flow_feasible(net_, fixed->flow, inst.theta);
  }
  throw std::invalid_argument("maxflow piece carries no flow descriptor");
}

}  // namespace blc
