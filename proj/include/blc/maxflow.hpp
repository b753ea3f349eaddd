#ifndef BLC_MAXFLOW_HPP
#define BLC_MAXFLOW_HPP

// Maximum flow with unknown edge capacities.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "blc/problem.hpp"
#include "json.hpp"

namespace blc {

/// Residual capacities at or below this are treated as absent.
inline constexpr double kFlowEps = 1e-9;

struct FlowEdge {
  int from = 0;
  int to = 0;
  friend bool operator==(const FlowEdge&, const FlowEdge&) = default;
};

/// Directed network; the capacity of edges[e] is unknown parameter e.
struct FlowNetwork {
  int n = 0;
  int source = 0;
  int sink = 0;
  std::vector<FlowEdge> edges;

  void validate() const;
  friend bool operator==(const FlowNetwork&, const FlowNetwork&) = default;
};

nlohmann::json to_json(const FlowNetwork& net);
FlowNetwork network_from_json(const nlohmann::json& j);

/// Random connected network with source 0 and sink n-1; a chain through all
/// vertices guarantees at least one s-t path.
FlowNetwork make_sample_network(int n, int m, std::uint64_t seed);

inline int arc_edge(int arc) { return arc / 2; }
inline bool arc_is_reverse(int arc) { return (arc & 1) != 0; }
int arc_tail(const FlowNetwork& net, int arc);
int arc_head(const FlowNetwork& net, int arc);

/// Outgoing arcs per vertex, ordered by head vertex id then edge id.
std::vector<std::vector<int>> residual_adjacency(const FlowNetwork& net);

/// Shortest s-t path over active arcs. Breadth-first search scans each
/// vertex's arcs in residual_adjacency order, which fixes ties.
std::optional<std::vector<int>> shortest_augmenting_path(
    const FlowNetwork& net, const std::vector<std::vector<int>>& adjacency,
    std::span<const std::uint8_t> active);

/// Net flow per edge of a plan, as linear forms of gamma.
std::vector<Linear> plan_edge_loads(const FlowNetwork& net, const PathFlowPlan& plan);
/// Net flow per edge of a numeric decomposition.
std::vector<double> edge_loads(const FlowNetwork& net, const FlowPaths& flow);

/// Interval-splitting Edmonds-Karp on capacities slope*gamma + intercept.
/// Edges whose estimated capacity is nonpositive on a sub-interval are absent
/// there. The result partitions i0; the objective is continuous piecewise
/// linear.
std::vector<ConvertPiece> convert_maxflow(const FlowNetwork& net, const ParamVector& p,
                                          Interval i0);

/// Correction Function A: scale the plan by the largest feasible lambda in
/// [0, 1]. The piece is split exactly where the binding edge changes.
std::vector<CorrectPiece> correct_scale(const FlowNetwork& net, const ConvertPiece& piece,
                                        std::span<const double> theta);

/// Re-augments `paths` in order by their bottlenecks under true capacities.
ReaugmentedFlow reaugment(const FlowNetwork& net,
                          std::span<const std::vector<int>> paths,
                          std::span<const double> theta);

/// Correction Function B: constant over the whole convert piece.
CorrectPiece correct_reaugment(const FlowNetwork& net, const ConvertPiece& piece,
                               std::span<const double> theta);

/// Penalty Function I: K units per wasted path.
Segment penalty_wasted(const CorrectPiece& piece, double K);

/// Largest lambda in [0, 1] keeping the scaled flow within theta.
double scale_factor(const FlowNetwork& net, const FlowPaths& flow,
                    std::span<const double> theta);

enum class FlowCorrection { Scale, Reaugment };

class MaxflowProblem final : public Problem {
 public:
  MaxflowProblem(FlowNetwork net, FlowCorrection correction, double wasted_penalty);

  std::string name() const override { return "maxflow"; }
  Sense sense() const override { return Sense::Maximize; }
  std::size_t num_params() const override { return net_.edges.size(); }

  std::vector<ConvertPiece> convert(const Instance& inst, const ParamVector& p,
                                    Interval i0) const override;
  std::vector<CorrectPiece> correct(const Instance& inst,
                                    std::span<const ConvertPiece> pieces) const override;
  double true_optimal_value(const Instance& inst) const override;
  using Problem::evaluate_numeric;
  PostHocOutcome evaluate_numeric(const Instance& inst, std::span<const double> theta_hat,
                                  double tov) const override;
  bool feasible(const Instance& inst, const CorrectPiece& piece, double gamma) const override;

  const FlowNetwork& network() const { return net_; }

 private:
  FlowNetwork net_;
  FlowCorrection correction_;
  double wasted_penalty_;
};

}  // namespace blc

#endif  // BLC_MAXFLOW_HPP
