#ifndef BLC_ORACLES_HPP
#define BLC_ORACLES_HPP

// Numeric and brute-force reference solvers, plus feasibility checks.
// Tie rules match the adapters so piecewise results can be compared exactly.

#include <span>

#include "blc/knapsack.hpp"
#include "blc/maxflow.hpp"
#include "blc/mcvc.hpp"

namespace blc {

struct OracleResult {
  double optimal_value = 0.0;
  Solution solution;
};

/// Edmonds-Karp with the same breadth-first tie rules as convert_maxflow.
/// Solution: FlowPaths in augmentation order.
OracleResult maxflow_numeric(const FlowNetwork& net, std::span<const double> caps);

/// Max-value subset over all 2^n; ties go to the lexicographically smallest
/// mask. Solution: ItemSubset.
OracleResult knapsack_exhaustive(std::span<const double> values,
                                 std::span<const double> weights, double capacity);

/// Min-cost vertex set covering every edge except the smallest-valued one
/// (smallest id on ties). Solution: VertexPick.
OracleResult mcvc_exhaustive(const VcGraph& g, std::span<const double> costs,
                             std::span<const double> edge_values);

/// Paths must be s-t arc walks; flows within [0, cap] per edge.
/// Throws std::invalid_argument on a malformed decomposition.
bool flow_feasible(const FlowNetwork& net, const FlowPaths& flow,
                   std::span<const double> caps);
bool knapsack_feasible(Mask items, std::span<const double> weights, double capacity);
bool cover_feasible(const VcGraph& g, Mask vertices, std::span<const double> edge_values);

/// Generic check of a corrected piece, materialized at gamma, under the
/// instance's true parameters.
bool feasibility_check(const Problem& problem, const Instance& inst, const CorrectPiece& piece,
                       double gamma);

}  // namespace blc

#endif  // BLC_ORACLES_HPP
