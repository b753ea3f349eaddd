#ifndef BLC_SOLUTIONS_HPP
#define BLC_SOLUTIONS_HPP

// Solution descriptors attached to Convert/Correct pieces.

#include <cstdint>
#include <variant>
#include <vector>

#include "blc/piecewise.hpp"

namespace blc {

/// Bit i set <=> item/vertex i selected. Instances are capped well below 32.
using Mask = std::uint32_t;

/// Lexicographic order on (x_0, x_1, ...) with 0 < 1.
inline bool lex_less(Mask a, Mask b) {
  const Mask d = a ^ b;
  if (d == 0) return false;
  return (b & (d & (~d + 1))) != 0;
}

/// Arc 2e is edge e traversed forward, arc 2e+1 is its residual reverse.
struct PathFlow {
  std::vector<int> arcs;
  Segment flow;
};
using PathFlowPlan = std::vector<PathFlow>;

/// Correction A for max-flow: the estimated plan scaled by lambda(gamma).
struct ScaledFlow {
  PathFlowPlan plan;
  Segment lambda;
};

/// Numeric path decomposition of a flow, in augmentation order.
struct FlowPaths {
  std::vector<std::vector<int>> paths;
  std::vector<double> flows;
};

/// Correction B for max-flow: plan paths re-augmented under true capacities.
struct ReaugmentedFlow {
  FlowPaths flow;
  int wasted = 0;
};

struct ItemSubset {
  Mask items = 0;
};

struct KnapsackRepair {
  Mask kept = 0;
  Mask removed = 0;
  /// A nonpositive true weight was clamped when computing value/weight ratios.
  bool clamped = false;
};

struct VertexPick {
  Mask vertices = 0;
  int excluded_edge = -1;
};

using Solution = std::variant<std::monostate, PathFlowPlan, ScaledFlow, FlowPaths, ReaugmentedFlow,
                              ItemSubset, KnapsackRepair, VertexPick>;

}  // namespace blc

#endif  // BLC_SOLUTIONS_HPP
