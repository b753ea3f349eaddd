#ifndef BLC_MCVC_HPP
#define BLC_MCVC_HPP

// Minimum cost vertex cover variant: every edge except the one with the
// smallest edge value must be covered. Vertex costs and edge values are both
// unknown; parameters are laid out as costs (one per vertex) followed by
// edge values (one per edge).

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "blc/problem.hpp"
#include "json.hpp"

namespace blc {

inline constexpr int kMaxCoverVertices = 20;

struct VcGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  std::size_t num_params() const { return static_cast<std::size_t>(n) + edges.size(); }
  void validate() const;
  friend bool operator==(const VcGraph&, const VcGraph&) = default;
};

nlohmann::json to_json(const VcGraph& g);
VcGraph graph_from_json(const nlohmann::json& j);

/// Random connected simple graph (spanning tree plus random extra edges).
VcGraph make_sample_graph(int n, int m, std::uint64_t seed);

/// Index of the smallest value; ties go to the smallest index.
std::size_t excluded_edge(std::span<const double> edge_values);

bool covers_all_but(const VcGraph& g, Mask vertices, std::size_t excluded);

/// For every choice of excluded edge, all vertex sets covering the remaining
/// edges, in lexicographic mask order.
class CoverTable {
 public:
  explicit CoverTable(const VcGraph& g);
  std::span<const Mask> covers(std::size_t excluded) const { return table_[excluded]; }

 private:
  std::vector<std::vector<Mask>> table_;
};

/// Stage 1 splits i0 where the smallest estimated edge value changes; stage 2
/// takes the lower envelope of cover costs on each of those sub-intervals.
std::vector<ConvertPiece> convert_mcvc(const VcGraph& g, const CoverTable& table,
                                       const ParamVector& p, Interval i0);
std::vector<ConvertPiece> convert_mcvc(const VcGraph& g, const ParamVector& p, Interval i0);

/// Correction Function A: add both endpoints of every required edge the
/// estimated pick leaves uncovered.
CorrectPiece correct_cover(const VcGraph& g, const ConvertPiece& piece,
                           std::span<const double> theta);

/// The repaired vertex set for a fixed pick under true edge values.
Mask repair_cover(const VcGraph& g, Mask picked, std::span<const double> true_edge_values);

class McvcProblem final : public Problem {
 public:
  explicit McvcProblem(VcGraph g);

  std::string name() const override { return "mcvc"; }
  Sense sense() const override { return Sense::Minimize; }
  std::size_t num_params() const override { return g_.num_params(); }

  std::vector<ConvertPiece> convert(const Instance& inst, const ParamVector& p,
                                    Interval i0) const override;
  std::vector<CorrectPiece> correct(const Instance& inst,
                                    std::span<const ConvertPiece> pieces) const override;
  double true_optimal_value(const Instance& inst) const override;
  using Problem::evaluate_numeric;
  PostHocOutcome evaluate_numeric(const Instance& inst, std::span<const double> theta_hat,
                                  double tov) const override;
  bool feasible(const Instance& inst, const CorrectPiece& piece, double gamma) const override;

  const VcGraph& graph() const { return g_; }

 private:
  VcGraph g_;
  CoverTable table_;
};

}  // namespace blc

#endif  // BLC_MCVC_HPP
