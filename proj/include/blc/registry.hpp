#ifndef BLC_REGISTRY_HPP
#define BLC_REGISTRY_HPP

// Builds problem adapters from a problem description plus correction and
// penalty choices, and provides the bundled topologies.

#include <memory>
#include <string>

#include "blc/data.hpp"

namespace blc {

struct LossConfig {
  /// 'A', 'B' or 'C'; which letters are valid depends on the problem.
  char correction = 'A';
  /// "none", "I" or "II".
  std::string penalty = "none";
  double K = 0.0;
  /// Proportional penalty fractions; one entry applies to every item.
  std::vector<double> sigma{0.1};

  nlohmann::json to_json() const;
};

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec, const LossConfig& loss);

/// Names: polska (12 vertices, 18 edges), usanet (24, 43), geant (40, 61).
FlowNetwork preset_network(const std::string& name);
/// Names: abilene (12 vertices, 15 edges), pdh (11, 34).
VcGraph preset_graph(const std::string& name);

}  // namespace blc

#endif  // BLC_REGISTRY_HPP
