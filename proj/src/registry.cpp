#include "blc/registry.hpp"

#include <stdexcept>

#include "blc/knapsack.hpp"
#include "blc/maxflow.hpp"
#include "blc/mcvc.hpp"

namespace blc {

nlohmann::json LossConfig::to_json() const {
  return {{"correction", std::string(1, correction)}, {"penalty", penalty}, {"K", K},
          {"sigma", sigma}};
}

namespace {

void require_penalty(const LossConfig& loss, std::initializer_list<const char*> allowed,
                     const std::string& problem) {
  for (const char* p : allowed) {
    if (loss.penalty == p) return;
  }
  throw std::invalid_argument("penalty '" + loss.penalty + "' is not available for " + problem);
}

}  // namespace

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec, const LossConfig& loss) {
  if (loss.K < 0.0) throw std::invalid_argument("penalty K must be nonnegative");
  if (const auto* m = std::get_if<MaxflowSpec>(&spec)) {
    require_penalty(loss, {"none", "I"}, "maxflow");
    FlowCorrection c;
    if (loss.correction == 'A') {
      c = FlowCorrection::Scale;
    } else if (loss.correction == 'B') {
      c = FlowCorrection::Reaugment;
    } else {
      throw std::invalid_argument("maxflow supports corrections A and B");
    }
    if (c == FlowCorrection::Scale && loss.penalty != "none") {
      throw std::invalid_argument("maxflow penalty I applies to correction B only");
    }
    return std::make_unique<MaxflowProblem>(m->network, c, loss.penalty == "I" ? loss.K : 0.0);
  }
  if (const auto* k = std::get_if<KnapsackSpec>(&spec)) {
    require_penalty(loss, {"none", "I", "II"}, "knapsack");
    KnapsackCorrection c;
    switch (loss.correction) {
      case 'A': c = KnapsackCorrection::RatioAsc; break;
      case 'B': c = KnapsackCorrection::WeightDesc; break;
      case 'C': c = KnapsackCorrection::RemoveAll; break;
      default: throw std::invalid_argument("knapsack supports corrections A, B and C");
    }
    KnapsackPenalty pen;
    if (loss.penalty == "I") {
      pen.kind = KnapsackPenalty::Kind::Proportional;
      pen.sigma = loss.sigma;
      for (double s : pen.sigma) {
        if (s < 0.0) throw std::invalid_argument("sigma must be nonnegative");
      }
      if (pen.sigma.size() != 1 && pen.sigma.size() != k->n_items) {
        throw std::invalid_argument("sigma needs one entry or one per item");
      }
    } else if (loss.penalty == "II") {
      pen.kind = KnapsackPenalty::Kind::PerItem;
      pen.per_item = loss.K;
    }
    return std::make_unique<KnapsackProblem>(k->n_items, k->capacity, c, pen);
  }
  require_penalty(loss, {"none"}, "mcvc");
  if (loss.correction != 'A') throw std::invalid_argument("mcvc supports correction A only");
  return std::make_unique<McvcProblem>(std::get<McvcSpec>(spec).graph);
}

FlowNetwork preset_network(const std::string& name) {
  if (name == "polska") return make_sample_network(12, 18, 101);
  if (name == "usanet") return make_sample_network(24, 43, 102);
  if (name == "geant") return make_sample_network(40, 61, 103);
  throw std::invalid_argument("unknown network '" + name + "' (polska, usanet, geant)");
}

VcGraph preset_graph(const std::string& name) {
  if (name == "abilene") return make_sample_graph(12, 15, 201);
  if (name == "pdh") return make_sample_graph(11, 34, 202);
  throw std::invalid_argument("unknown graph '" + name + "' (abilene, pdh)");
}

}  // namespace blc
