#ifndef BLC_DATA_HPP
#define BLC_DATA_HPP

// Datasets: problem description plus (features, true parameters) instances,
// synthetic generation, splitting and JSON persistence.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "blc/knapsack.hpp"
#include "blc/maxflow.hpp"
#include "blc/mcvc.hpp"
#include "blc/problem.hpp"
#include "json.hpp"

namespace blc {

enum class FeatureDist { UniformPositive, StandardNormal };
enum class ValueMode { Uncorrelated, Weak, AlmostStrong };

std::string to_string(ValueMode mode);
ValueMode value_mode_from_string(const std::string& s);

struct MaxflowSpec {
  FlowNetwork network;
  friend bool operator==(const MaxflowSpec&, const MaxflowSpec&) = default;
};

struct KnapsackSpec {
  std::size_t n_items = 10;
  double capacity = 100.0;
  ValueMode value_mode = ValueMode::Weak;
  double R = 500.0;
  friend bool operator==(const KnapsackSpec&, const KnapsackSpec&) = default;
};

struct McvcSpec {
  VcGraph graph;
  friend bool operator==(const McvcSpec&, const McvcSpec&) = default;
};

using ProblemSpec = std::variant<MaxflowSpec, KnapsackSpec, McvcSpec>;

std::string problem_name(const ProblemSpec& spec);
std::size_t num_params(const ProblemSpec& spec);
nlohmann::json to_json(const ProblemSpec& spec);
ProblemSpec problem_from_json(const nlohmann::json& j);

struct Dataset {
  ProblemSpec problem;
  std::vector<Instance> instances;

  std::size_t size() const { return instances.size(); }
  std::size_t num_features() const {
    return instances.empty() ? 0 : instances.front().features.cols();
  }
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Features in [0.5, 1.5] for UniformPositive.
inline constexpr double kUniformFeatureLo = 0.5;
inline constexpr double kUniformFeatureHi = 1.5;

struct GenSpec {
  ProblemSpec problem = KnapsackSpec{};
  std::size_t m = 8;
  std::size_t n = 300;
  double noise_std = 0.0;
  std::uint64_t seed = 1;
  FeatureDist feature_dist = FeatureDist::UniformPositive;
  /// Hidden generating coefficients; drawn from U[alpha_lo, alpha_hi] when empty.
  std::vector<double> alpha_star;
  double alpha_lo = 1.0;
  double alpha_hi = 2.0;
  double floor = 1.0;

  void validate() const;
};

/// Coefficients actually used by generate_synthetic for this spec.
std::vector<double> generating_alpha(const GenSpec& spec);

/// theta_j = max(floor, (A alpha*)_j + eps_j), eps ~ N(0, noise_std). Knapsack
/// item values are drawn per instance from the true weights.
Dataset generate_synthetic(const GenSpec& spec);

std::vector<double> pisinger_values(std::span<const double> weights, ValueMode mode, double R,
                                    std::mt19937_64& rng);
std::vector<double> pisinger_values(std::span<const double> weights, ValueMode mode, double R,
                                    std::uint64_t seed);
/// Closed range each value is drawn from.
std::pair<double, double> pisinger_range(double weight, ValueMode mode, double R);

/// Seeded shuffle; |train| = round(train_frac * n). Both halves keep the
/// original instance order.
std::pair<Dataset, Dataset> split(const Dataset& data, double train_frac, std::uint64_t seed);

nlohmann::json to_json(const Dataset& data);
Dataset dataset_from_json(const nlohmann::json& j);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void save(const Dataset& data, const std::string& path);
/// Throws ParseError (with line information for JSON syntax errors).
Dataset load(const std::string& path);
/// Parses a JSON document from text; syntax errors carry line and column.
nlohmann::json parse_json_text(const std::string& text, const std::string& what);
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace blc

#endif  // BLC_DATA_HPP
