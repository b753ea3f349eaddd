#include "blc/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace blc {

using nlohmann::json;

std::string to_string(ValueMode mode) {
  switch (mode) {
    case ValueMode::Uncorrelated: return "uncorrelated";
    case ValueMode::Weak: return "weak";
    case ValueMode::AlmostStrong: return "almost-strong";
  }
  throw std::logic_error("unknown value mode");
}

ValueMode value_mode_from_string(const std::string& s) {
  if (s == "uncorrelated") return ValueMode::Uncorrelated;
  if (s == "weak") return ValueMode::Weak;
  if (s == "almost-strong" || s == "almost_strong") return ValueMode::AlmostStrong;
  throw std::invalid_argument("unknown value mode '" + s +
                              "' (expected uncorrelated, weak or almost-strong)");
}

std::string problem_name(const ProblemSpec& spec) {
  static constexpr const char* kNames[] = {"maxflow", "knapsack", "mcvc"};
  return kNames[spec.index()];
}

std::size_t num_params(const ProblemSpec& spec) {
  if (const auto* m = std::get_if<MaxflowSpec>(&spec)) return m->network.edges.size();
  if (const auto* k = std::get_if<KnapsackSpec>(&spec)) return k->n_items;
  return std::get<McvcSpec>(spec).graph.num_params();
}

json to_json(const ProblemSpec& spec) {
  json j{{"type", problem_name(spec)}};
  if (const auto* m = std::get_if<MaxflowSpec>(&spec)) {
    j["network"] = to_json(m->network);
  } else if (const auto* k = std::get_if<KnapsackSpec>(&spec)) {
    j["n_items"] = k->n_items;
    j["capacity"] = k->capacity;
    j["value_mode"] = to_string(k->value_mode);
    j["R"] = k->R;
  } else {
    j["graph"] = to_json(std::get<McvcSpec>(spec).graph);
  }
  return j;
}

ProblemSpec problem_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "maxflow") return MaxflowSpec{network_from_json(j.at("network"))};
  if (type == "mcvc") return McvcSpec{graph_from_json(j.at("graph"))};
  if (type == "knapsack") {
    KnapsackSpec k;
    k.n_items = j.at("n_items").get<std::size_t>();
    k.capacity = j.at("capacity").get<double>();
    k.value_mode = value_mode_from_string(j.value("value_mode", std::string("weak")));
    k.R = j.value("R", 500.0);
    if (k.n_items == 0 || k.n_items > kMaxKnapsackItems) {
      throw std::invalid_argument("knapsack item count out of range");
    }
    return k;
  }
  throw std::invalid_argument("unknown problem type '" + type + "'");
}

void GenSpec::validate() const {
  if (m == 0) throw std::invalid_argument("need at least one feature");
  if (n == 0) throw std::invalid_argument("need at least one instance");
  if (!(noise_std >= 0.0)) throw std::invalid_argument("noise_std must be nonnegative");
  if (!alpha_star.empty() && alpha_star.size() != m) {
    throw std::invalid_argument("alpha_star size does not match m");
  }
  if (alpha_star.empty() && !(alpha_lo <= alpha_hi)) {
    throw std::invalid_argument("alpha_lo must not exceed alpha_hi");
  }
  if (num_params(problem) == 0) throw std::invalid_argument("problem has no parameters");
}

namespace {

// Separate streams so that changing one draw never shifts another.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

}  // namespace

std::vector<double> generating_alpha(const GenSpec& spec) {
  if (!spec.alpha_star.empty()) return spec.alpha_star;
  auto rng = stream(spec.seed, 1);
  std::uniform_real_distribution<double> u(spec.alpha_lo, spec.alpha_hi);
  std::vector<double> alpha(spec.m);
  for (double& a : alpha) a = u(rng);
  return alpha;
}

Dataset generate_synthetic(const GenSpec& spec) {
  spec.validate();
  const std::vector<double> alpha = generating_alpha(spec);
  const std::size_t t = num_params(spec.problem);
  const auto* knap = std::get_if<KnapsackSpec>(&spec.problem);

  auto feat_rng = stream(spec.seed, 2);
  auto noise_rng = stream(spec.seed, 3);
  auto value_rng = stream(spec.seed, 4);
  std::uniform_real_distribution<double> uniform(kUniformFeatureLo, kUniformFeatureHi);
  std::normal_distribution<double> normal(0.0, 1.0);

  Dataset data{spec.problem, {}};
  data.instances.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    Instance inst{Matrix(t, spec.m), std::vector<double>(t), {}};
    for (std::size_t j = 0; j < t; ++j) {
      for (std::size_t l = 0; l < spec.m; ++l) {
        inst.features(j, l) =
            spec.feature_dist == FeatureDist::UniformPositive ? uniform(feat_rng) : normal(feat_rng);
      }
    }
    for (std::size_t j = 0; j < t; ++j) {
      double y = 0.0;
      for (std::size_t l = 0; l < spec.m; ++l) y += inst.features(j, l) * alpha[l];
      if (spec.noise_std > 0.0) y += spec.noise_std * normal(noise_rng);
      inst.theta[j] = std::max(spec.floor, y);
    }
    if (knap) inst.values = pisinger_values(inst.theta, knap->value_mode, knap->R, value_rng);
    data.instances.push_back(std::move(inst));
  }
  return data;
}

std::pair<double, double> pisinger_range(double weight, ValueMode mode, double R) {
  switch (mode) {
    case ValueMode::Uncorrelated: return {1.0, R};
    case ValueMode::Weak: return {std::max(1.0, weight - R / 10.0), weight + R / 10.0};
    case ValueMode::AlmostStrong:
      return {weight + R / 10.0 - R / 500.0, weight + R / 10.0 + R / 500.0};
  }
  throw std::logic_error("unknown value mode");
}

std::vector<double> pisinger_values(std::span<const double> weights, ValueMode mode, double R,
                                    std::mt19937_64& rng) {
  if (!(R > 1.0)) throw std::invalid_argument("R must exceed 1");
  std::vector<double> values;
  values.reserve(weights.size());
  for (double w : weights) {
    const auto [lo, hi] = pisinger_range(w, mode, R);
    values.push_back(std::uniform_real_distribution<double>(lo, hi)(rng));
  }
  return values;
}

std::vector<double> pisinger_values(std::span<const double> weights, ValueMode mode, double R,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return pisinger_values(weights, mode, R, rng);
}

std::pair<Dataset, Dataset> split(const Dataset& data, double train_frac, std::uint64_t seed) {
  if (!(train_frac >= 0.0 && train_frac <= 1.0)) {
    throw std::invalid_argument("train fraction must lie in [0, 1]");
  }
  const std::size_t n = data.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_train = static_cast<std::size_t>(std::llround(train_frac * static_cast<double>(n)));
  std::vector<std::size_t> train_idx(order.begin(), order.begin() + static_cast<long>(n_train));
  std::vector<std::size_t> test_idx(order.begin() + static_cast<long>(n_train), order.end());
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());

  Dataset train{data.problem, {}}, test{data.problem, {}};
  for (std::size_t i : train_idx) train.instances.push_back(data.instances[i]);
  for (std::size_t i : test_idx) test.instances.push_back(data.instances[i]);
  return {std::move(train), std::move(test)};
}

json to_json(const Dataset& data) {
  json instances = json::array();
  for (const auto& inst : data.instances) {
    json rows = json::array();
    for (std::size_t r = 0; r < inst.features.rows(); ++r) {
      const auto row = inst.features.row(r);
      rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    json j{{"features", std::move(rows)}, {"theta", inst.theta}};
    if (!inst.values.empty()) j["values"] = inst.values;
    instances.push_back(std::move(j));
  }
  return {{"problem", to_json(data.problem)}, {"instances", std::move(instances)}};
}

Dataset dataset_from_json(const json& j) {
  Dataset data{problem_from_json(j.at("problem")), {}};
  const json& list = j.at("instances");
  if (!list.is_array() || list.empty()) throw ParseError("dataset has no instances");
  const std::size_t t = num_params(data.problem);
  std::size_t m = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& ij = list[i];
    const std::string where = "instance " + std::to_string(i) + ": ";
    const json& rows = ij.at("features");
    if (rows.size() != t) {
      throw ParseError(where + "expected " + std::to_string(t) + " feature rows, got " +
                       std::to_string(rows.size()));
    }
    if (i == 0) m = rows.at(0).size();
    if (m == 0) throw ParseError(where + "empty feature rows");
    Instance inst{Matrix(t, m), ij.at("theta").get<std::vector<double>>(), {}};
    for (std::size_t r = 0; r < t; ++r) {
      if (rows[r].size() != m) throw ParseError(where + "ragged feature matrix");
      for (std::size_t c = 0; c < m; ++c) inst.features(r, c) = rows[r][c].get<double>();
    }
    if (inst.theta.size() != t) throw ParseError(where + "theta has the wrong length");
    if (ij.contains("values")) inst.values = ij["values"].get<std::vector<double>>();
    if (std::holds_alternative<KnapsackSpec>(data.problem) && inst.values.size() != t) {
      throw ParseError(where + "knapsack instances need one value per item");
    }
    data.instances.push_back(std::move(inst));
  }
  return data;
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what + ": JSON syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col));
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

void save(const Dataset& data, const std::string& path) { write_json_file(to_json(data), path); }

Dataset load(const std::string& path) {
  const json j = read_json_file(path);
  try {
    return dataset_from_json(j);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace blc
