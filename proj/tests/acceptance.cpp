// Acceptance checks, one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blc/bench.hpp"
#include "blc/data.hpp"
#include "blc/knapsack.hpp"
#include "blc/maxflow.hpp"
#include "blc/mcvc.hpp"
#include "blc/predictor.hpp"
#include "blc/registry.hpp"
#include "reference.hpp"

#ifndef BLC_CLI_PATH
#error "BLC_CLI_PATH must name the CLI binary"
#endif

using namespace blc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

// Random instance whose true parameters follow a positive linear model with
// noise, so predictions and truth disagree in realistic ways.
Instance random_instance(std::mt19937_64& rng, std::size_t params, std::size_t m, double noise,
                         std::vector<double> values = {}) {
  std::uniform_real_distribution<double> feat(0.5, 1.5), coef(0.5, 2.0);
  std::normal_distribution<double> eps(0.0, noise);
  Instance inst{Matrix(params, m), std::vector<double>(params), std::move(values)};
  std::vector<double> alpha(m);
  for (double& a : alpha) a = coef(rng);
  for (std::size_t j = 0; j < params; ++j) {
    double y = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
      inst.features(j, l) = feat(rng);
      y += inst.features(j, l) * alpha[l];
    }
    inst.theta[j] = std::max(0.1, y + (noise > 0 ? eps(rng) : 0.0));
  }
  return inst;
}

std::vector<double> random_alpha(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> coef(0.5, 2.0);
  std::vector<double> a(m);
  for (double& x : a) x = coef(rng);
  return a;
}

struct Setting {
  std::string label;
  ProblemSpec spec;
  LossConfig loss;
};

ProblemSpec knapsack_spec() { return KnapsackSpec{10, 20, ValueMode::Weak, 500}; }

Instance instance_for(const ProblemSpec& spec, std::mt19937_64& rng, std::size_t m, double noise) {
  const std::size_t params = num_params(spec);
  std::vector<double> values;
  if (const auto* k = std::get_if<KnapsackSpec>(&spec)) {
    std::uniform_real_distribution<double> v(1.0, 50.0);
    values.resize(k->n_items);
    for (double& x : values) x = v(rng);
  }
  return random_instance(rng, params, m, noise, std::move(values));
}

constexpr Interval kWindow{0.0, 4.0};

// 1. Pointwise algebra against scalar evaluation.
Verdict criterion1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  const Interval dom{-10.0, 10.0};
  std::uniform_real_distribution<double> at(dom.lo, dom.hi), factor(-3.0, 3.0);
  double worst = 0.0;
  for (int pair = 0; pair < 1000; ++pair) {
    const PiecewiseFn f = ref::random_piecewise(rng, dom, 10);
    const PiecewiseFn g = ref::random_piecewise(rng, dom, 10);
    const double s = factor(rng);
    const PiecewiseFn sum = add(f, g), diff = subtract(f, g), hi = pointwise_max(f, g),
                      lo = pointwise_min(f, g), scaled = scale(f, s);
    for (int i = 0; i < 1000; ++i) {
      const double x = at(rng);
      const double fx = f(x), gx = g(x);
      worst = std::max({worst, std::abs(sum(x) - (fx + gx)), std::abs(diff(x) - (fx - gx)),
                        std::abs(hi(x) - std::max(fx, gx)), std::abs(lo(x) - std::min(fx, gx)),
                        std::abs(scaled(x) - s * fx)});
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 5.0,
          "max deviation " + fmt(worst) + ", " + fmt(secs) + " s (limits 1e-9, 5 s)"};
}

// 2. Convert against brute-force oracles at a+b*gamma.
Verdict criterion2() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> at(kWindow.lo, kWindow.hi);
  std::uniform_int_distribution<std::size_t> coord(0, 2);
  std::size_t knap_bad = 0;
  double flow_worst = 0.0, cover_worst = 0.0;

  const LossConfig plain;
  for (int trial = 0; trial < 200; ++trial) {
    const FlowNetwork net = make_sample_network(8, 14, 5000 + static_cast<std::uint64_t>(trial));
    const auto problem = make_problem(MaxflowSpec{net}, plain);
    const Instance inst = instance_for(MaxflowSpec{net}, rng, 3, 1.0);
    const ParamVector p = construct_coordinate(inst.features, random_alpha(rng, 3), coord(rng));
    const PiecewiseFn E = estimated_objective(problem->convert(inst, p, kWindow));
    const double g = at(rng);
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : net.edges) edges.emplace_back(e.from, e.to);
    flow_worst = std::max(flow_worst,
                          std::abs(E(g) - ref::max_flow(net.n, edges, p.at(g), net.source, net.sink)));
  }
  for (int trial = 0; trial < 200; ++trial) {
    const auto problem = make_problem(knapsack_spec(), plain);
    const Instance inst = instance_for(knapsack_spec(), rng, 3, 1.0);
    const ParamVector p = construct_coordinate(inst.features, random_alpha(rng, 3), coord(rng));
    const PiecewiseFn E = estimated_objective(problem->convert(inst, p, kWindow));
    const double g = at(rng);
    if (E(g) != ref::knapsack(inst.values, p.at(g), 20)) ++knap_bad;
  }
  for (int trial = 0; trial < 200; ++trial) {
    const VcGraph graph = make_sample_graph(8, 12, 6000 + static_cast<std::uint64_t>(trial));
    const auto problem = make_problem(McvcSpec{graph}, plain);
    const Instance inst = instance_for(McvcSpec{graph}, rng, 3, 1.0);
    const ParamVector p = construct_coordinate(inst.features, random_alpha(rng, 3), coord(rng));
    const PiecewiseFn E = estimated_objective(problem->convert(inst, p, kWindow));
    const double g = at(rng);
    const std::vector<double> theta = p.at(g);
    std::size_t excluded = 0;
    for (std::size_t e = 1; e < graph.edges.size(); ++e) {
      if (theta[graph.n + e] < theta[graph.n + excluded]) excluded = e;
    }
    const std::vector<double> costs(theta.begin(), theta.begin() + graph.n);
    cover_worst = std::max(cover_worst,
                           std::abs(E(g) - ref::vertex_cover(graph.n, graph.edges, costs, excluded)));
  }
  const double secs = seconds_since(t0);
  return {knap_bad == 0 && cover_worst <= 1e-9 && flow_worst <= 1e-6 && secs < 60.0,
          "knapsack mismatches " + std::to_string(knap_bad) + ", mcvc max dev " + fmt(cover_worst) +
              ", maxflow max dev " + fmt(flow_worst) + ", " + fmt(secs) + " s"};
}

std::vector<Setting> correction_settings() {
  std::vector<Setting> out;
  const FlowNetwork net = make_sample_network(8, 14, 77);
  for (char c : {'A', 'B'}) out.push_back({std::string("maxflow/") + c, MaxflowSpec{net}, {c}});
  for (char c : {'A', 'B', 'C'}) out.push_back({std::string("knapsack/") + c, knapsack_spec(), {c}});
  out.push_back({"mcvc/A", McvcSpec{make_sample_graph(8, 12, 78)}, {'A'}});
  return out;
}

// 3. Every corrected solution is feasible under the true parameters.
Verdict criterion3() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<std::size_t> coord(0, 2);
  std::string detail;
  bool ok = true;
  for (const auto& s : correction_settings()) {
    const auto problem = make_problem(s.spec, s.loss);
    std::size_t checked = 0, infeasible = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const Instance inst = instance_for(s.spec, rng, 3, 2.0);
      const ParamVector p = construct_coordinate(inst.features, random_alpha(rng, 3), coord(rng));
      const auto pieces = problem->convert(inst, p, kWindow);
      for (const auto& piece : problem->correct(inst, pieces)) {
        ++checked;
        if (!problem->feasible(inst, piece, piece.span.mid())) ++infeasible;
      }
    }
    ok = ok && infeasible == 0;
    detail += s.label + " " + std::to_string(checked - infeasible) + "/" + std::to_string(checked) + "; ";
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 60.0, detail + fmt(secs) + " s"};
}

std::vector<Setting> loss_settings() {
  std::vector<Setting> out;
  const FlowNetwork net = make_sample_network(8, 14, 79);
  out.push_back({"maxflow/A", MaxflowSpec{net}, {'A'}});
  for (double K : {0.0, 10.0, 30.0, 50.0}) {
    out.push_back({"maxflow/B/K=" + fmt(K), MaxflowSpec{net}, {'B', "I", K}});
  }
  for (char c : {'A', 'B', 'C'}) {
    const std::string base = std::string("knapsack/") + c;
    out.push_back({base, knapsack_spec(), {c}});
    out.push_back({base + "/sigma=0.1", knapsack_spec(), {c, "I", 0.0, {0.1}}});
    out.push_back({base + "/K=500", knapsack_spec(), {c, "II", 500.0}});
  }
  out.push_back({"mcvc/A", McvcSpec{make_sample_graph(8, 12, 80)}, {'A'}});
  return out;
}

// 4. The piecewise loss at gamma = alpha_k equals the numeric pipeline.
Verdict criterion4() {
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<std::size_t> coord(0, 2);
  double worst = 0.0;
  std::size_t models = 0;
  for (const auto& s : loss_settings()) {
    const auto problem = make_problem(s.spec, s.loss);
    for (int trial = 0; trial < 50; ++trial, ++models) {
      const Instance inst = instance_for(s.spec, rng, 3, 2.0);
      const LinearModel model{random_alpha(rng, 3)};
      const std::size_t k = coord(rng);
      const double tov = problem->true_optimal_value(inst);
      const PiecewiseFn L =
          posthoc_loss(*problem, inst, construct_coordinate(inst.features, model.alpha, k), kWindow, tov);
      const double numeric = problem->evaluate_numeric(inst, predict(inst.features, model), tov).preg;
      worst = std::max(worst, std::abs(L(model.alpha[k]) - numeric));
    }
  }
  return {worst <= 1e-6, std::to_string(models) + " models, max deviation " + fmt(worst) + " (limit 1e-6)"};
}

// 5. Post-hoc regret never goes negative.
Verdict criterion5() {
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> at(kWindow.lo, kWindow.hi);
  std::uniform_int_distribution<std::size_t> coord(0, 2);
  double lowest = kInf;
  std::size_t samples = 0;
  for (const auto& s : loss_settings()) {
    const auto problem = make_problem(s.spec, s.loss);
    for (int trial = 0; trial < 10; ++trial) {
      const Instance inst = instance_for(s.spec, rng, 3, 2.0);
      const PiecewiseFn L = posthoc_loss(
          *problem, inst, construct_coordinate(inst.features, random_alpha(rng, 3), coord(rng)), kWindow,
          problem->true_optimal_value(inst));
      for (int i = 0; i < 100; ++i, ++samples) lowest = std::min(lowest, L(at(rng)));
    }
  }
  return {lowest >= -1e-9, std::to_string(samples) + " samples over " + std::to_string(loss_settings().size()) +
                               " settings, minimum " + fmt(lowest)};
}

// 6. Training loss never increases across coordinate updates.
Verdict criterion6() {
  std::size_t updates = 0;
  double worst_rise = -kInf;
  const auto check = [&](const Problem& problem, const Dataset& d) {
    TrainConfig cfg;
    cfg.max_passes = 3;
    const TrainResult res = train(problem, d.instances, cfg);
    double prev = res.loss_history.front();
    for (const auto& step : res.steps) {
      const double numeric = mean_loss(problem, d.instances, {step.alpha}, LossMode::PostHoc);
      worst_rise = std::max({worst_rise, numeric - prev, step.loss_after - step.loss_before});
      prev = numeric;
      ++updates;
    }
  };
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenSpec g;
    g.problem = KnapsackSpec{10, 100, ValueMode::Weak, 500};
    g.n = 60;
    g.noise_std = 20;
    g.seed = seed;
    g.alpha_lo = 5;
    g.alpha_hi = 7.5;
    const Dataset d = generate_synthetic(g);
    check(*make_problem(d.problem, {'A', "I", 0.0, {0.1}}), d);

    GenSpec h;
    h.problem = McvcSpec{preset_graph("abilene")};
    h.n = 30;
    h.noise_std = 0.5;
    h.seed = seed;
    h.alpha_lo = 0.5;
    h.alpha_hi = 2.0;
    const Dataset e = generate_synthetic(h);
    check(*make_problem(e.problem, {'A'}), e);
  }
  return {worst_rise <= 1e-9, std::to_string(updates) + " updates over 20 runs, largest rise " + fmt(worst_rise)};
}

// 7. Realizable data: ridge init already attains zero training regret.
Verdict criterion7() {
  struct Case {
    std::string label;
    ProblemSpec spec;
    LossConfig loss;
    double alpha_lo, alpha_hi, tol;
  };
  const std::vector<Case> cases{
      {"knapsack", KnapsackSpec{10, 100, ValueMode::Weak, 500}, {'A', "I", 0.0, {0.1}}, 5.0, 7.5, 1e-9},
      {"mcvc", McvcSpec{preset_graph("abilene")}, {'A'}, 0.5, 2.0, 1e-9},
      {"maxflow/B", MaxflowSpec{preset_network("polska")}, {'B', "I", 10.0}, 0.5, 2.0, 1e-6}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    GenSpec g;
    g.problem = c.spec;
    g.n = 40;
    g.seed = 7;
    g.alpha_lo = c.alpha_lo;
    g.alpha_hi = c.alpha_hi;
    const Dataset d = generate_synthetic(g);
    const auto problem = make_problem(d.problem, c.loss);
    TrainConfig cfg;
    cfg.max_passes = 2;
    const TrainResult res = train(*problem, d.instances, cfg);
    const double final_loss = mean_loss(*problem, d.instances, res.model, LossMode::PostHoc);
    ok = ok && std::abs(final_loss) <= c.tol;
    detail += c.label + " " + fmt(final_loss) + "; ";
  }
  return {ok, detail};
}

// 8. B&L-C ordering against ridge and the plain-regret variant.
Verdict criterion8() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (double capacity : {100.0, 200.0, 300.0}) {
    BenchConfig cfg;
    cfg.gen.problem = KnapsackSpec{10, capacity, ValueMode::Weak, 500};
    cfg.gen.n = 300;
    cfg.gen.noise_std = 25;
    cfg.gen.alpha_lo = 5;
    cfg.gen.alpha_hi = 7.5;
    cfg.loss = {'A', "I", 0.0, {0.1}};
    cfg.train_frac = 0.7;
    cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const BenchReport rep = run_benchmark(cfg);
    std::size_t beats_ridge = 0, beats_plain = 0;
    for (std::uint64_t seed : cfg.seeds) {
      double blc = kInf, bl = kInf, ridge = kInf;
      for (const auto& run : rep.runs) {
        if (run.seed != seed || !run.ok) continue;
        if (run.method == Method::BLC) blc = run.mean;
        if (run.method == Method::BL) bl = run.mean;
        if (run.method == Method::Ridge) ridge = run.mean;
      }
      if (blc <= ridge) ++beats_ridge;
      if (blc <= bl) ++beats_plain;
    }
    ok = ok && beats_ridge >= 7 && beats_plain >= 7;
    detail += "C=" + fmt(capacity) + " vs Ridge " + std::to_string(beats_ridge) + "/10, vs B&L " +
              std::to_string(beats_plain) + "/10; ";
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 900.0, detail + fmt(secs) + " s"};
}

FlowNetwork network(int n, std::vector<std::pair<int, int>> arcs) {
  FlowNetwork net{n, 0, n - 1, {}};
  for (auto [a, b] : arcs) net.edges.push_back({a, b});
  return net;
}

std::vector<FlowNetwork> hand_built_networks() {
  std::vector<FlowNetwork> out;
  out.push_back(network(2, {{0, 1}}));
  out.push_back(network(3, {{0, 1}, {1, 2}}));
  out.push_back(network(3, {{0, 1}, {1, 2}, {0, 2}}));
  out.push_back(network(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  out.push_back(network(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}}));
  out.push_back(network(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}, {2, 1}}));
  out.push_back(network(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 2}, {2, 4}}));
  out.push_back(network(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}));
  out.push_back(network(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {1, 2}}));
  out.push_back(network(6, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}, {1, 4}, {2, 3}}));
  out.push_back(network(6, {{0, 1}, {1, 2}, {2, 5}, {0, 3}, {3, 4}, {4, 5}, {1, 4}, {3, 2}}));
  out.push_back(network(6, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}}));
  out.push_back(network(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}}));
  out.push_back(network(7, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {5, 6}}));
  out.push_back(network(7, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}, {4, 6}, {5, 6}}));
  out.push_back(network(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {0, 3}, {3, 6}, {1, 5}}));
  out.push_back(network(8, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 6}, {4, 6}, {4, 7}, {5, 7}, {6, 7}}));
  out.push_back(network(8, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}, {3, 6}, {4, 7}, {5, 7}, {6, 7}, {1, 5}, {2, 6}}));
  out.push_back(network(8, {{0, 1}, {1, 2}, {2, 7}, {0, 3}, {3, 4}, {4, 7}, {0, 5}, {5, 6}, {6, 7}, {2, 4}, {4, 6}}));
  out.push_back(network(9, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}, {4, 6}, {5, 7}, {6, 8}, {7, 8}, {6, 7}}));
  return out;
}

// 9. Grid minimization of the rational max-flow loss against a dense grid.
Verdict criterion9() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1009);
  const auto nets = hand_built_networks();
  double worst_gap = -kInf;
  std::size_t rational = 0;
  for (const auto& net : nets) {
    const MaxflowProblem problem(net, FlowCorrection::Scale, 0.0);
    const Instance inst = instance_for(MaxflowSpec{net}, rng, 2, 1.5);
    const std::vector<double> alpha = random_alpha(rng, 2);
    const PiecewiseFn L = posthoc_loss(problem, inst, construct_coordinate(inst.features, alpha, 0), kWindow,
                                       problem.true_optimal_value(inst));
    if (L.has_rational()) ++rational;
    const double picked = L(pick_representative(L, alpha[0], 1000));
    double dense = kInf;
    for (int i = 0; i <= 1000000; ++i) {
      dense = std::min(dense, L(kWindow.lo + kWindow.width() * i / 1e6));
    }
    worst_gap = std::max(worst_gap, picked - dense);
  }
  const double secs = seconds_since(t0);
  return {worst_gap <= 1e-3 && secs < 60.0,
          std::to_string(nets.size()) + " networks (" + std::to_string(rational) +
              " with rational loss), worst gap " + fmt(worst_gap) + ", " + fmt(secs) + " s"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// 10. CLI outputs are bitwise reproducible.
Verdict criterion10() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "blc_acceptance_cli";
  fs::remove_all(root);
  const std::string cli = BLC_CLI_PATH;
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands{
      {"generate --problem knapsack --n 40 --noise 10 --seeds 3 --out {d}/knap.json", {"knap.json"}},
      {"generate --problem mcvc --graph abilene --n 20 --noise 0.5 --seeds 3 --out {d}/vc.json", {"vc.json"}},
      {"generate --problem maxflow --network polska --n 20 --noise 0.5 --seeds 3 --out {d}/flow.json",
       {"flow.json"}},
      {"train --data {d}/knap.json --method blc --penalty I --max-passes 2 --out {d}/blc.json", {"blc.json"}},
      {"train --data {d}/knap.json --method bl --max-passes 2 --out {d}/bl.json", {"bl.json"}},
      {"train --data {d}/knap.json --method ridge --out {d}/ridge.json", {"ridge.json"}},
      {"train --data {d}/vc.json --method blc --init random --seeds 5 --max-passes 1 --out {d}/vc_model.json",
       {"vc_model.json"}},
      {"train --data {d}/flow.json --method blc --correction B --penalty I --K 10 --max-passes 1 --out "
       "{d}/flow_model.json",
       {"flow_model.json"}},
      {"eval --data {d}/knap.json --model {d}/blc.json --penalty I --out {d}/eval.json", {"eval.json"}},
      {"bench --problem knapsack --n 60 --noise 20 --penalty I --max-passes 2 --seeds 1,2 --out {d}/bench",
       {"bench/report.json"}},
      {"topology --name geant --out {d}/geant.json", {"geant.json"}},
  };
  std::vector<std::string> first;
  std::size_t compared = 0, differing = 0;
  for (int round = 0; round < 2; ++round) {
    const fs::path dir = root / ("run" + std::to_string(round));
    fs::create_directories(dir);
    for (const auto& [args, outputs] : commands) {
      std::string line = args;
      for (std::size_t at; (at = line.find("{d}")) != std::string::npos;) line.replace(at, 3, dir.string());
      const std::string cmd = "\"" + cli + "\" " + line + " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + line};
      for (const auto& o : outputs) {
        if (round == 0) {
          first.push_back(slurp(dir / o));
        } else {
          ++compared;
          if (slurp(dir / o) != first[compared - 1]) ++differing;
        }
      }
    }
  }
  fs::remove_all(root);
  return {differing == 0 && compared == first.size(),
          std::to_string(compared) + " JSON outputs compared, " + std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"piecewise algebra soundness", criterion1},
      {"convert oracle equivalence", criterion2},
      {"correction soundness", criterion3},
      {"loss consistency with numeric pipeline", criterion4},
      {"post-hoc regret nonnegativity", criterion5},
      {"trainer monotonicity", criterion6},
      {"zero-regret recovery", criterion7},
      {"ordering reproduction", criterion8},
      {"grid-search minimization quality", criterion9},
      {"CLI determinism", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first
              << "): " << v.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
