// Command-line front end: generate, train, eval, bench, report, topology.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "blc/bench.hpp"
#include "blc/data.hpp"
#include "blc/predictor.hpp"
#include "blc/registry.hpp"

namespace {

using nlohmann::json;

struct GenOpts {
  std::string problem = "knapsack";
  std::string network = "polska";
  std::string graph = "abilene";
  std::size_t items = 10;
  double capacity = 100.0;
  std::string value_mode = "weak";
  double R = 500.0;
  std::size_t n = 300;
  std::size_t m = 8;
  double noise = 0.0;
  std::string feature_dist = "uniform";
  std::optional<double> alpha_lo, alpha_hi;
  double floor = 1.0;
};

struct LossOpts {
  std::string correction = "A";
  std::string penalty = "none";
  double K = 0.0;
  std::string sigma = "0.1";
};

struct TrainOpts {
  std::string i0 = "-1000,1000";
  std::size_t grid_n = 1000;
  std::size_t max_passes = 20;
  double tol = 1e-6;
  std::string init = "ridge";
  double ridge_lambda = 1e-6;
  double time_budget = 0.0;
  std::size_t threads = 0;
};

std::vector<double> parse_reals(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw std::invalid_argument("bad number in " + what + ": '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(what + " is empty");
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (double v : parse_reals(s, "--seeds")) {
    if (v < 0 || v != std::floor(v)) throw std::invalid_argument("seeds must be nonnegative integers");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

blc::FlowNetwork load_network(const std::string& name) {
  if (std::filesystem::exists(name)) return blc::network_from_json(blc::read_json_file(name));
  return blc::preset_network(name);
}

blc::VcGraph load_graph(const std::string& name) {
  if (std::filesystem::exists(name)) return blc::graph_from_json(blc::read_json_file(name));
  return blc::preset_graph(name);
}

blc::GenSpec make_gen(const GenOpts& o, std::uint64_t seed) {
  blc::GenSpec g;
  std::pair<double, double> alpha_range;
  if (o.problem == "maxflow") {
    g.problem = blc::MaxflowSpec{load_network(o.network)};
    alpha_range = {0.5, 2.0};
  } else if (o.problem == "knapsack") {
    g.problem = blc::KnapsackSpec{o.items, o.capacity, blc::value_mode_from_string(o.value_mode), o.R};
    alpha_range = {5.0, 7.5};
  } else if (o.problem == "mcvc") {
    g.problem = blc::McvcSpec{load_graph(o.graph)};
    alpha_range = {0.5, 2.0};
  } else {
    throw std::invalid_argument("unknown problem '" + o.problem + "'");
  }
  g.n = o.n;
  g.m = o.m;
  g.noise_std = o.noise;
  g.seed = seed;
  if (o.feature_dist == "uniform") {
    g.feature_dist = blc::FeatureDist::UniformPositive;
  } else if (o.feature_dist == "normal") {
    g.feature_dist = blc::FeatureDist::StandardNormal;
  } else {
    throw std::invalid_argument("feature distribution must be uniform or normal");
  }
  g.alpha_lo = o.alpha_lo.value_or(alpha_range.first);
  g.alpha_hi = o.alpha_hi.value_or(alpha_range.second);
  g.floor = o.floor;
  return g;
}

blc::LossConfig make_loss(const LossOpts& o) {
  if (o.correction.size() != 1) throw std::invalid_argument("correction must be A, B or C");
  blc::LossConfig c;
  c.correction = o.correction[0];
  c.penalty = o.penalty;
  c.K = o.K;
  c.sigma = parse_reals(o.sigma, "--sigma");
  return c;
}

blc::TrainConfig make_train(const TrainOpts& o) {
  blc::TrainConfig c;
  const auto i0 = parse_reals(o.i0, "--i0");
  if (i0.size() != 2) throw std::invalid_argument("--i0 expects lo,hi");
  c.i0 = {i0[0], i0[1]};
  c.grid_n = o.grid_n;
  c.max_passes = o.max_passes;
  c.tol = o.tol;
  if (o.init == "ridge") {
    c.init = blc::InitKind::Ridge;
  } else if (o.init == "ones") {
    c.init = blc::InitKind::Ones;
  } else if (o.init == "random") {
    c.init = blc::InitKind::SeededRandom;
  } else {
    throw std::invalid_argument("--init must be ridge, ones or random");
  }
  c.ridge_lambda = o.ridge_lambda;
  c.time_budget_s = o.time_budget;
  c.threads = o.threads;
  c.validate();
  return c;
}

void add_gen_flags(CLI::App* app, GenOpts& o) {
  app->add_option("--problem", o.problem, "maxflow | knapsack | mcvc")->capture_default_str();
  app->add_option("--network", o.network, "network preset (polska, usanet, geant) or JSON file")
      ->capture_default_str();
  app->add_option("--graph", o.graph, "graph preset (abilene, pdh) or JSON file")->capture_default_str();
  app->add_option("--items", o.items, "knapsack item count")->capture_default_str();
  app->add_option("--capacity", o.capacity, "knapsack capacity")->capture_default_str();
  app->add_option("--value-mode", o.value_mode, "uncorrelated | weak | almost-strong")
      ->capture_default_str();
  app->add_option("--R", o.R, "knapsack value range")->capture_default_str();
  app->add_option("--n", o.n, "instances")->capture_default_str();
  app->add_option("--m", o.m, "features per parameter")->capture_default_str();
  app->add_option("--noise", o.noise, "noise standard deviation")->capture_default_str();
  app->add_option("--feature-dist", o.feature_dist, "uniform | normal")->capture_default_str();
  app->add_option("--alpha-lo", o.alpha_lo, "lower bound of generating coefficients");
  app->add_option("--alpha-hi", o.alpha_hi, "upper bound of generating coefficients");
  app->add_option("--floor", o.floor, "positivity floor")->capture_default_str();
}

void add_loss_flags(CLI::App* app, LossOpts& o) {
  app->add_option("--correction", o.correction, "A | B | C")->capture_default_str();
  app->add_option("--penalty", o.penalty, "none | I | II")->capture_default_str();
  app->add_option("--K", o.K, "penalty constant")->capture_default_str();
  app->add_option("--sigma", o.sigma, "proportional penalty fraction(s), comma separated")
      ->capture_default_str();
}

void add_train_flags(CLI::App* app, TrainOpts& o) {
  app->add_option("--i0", o.i0, "initial coefficient domain lo,hi")->capture_default_str();
  app->add_option("--grid-n", o.grid_n, "grid resolution")->capture_default_str();
  app->add_option("--max-passes", o.max_passes, "coordinate passes")->capture_default_str();
  app->add_option("--tol", o.tol, "relative improvement threshold")->capture_default_str();
  app->add_option("--init", o.init, "ridge | ones | random")->capture_default_str();
  app->add_option("--ridge-lambda", o.ridge_lambda, "ridge regularization")->capture_default_str();
  app->add_option("--time-budget", o.time_budget, "training wall-clock budget in seconds (0 = none)")
      ->capture_default_str();
  app->add_option("--threads", o.threads, "worker threads (0 = all cores)")->capture_default_str();
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    blc::write_json_file(j, out);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Branch & Learn with post-hoc correction"};
  app.require_subcommand(1);

  GenOpts gen;
  LossOpts loss;
  TrainOpts tr;
  std::string out, data_path, model_path, dump_loss, seeds = "1", method = "blc", methods = "blc,bl,ridge",
                                                      in_dir, csv_out;
  double train_frac = 0.7;

  auto* generate = app.add_subcommand("generate", "synthesize a dataset");
  add_gen_flags(generate, gen);
  generate->add_option("--seeds", seeds, "generator seed (first entry used)")->capture_default_str();
  generate->add_option("--out", out, "output dataset path")->required();

  auto* train_cmd = app.add_subcommand("train", "train one method on a dataset");
  train_cmd->add_option("--data", data_path, "dataset JSON")->required();
  train_cmd->add_option("--method", method, "blc | bl | ridge")->capture_default_str();
  add_loss_flags(train_cmd, loss);
  add_train_flags(train_cmd, tr);
  train_cmd->add_option("--seeds", seeds, "seed for random init (first entry used)")->capture_default_str();
  train_cmd->add_option("--out", out, "model JSON path (stdout if omitted)");
  train_cmd->add_option("--dump-loss", dump_loss, "write the last coordinate's summed loss as JSON");

  auto* eval_cmd = app.add_subcommand("eval", "post-hoc regret of a model on a dataset");
  eval_cmd->add_option("--data", data_path, "dataset JSON")->required();
  eval_cmd->add_option("--model", model_path, "model JSON")->required();
  add_loss_flags(eval_cmd, loss);
  eval_cmd->add_option("--threads", tr.threads, "worker threads (0 = all cores)");
  eval_cmd->add_option("--out", out, "result JSON path (stdout if omitted)");

  auto* bench = app.add_subcommand("bench", "train and evaluate all methods over seeds");
  add_gen_flags(bench, gen);
  add_loss_flags(bench, loss);
  add_train_flags(bench, tr);
  bench->add_option("--data", data_path, "use this dataset instead of generating one per seed");
  bench->add_option("--seeds", seeds, "comma separated seeds")->capture_default_str();
  bench->add_option("--methods", methods, "comma separated methods")->capture_default_str();
  bench->add_option("--train-frac", train_frac, "training fraction")->capture_default_str();
  bench->add_option("--out", out, "output directory")->required();

  auto* report = app.add_subcommand("report", "re-render tables from a bench directory");
  report->add_option("--in", in_dir, "bench output directory")->required();
  report->add_option("--out", out, "text table path (stdout if omitted)");
  report->add_option("--csv", csv_out, "CSV table path");

  std::string topo_name;
  auto* topology = app.add_subcommand("topology", "export a bundled network or graph");
  topology->add_option("--name", topo_name, "polska | usanet | geant | abilene | pdh")->required();
  topology->add_option("--out", out, "output JSON path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "usage"}}.dump() << '\n';
    return 2;
  }

  if (*generate) {
    blc::save(blc::generate_synthetic(make_gen(gen, parse_seeds(seeds).front())), out);
  } else if (*train_cmd) {
    const blc::Dataset data = blc::load(data_path);
    const auto problem = blc::make_problem(data.problem, make_loss(loss));
    blc::TrainConfig cfg = make_train(tr);
    cfg.init_seed = parse_seeds(seeds).front();
    const blc::Method m = blc::method_from_string(method);
    json model_j;
    if (m == blc::Method::Ridge) {
      const blc::LinearModel model = blc::train_ridge(data, cfg.ridge_lambda);
      const double loss_value = blc::mean_loss(*problem, data.instances, model, blc::LossMode::PostHoc,
                                               cfg.threads);
      model_j = blc::model_to_json(model, cfg, std::vector<double>{loss_value});
      model_j["method"] = "ridge";
    } else {
      cfg.loss_mode = m == blc::Method::BLC ? blc::LossMode::PostHoc : blc::LossMode::PlainRegret;
      const blc::TrainResult res = blc::train(*problem, data.instances, cfg);
      model_j = blc::model_to_json(res.model, cfg, res.loss_history);
      model_j["method"] = blc::to_string(m);
      model_j["passes"] = res.passes;
      model_j["converged"] = res.converged;
      if (!dump_loss.empty() && !res.last_loss.empty()) {
        blc::write_json_file(blc::to_json(res.last_loss), dump_loss);
      }
    }
    model_j["problem"] = blc::problem_name(data.problem);
    emit(model_j, out);
  } else if (*eval_cmd) {
    const blc::Dataset data = blc::load(data_path);
    const auto problem = blc::make_problem(data.problem, make_loss(loss));
    const blc::LinearModel model = blc::model_from_json(blc::read_json_file(model_path));
    const blc::EvalResult ev = blc::evaluate_model(*problem, model, data.instances, tr.threads);
    emit({{"mean_preg", ev.mean}, {"std_preg", ev.std}, {"tov_mean", ev.tov_mean},
          {"per_instance", ev.per_instance}},
         out);
  } else if (*bench) {
    blc::BenchConfig cfg;
    cfg.seeds = parse_seeds(seeds);
    if (!data_path.empty()) {
      cfg.dataset_path = data_path;
    } else {
      cfg.gen = make_gen(gen, cfg.seeds.front());
    }
    cfg.loss = make_loss(loss);
    cfg.train = make_train(tr);
    cfg.ridge_lambda = tr.ridge_lambda;
    cfg.train_frac = train_frac;
    cfg.methods.clear();
    std::stringstream ms(methods);
    for (std::string tok; std::getline(ms, tok, ',');) cfg.methods.push_back(blc::method_from_string(tok));
    const blc::BenchReport rep = blc::run_benchmark(cfg);
    blc::write_report(rep, out);
    const json timing = blc::timing_to_json(rep);
    std::cout << blc::render_text(blc::report_to_json(rep), &timing);
  } else if (*report) {
    namespace fs = std::filesystem;
    const fs::path dir(in_dir);
    const json rj = blc::read_json_file((dir / "report.json").string());
    std::optional<json> tj;
    if (fs::exists(dir / "timing.json")) tj = blc::read_json_file((dir / "timing.json").string());
    const std::string text = blc::render_text(rj, tj ? &*tj : nullptr);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream(out) << text;
    }
    if (!csv_out.empty()) std::ofstream(csv_out) << blc::render_csv(rj, tj ? &*tj : nullptr);
  } else if (*topology) {
    if (topo_name == "abilene" || topo_name == "pdh") {
      emit(blc::to_json(blc::preset_graph(topo_name)), out);
    } else {
      emit(blc::to_json(blc::preset_network(topo_name)), out);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << '\n';
    return 1;
  }
}
