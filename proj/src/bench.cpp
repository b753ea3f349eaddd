#include "blc/bench.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "blc/parallel.hpp"

namespace blc {

using nlohmann::json;

std::string to_string(Method m) {
  switch (m) {
    case Method::BLC: return "B&L-C";
    case Method::BL: return "B&L";
    case Method::Ridge: return "Ridge";
  }
  throw std::logic_error("unknown method");
}

Method method_from_string(const std::string& s) {
  if (s == "B&L-C" || s == "blc") return Method::BLC;
  if (s == "B&L" || s == "bl") return Method::BL;
  if (s == "Ridge" || s == "ridge") return Method::Ridge;
  throw std::invalid_argument("unknown method '" + s + "' (blc, bl, ridge)");
}

LinearModel train_ridge(const Dataset& train, double lambda) {
  return fit_ridge(train.instances, lambda);
}

namespace {

std::pair<double, double> mean_and_std(std::span<const double> xs) {
  if (xs.empty()) return {0.0, 0.0};
  double s = 0.0;
  for (double x : xs) s += x;
  const double mean = s / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size()))};
}

}  // namespace

EvalResult evaluate_model(const Problem& problem, const LinearModel& model,
                          std::span<const Instance> test, std::size_t threads) {
  if (test.empty()) throw std::invalid_argument("no test instances");
  EvalResult out;
  out.per_instance.resize(test.size());
  std::vector<double> tov(test.size());
  parallel_for(test.size(), threads, [&](std::size_t i) {
    try {
      const PostHocOutcome o = problem.evaluate_numeric(test[i], predict(test[i].features, model));
      out.per_instance[i] = o.preg;
      tov[i] = o.tov;
    } catch (const std::exception& e) {
      throw InstanceError(i, e.what());
    }
  });
  std::tie(out.mean, out.std) = mean_and_std(out.per_instance);
  out.tov_mean = mean_and_std(tov).first;
  return out;
}

void BenchConfig::validate() const {
  if (seeds.empty()) throw std::invalid_argument("bench needs at least one seed");
  if (methods.empty()) throw std::invalid_argument("bench needs at least one method");
  if (loss.K < 0.0) throw std::invalid_argument("penalty K must be nonnegative");
  for (double s : loss.sigma) {
    if (s < 0.0) throw std::invalid_argument("sigma must be nonnegative");
  }
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw std::invalid_argument("train fraction must lie strictly between 0 and 1");
  }
  train.validate();
  if (!dataset_path) gen.validate();
}

json BenchConfig::to_json() const {
  json methods_j = json::array();
  for (Method m : methods) methods_j.push_back(to_string(m));
  json j{{"loss", loss.to_json()},
         {"seeds", seeds},
         {"train", train.to_json()},
         {"ridge_lambda", ridge_lambda},
         {"train_frac", train_frac},
         {"methods", std::move(methods_j)},
         {"std", "population"}};
  if (dataset_path) {
    j["dataset"] = *dataset_path;
  } else {
    j["generator"] = {{"problem", blc::to_json(gen.problem)},
                      {"m", gen.m},
                      {"n", gen.n},
                      {"noise_std", gen.noise_std},
                      {"feature_dist", gen.feature_dist == FeatureDist::UniformPositive
                                           ? "uniform-positive"
                                           : "standard-normal"},
                      {"alpha_lo", gen.alpha_lo},
                      {"alpha_hi", gen.alpha_hi},
                      {"floor", gen.floor}};
  }
  return j;
}

BenchReport run_benchmark(const BenchConfig& cfg) {
  cfg.validate();
  std::optional<Dataset> fixed;
  if (cfg.dataset_path) fixed = load(*cfg.dataset_path);
  const ProblemSpec& spec = fixed ? fixed->problem : cfg.gen.problem;
  const auto problem = make_problem(spec, cfg.loss);

  const std::size_t n_methods = cfg.methods.size();
  std::vector<SeedOutcome> runs(cfg.seeds.size() * n_methods);
  std::vector<double> tov_by_seed(cfg.seeds.size(), 0.0);

  parallel_for(cfg.seeds.size(), cfg.seed_threads, [&](std::size_t s) {
    const std::uint64_t seed = cfg.seeds[s];
    Dataset data;
    if (fixed) {
      data = *fixed;
    } else {
      GenSpec gen = cfg.gen;
      gen.seed = seed;
      data = generate_synthetic(gen);
    }
    const auto [train_set, test_set] = split(data, cfg.train_frac, seed);

    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      SeedOutcome& run = runs[s * n_methods + mi];
      run.seed = seed;
      run.method = cfg.methods[mi];
      try {
        const auto t0 = std::chrono::steady_clock::now();
        LinearModel model;
        if (run.method == Method::Ridge) {
          model = train_ridge(train_set, cfg.ridge_lambda);
        } else {
          TrainConfig tc = cfg.train;
          tc.loss_mode = run.method == Method::BLC ? LossMode::PostHoc : LossMode::PlainRegret;
          model = train(*problem, train_set.instances, tc).model;
        }
        const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - t0;
        run.train_seconds = spent.count();
        const EvalResult ev = evaluate_model(*problem, model, test_set.instances, cfg.train.threads);
        run.mean = ev.mean;
        run.std = ev.std;
        run.tov_mean = ev.tov_mean;
        run.alpha = model.alpha;
        run.ok = true;
        tov_by_seed[s] = ev.tov_mean;
      } catch (const std::exception& e) {
        run.error = e.what();
      }
    }
  });

  BenchReport report;
  report.config = cfg.to_json();
  report.config["problem"] = problem_name(spec);
  for (std::size_t mi = 0; mi < n_methods; ++mi) {
    ReportRow row;
    row.method = to_string(cfg.methods[mi]);
    std::vector<double> means, times;
    for (std::size_t s = 0; s < cfg.seeds.size(); ++s) {
      const SeedOutcome& run = runs[s * n_methods + mi];
      if (run.ok) {
        means.push_back(run.mean);
        times.push_back(run.train_seconds);
      }
    }
    std::tie(row.mean, row.std) = mean_and_std(means);
    row.runtime = mean_and_std(times).first;
    row.ok_seeds = means.size();
    row.failed_seeds = cfg.seeds.size() - means.size();
    report.rows.push_back(row);
  }
  report.tov_mean = mean_and_std(tov_by_seed).first;
  report.runs = std::move(runs);
  return report;
}

json report_to_json(const BenchReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"method", r.method},
                    {"mean_preg", r.mean},
                    {"std_preg", r.std},
                    {"ok_seeds", r.ok_seeds},
                    {"failed_seeds", r.failed_seeds}});
  }
  json runs = json::array();
  for (const auto& run : report.runs) {
    json j{{"seed", run.seed}, {"method", to_string(run.method)}, {"ok", run.ok}};
    if (run.ok) {
      j["mean_preg"] = run.mean;
      j["std_preg"] = run.std;
      j["tov_mean"] = run.tov_mean;
      j["alpha"] = run.alpha;
    } else {
      j["error"] = run.error;
    }
    runs.push_back(std::move(j));
  }
  return {{"config", report.config}, {"rows", std::move(rows)}, {"tov_mean", report.tov_mean},
          {"runs", std::move(runs)}};
}

json timing_to_json(const BenchReport& report) {
  json methods = json::object();
  for (const auto& r : report.rows) methods[r.method] = r.runtime;
  json runs = json::array();
  for (const auto& run : report.runs) {
    runs.push_back({{"seed", run.seed}, {"method", to_string(run.method)},
                    {"train_seconds", run.train_seconds}});
  }
  return {{"mean_train_seconds", std::move(methods)}, {"runs", std::move(runs)}};
}

namespace {

std::string fixed2(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << x;
  return os.str();
}

struct Line {
  std::string method, mean, std, runtime, seeds;
};

std::vector<Line> table_lines(const json& report, const json* timing) {
  std::vector<Line> lines;
  for (const auto& r : report.at("rows")) {
    const std::string method = r.at("method").get<std::string>();
    std::string runtime = "-";
    if (timing && timing->contains("mean_train_seconds") &&
        (*timing)["mean_train_seconds"].contains(method)) {
      runtime = fixed2((*timing)["mean_train_seconds"][method].get<double>());
    }
    const auto ok = r.at("ok_seeds").get<std::size_t>();
    const auto failed = r.at("failed_seeds").get<std::size_t>();
    lines.push_back({method, ok ? fixed2(r.at("mean_preg").get<double>()) : "-",
                     ok ? fixed2(r.at("std_preg").get<double>()) : "-", runtime,
                     std::to_string(ok) + "/" + std::to_string(ok + failed)});
  }
  return lines;
}

}  // namespace

std::string render_text(const json& report, const json* timing) {
  std::vector<Line> lines = table_lines(report, timing);
  const Line header{"Method", "Mean PReg", "Std", "Train s", "Seeds"};
  std::size_t w[5] = {header.method.size(), header.mean.size(), header.std.size(),
                      header.runtime.size(), header.seeds.size()};
  for (const auto& l : lines) {
    w[0] = std::max(w[0], l.method.size());
    w[1] = std::max(w[1], l.mean.size());
    w[2] = std::max(w[2], l.std.size());
    w[3] = std::max(w[3], l.runtime.size());
    w[4] = std::max(w[4], l.seeds.size());
  }
  std::ostringstream os;
  const auto emit = [&](const Line& l) {
    os << std::left << std::setw(static_cast<int>(w[0])) << l.method << "  " << std::right
       << std::setw(static_cast<int>(w[1])) << l.mean << "  " << std::setw(static_cast<int>(w[2]))
       << l.std << "  " << std::setw(static_cast<int>(w[3])) << l.runtime << "  "
       << std::setw(static_cast<int>(w[4])) << l.seeds << '\n';
  };
  os << "problem: " << report.at("config").value("problem", std::string("?")) << '\n';
  emit(header);
  for (const auto& l : lines) emit(l);
  os << "TOV mean: " << fixed2(report.at("tov_mean").get<double>()) << '\n';
  for (const auto& run : report.at("runs")) {
    if (!run.at("ok").get<bool>()) {
      os << "failed: " << run.at("method").get<std::string>() << " seed "
         << run.at("seed").get<std::uint64_t>() << ": " << run.at("error").get<std::string>()
         << '\n';
    }
  }
  return os.str();
}

std::string render_csv(const json& report, const json* timing) {
  std::ostringstream os;
  os << std::setprecision(17) << "method,mean_preg,std_preg,mean_train_seconds,ok_seeds,failed_seeds\n";
  for (const auto& r : report.at("rows")) {
    const std::string method = r.at("method").get<std::string>();
    os << method << ',' << r.at("mean_preg").get<double>() << ',' << r.at("std_preg").get<double>()
       << ',';
    if (timing && timing->contains("mean_train_seconds") &&
        (*timing)["mean_train_seconds"].contains(method)) {
      os << (*timing)["mean_train_seconds"][method].get<double>();
    }
    os << ',' << r.at("ok_seeds").get<std::size_t>() << ',' << r.at("failed_seeds").get<std::size_t>()
       << '\n';
  }
  return os.str();
}

void write_report(const BenchReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const json rj = report_to_json(report);
  const json tj = timing_to_json(report);
  write_json_file(rj, (fs::path(dir) / "report.json").string());
  write_json_file(tj, (fs::path(dir) / "timing.json").string());
  std::ofstream((fs::path(dir) / "report.csv").string()) << render_csv(rj, &tj);
  std::ofstream((fs::path(dir) / "report.txt").string()) << render_text(rj, &tj);
}

}  // namespace blc
