#include "blc/predictor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "blc/parallel.hpp"

namespace blc {

using nlohmann::json;

std::vector<double> predict(const Matrix& features, const LinearModel& model) {
  if (features.cols() != model.alpha.size()) {
    throw std::invalid_argument("model has " + std::to_string(model.alpha.size()) +
                                " coefficients but features have " +
                                std::to_string(features.cols()) + " columns");
  }
  std::vector<double> out(features.rows(), 0.0);
  for (std::size_t j = 0; j < features.rows(); ++j) {
    double s = 0.0;
    for (std::size_t l = 0; l < model.alpha.size(); ++l) s += features(j, l) * model.alpha[l];
    out[j] = s;
  }
  return out;
}

std::string to_string(InitKind kind) {
  switch (kind) {
    case InitKind::Ridge: return "ridge";
    case InitKind::Ones: return "ones";
    case InitKind::SeededRandom: return "random";
  }
  throw std::logic_error("unknown init kind");
}

std::string to_string(LossMode mode) {
  return mode == LossMode::PostHoc ? "posthoc" : "plain-regret";
}

void TrainConfig::validate() const {
  if (!i0.bounded() || !(i0.lo < i0.hi)) throw std::invalid_argument("i0 must be a bounded interval");
  if (grid_n < 2) throw std::invalid_argument("grid_n must be at least 2");
  if (max_passes < 1) throw std::invalid_argument("max_passes must be at least 1");
  if (!(tol >= 0.0)) throw std::invalid_argument("tol must be nonnegative");
  if (!(ridge_lambda >= 0.0)) throw std::invalid_argument("ridge lambda must be nonnegative");
  if (!(time_budget_s >= 0.0)) throw std::invalid_argument("time budget must be nonnegative");
}

json TrainConfig::to_json() const {
  return {{"i0", {i0.lo, i0.hi}},
          {"max_passes", max_passes},
          {"tol", tol},
          {"grid_n", grid_n},
          {"init", to_string(init)},
          {"init_seed", init_seed},
          {"ridge_lambda", ridge_lambda},
          {"loss_mode", to_string(loss_mode)},
          {"refine_levels", refine_levels},
          {"time_budget_s", time_budget_s}};
}

TrainConfig TrainConfig::from_json(const json& j) {
  TrainConfig c;
  if (j.contains("i0")) c.i0 = {j["i0"].at(0).get<double>(), j["i0"].at(1).get<double>()};
  c.max_passes = j.value("max_passes", c.max_passes);
  c.tol = j.value("tol", c.tol);
  c.grid_n = j.value("grid_n", c.grid_n);
  const std::string init = j.value("init", std::string("ridge"));
  if (init == "ridge") {
    c.init = InitKind::Ridge;
  } else if (init == "ones") {
    c.init = InitKind::Ones;
  } else if (init == "random") {
    c.init = InitKind::SeededRandom;
  } else {
    throw std::invalid_argument("unknown init '" + init + "'");
  }
  c.init_seed = j.value("init_seed", c.init_seed);
  c.ridge_lambda = j.value("ridge_lambda", c.ridge_lambda);
  c.loss_mode = j.value("loss_mode", std::string("posthoc")) == "posthoc" ? LossMode::PostHoc
                                                                           : LossMode::PlainRegret;
  c.refine_levels = j.value("refine_levels", c.refine_levels);
  c.time_budget_s = j.value("time_budget_s", c.time_budget_s);
  return c;
}

double pick_representative(const PiecewiseFn& L, double current, std::size_t grid_n) {
  if (!L.domain().bounded()) throw DomainError("loss must live on a bounded domain");
  const Minimum best = argmin(L, grid_n);
  if (L.domain().contains(current) && L(current) <= best.value + 1e-12) return current;
  return best.at;
}

LinearModel fit_ridge(std::span<const Instance> data, double lambda) {
  if (data.empty()) throw std::invalid_argument("ridge fit needs data");
  if (!(lambda >= 0.0)) throw std::invalid_argument("ridge lambda must be nonnegative");
  const std::size_t m = data.front().features.cols();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                               static_cast<Eigen::Index>(m));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (const auto& inst : data) {
    if (inst.features.cols() != m) throw std::invalid_argument("inconsistent feature counts");
    for (std::size_t r = 0; r < inst.features.rows(); ++r) {
      const auto x = inst.features.row(r);
      for (std::size_t a = 0; a < m; ++a) {
        rhs(a) += x[a] * inst.theta[r];
        for (std::size_t b = 0; b < m; ++b) gram(a, b) += x[a] * x[b];
      }
    }
  }
  gram.diagonal().array() += lambda;

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  const auto d = ldlt.vectorD().cwiseAbs();
  const double scale = std::max(1.0, gram.diagonal().cwiseAbs().maxCoeff());
  if (ldlt.info() != Eigen::Success || d.minCoeff() <= 1e-12 * scale) {
    throw std::invalid_argument("normal matrix is singular; use a positive ridge lambda");
  }
  const Eigen::VectorXd sol = ldlt.solve(rhs);
  LinearModel model{std::vector<double>(sol.data(), sol.data() + sol.size())};
  for (double a : model.alpha) {
    if (!std::isfinite(a)) throw std::invalid_argument("ridge fit produced non-finite coefficients");
  }
  return model;
}

namespace {

LinearModel initial_model(std::span<const Instance> data, const TrainConfig& cfg) {
  const std::size_t m = data.front().features.cols();
  if (!cfg.start.empty()) {
    if (cfg.start.size() != m) throw std::invalid_argument("start has the wrong number of coefficients");
    return {cfg.start};
  }
  switch (cfg.init) {
    case InitKind::Ridge: return fit_ridge(data, cfg.ridge_lambda);
    case InitKind::Ones: return {std::vector<double>(m, 1.0)};
    case InitKind::SeededRandom: {
      std::mt19937_64 rng(cfg.init_seed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      LinearModel model{std::vector<double>(m)};
      for (double& a : model.alpha) a = u(rng);
      return model;
    }
  }
  throw std::logic_error("unknown init kind");
}

double outcome_loss(const PostHocOutcome& o, LossMode mode) {
  return mode == LossMode::PostHoc ? o.preg : o.plain_regret;
}

template <class Fn>
void for_each_instance(std::size_t n, std::size_t threads, Fn&& fn) {
  parallel_for(n, threads, [&](std::size_t i) {
    try {
      fn(i);
    } catch (const InstanceError&) {
      throw;
    } catch (const std::exception& e) {
      throw InstanceError(i, e.what());
    }
  });
}

}  // namespace

double mean_loss(const Problem& problem, std::span<const Instance> data, const LinearModel& model,
                 LossMode mode, std::size_t threads) {
  if (data.empty()) throw std::invalid_argument("no instances");
  std::vector<double> loss(data.size());
  for_each_instance(data.size(), threads, [&](std::size_t i) {
    const auto theta_hat = predict(data[i].features, model);
    loss[i] = outcome_loss(problem.evaluate_numeric(data[i], theta_hat), mode);
  });
  double s = 0.0;
  for (double v : loss) s += v;
  return s / static_cast<double>(data.size());
}

TrainResult train(const Problem& problem, std::span<const Instance> data, const TrainConfig& cfg) {
  cfg.validate();
  if (data.empty()) throw std::invalid_argument("training set is empty");
  const std::size_t n = data.size();
  const std::size_t m = data.front().features.cols();
  for (std::size_t i = 0; i < n; ++i) {
    try {
      problem.validate(data[i]);
    } catch (const std::exception& e) {
      throw InstanceError(i, e.what());
    }
    if (data[i].features.cols() != m) throw InstanceError(i, "inconsistent feature count");
  }
  const auto started = std::chrono::steady_clock::now();
  const auto out_of_time = [&] {
    if (cfg.time_budget_s <= 0.0) return false;
    const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - started;
    return spent.count() >= cfg.time_budget_s;
  };

  TrainResult res;
  res.model = initial_model(data, cfg);
  std::vector<double>& alpha = res.model.alpha;
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> tov(n);
  for_each_instance(n, cfg.threads,
                    [&](std::size_t i) { tov[i] = problem.true_optimal_value(data[i]); });
  {
    std::vector<double> loss(n);
    for_each_instance(n, cfg.threads, [&](std::size_t i) {
      loss[i] = outcome_loss(problem.evaluate_numeric(data[i], predict(data[i].features, res.model),
                                                      tov[i]),
                             cfg.loss_mode);
    });
    double s = 0.0;
    for (double v : loss) s += v;
    res.loss_history.push_back(s * inv_n);
  }

  std::vector<PiecewiseFn> losses(n);
  for (std::size_t pass = 0; pass < cfg.max_passes && !res.out_of_time; ++pass) {
    const double pass_start = res.loss_history.back();
    for (std::size_t k = 0; k < m; ++k) {
      if (out_of_time()) {
        res.out_of_time = true;
        break;
      }
      for_each_instance(n, cfg.threads, [&](std::size_t i) {
        const ParamVector p = construct_coordinate(data[i].features, alpha, k);
        losses[i] = cfg.loss_mode == LossMode::PostHoc
                        ? posthoc_loss(problem, data[i], p, cfg.i0, tov[i])
                        : plain_regret_loss(problem, data[i], p, cfg.i0, tov[i]);
      });
      PiecewiseFn L = assemble_loss(losses, cfg.grid_n);
      const bool gridded =
          std::any_of(losses.begin(), losses.end(), [](const auto& f) { return f.has_rational(); });

      const double current = alpha[k];
      double gamma = pick_representative(L, current, cfg.grid_n);
      if (gridded) {
        // Zoom in around the coarse optimum, then accept only on exact improvement.
        double half = cfg.i0.width() / static_cast<double>(cfg.grid_n);
        for (std::size_t level = 0; level < cfg.refine_levels && gamma != current; ++level) {
          const Interval window{std::max(cfg.i0.lo, gamma - half), std::min(cfg.i0.hi, gamma + half)};
          if (!(window.lo < window.hi)) break;
          gamma = argmin(materialize_sum(losses, window, cfg.grid_n), cfg.grid_n).at;
          half = window.width() / static_cast<double>(cfg.grid_n);
        }
      }
      const bool current_in = cfg.i0.contains(current);
      const double before = current_in ? sum_at(losses, current) : kInf;
      double after = sum_at(losses, gamma);
      if (current_in && !(after < before)) {
        gamma = current;
        after = before;
      }
      alpha[k] = gamma;

      TrainStep step;
      step.pass = pass;
      step.coordinate = k;
      step.gamma_before = current;
      step.gamma_after = gamma;
      step.loss_before = current_in ? before * inv_n : res.loss_history.back();
      step.loss_after = after * inv_n;
      step.gridded = gridded;
      step.alpha = alpha;
      res.steps.push_back(std::move(step));
      res.loss_history.push_back(after * inv_n);
      res.last_loss = std::move(L);
    }
    res.passes = pass + 1;
    const double pass_end = res.loss_history.back();
    if (pass_end <= 0.0 || pass_start - pass_end < cfg.tol * std::max(std::abs(pass_start), 1e-12)) {
      res.converged = !res.out_of_time;
      break;
    }
  }
  return res;
}

json model_to_json(const LinearModel& model, const TrainConfig& cfg,
                   std::span<const double> loss_history) {
  return {{"alpha", model.alpha},
          {"config", cfg.to_json()},
          {"loss_history", std::vector<double>(loss_history.begin(), loss_history.end())}};
}

LinearModel model_from_json(const json& j) {
  LinearModel model{j.at("alpha").get<std::vector<double>>()};
  if (model.alpha.empty()) throw std::invalid_argument("model has no coefficients");
  for (double a : model.alpha) {
    if (!std::isfinite(a)) throw std::invalid_argument("model has non-finite coefficients");
  }
  return model;
}

}  // namespace blc
