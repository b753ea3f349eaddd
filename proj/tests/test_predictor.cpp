#include <gtest/gtest.h>

#include <random>

#include "blc/data.hpp"
#include "blc/knapsack.hpp"
#include "blc/mcvc.hpp"
#include "blc/predictor.hpp"
#include "reference.hpp"

using namespace blc;

namespace {

Dataset knapsack_data(std::uint64_t seed, std::size_t n, double noise, std::size_t m = 8) {
  GenSpec g;
  g.problem = KnapsackSpec{10, 100, ValueMode::Weak, 500};
  g.n = n;
  g.m = m;
  g.noise_std = noise;
  g.seed = seed;
  g.alpha_lo = 5.0 * 8.0 / static_cast<double>(m);
  g.alpha_hi = 7.5 * 8.0 / static_cast<double>(m);
  return generate_synthetic(g);
}

KnapsackProblem knapsack_problem() {
  return KnapsackProblem(10, 100, KnapsackCorrection::RatioAsc,
                         {KnapsackPenalty::Kind::Proportional, {0.1}, 0});
}

}  // namespace

TEST(Predict, Examples) {
  Matrix eye(2, 2);
  eye(0, 0) = eye(1, 1) = 1;
  EXPECT_EQ(predict(eye, {{1, 2}}), (std::vector<double>{1, 2}));
  EXPECT_EQ(predict(eye, {{0, 0}}), (std::vector<double>{0, 0}));
  EXPECT_THROW(predict(eye, {{1}}), std::invalid_argument);
}

TEST(Predict, MatchesNaiveProduct) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  Matrix A(7, 4);
  std::vector<std::vector<double>> rows(7, std::vector<double>(4));
  for (std::size_t r = 0; r < 7; ++r) {
    for (std::size_t c = 0; c < 4; ++c) A(r, c) = rows[r][c] = u(rng);
  }
  LinearModel model{{u(rng), u(rng), u(rng), u(rng)}};
  const auto out = predict(A, model);
  for (std::size_t r = 0; r < 7; ++r) {
    long double s = 0;
    for (std::size_t c = 0; c < 4; ++c) s += static_cast<long double>(rows[r][c]) * model.alpha[c];
    EXPECT_NEAR(out[r], static_cast<double>(s), 1e-12);
  }
}

TEST(PickRepresentative, KeepsCurrentOnFlatLoss) {
  EXPECT_EQ(pick_representative(PiecewiseFn::constant({-1, 1}, 5), 0.3, 100), 0.3);
}

TEST(PickRepresentative, MidpointRule) {
  const PiecewiseFn L({0, 4}, {{{0, 2}, Constant{1}}, {{2, 4}, Constant{0}}});
  EXPECT_DOUBLE_EQ(pick_representative(L, 1.0, 100), 3.0);
}

TEST(PickRepresentative, RationalWithinOneCell) {
  // Decreasing then increasing, with the minimum at the shared breakpoint x = 1.
  const PiecewiseFn L({0, 4}, {{{0, 1}, RationalLinear{-1, 3, 1, 1}}, {{1, 4}, RationalLinear{2, -1, 0.5, 0.5}}});
  double best = kInf, at = 0;
  for (int i = 0; i <= 1000000; ++i) {
    const double x = 4.0 * i / 1e6;
    if (L(x) < best) {
      best = L(x);
      at = x;
    }
  }
  const double g = pick_representative(L, 3.9, 1000);
  EXPECT_NEAR(g, at, 3.0 / 1000 + 1e-9);
}

TEST(Ridge, RecoversExactCoefficients) {
  const Dataset d = knapsack_data(2, 30, 0.0);
  GenSpec g;
  g.problem = d.problem;
  g.seed = 2;
  g.alpha_lo = 5;
  g.alpha_hi = 7.5;
  const auto alpha = generating_alpha(g);
  const auto fit = fit_ridge(d.instances, 0.0);
  for (std::size_t l = 0; l < alpha.size(); ++l) EXPECT_NEAR(fit.alpha[l], alpha[l], 1e-8);
}

TEST(Ridge, HugePenaltyShrinksToZero) {
  const Dataset d = knapsack_data(3, 10, 1.0);
  for (double a : fit_ridge(d.instances, 1e14).alpha) EXPECT_NEAR(a, 0.0, 1e-6);
}

TEST(Ridge, MatchesNormalEquationsOracle) {
  const Dataset d = knapsack_data(4, 15, 2.0);
  const double lambda = 1e-3;
  const std::size_t m = 8;
  std::vector<std::vector<double>> M(m, std::vector<double>(m, 0.0));
  std::vector<double> y(m, 0.0);
  for (const auto& inst : d.instances) {
    for (std::size_t r = 0; r < inst.features.rows(); ++r) {
      for (std::size_t a = 0; a < m; ++a) {
        y[a] += inst.features(r, a) * inst.theta[r];
        for (std::size_t b = 0; b < m; ++b) M[a][b] += inst.features(r, a) * inst.features(r, b);
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a) M[a][a] += lambda;
  const auto expected = ref::solve(M, y);
  const auto fit = fit_ridge(d.instances, lambda);
  for (std::size_t l = 0; l < m; ++l) EXPECT_NEAR(fit.alpha[l], expected[l], 1e-8);
}

TEST(Ridge, SingularWithoutRegularization) {
  Dataset d = knapsack_data(5, 5, 0.0);
  for (auto& inst : d.instances) inst.features = Matrix(10, 8);
  EXPECT_THROW(fit_ridge(d.instances, 0.0), std::invalid_argument);
  EXPECT_NO_THROW(fit_ridge(d.instances, 1.0));
}

TEST(Train, FixedPointAtGeneratingCoefficients) {
  GenSpec g;
  g.problem = KnapsackSpec{10, 100, ValueMode::Weak, 500};
  g.n = 40;
  g.seed = 6;
  g.alpha_lo = 5;
  g.alpha_hi = 7.5;
  const Dataset d = generate_synthetic(g);
  TrainConfig cfg;
  cfg.start = generating_alpha(g);
  cfg.max_passes = 2;
  const auto res = train(knapsack_problem(), d.instances, cfg);
  for (double l : res.loss_history) EXPECT_EQ(l, 0.0);
}

TEST(Train, SingleCoefficientToyReachesMinimizingInterval) {
  // One instance, m = 1: the numeric loss over gamma is enumerated directly.
  const KnapsackProblem problem(3, 5, KnapsackCorrection::WeightDesc, {});
  Instance inst{Matrix(3, 1), {2, 3, 4}, {5, 4, 6}};
  inst.features(0, 0) = 1.0;
  inst.features(1, 0) = 2.0;
  inst.features(2, 0) = 0.5;
  TrainConfig cfg;
  cfg.i0 = {-10, 10};
  cfg.init = InitKind::Ones;
  const std::vector<Instance> data{inst};
  const auto res = train(problem, data, cfg);
  double best = kInf;
  for (int i = 0; i <= 200000; ++i) {
    const double g = -10.0 + 20.0 * i / 200000.0;
    best = std::min(best, problem.evaluate_numeric(inst, std::vector<double>{g, 2 * g, 0.5 * g}).preg);
  }
  const double a = res.model.alpha[0];
  EXPECT_NEAR(problem.evaluate_numeric(inst, std::vector<double>{a, 2 * a, 0.5 * a}).preg, best, 1e-9);
}

TEST(Train, FlatLossKeepsCoefficients) {
  Dataset d = knapsack_data(7, 10, 1.0);
  for (auto& inst : d.instances) inst.features = Matrix(10, 8);
  TrainConfig cfg;
  cfg.init = InitKind::Ones;
  const auto res = train(knapsack_problem(), d.instances, cfg);
  EXPECT_EQ(res.model.alpha, std::vector<double>(8, 1.0));
}

TEST(Train, MonotoneAndConsistentWithNumericEvaluation) {
  const Dataset d = knapsack_data(8, 40, 8.0);
  const auto problem = knapsack_problem();
  TrainConfig cfg;
  cfg.max_passes = 3;
  const auto res = train(problem, d.instances, cfg);
  ASSERT_FALSE(res.steps.empty());
  double prev = res.loss_history.front();
  for (const auto& step : res.steps) {
    EXPECT_LE(step.loss_after, step.loss_before + 1e-9);
    const double numeric = mean_loss(problem, d.instances, {step.alpha}, LossMode::PostHoc);
    EXPECT_NEAR(numeric, step.loss_after, 1e-6);
    EXPECT_LE(numeric, prev + 1e-9);
    prev = numeric;
  }
  // Per-instance loss functions at the last update agree with the numeric pipeline.
  const auto& last = res.steps.back();
  for (const auto& inst : d.instances) {
    const double tov = problem.true_optimal_value(inst);
    const auto L = posthoc_loss(problem, inst, construct_coordinate(inst.features, res.model.alpha, last.coordinate),
                                cfg.i0, tov);
    const double numeric = problem.evaluate_numeric(inst, predict(inst.features, res.model), tov).preg;
    EXPECT_NEAR(L(res.model.alpha[last.coordinate]), numeric, 1e-6);
  }
}

TEST(Train, Deterministic) {
  const Dataset d = knapsack_data(9, 30, 5.0);
  TrainConfig cfg;
  cfg.max_passes = 2;
  const auto a = train(knapsack_problem(), d.instances, cfg);
  cfg.threads = 1;
  const auto b = train(knapsack_problem(), d.instances, cfg);
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.loss_history, b.loss_history);
}

TEST(Train, PlainRegretModeRuns) {
  const Dataset d = knapsack_data(10, 30, 5.0);
  TrainConfig cfg;
  cfg.max_passes = 2;
  cfg.loss_mode = LossMode::PlainRegret;
  const auto res = train(knapsack_problem(), d.instances, cfg);
  for (const auto& step : res.steps) EXPECT_LE(step.loss_after, step.loss_before + 1e-9);
  EXPECT_NEAR(mean_loss(knapsack_problem(), d.instances, res.model, LossMode::PlainRegret),
              res.loss_history.back(), 1e-6);
}

TEST(Train, AdapterErrorCarriesInstanceIndex) {
  Dataset d = knapsack_data(11, 5, 1.0);
  d.instances[3].values.pop_back();
  try {
    train(knapsack_problem(), d.instances, {});
    FAIL() << "expected an instance error";
  } catch (const InstanceError& e) {
    EXPECT_EQ(e.index(), 3u);
  }
}

TEST(Train, InvalidConfigRejected) {
  const Dataset d = knapsack_data(12, 5, 1.0);
  TrainConfig cfg;
  cfg.grid_n = 1;
  EXPECT_THROW(train(knapsack_problem(), d.instances, cfg), std::invalid_argument);
  cfg = {};
  cfg.i0 = {-kInf, 1};
  EXPECT_THROW(train(knapsack_problem(), d.instances, cfg), std::invalid_argument);
  EXPECT_THROW(train(knapsack_problem(), std::span<const Instance>{}, {}), std::invalid_argument);
}

TEST(Train, McvcMonotone) {
  GenSpec g;
  g.problem = McvcSpec{make_sample_graph(8, 12, 1)};
  g.n = 20;
  g.noise_std = 0.5;
  g.alpha_lo = 0.5;
  g.alpha_hi = 2.0;
  const Dataset d = generate_synthetic(g);
  const McvcProblem problem(std::get<McvcSpec>(g.problem).graph);
  TrainConfig cfg;
  cfg.max_passes = 2;
  const auto res = train(problem, d.instances, cfg);
  double prev = res.loss_history.front();
  for (const auto& step : res.steps) {
    const double numeric = mean_loss(problem, d.instances, {step.alpha}, LossMode::PostHoc);
    EXPECT_LE(numeric, prev + 1e-9);
    prev = numeric;
  }
}

TEST(ModelJson, RoundTrip) {
  const LinearModel m{{1.5, -2.25, 1e-17}};
  const auto j = model_to_json(m, {}, std::vector<double>{3, 2});
  EXPECT_EQ(model_from_json(j), m);
  EXPECT_EQ(j.at("loss_history").size(), 2u);
  EXPECT_EQ(TrainConfig::from_json(j.at("config")).grid_n, 1000u);
}
