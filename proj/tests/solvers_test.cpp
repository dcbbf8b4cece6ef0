#include "oracles.hpp"

#include <gtest/gtest.h>

namespace bbnet {
namespace {

const Method kAllMethods[] = {Method::SdExact, Method::Newton, Method::Cg};

SolverConfig config_for(Method m) {
  SolverConfig cfg;
  cfg.method = m;
  return cfg;
}

NetworkInstance single(Point2 backbone, Point2 host) {
  NetworkInstance inst;
  inst.backbones = {backbone};
  inst.hosts = {host};
  return inst;
}

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  cfg.method = Method::SdFixed;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.fixed_step = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.fixed_step = 0.1;
  EXPECT_NO_THROW(cfg.validate());
  cfg.method = Method::Newton;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.max_iters = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_THROW(optimize(single({0, 0}, {1, 1}), cfg), ConfigError);
  EXPECT_THROW(parse_method("bogus"), ConfigError);
  EXPECT_EQ(parse_method("cg"), Method::Cg);
}

TEST(Optimize, SingleBackboneReachesHost) {
  for (auto m : kAllMethods) {
    const auto res = optimize(single({10, 10}, {2, 0}), config_for(m));
    EXPECT_EQ(res.report.termination, Termination::Converged) << to_string(m);
    EXPECT_NEAR(res.instance.backbones[0].x, 2.0, 1e-9);
    EXPECT_NEAR(res.instance.backbones[0].y, 0.0, 1e-9);
    EXPECT_NEAR(res.report.final_cost.total, 0.0, 1e-15);
    EXPECT_EQ(res.report.iterations, 1);
  }
  const auto fixed = optimize(single({10, 10}, {2, 0}), sd_fixed_config(0.25));
  EXPECT_EQ(fixed.report.termination, Termination::Converged);
  EXPECT_NEAR(fixed.instance.backbones[0].x, 2.0, 1e-6);
}

TEST(Optimize, ZeroGradientStart) {
  NetworkInstance inst;
  inst.backbones = {{2, 2}};
  inst.hosts = {{0, 0}, {4, 2}, {2, 4}};
  for (auto m : kAllMethods) {
    const auto res = optimize(inst, config_for(m));
    EXPECT_EQ(res.report.iterations, 0);
    EXPECT_EQ(res.report.termination, Termination::Converged);
    EXPECT_EQ(res.instance, inst);
    ASSERT_EQ(res.report.trajectory.size(), 1u);
  }
}

TEST(Optimize, ConvergedImpliesGradientTolerance) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = testing::desk_scale(seed, 1.0);
    for (auto m : kAllMethods) {
      const auto res = optimize(inst, config_for(m));
      ASSERT_EQ(res.report.termination, Termination::Converged);
      EXPECT_LE(res.report.final_grad_norm, 1e-6);
      EXPECT_LE(res.report.final_cost.total, res.report.initial_cost.total);
      EXPECT_EQ(res.report.trajectory.size(), static_cast<std::size_t>(res.report.iterations) + 1);
    }
  }
}

TEST(Optimize, CostToleranceStopsEarly) {
  const auto inst = testing::desk_scale(2, 1.0);
  SolverConfig cfg;
  cfg.cost_tol = 1e-3;
  const auto loose = optimize(inst, cfg);
  const auto tight = optimize(inst, config_for(Method::SdExact));
  EXPECT_EQ(loose.report.termination, Termination::Converged);
  EXPECT_LT(loose.report.iterations, tight.report.iterations);
}

TEST(Optimize, MaxIters) {
  SolverConfig cfg;
  cfg.max_iters = 3;
  const auto res = optimize(testing::desk_scale(2, 1.0), cfg);
  EXPECT_EQ(res.report.termination, Termination::MaxIters);
  EXPECT_EQ(res.report.iterations, 3);
}

TEST(Optimize, DescentIsMonotone) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (double lambda : {0.1, 1.0, 15.0}) {
      const auto inst = testing::desk_scale(seed, lambda);
      for (auto m : {Method::SdExact, Method::Newton}) {
        const auto& t = optimize(inst, config_for(m)).report.trajectory;
        for (std::size_t i = 1; i < t.size(); ++i) {
          ASSERT_LE(t[i], t[i - 1] * (1.0 + 1e-12)) << to_string(m) << " seed " << seed << " step " << i;
        }
      }
    }
  }
}

TEST(Optimize, Deterministic) {
  const auto inst = testing::desk_scale(6, 1.0);
  for (auto m : kAllMethods) {
    auto a = optimize(inst, config_for(m));
    auto b = optimize(inst, config_for(m));
    a.report.elapsed_seconds = b.report.elapsed_seconds = 0.0;
    EXPECT_EQ(a.report, b.report);
    EXPECT_EQ(a.instance, b.instance);
  }
}

TEST(Optimize, AgreesWithAlternatingOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = testing::desk_scale(100 + seed, 1.0);
    const auto ref = oracle_optimize(inst);
    for (auto m : kAllMethods) {
      const auto res = optimize(inst, config_for(m));
      if (nearest_assignment(res.instance) == ref.assignment) {
        EXPECT_NEAR(res.report.final_cost.total, ref.cost.total, 5e-3 * ref.cost.total) << to_string(m);
      }
    }
  }
}

TEST(Optimize, DivergenceIsReportedNotThrown) {
  const auto res = optimize(testing::desk_scale(3, 1.0), sd_fixed_config(0.6));
  EXPECT_EQ(res.report.termination, Termination::Diverged);
  EXPECT_GT(res.report.final_cost.total, 1e3 * res.report.initial_cost.total);
}

TEST(SdExactStep, IsotropicQuadratic) {
  Eigen::Vector2d g(-4, 0);
  const auto h = HessianMatrix(2.0 * HessianMatrix::Identity(2, 2));
  ASSERT_TRUE(sd_exact_step(g, h));
  EXPECT_EQ(*sd_exact_step(g, h), 0.5);
  const Eigen::Vector2d x = Eigen::Vector2d::Zero() - 0.5 * g;
  EXPECT_EQ(x, Eigen::Vector2d(2, 0));
}

TEST(SdExactStep, ScalarMatrixGivesReciprocal) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  for (double c : {0.5, 3.0, 40.0}) {
    Eigen::VectorXd g(6);
    for (auto& v : g) v = n(rng);
    EXPECT_NEAR(*sd_exact_step(g, c * HessianMatrix::Identity(6, 6)), 1.0 / c, 1e-15);
  }
}

TEST(SdExactStep, NonPositiveCurvatureSignalsFallback) {
  Eigen::Vector2d g(1, -1);
  HessianMatrix h(2, 2);
  h << 1, 1, 1, 1;
  EXPECT_FALSE(sd_exact_step(g, h));
}

TEST(SdExactStep, MatchesGoldenSectionLineSearch) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 10;
    const Eigen::MatrixXd h = testing::random_spd(rng, dim);
    Eigen::VectorXd x(dim), b(dim);
    for (int i = 0; i < dim; ++i) x[i] = n(rng), b[i] = n(rng);
    const Eigen::VectorXd g = h * x - b;
    auto phi = [&](double t) {
      long double f = 0.0L;
      std::vector<long double> y(dim);
      for (int i = 0; i < dim; ++i) y[i] = static_cast<long double>(x[i]) - static_cast<long double>(t) * g[i];
      for (int i = 0; i < dim; ++i) {
        long double hy = 0.0L;
        for (int j = 0; j < dim; ++j) hy += static_cast<long double>(h(i, j)) * y[j];
        f += 0.5L * y[i] * hy - static_cast<long double>(b[i]) * y[i];
      }
      return f;
    };
    const double expected = testing::golden_section(phi, 0.0, 10.0, 1e-11);
    EXPECT_NEAR(*sd_exact_step(g, h), expected, 1e-8);
  }
}

TEST(NewtonStep, IsotropicQuadratic) {
  const auto step = newton_step(Eigen::Vector2d(-4, 0), 2.0 * HessianMatrix::Identity(2, 2));
  EXPECT_FALSE(step.regularized);
  EXPECT_EQ(step.direction, Eigen::VectorXd(Eigen::Vector2d(2, 0)));
}

TEST(NewtonStep, SingularLaplacianIsRegularized) {
  NetworkInstance inst;
  inst.backbones = {{0, 0}, {4, 0}};
  inst.edges = {{0, 1}};
  const auto h = hessian(inst, Assignment{});
  const auto step = newton_step(gradient(inst, Assignment{}), h);
  EXPECT_TRUE(step.regularized);
  EXPECT_TRUE(step.direction.allFinite());
  // The step closes the link symmetrically.
  EXPECT_NEAR(step.direction[0], 2.0, 1e-6);
  EXPECT_NEAR(step.direction[2], -2.0, 1e-6);

  const auto res = optimize(inst, config_for(Method::Newton));
  EXPECT_EQ(res.report.termination, Termination::Converged);
  EXPECT_GT(res.report.regularized_steps, 0);
}

TEST(NewtonStep, OneStepReachesStationaryPoint) {
  std::mt19937_64 rng(9);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto base = testing::desk_scale(seed, 1.0 + static_cast<double>(seed % 3));
    const auto start = testing::scatter_backbones(rng, base);
    SolverConfig cfg = config_for(Method::Newton);
    cfg.reassign_each_iteration = false;
    const auto res = optimize(start, cfg);
    EXPECT_EQ(res.report.iterations, 1);
    EXPECT_LE(res.report.final_grad_norm, 1e-8);
    const auto direct = solve_fixed_assignment(start, nearest_assignment(start));
    for (std::size_t j = 0; j < direct.size(); ++j) {
      EXPECT_NEAR(res.instance.backbones[j].x, direct[j].x, 1e-8);
      EXPECT_NEAR(res.instance.backbones[j].y, direct[j].y, 1e-8);
    }
  }
}

TEST(CgRun, SingleBackboneOneIteration) {
  const auto res = cg_run(single({10, 10}, {2, 0}), {});
  EXPECT_EQ(res.report.method, Method::Cg);
  EXPECT_EQ(res.report.iterations, 1);
  EXPECT_EQ(res.report.termination, Termination::Converged);
}

TEST(CgRun, FiniteTerminationOnFrozenAssignment) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = testing::desk_scale(seed, 1.0);
    SolverConfig cfg;
    cfg.reassign_each_iteration = false;
    const auto res = cg_run(inst, cfg);
    EXPECT_EQ(res.report.termination, Termination::Converged);
    EXPECT_LE(res.report.iterations, 20);
    const auto direct = solve_fixed_assignment(inst, nearest_assignment(inst));
    for (std::size_t j = 0; j < direct.size(); ++j) EXPECT_NEAR(res.instance.backbones[j].x, direct[j].x, 1e-6);
  }
}

TEST(CgRun, AgreesWithSteepestDescent) {
  const auto inst = testing::desk_scale(42, 1.0);
  const auto cg = cg_run(inst, {});
  const auto sd = optimize(inst, config_for(Method::SdExact));
  EXPECT_NEAR(cg.report.final_cost.total, sd.report.final_cost.total, 0.01 * sd.report.final_cost.total);
}

TEST(SdFixed, StableStepConvergesOnFrozenQuadratic) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = testing::desk_scale(seed, 1.0);
    const double bound = stable_step_interval(hessian(inst, nearest_assignment(inst))).upper;
    SolverConfig ok = sd_fixed_config(0.98 * bound);
    ok.reassign_each_iteration = false;
    EXPECT_EQ(optimize(inst, ok).report.termination, Termination::Converged);
    SolverConfig bad = sd_fixed_config(1.02 * bound);
    bad.reassign_each_iteration = false;
    EXPECT_EQ(optimize(inst, bad).report.termination, Termination::Diverged);
  }
}

}  // namespace
}  // namespace bbnet
