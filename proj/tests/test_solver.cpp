#include <doctest.h>

#include <cmath>
#include <string>

#include "mixedsde/errors.hpp"
#include "mixedsde/process_gen.hpp"
#include "mixedsde/rng.hpp"
#include "mixedsde/solver.hpp"
#include "test_support.hpp"

using namespace mixedsde;
using testsupport::sampled;

namespace {

CoefficientSet linear_set(double mu, double sigma, double nu) {
  CoefficientSet cs;
  cs.a = Coefficient::linear(mu);
  cs.b = Coefficient::linear(sigma);
  cs.c = Coefficient::linear(nu);
  cs.K = std::abs(mu) + std::abs(sigma) + std::abs(nu);
  return cs;
}

SolveConfig config_for(Eigen::Index n, double x0) {
  SolveConfig cfg;
  cfg.x0 = x0;
  cfg.n = n;
  cfg.T = 1.0;
  cfg.alpha = 0.405;
  cfg.gamma = 0.69;
  return cfg;
}

}  // namespace

TEST_CASE("unit driver coefficient telescopes the driver") {
  CoefficientSet cs;
  cs.c = Coefficient::constant(1.0);
  const GridPath W = gen_wiener({2048, 1.0, 0.5, 3});
  const GridPath Z = gen_fbm({2048, 1.0, 0.7, 4});
  const GridPath X = euler_solve_mixed(cs, config_for(2048, 2.0), W, Z);
  CHECK((X.values - (Z.values + 2.0)).abs().maxCoeff() < 1e-11);
}

TEST_CASE("zero coefficients freeze the state") {
  CoefficientSet cs;
  const GridPath W = gen_wiener({128, 1.0, 0.5, 3});
  const GridPath Z = gen_fbm({128, 1.0, 0.7, 4});
  CHECK((euler_solve_mixed(cs, config_for(128, -1.5), W, Z).values == -1.5).all());
}

TEST_CASE("driver grids must match the config") {
  CoefficientSet cs;
  const GridPath W = gen_wiener({128, 1.0, 0.5, 3});
  const GridPath Z = gen_fbm({64, 1.0, 0.7, 4});
  CHECK_THROWS_AS(euler_solve_mixed(cs, config_for(128, 0.0), W, Z), ConfigError);
}

TEST_CASE("mixed geometric solution matches its closed form") {
  const double mu = 0.1, sigma = 0.2, nu = 0.3;
  const CoefficientSet cs = linear_set(mu, sigma, nu);
  const Eigen::Index n = 1024;
  const FbmFactor factor(n, 1.0, 0.7);
  int within = 0;
  std::vector<double> errs;
  for (int s = 0; s < 30; ++s) {
    const GridPath W = gen_wiener({n, 1.0, 0.5, derive_seed(777, 2 * s)});
    const GridPath Z = factor.sample(derive_seed(777, 2 * s + 1));
    const GridPath X = euler_solve_mixed(cs, config_for(n, 1.0), W, Z);
    // pathwise Young integral in Z adds no Ito correction
    const double exact =
        std::exp((mu - 0.5 * sigma * sigma) + sigma * W.values[n] + nu * Z.values[n]);
    const double rel = std::abs(X.values[n] - exact) / exact;
    errs.push_back(rel);
    if (rel < 0.05) ++within;
  }
  CHECK(within >= 27);
  CHECK(testsupport::median(errs) < 0.01);
}

TEST_CASE("smooth-driver form coincides with the mixed scheme") {
  const CoefficientSet cs = linear_set(0.1, 0.2, 0.3);
  const GridPath W = gen_wiener({1024, 1.0, 0.5, 31});
  const GridPath Z = gen_fbm({1024, 1.0, 0.7, 32});
  const SolveConfig cfg = config_for(1024, 1.0);
  const GridPath a = euler_solve_mixed(cs, cfg, W, Z);
  const GridPath b = solve_smooth_driver(cs, cfg, W, Z);
  CHECK((a.values - b.values).abs().maxCoeff() <= 1e-10 * (1.0 + a.values.abs().maxCoeff()));

  CoefficientSet trivial;
  const GridPath zero = sampled(1.0, 1024, [](double) { return 0.0; });
  CHECK((solve_smooth_driver(trivial, cfg, W, zero).values == 1.0).all());
}

TEST_CASE("Euler solutions are Cauchy under driver refinement") {
  const CoefficientSet cs = linear_set(0.1, 0.2, 0.3);
  const GridPath W = gen_wiener({128, 1.0, 0.5, 8});
  const GridPath Z = gen_fbm({128, 1.0, 0.7, 9});

  auto solve_at = [&](int factor) {
    const GridPath Wf = refine_linear(W, factor);
    const GridPath Zf = refine_linear(Z, factor);
    return euler_solve_mixed(cs, config_for(128 * factor, 1.0), Wf, Zf);
  };
  const GridPath x1 = solve_at(1), x2 = solve_at(2), x4 = solve_at(4), x8 = solve_at(8);

  auto gap_on_common = [](const GridPath& coarse, const GridPath& fine, int ratio) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k <= coarse.steps(); ++k) {
      worst = std::max(worst, std::abs(coarse.values[k] - fine.values[k * ratio]));
    }
    return worst;
  };
  const double e1 = gap_on_common(x1, x2, 2);
  const double e2 = gap_on_common(x2, x4, 2);
  const double e4 = gap_on_common(x4, x8, 2);
  CHECK(e2 < e1);
  CHECK(e4 < e2);
}

TEST_CASE("solution scales with the initial state for linear coefficients") {
  const CoefficientSet cs = linear_set(0.1, 0.2, 0.3);
  const GridPath W = gen_wiener({512, 1.0, 0.5, 18});
  const GridPath Z = gen_fbm({512, 1.0, 0.7, 19});
  const GridPath x1 = euler_solve_mixed(cs, config_for(512, 1.0), W, Z);
  const GridPath x2 = euler_solve_mixed(cs, config_for(512, 2.0), W, Z);
  CHECK((x2.values == 2.0 * x1.values).all());  // power-of-two scaling is exact
  const GridPath x3 = euler_solve_mixed(cs, config_for(512, 3.0), W, Z);
  CHECK((x3.values - 3.0 * x1.values).abs().maxCoeff() <
        1e-13 * x3.values.abs().maxCoeff());
}

TEST_CASE("state overflow is reported with its first step") {
  CoefficientSet cs;
  cs.a = Coefficient::linear(50.0);
  cs.K = 50.0;
  const GridPath W = gen_wiener({64, 1.0, 0.5, 2});
  const GridPath Z = gen_fbm({64, 1.0, 0.7, 3});
  SolveConfig cfg = config_for(64, 1e9);
  CHECK_THROWS_WITH_AS(euler_solve_mixed(cs, cfg, W, Z),
                       doctest::Contains("overflow at step"), NumericError);
}

TEST_CASE("stopping time of the driver seminorm") {
  const HolderParams p(0.405, 0.69);
  const GridPath zero = sampled(1.0, 128, [](double) { return 0.0; });
  CHECK(tau_N(zero, p, {1.0}) == 1.0);
  CHECK_THROWS_AS(tau_N(zero, p, {0.0}), ConfigError);

  // a tiny level trips at the first grid point with positive seminorm
  const GridPath Z = gen_fbm({128, 1.0, 0.7, 12});
  CHECK(tau_N(Z, p, {1e-300}) == Z.time(1));

  // monotone in N
  double prev = 0.0;
  for (const double level : {0.5, 2.0, 8.0, 32.0, 128.0}) {
    const double tau = tau_N(Z, p, {level});
    CHECK(tau >= prev);
    prev = tau;
  }
}

TEST_CASE("median-level stopping splits the seeds near half") {
  const FbmFactor factor(512, 1.0, 0.7);
  const HolderParams p(0.405, 0.69);
  std::vector<double> sems;
  for (int s = 0; s < 21; ++s) {
    sems.push_back(seminorm_0alpha(factor.sample(derive_seed(3000, s)), p, 1.0));
  }
  const double level = testsupport::median(sems);
  int stopped = 0;
  for (int s = 0; s < 21; ++s) {
    if (tau_N(factor.sample(derive_seed(3000, s)), p, {level}) < 1.0) ++stopped;
  }
  CHECK(stopped >= 4);
  CHECK(stopped <= 16);
}

TEST_CASE("stopped process freezes after tau") {
  const GridPath Z = gen_fbm({256, 1.0, 0.7, 77});
  CHECK((stop_process(Z, 1.0).values == Z.values).all());
  CHECK((stop_process(Z, 0.0).values == 0.0).all());

  const HolderParams p(0.405, 0.69);
  const double tau = 0.5;
  const GridPath stopped = stop_process(Z, tau);
  const Eigen::Index kt = Z.index_of(tau);
  for (Eigen::Index k = 0; k <= kt; ++k) CHECK(stopped.values[k] == Z.values[k]);
  for (Eigen::Index k = kt; k <= Z.steps(); ++k) CHECK(stopped.values[k] == Z.values[kt]);
  const double sem = seminorm_0alpha(stopped, p, 1.0);
  CHECK(std::isfinite(sem));
  CHECK(sem <= seminorm_0alpha(Z, p, 1.0) * (1.0 + 1e-12));
}

TEST_CASE("solutions with nested truncation levels agree before the earlier stop") {
  const CoefficientSet cs = linear_set(0.1, 0.2, 0.3);
  const HolderParams p(0.405, 0.69);
  const GridPath W = gen_wiener({512, 1.0, 0.5, 600});
  const GridPath Z = gen_fbm({512, 1.0, 0.7, 601});
  const Eigen::ArrayXd sem = seminorm_profile(Z, p, Z.steps());
  const double n_small = sem[Z.steps()] * 0.4;
  const double n_large = sem[Z.steps()] * 0.8;
  const double tau_small = tau_N(Z, p, {n_small});
  const double tau_large = tau_N(Z, p, {n_large});
  REQUIRE(tau_small <= tau_large);

  const SolveConfig cfg = config_for(512, 1.0);
  const GridPath xs = euler_solve_mixed(cs, cfg, W, stop_process(Z, tau_small));
  const GridPath xl = euler_solve_mixed(cs, cfg, W, stop_process(Z, tau_large));
  for (Eigen::Index k = 0; k <= Z.index_of(tau_small); ++k) {
    CHECK(xs.values[k] == xl.values[k]);  // identical updates step-by-step
  }
}
