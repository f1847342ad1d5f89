#include <doctest.h>

#include <cmath>
#include <random>

#include "mixedsde/errors.hpp"
#include "mixedsde/fracint.hpp"
#include "mixedsde/holder.hpp"
#include "mixedsde/process_gen.hpp"
#include "mixedsde/rng.hpp"
#include "test_support.hpp"

using namespace mixedsde;
using testsupport::forward_stieltjes;
using testsupport::sampled;
namespace tol = testsupport::tol;

TEST_CASE("left derivative closed forms") {
  const GridPath one = sampled(1.0, 512, [](double) { return 1.0; });
  const GridPath lin = sampled(1.0, 512, [](double t) { return t; });
  for (const double alpha : {0.2, 0.3, 0.4}) {
    const GridPath dc = frac_deriv_left(one, alpha, 0.0, 1.0);
    const GridPath dl = frac_deriv_left(lin, alpha, 0.0, 1.0);
    CHECK(dc.values[0] == 0.0);  // open-interval convention
    CHECK(dc.values[dc.steps()] == 0.0);
    for (Eigen::Index k = 1; k < dc.steps(); ++k) {
      const double x = dc.time(k);
      CHECK(dc.values[k] == doctest::Approx(std::pow(x, -alpha) / std::tgamma(1.0 - alpha))
                                .epsilon(1e-12));
      CHECK(dl.values[k] ==
            doctest::Approx(std::pow(x, 1.0 - alpha) / std::tgamma(2.0 - alpha)).epsilon(1e-12));
    }
  }
}

TEST_CASE("left derivative on a shifted window") {
  // f(x) = x - a with a = 0.25 on [0.25, 1]
  const GridPath f = sampled(1.0, 512, [](double t) { return t - 0.25; });
  const GridPath d = frac_deriv_left(f, 0.3, 0.25, 1.0);
  CHECK(d.t0 == doctest::Approx(0.25));
  for (Eigen::Index k = 1; k < d.steps(); ++k) {
    const double xa = d.time(k) - 0.25;
    CHECK(d.values[k] ==
          doctest::Approx(std::pow(xa, 0.7) / std::tgamma(1.7)).epsilon(1e-12));
  }
}

TEST_CASE("right derivative closed forms") {
  const GridPath cst = sampled(1.0, 256, [](double) { return 4.0; });
  CHECK(frac_deriv_right(cst, 0.4, 0.0, 1.0).values.abs().maxCoeff() == 0.0);

  // direct integration oracle for g(x) = x, b = 1:
  // (x-1)(1-x)^{alpha-1}/Gamma(alpha) + (1-alpha)/Gamma(alpha) * (-(1-x)^alpha/alpha)
  //   = -(1-x)^alpha / (alpha Gamma(alpha)) * (alpha + 1 - alpha) ... = -(1/alpha) ...
  const GridPath lin = sampled(1.0, 512, [](double t) { return t; });
  const double alpha = 0.4;
  const GridPath d = frac_deriv_right(lin, alpha, 0.0, 1.0);
  for (Eigen::Index k = 1; k < d.steps(); ++k) {
    const double x = d.time(k);
    const double expect = -(1.0 + (1.0 - alpha) / alpha) * std::pow(1.0 - x, alpha) /
                          std::tgamma(alpha);
    CHECK(d.values[k] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("left derivative agrees with its refinement on sampled paths") {
  const FbmFactor factor(512, 1.0, 0.7);
  for (int s = 0; s < 3; ++s) {
    const GridPath g = factor.sample(derive_seed(845, s));
    const GridPath g4 = refine_linear(g, 4);
    const GridPath d = frac_deriv_left(g, 0.3, 0.0, 1.0);
    const GridPath d4 = frac_deriv_left(g4, 0.3, 0.0, 1.0);
    for (Eigen::Index k = 1; k < d.steps(); ++k) {
      const double coarse = d.values[k];
      const double fine = d4.values[4 * k];
      CHECK(std::abs(coarse - fine) <= tol::kPathOracleRel * std::max(1e-9, std::abs(fine)));
    }
  }
}

TEST_CASE("alpha validation") {
  const GridPath lin = sampled(1.0, 64, [](double t) { return t; });
  CHECK_THROWS_AS(frac_deriv_left(lin, 0.0, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(frac_deriv_left(lin, 1.0, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(gls_integral(lin, lin, 0.6, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(gls_integral(lin, lin, -0.1, 0.0, 1.0), ConfigError);
}

TEST_CASE("integral closed forms and degenerate interval") {
  const GridPath one = sampled(1.0, 2048, [](double) { return 1.0; });
  const GridPath lin = sampled(1.0, 2048, [](double t) { return t; });
  const GridPath sq = sampled(1.0, 2048, [](double t) { return t * t; });

  CHECK(gls_integral(one, sq, 0.3, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(gls_integral(lin, sq, 0.3, 0.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
  CHECK(gls_integral(lin, sq, 0.3, 0.5, 0.5) == 0.0);

  // interior sub-intervals telescope too
  CHECK(gls_integral(one, sq, 0.3, 0.25, 0.75) ==
        doctest::Approx(0.75 * 0.75 - 0.25 * 0.25).epsilon(1e-3));
}

TEST_CASE("forward-sum oracle on fBm integrators") {
  const FbmFactor factor(2048, 1.0, 0.7);
  const GridPath f = sampled(1.0, 2048, [](double t) { return std::sin(t); });
  int good = 0;
  for (int s = 0; s < 20; ++s) {
    const GridPath g = factor.sample(derive_seed(555, s));
    const double fwd = forward_stieltjes(f, g);
    const double gls = gls_integral(f, g, 0.3, 0.0, 1.0);
    if (std::abs(gls - fwd) <= tol::kPathOracleRel * std::abs(fwd)) ++good;
  }
  CHECK(good >= 18);
}

TEST_CASE("value does not depend on alpha") {
  const FbmFactor factor(2048, 1.0, 0.7);
  const GridPath f = sampled(1.0, 2048, [](double t) { return std::sin(t); });
  for (int s = 0; s < 5; ++s) {
    const GridPath g = factor.sample(derive_seed(556, s));
    const double v1 = gls_integral(f, g, 0.2, 0.0, 1.0);
    const double v2 = gls_integral(f, g, 0.35, 0.0, 1.0);
    // scale floor: relative comparison is meaningless when the integral
    // itself nearly cancels
    double mass = 0.0;
    for (Eigen::Index k = 0; k < f.steps(); ++k) {
      mass += std::abs(f.values[k]) * std::abs(g.values[k + 1] - g.values[k]);
    }
    CHECK(std::abs(v1 - v2) <=
          tol::kPathOracleRel * std::max({std::abs(v1), std::abs(v2), 0.1 * mass}));
  }
}

TEST_CASE("additivity over adjacent intervals") {
  const FbmFactor factor(1024, 1.0, 0.7);
  const GridPath f = sampled(1.0, 1024, [](double t) { return std::sin(3.0 * t) + 1.0; });
  for (int s = 0; s < 3; ++s) {
    const GridPath g = factor.sample(derive_seed(41, s));
    const double whole = gls_integral(f, g, 0.3, 0.0, 1.0);
    const double split = gls_integral(f, g, 0.3, 0.0, 0.5) + gls_integral(f, g, 0.3, 0.5, 1.0);
    CHECK(std::abs(whole - split) <= 0.01 * std::max(1e-3, std::abs(whole)));
  }
}

TEST_CASE("linearity in both arguments") {
  const FbmFactor factor(512, 1.0, 0.7);
  const GridPath f1 = sampled(1.0, 512, [](double t) { return std::sin(2.0 * t); });
  const GridPath f2 = sampled(1.0, 512, [](double t) { return t * t - 0.3; });
  const GridPath g1 = factor.sample(1);
  const GridPath g2 = factor.sample(2);

  const double lf = gls_integral(f1 + f2, g1, 0.35, 0.0, 1.0);
  const double rf = gls_integral(f1, g1, 0.35, 0.0, 1.0) + gls_integral(f2, g1, 0.35, 0.0, 1.0);
  CHECK(lf == doctest::Approx(rf).epsilon(tol::kQuadSymmetryRel));

  const double lg = gls_integral(f1, g1 + g2, 0.35, 0.0, 1.0);
  const double rg = gls_integral(f1, g1, 0.35, 0.0, 1.0) + gls_integral(f1, g2, 0.35, 0.0, 1.0);
  CHECK(lg == doctest::Approx(rg).epsilon(tol::kQuadSymmetryRel));
}

TEST_CASE("bound dominates the integral on random fixtures") {
  std::mt19937_64 eng(2024);
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  std::uniform_real_distribution<double> freq(0.5, 6.0);
  std::uniform_int_distribution<int> hsel(0, 2);
  const double hs[] = {0.6, 0.7, 0.85};
  const Eigen::Index n = 256;
  std::vector<FbmFactor> factors;
  for (const double h : hs) factors.emplace_back(n, 1.0, h);

  int ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double a0 = amp(eng), a1 = amp(eng), w1 = freq(eng);
    const GridPath f = sampled(1.0, n, [&](double t) { return a0 + a1 * std::sin(w1 * t); });
    const GridPath g = factors[hsel(eng)].sample(derive_seed(31, trial));
    const PathwiseBound pb = pathwise_bound(f, g, 0.2 + 0.25 * (trial % 2), 0.0, 1.0);
    if (std::abs(pb.integral) <= pb.bound) ++ok;
  }
  CHECK(ok == 100);
}

TEST_CASE("bound trivials") {
  const GridPath zero = sampled(1.0, 128, [](double) { return 0.0; });
  const GridPath lin = sampled(1.0, 128, [](double t) { return t; });
  const PathwiseBound z = pathwise_bound(zero, lin, 0.3, 0.0, 1.0);
  CHECK(z.integral == 0.0);
  CHECK(z.bound == 0.0);

  const GridPath one = sampled(1.0, 128, [](double) { return 1.0; });
  const PathwiseBound pb = pathwise_bound(one, lin, 0.3, 0.0, 1.0);
  CHECK(pb.integral == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(pb.bound >= 1.0);
}

TEST_CASE("right-derivative sup is bounded by the seminorm") {
  const FbmFactor factor(512, 1.0, 0.7);
  const HolderParams p(0.4, 0.7);
  for (int s = 0; s < 5; ++s) {
    const GridPath g = factor.sample(derive_seed(77, s));
    const GridPath d = frac_deriv_right(g, p.alpha, 0.0, 1.0);
    const double sup = d.values.abs().maxCoeff();
    CHECK(sup <= seminorm_0alpha(g, p, 1.0) / std::tgamma(p.alpha) * (1.0 + 1e-12));
  }
}

TEST_CASE("mismatched grids are rejected") {
  const GridPath f = sampled(1.0, 128, [](double t) { return t; });
  const GridPath g = sampled(1.0, 256, [](double t) { return t; });
  CHECK_THROWS_AS(gls_integral(f, g, 0.3, 0.0, 1.0), ConfigError);
}
