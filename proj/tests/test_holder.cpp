#include <doctest.h>

#include <cmath>

#include "mixedsde/errors.hpp"
#include "mixedsde/holder.hpp"
#include "mixedsde/process_gen.hpp"
#include "test_support.hpp"

using namespace mixedsde;
using testsupport::sampled;
namespace tol = testsupport::tol;

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(HolderParams(0.2, 0.7), ConfigError);   // alpha <= 1 - gamma
  CHECK_THROWS_AS(HolderParams(0.5, 0.7), ConfigError);   // alpha >= 1/2
  CHECK_THROWS_AS(HolderParams(0.4, 0.45), ConfigError);  // gamma <= 1/2
  CHECK(HolderParams::default_alpha(0.7) == doctest::Approx(0.4));
}

TEST_CASE("closed forms on smooth paths") {
  const HolderParams p03(0.3, 0.75);
  const HolderParams p04(0.4, 0.75);
  const GridPath lin = sampled(1.0, 1024, [](double t) { return t; });
  const GridPath one = sampled(1.0, 1024, [](double) { return 1.0; });
  const GridPath cst = sampled(1.0, 256, [](double) { return -2.5; });

  // product integration is exact for piecewise-linear differences
  CHECK(norm_alpha(lin, p03, 1.0) == doctest::Approx(1.0 + 1.0 / 0.7).epsilon(1e-12));
  CHECK(seminorm_0alpha(lin, p04, 1.0) == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(norm_2alpha(one, p03, 1.0) == doctest::Approx(1.0 / 0.7 + 1.0 / 0.2).epsilon(1e-12));

  CHECK(norm_alpha(cst, p03, 1.0) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(seminorm_0alpha(cst, p04, 1.0) == 0.0);
  CHECK(norm_infalpha(cst, p03, 1.0) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(norm_2alpha(sampled(1.0, 64, [](double) { return 0.0; }), p03, 1.0) == 0.0);

  // monotone path: the sup norm is attained at the horizon
  CHECK(norm_infalpha(lin, p03, 1.0) == norm_alpha(lin, p03, 1.0));

  // the norm always dominates the terminal value
  CHECK(norm_alpha(lin, p03, 0.5) >= 0.5);
}

TEST_CASE("off-grid times and t = 0 are rejected") {
  const GridPath lin = sampled(1.0, 64, [](double t) { return t; });
  const HolderParams p(0.3, 0.75);
  CHECK_THROWS_AS(norm_alpha(lin, p, 0.01), ConfigError);
  CHECK_THROWS_AS(norm_alpha(lin, p, 0.0), ConfigError);
  CHECK_THROWS_AS(seminorm_0alpha(lin, p, 1.5), ConfigError);
}

TEST_CASE("refinement oracle on fBm paths") {
  const FbmFactor factor(1024, 1.0, 0.7);
  const HolderParams p(0.35, 0.69);
  for (int s = 0; s < 5; ++s) {
    const GridPath g = factor.sample(42 + s);
    const GridPath g4 = refine_linear(g, 4);
    const double n1 = norm_alpha(g, p, 1.0);
    const double n1r = norm_alpha(g4, p, 1.0);
    CHECK(std::abs(n1 - n1r) < tol::kPathOracleRel * n1r);
    const double n2 = norm_2alpha(g, p, 1.0);
    const double n2r = norm_2alpha(g4, p, 1.0);
    CHECK(std::abs(n2 - n2r) < tol::kNorm2RefineRel * n2r);
  }
}

TEST_CASE("homogeneity under scaling") {
  const FbmFactor factor(256, 1.0, 0.7);
  const GridPath g = factor.sample(5);
  const HolderParams p(0.4, 0.7);
  const GridPath g2 = 2.0 * g;

  // powers of two scale bit-for-bit
  CHECK(norm_alpha(g2, p, 1.0) == 2.0 * norm_alpha(g, p, 1.0));
  CHECK(seminorm_0alpha(g2, p, 1.0) == 2.0 * seminorm_0alpha(g, p, 1.0));
  CHECK(norm_infalpha(g2, p, 1.0) == 2.0 * norm_infalpha(g, p, 1.0));
  CHECK(norm_2alpha(g2, p, 1.0) == 4.0 * norm_2alpha(g, p, 1.0));

  const GridPath g3 = -3.0 * g;
  CHECK(norm_alpha(g3, p, 1.0) ==
        doctest::Approx(3.0 * norm_alpha(g, p, 1.0)).epsilon(1e-13));
  CHECK(std::sqrt(norm_2alpha(g3, p, 1.0)) ==
        doctest::Approx(3.0 * std::sqrt(norm_2alpha(g, p, 1.0))).epsilon(1e-13));
}

TEST_CASE("triangle inequality on the grid") {
  const FbmFactor factor(512, 1.0, 0.7);
  const HolderParams p(0.4, 0.7);
  for (int s = 0; s < 3; ++s) {
    const GridPath f = factor.sample(100 + s);
    const GridPath g = factor.sample(200 + s);
    const GridPath sum = f + g;
    const double slack = tol::kTriangleSlack;
    CHECK(norm_alpha(sum, p, 1.0) <=
          norm_alpha(f, p, 1.0) + norm_alpha(g, p, 1.0) + slack);
    CHECK(seminorm_0alpha(sum, p, 1.0) <=
          seminorm_0alpha(f, p, 1.0) + seminorm_0alpha(g, p, 1.0) + slack);
    CHECK(norm_infalpha(sum, p, 1.0) <=
          norm_infalpha(f, p, 1.0) + norm_infalpha(g, p, 1.0) + slack);
    CHECK(std::sqrt(norm_2alpha(sum, p, 1.0)) <=
          std::sqrt(norm_2alpha(f, p, 1.0)) + std::sqrt(norm_2alpha(g, p, 1.0)) + slack);
  }
}

TEST_CASE("monotonicity in t and profile consistency") {
  const FbmFactor factor(256, 1.0, 0.7);
  const GridPath g = factor.sample(77);
  const HolderParams p(0.4, 0.7);

  const Eigen::ArrayXd sem = seminorm_profile(g, p, g.steps());
  CHECK(sem[0] == 0.0);
  double prev_inf = 0.0;
  for (Eigen::Index k = 1; k <= g.steps(); ++k) {
    CHECK(sem[k] >= sem[k - 1]);
    const double ninf = norm_infalpha(g, p, g.time(k));
    CHECK(ninf >= prev_inf);
    prev_inf = ninf;
  }
  for (const Eigen::Index k : {Eigen::Index(32), Eigen::Index(137), Eigen::Index(256)}) {
    CHECK(sem[k] == seminorm_0alpha(g, p, g.time(k)));
  }
  // the sup norm dominates any member
  CHECK(norm_infalpha(g, p, 1.0) >= norm_alpha(g, p, 1.0));
}

TEST_CASE("seminorm bounds the Hölder quotient on every grid pair") {
  const FbmFactor factor(512, 1.0, 0.7);
  const GridPath g = factor.sample(9);
  const HolderParams p(0.4, 0.7);
  const double sem = seminorm_0alpha(g, p, 1.0);
  for (Eigen::Index i = 0; i < g.steps(); i += 3) {
    for (Eigen::Index j = i + 1; j <= g.steps(); j += 5) {
      const double quotient = std::abs(g.values[j] - g.values[i]) /
                              std::pow(g.dt * double(j - i), 1.0 - p.alpha);
      CHECK(quotient <= sem * (1.0 + 1e-12));
    }
  }
}
