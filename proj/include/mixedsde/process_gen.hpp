#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "mixedsde/grid_path.hpp"

namespace mixedsde {

struct GenConfig {
  Eigen::Index n = 0;      // grid steps
  double T = 0.0;          // horizon
  double H = 0.5;          // Hurst parameter, in [0.5, 1) for fBm
  std::uint64_t seed = 0;  // same config reproduces the same path bit-for-bit
};

// Cholesky of the dense grid covariance is O(n^3); larger grids need a
// different sampler and are rejected.
inline constexpr Eigen::Index kFbmMaxSteps = 4096;

// Standard Wiener path on [0, T]: W_0 = 0, independent N(0, dt) increments.
GridPath gen_wiener(const GenConfig& cfg);

// Exact fractional Brownian sampler. Factorizes the grid covariance
// R(s,t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2 once and reuses the lower
// Cholesky factor across seeds; each sample costs one triangular matvec.
class FbmFactor {
 public:
  FbmFactor(Eigen::Index n, double T, double H);

  GridPath sample(std::uint64_t seed) const;

  Eigen::Index steps() const { return n_; }
  double horizon() const { return T_; }
  double hurst() const { return H_; }

 private:
  Eigen::Index n_;
  double T_, H_, dt_;
  Eigen::MatrixXd chol_;  // factor in the lower triangle
};

GridPath gen_fbm(const GenConfig& cfg);

// Exact grid Hölder constant sup_{u<v} |f(v)-f(u)| / (v-u)^gamma over all
// O(n^2) grid pairs.
double holder_constant(const GridPath& path, double gamma);

}  // namespace mixedsde
