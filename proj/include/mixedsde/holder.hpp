#pragma once

#include <Eigen/Dense>

#include "mixedsde/grid_path.hpp"

namespace mixedsde {

// Exponent pair for the weighted Hölder-type norms below. gamma is the
// Hölder exponent of the driving path, alpha the fractional order; the
// admissible range is 1 - gamma < alpha < 1/2. The weight kernels
//   g(t,s) = s^{-alpha} + (t-s)^{-alpha-1/2},   h(t,s) = (t-s)^{-1-alpha}
// are fixed formulas, not stored data.
struct HolderParams {
  double alpha;
  double gamma;

  HolderParams(double alpha_, double gamma_);

  // Midpoint of the admissible interval (1-gamma, 1/2).
  static double default_alpha(double gamma) { return (3.0 - 2.0 * gamma) / 4.0; }
};

// |f(t)| + ∫_0^t |f(t)-f(s)| (t-s)^{-1-alpha} ds. The singular integral is
// evaluated by product integration: |f(t)-f(s)| is piecewise linear in s and
// the kernel is integrated in closed form on every cell, so the quadrature
// is exact whenever the difference is piecewise linear.
double norm_alpha(const GridPath& f, const HolderParams& p, double t);

// sup over grid pairs u < v <= t of
//   |f(v)-f(u)| / (v-u)^{1-alpha} + ∫_u^v |f(u)-f(z)| (z-u)^{-(2-alpha)} dz.
double seminorm_0alpha(const GridPath& f, const HolderParams& p, double t);

// ∫_0^t norm_alpha(f, s)^2 (s^{-alpha} + (t-s)^{-alpha-1/2}) ds. This is the
// squared weighted norm; its square root is the 1-homogeneous functional.
double norm_2alpha(const GridPath& f, const HolderParams& p, double t);

// max over grid points s <= t of norm_alpha(f, s); s = 0 contributes |f(0)|.
double norm_infalpha(const GridPath& f, const HolderParams& p, double t);

// norm_alpha at every grid node 0..kmax (entry 0 is |f(0)|).
Eigen::ArrayXd norm_alpha_profile(const GridPath& f, const HolderParams& p,
                                  Eigen::Index kmax);

// Running seminorm: entry k equals seminorm_0alpha(f, p, t_k); entry 0 is 0.
Eigen::ArrayXd seminorm_profile(const GridPath& f, const HolderParams& p,
                                Eigen::Index kmax);

}  // namespace mixedsde
