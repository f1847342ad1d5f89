#pragma once

#include <vector>

#include "mixedsde/grid_path.hpp"
#include "mixedsde/holder.hpp"

namespace mixedsde {

// One-sided moving average g^eps(t) = eps^{-1} ∫_{max(0, t-eps)}^t g(s) ds
// with g extended by zero on negative times (g(0) = 0 is required) and the
// divisor kept at eps also for t < eps. eps is snapped to a multiple of dt
// (with a warning on stderr when the rounding is not exact); the integral is
// the trapezoid rule, so mollification is exact for piecewise-linear g.
GridPath mollify(const GridPath& g, double epsilon);

struct MollifyRate {
  double slope = 0.0;          // least-squares slope of log error vs log eps
  std::vector<double> eps;     // snapped widths
  std::vector<double> errors;  // seminorm_0alpha(g - g^eps) at the horizon
};

// Requires at least 4 geometrically spaced widths; a vanishing error
// (constant g) leaves the slope undefined and is an error.
MollifyRate mollify_rate(const GridPath& g, const HolderParams& p,
                         const std::vector<double>& eps_list);

// The smoothing sequence g_k = mollify(g, a0 * 2^{-k}), k = 0..n_max.
std::vector<GridPath> build_sequence(const GridPath& g, double a0, int n_max);

}  // namespace mixedsde
