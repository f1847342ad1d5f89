#pragma once

#include <Eigen/Dense>

namespace mixedsde {

// A real-valued function sampled on the uniform grid t0 + k*dt, k = 0..n.
// Driver paths (Wiener, fBm) always have t0 = 0 and values[0] = 0; windows
// of fractional derivatives may start at t0 = a > 0.
struct GridPath {
  double t0 = 0.0;
  double dt = 0.0;
  Eigen::ArrayXd values;  // n + 1 samples

  GridPath() = default;
  GridPath(double t0_, double dt_, Eigen::ArrayXd v);

  Eigen::Index steps() const { return values.size() - 1; }
  double horizon() const { return t0 + dt * static_cast<double>(steps()); }
  double time(Eigen::Index k) const { return t0 + dt * static_cast<double>(k); }

  // Grid index of time t. Times off the grid are an error; values are never
  // interpolated implicitly.
  Eigen::Index index_of(double t) const;

  bool same_grid(const GridPath& other) const;
  void require_finite(const char* what) const;
};

// Path on [0, T] with n = values.size() - 1 steps.
GridPath make_grid_path(double T, Eigen::ArrayXd values);

// Piecewise-linear interpolation onto a grid `factor` times finer.
GridPath refine_linear(const GridPath& f, int factor);

GridPath operator+(const GridPath& a, const GridPath& b);
GridPath operator-(const GridPath& a, const GridPath& b);
GridPath operator*(double scale, const GridPath& f);

}  // namespace mixedsde
