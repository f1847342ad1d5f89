#include "mixedsde/grid_path.hpp"

#include <cmath>
#include <string>

#include "mixedsde/errors.hpp"

namespace mixedsde {

GridPath::GridPath(double t0_, double dt_, Eigen::ArrayXd v)
    : t0(t0_), dt(dt_), values(std::move(v)) {
  if (values.size() < 2) throw ConfigError("GridPath needs at least 2 samples");
  if (!(dt > 0.0)) throw ConfigError("GridPath needs dt > 0");
}

Eigen::Index GridPath::index_of(double t) const {
  const auto k = static_cast<Eigen::Index>(std::llround((t - t0) / dt));
  if (k < 0 || k > steps() || std::abs(t - time(k)) > 1e-9 * std::max(1.0, std::abs(t))) {
    throw ConfigError("time " + std::to_string(t) + " is not a grid point");
  }
  return k;
}

bool GridPath::same_grid(const GridPath& other) const {
  return values.size() == other.values.size() &&
         std::abs(dt - other.dt) <= 1e-12 * dt &&
         std::abs(t0 - other.t0) <= 1e-12 * std::max(1.0, std::abs(t0));
}

void GridPath::require_finite(const char* what) const {
  if (!values.isFinite().all()) {
    throw NumericError(std::string(what) + ": non-finite sample");
  }
}

GridPath make_grid_path(double T, Eigen::ArrayXd values) {
  const auto n = values.size() - 1;
  if (n < 1) throw ConfigError("path needs at least one step");
  if (!(T > 0.0)) throw ConfigError("horizon T must be positive");
  return GridPath(0.0, T / static_cast<double>(n), std::move(values));
}

GridPath refine_linear(const GridPath& f, int factor) {
  if (factor < 1) throw ConfigError("refinement factor must be >= 1");
  const Eigen::Index n = f.steps();
  const Eigen::Index m = n * factor;
  Eigen::ArrayXd out(m + 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (int j = 0; j < factor; ++j) {
      const double w = static_cast<double>(j) / factor;
      out[k * factor + j] = (1.0 - w) * f.values[k] + w * f.values[k + 1];
    }
  }
  out[m] = f.values[n];
  return GridPath(f.t0, f.dt / factor, std::move(out));
}

GridPath operator+(const GridPath& a, const GridPath& b) {
  if (!a.same_grid(b)) throw ConfigError("path arithmetic requires a common grid");
  return GridPath(a.t0, a.dt, a.values + b.values);
}

GridPath operator-(const GridPath& a, const GridPath& b) {
  if (!a.same_grid(b)) throw ConfigError("path arithmetic requires a common grid");
  return GridPath(a.t0, a.dt, a.values - b.values);
}

GridPath operator*(double scale, const GridPath& f) {
  return GridPath(f.t0, f.dt, scale * f.values);
}

}  // namespace mixedsde
