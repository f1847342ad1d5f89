#include "mixedsde/mollify.hpp"

#include <cmath>
#include <iostream>

#include "mixedsde/errors.hpp"

namespace mixedsde {

namespace {

Eigen::Index snap_width(const GridPath& g, double epsilon, bool warn) {
  const double T = g.horizon() - g.t0;
  if (!(epsilon > 0.0 && epsilon < T)) {
    throw ConfigError("mollify needs 0 < epsilon < T");
  }
  auto m = static_cast<Eigen::Index>(std::llround(epsilon / g.dt));
  if (m < 1) m = 1;
  if (m > g.steps()) m = g.steps();
  const double snapped = g.dt * static_cast<double>(m);
  if (warn && std::abs(snapped - epsilon) > 1e-9 * epsilon) {
    std::cerr << "mollify: epsilon " << epsilon << " snapped to grid multiple "
              << snapped << "\n";
  }
  return m;
}

}  // namespace

GridPath mollify(const GridPath& g, double epsilon) {
  const double scale = std::max(1.0, g.values.abs().maxCoeff());
  if (std::abs(g.values[0]) > 1e-12 * scale) {
    throw ConfigError("mollify requires g(0) = 0; shift the path first");
  }
  const Eigen::Index m = snap_width(g, epsilon, true);
  const double eps = g.dt * static_cast<double>(m);
  const Eigen::Index n = g.steps();

  // trapezoid prefix integral of g, with g = 0 before the origin
  Eigen::ArrayXd prefix(n + 1);
  prefix[0] = 0.0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    prefix[k] = prefix[k - 1] + 0.5 * g.dt * (g.values[k - 1] + g.values[k]);
  }
  Eigen::ArrayXd out(n + 1);
  for (Eigen::Index k = 0; k <= n; ++k) {
    const double lower = (k >= m) ? prefix[k - m] : 0.0;
    out[k] = (prefix[k] - lower) / eps;
  }
  return GridPath(g.t0, g.dt, std::move(out));
}

MollifyRate mollify_rate(const GridPath& g, const HolderParams& p,
                         const std::vector<double>& eps_list) {
  if (eps_list.size() < 4) {
    throw ConfigError("mollify_rate needs at least 4 widths");
  }
  for (std::size_t i = 1; i + 1 < eps_list.size(); ++i) {
    const double r0 = eps_list[i] / eps_list[i - 1];
    const double r1 = eps_list[i + 1] / eps_list[i];
    if (!(r0 > 0.0) || std::abs(r1 / r0 - 1.0) > 0.1) {
      throw ConfigError("mollify_rate needs geometrically spaced widths");
    }
  }

  MollifyRate rate;
  const double T = g.horizon();
  for (const double eps : eps_list) {
    const GridPath smoothed = mollify(g, eps);
    const double err = seminorm_0alpha(g - smoothed, p, T);
    if (!(err > 0.0)) {
      throw ConfigError("mollification error vanishes; rate slope undefined");
    }
    rate.eps.push_back(g.dt * static_cast<double>(snap_width(g, eps, false)));
    rate.errors.push_back(err);
  }

  // least squares of log error on log eps
  const auto k = static_cast<double>(rate.eps.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < rate.eps.size(); ++i) {
    const double x = std::log(rate.eps[i]);
    const double y = std::log(rate.errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rate.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return rate;
}

std::vector<GridPath> build_sequence(const GridPath& g, double a0, int n_max) {
  if (n_max < 0) throw ConfigError("build_sequence needs n_max >= 0");
  const double T = g.horizon() - g.t0;
  if (!(a0 > 0.0 && a0 <= T)) throw ConfigError("build_sequence needs 0 < a0 <= T");
  std::vector<GridPath> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int k = 0; k <= n_max; ++k) {
    out.push_back(mollify(g, a0 * std::pow(2.0, -k)));
  }
  return out;
}

}  // namespace mixedsde
