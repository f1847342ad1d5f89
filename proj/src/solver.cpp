#include "mixedsde/solver.hpp"

#include <cmath>
#include <string>

#include "mixedsde/errors.hpp"

namespace mixedsde {

namespace {

void check_driver_grids(const SolveConfig& cfg, const GridPath& W, const GridPath& Z) {
  if (cfg.n < 1) throw ConfigError("solver needs n >= 1");
  if (!(cfg.T > 0.0)) throw ConfigError("solver needs T > 0");
  if (W.steps() != cfg.n || Z.steps() != cfg.n || !W.same_grid(Z) ||
      std::abs(W.horizon() - cfg.T) > 1e-9 * cfg.T) {
    throw ConfigError("drivers must share the solver grid");
  }
}

[[noreturn]] void overflow(Eigen::Index step, double t, double x) {
  throw NumericError("state overflow at step " + std::to_string(step) + " (t = " +
                     std::to_string(t) + ", |x| = " + std::to_string(std::abs(x)) + ")");
}

}  // namespace

GridPath euler_solve_mixed(const CoefficientSet& cs, const SolveConfig& cfg,
                           const GridPath& W, const GridPath& Z) {
  check_driver_grids(cfg, W, Z);
  const double dt = W.dt;
  Eigen::ArrayXd x(cfg.n + 1);
  x[0] = cfg.x0;
  for (Eigen::Index k = 0; k < cfg.n; ++k) {
    const double t = W.time(k);
    const double xk = x[k];
    const double dw = W.values[k + 1] - W.values[k];
    const double dz = Z.values[k + 1] - Z.values[k];
    const double next = xk + cs.a(t, xk) * dt + cs.b(t, xk) * dw + cs.c(t, xk) * dz;
    if (!std::isfinite(next) || std::abs(next) > kStateOverflowLimit) {
      overflow(k + 1, W.time(k + 1), next);
    }
    x[k + 1] = next;
  }
  return GridPath(0.0, dt, std::move(x));
}

GridPath solve_smooth_driver(const CoefficientSet& cs, const SolveConfig& cfg,
                             const GridPath& W, const GridPath& Zs) {
  check_driver_grids(cfg, W, Zs);
  const double dt = W.dt;
  Eigen::ArrayXd x(cfg.n + 1);
  x[0] = cfg.x0;
  for (Eigen::Index k = 0; k < cfg.n; ++k) {
    const double t = W.time(k);
    const double xk = x[k];
    const double dw = W.values[k + 1] - W.values[k];
    const double zdot = (Zs.values[k + 1] - Zs.values[k]) / dt;  // forward difference
    const double drift = cs.a(t, xk) + cs.c(t, xk) * zdot;
    const double next = xk + drift * dt + cs.b(t, xk) * dw;
    if (!std::isfinite(next) || std::abs(next) > kStateOverflowLimit) {
      overflow(k + 1, W.time(k + 1), next);
    }
    x[k + 1] = next;
  }
  return GridPath(0.0, dt, std::move(x));
}

double tau_N(const GridPath& Z, const HolderParams& p, const TruncationLevel& level) {
  if (!(level.N > 0.0)) throw ConfigError("truncation level N must be positive");
  const Eigen::ArrayXd prof = seminorm_profile(Z, p, Z.steps());
  for (Eigen::Index k = 0; k <= Z.steps(); ++k) {
    if (prof[k] >= level.N) return Z.time(k);
  }
  return Z.horizon();
}

GridPath stop_process(const GridPath& Z, double tau) {
  const Eigen::Index kt = Z.index_of(tau);
  Eigen::ArrayXd out = Z.values;
  for (Eigen::Index k = kt + 1; k <= Z.steps(); ++k) out[k] = out[kt];
  return GridPath(Z.t0, Z.dt, std::move(out));
}

}  // namespace mixedsde
