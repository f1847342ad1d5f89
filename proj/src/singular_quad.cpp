#include "mixedsde/singular_quad.hpp"

#include <cmath>
#include <limits>

#include "mixedsde/errors.hpp"

namespace mixedsde {

double power_integral(double p, double q, double e) {
  const double e1 = e + 1.0;
  if (p == 0.0) {
    if (e1 <= 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(q, e1) / e1;
  }
  // p^{e+1} * ((q/p)^{e+1} - 1) / (e+1), with the ratio term via expm1/log1p
  // to keep accuracy when q - p << p.
  const double lr = std::log1p((q - p) / p);
  return std::pow(p, e1) * std::expm1(e1 * lr) / e1;
}

CellWeights singular_cell_weights(double mu, double dt, Eigen::Index nmax) {
  if (!(dt > 0.0)) throw ConfigError("cell weights need dt > 0");
  if (mu >= 2.0) throw ConfigError("kernel order mu must be < 2");
  CellWeights w;
  w.near_w = Eigen::ArrayXd::Zero(nmax + 1);
  w.far_w = Eigen::ArrayXd::Zero(nmax + 1);
  for (Eigen::Index ell = 1; ell <= nmax; ++ell) {
    const double p = dt * static_cast<double>(ell - 1);
    const double q = dt * static_cast<double>(ell);
    const double m1 = power_integral(p, q, 1.0 - mu);
    if (ell == 1) {
      // p = 0: the far weight reduces to M1/dt; the near weight is finite
      // only for mu < 1 and otherwise multiplies a vanishing value.
      w.far_w[1] = m1 / dt;
      w.near_w[1] = (mu < 1.0) ? (q * power_integral(0.0, q, -mu) - m1) / dt : 0.0;
    } else {
      const double m0 = power_integral(p, q, -mu);
      w.near_w[ell] = (q * m0 - m1) / dt;
      w.far_w[ell] = (m1 - p * m0) / dt;
    }
  }
  return w;
}

}  // namespace mixedsde
