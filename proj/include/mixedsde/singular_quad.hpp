#pragma once

#include <Eigen/Dense>

namespace mixedsde {

// ∫_p^q u^e du for e != -1 and 0 <= p < q, evaluated stably when
// (q - p) << p. For p = 0 the exponent must satisfy e > -1.
double power_integral(double p, double q, double e);

// Product-integration cell weights for ∫ phi(s) |s - s_*|^{-mu} ds on a
// uniform grid whose node s_* carries the kernel singularity and phi is
// taken piecewise linear between nodes. Cell ell spans distances
// [(ell-1)*dt, ell*dt] from s_*; near_w[ell] multiplies the phi value at
// the cell node closer to s_*, far_w[ell] the farther one. For mu >= 1,
// near_w[1] would multiply phi(s_*), which must vanish for the integral to
// exist; its (divergent) weight is stored as 0 and must never be paired
// with a nonzero value.
//
// The same arrays serve singularities on either side of the integration
// range; only the near/far orientation flips.
struct CellWeights {
  Eigen::ArrayXd near_w;
  Eigen::ArrayXd far_w;  // index range 1..nmax; entry 0 unused
};

CellWeights singular_cell_weights(double mu, double dt, Eigen::Index nmax);

}  // namespace mixedsde
