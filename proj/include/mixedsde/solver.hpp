#pragma once

#include <cstdint>

#include "mixedsde/coefficients.hpp"
#include "mixedsde/grid_path.hpp"
#include "mixedsde/holder.hpp"

namespace mixedsde {

// Level for the driver-seminorm stopping time.
struct TruncationLevel {
  double N = 1.0;
};

struct SolveConfig {
  double x0 = 0.0;
  Eigen::Index n = 0;
  double T = 0.0;
  double alpha = 0.4;   // norm parameters for seminorm-based guards
  double gamma = 0.7;
  std::uint64_t seed_w = 0;  // used by callers that generate the drivers
  std::uint64_t seed_z = 0;
};

// States beyond this magnitude abort the solve; linear-growth coefficients
// can blow up numerically well before the horizon.
inline constexpr double kStateOverflowLimit = 1e12;

// Explicit left-point Euler scheme for
//   dX = a(t,X) dt + b(t,X) dW + c(t,X) dZ,  X_0 = x0:
//   X_{k+1} = X_k + a dt + b dW_k + c dZ_k, all coefficients at (t_k, X_k).
// Left-point increments match both the Ito integral in W and the
// forward-sum pathwise integral in Z.
GridPath euler_solve_mixed(const CoefficientSet& cs, const SolveConfig& cfg,
                           const GridPath& W, const GridPath& Z);

// Euler-Maruyama for the equation with a differentiable driver, written as
// an Ito equation with random drift a(t,x) + c(t,x) Zs'(t), where Zs' is the
// forward difference of Zs. Algebraically the update coincides with
// euler_solve_mixed(cs, cfg, W, Zs); outputs agree up to floating-point
// associativity.
GridPath solve_smooth_driver(const CoefficientSet& cs, const SolveConfig& cfg,
                             const GridPath& W, const GridPath& Zs);

// First grid time with seminorm_0alpha(Z, p, t) >= level.N, or the horizon.
double tau_N(const GridPath& Z, const HolderParams& p, const TruncationLevel& level);

// Path frozen at its value from time tau onward.
GridPath stop_process(const GridPath& Z, double tau);

}  // namespace mixedsde
