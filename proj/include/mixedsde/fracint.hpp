#pragma once

#include "mixedsde/grid_path.hpp"

namespace mixedsde {

// Left-sided fractional derivative of order alpha in (0,1) on [a, b]:
//   (1/Gamma(1-alpha)) * [ f(x) (x-a)^{-alpha}
//                          + alpha ∫_a^x (f(x)-f(u)) (x-u)^{-1-alpha} du ].
// Sampled on the subgrid of [a, b] (result t0 = a). The endpoints carry the
// open-interval convention and are set to 0.
GridPath frac_deriv_left(const GridPath& f, double alpha, double a, double b);

// Real-valued right-sided derivative of order 1 - alpha applied to
// g_{b-}(x) = g(x) - g(b):
//   (1/Gamma(alpha)) * [ (g(x)-g(b)) (b-x)^{alpha-1}
//                        + (1-alpha) ∫_x^b (g(x)-g(u)) (u-x)^{alpha-2} du ].
// Endpoints follow the same open-interval convention.
GridPath frac_deriv_right(const GridPath& g, double alpha, double a, double b);

// Generalized Lebesgue-Stieltjes integral ∫_a^b f dg through the two
// fractional derivatives above. With the real-valued derivative convention
// the defining identity carries a net factor -1 (the first-order right-sided
// derivative is -d/dx), so the value returned is
//   -∫_a^b (D_{a+}^{alpha} f)(x) (D_{b-}^{1-alpha} g_{b-})(x) dx,
// which reproduces ∫ f dg (e.g. f ≡ 1 gives g(b) - g(a)). The outer integral
// uses the trapezoid rule on interior nodes; the endpoint cells use
// closed-form kernel integration against the piecewise-linear extension.
// The value does not depend on alpha; numerically different alphas agree to
// quadrature tolerance.
double gls_integral(const GridPath& f, const GridPath& g, double alpha,
                    double a, double b);

struct PathwiseBound {
  double integral = 0.0;
  double bound = 0.0;  // ∫_a^b |D_{a+}^{alpha} f| dx * sup_x |D_{b-}^{1-alpha} g_{b-}|
};

// Same quadrature cells with absolute values, so |integral| <= bound holds
// numerically, not just in exact arithmetic.
PathwiseBound pathwise_bound(const GridPath& f, const GridPath& g, double alpha,
                             double a, double b);

}  // namespace mixedsde
