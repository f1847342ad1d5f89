#include "mixedsde/holder.hpp"

#include <cmath>

#include "mixedsde/errors.hpp"
#include "mixedsde/singular_quad.hpp"

namespace mixedsde {

HolderParams::HolderParams(double alpha_, double gamma_) : alpha(alpha_), gamma(gamma_) {
  if (!(gamma > 0.5 && gamma < 1.0)) throw ConfigError("HolderParams needs gamma in (1/2, 1)");
  if (!(alpha > 1.0 - gamma && alpha < 0.5)) {
    throw ConfigError("HolderParams needs alpha in (1 - gamma, 1/2)");
  }
}

namespace {

Eigen::Index anchor_index(const GridPath& f, double t) {
  const Eigen::Index it = f.index_of(t);
  if (it < 1) throw ConfigError("norm evaluation needs t > t0");
  return it;
}

// norm_alpha at the single anchor node m, reusing precomputed weights for
// the kernel (t - s)^{-1-alpha}. Cell ell spans nodes m-ell (far) and
// m-ell+1 (near); the near value of cell 1 is |f(t)-f(t)| = 0.
double norm_alpha_at(const Eigen::ArrayXd& v, const CellWeights& w, Eigen::Index m) {
  const double fm = v[m];
  double acc = 0.0;
  double near_val = 0.0;
  for (Eigen::Index ell = 1; ell <= m; ++ell) {
    const double far_val = std::abs(fm - v[m - ell]);
    acc += w.far_w[ell] * far_val + w.near_w[ell] * near_val;
    near_val = far_val;
  }
  return std::abs(fm) + acc;
}

}  // namespace

double norm_alpha(const GridPath& f, const HolderParams& p, double t) {
  const Eigen::Index it = anchor_index(f, t);
  const CellWeights w = singular_cell_weights(1.0 + p.alpha, f.dt, it);
  return norm_alpha_at(f.values, w, it);
}

Eigen::ArrayXd norm_alpha_profile(const GridPath& f, const HolderParams& p,
                                  Eigen::Index kmax) {
  if (kmax < 0 || kmax > f.steps()) throw ConfigError("profile index out of range");
  Eigen::ArrayXd out(kmax + 1);
  out[0] = std::abs(f.values[0]);
  if (kmax == 0) return out;
  const CellWeights w = singular_cell_weights(1.0 + p.alpha, f.dt, kmax);
  for (Eigen::Index m = 1; m <= kmax; ++m) {
    out[m] = norm_alpha_at(f.values, w, m);
  }
  return out;
}

double seminorm_0alpha(const GridPath& f, const HolderParams& p, double t) {
  const Eigen::Index it = anchor_index(f, t);
  const CellWeights w = singular_cell_weights(2.0 - p.alpha, f.dt, it);
  Eigen::ArrayXd qpow(it + 1);
  for (Eigen::Index k = 1; k <= it; ++k) {
    qpow[k] = std::pow(f.dt * static_cast<double>(k), p.alpha - 1.0);
  }
  const auto& v = f.values;
  double best = 0.0;
  for (Eigen::Index i = 0; i < it; ++i) {
    const double fi = v[i];
    double integ = 0.0;
    double near_val = 0.0;
    for (Eigen::Index j = i + 1; j <= it; ++j) {
      const Eigen::Index ell = j - i;
      const double far_val = std::abs(v[j] - fi);
      integ += w.near_w[ell] * near_val + w.far_w[ell] * far_val;
      const double cand = far_val * qpow[ell] + integ;
      if (cand > best) best = cand;
      near_val = far_val;
    }
  }
  return best;
}

Eigen::ArrayXd seminorm_profile(const GridPath& f, const HolderParams& p,
                                Eigen::Index kmax) {
  if (kmax < 0 || kmax > f.steps()) throw ConfigError("profile index out of range");
  Eigen::ArrayXd best_at = Eigen::ArrayXd::Zero(kmax + 1);
  if (kmax >= 1) {
    const CellWeights w = singular_cell_weights(2.0 - p.alpha, f.dt, kmax);
    Eigen::ArrayXd qpow(kmax + 1);
    for (Eigen::Index k = 1; k <= kmax; ++k) {
      qpow[k] = std::pow(f.dt * static_cast<double>(k), p.alpha - 1.0);
    }
    const auto& v = f.values;
    for (Eigen::Index i = 0; i < kmax; ++i) {
      const double fi = v[i];
      double integ = 0.0;
      double near_val = 0.0;
      for (Eigen::Index j = i + 1; j <= kmax; ++j) {
        const Eigen::Index ell = j - i;
        const double far_val = std::abs(v[j] - fi);
        integ += w.near_w[ell] * near_val + w.far_w[ell] * far_val;
        const double cand = far_val * qpow[ell] + integ;
        if (cand > best_at[j]) best_at[j] = cand;
        near_val = far_val;
      }
    }
  }
  // running sup: the pair set only grows with t
  for (Eigen::Index k = 1; k <= kmax; ++k) {
    if (best_at[k] < best_at[k - 1]) best_at[k] = best_at[k - 1];
  }
  return best_at;
}

double norm_2alpha(const GridPath& f, const HolderParams& p, double t) {
  const Eigen::Index it = anchor_index(f, t);
  const Eigen::ArrayXd prof = norm_alpha_profile(f, p, it);
  const Eigen::ArrayXd psi = prof.square();
  // weight kernel s^{-alpha} (singular at s = 0) plus (t-s)^{-alpha-1/2}
  // (singular at s = t); both orders are below 1, so every node weight is
  // finite and the endpoint values contribute.
  const CellWeights wl = singular_cell_weights(p.alpha, f.dt, it);
  const CellWeights wr = singular_cell_weights(p.alpha + 0.5, f.dt, it);
  double acc = 0.0;
  for (Eigen::Index ell = 1; ell <= it; ++ell) {
    acc += wl.near_w[ell] * psi[ell - 1] + wl.far_w[ell] * psi[ell];
    acc += wr.near_w[ell] * psi[it - ell + 1] + wr.far_w[ell] * psi[it - ell];
  }
  return acc;
}

double norm_infalpha(const GridPath& f, const HolderParams& p, double t) {
  const Eigen::Index it = f.index_of(t);
  if (it == 0) return std::abs(f.values[0]);
  return norm_alpha_profile(f, p, it).maxCoeff();
}

}  // namespace mixedsde
