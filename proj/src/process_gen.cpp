#include "mixedsde/process_gen.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

#include "mixedsde/errors.hpp"
#include "mixedsde/rng.hpp"

namespace mixedsde {

namespace {

void check_common(const GenConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("path generation needs n >= 1");
  if (!(cfg.T > 0.0)) throw ConfigError("path generation needs T > 0");
}

Eigen::MatrixXd fbm_covariance(Eigen::Index n, double dt, double H) {
  const double h2 = 2.0 * H;
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ti = dt * static_cast<double>(i + 1);
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double tj = dt * static_cast<double>(j + 1);
      const double v = 0.5 * (std::pow(ti, h2) + std::pow(tj, h2) -
                              std::pow(ti - tj, h2));
      cov(i, j) = v;
      cov(j, i) = v;
    }
  }
  return cov;
}

// Plain Cholesky scan used only to name the offending pivot after Eigen's
// factorization has reported a numerical issue.
Eigen::Index first_bad_pivot(const Eigen::MatrixXd& cov, double* value) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(cov.rows(), cov.cols());
  for (Eigen::Index j = 0; j < cov.cols(); ++j) {
    double d = cov(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > 0.0)) {
      *value = d;
      return j;
    }
    l(j, j) = std::sqrt(d);
    for (Eigen::Index i = j + 1; i < cov.rows(); ++i) {
      l(i, j) = (cov(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
    }
  }
  *value = 0.0;
  return -1;
}

}  // namespace

GridPath gen_wiener(const GenConfig& cfg) {
  check_common(cfg);
  const double dt = cfg.T / static_cast<double>(cfg.n);
  const double sdt = std::sqrt(dt);
  NormalStream normals(cfg.seed);
  Eigen::ArrayXd values(cfg.n + 1);
  values[0] = 0.0;
  for (Eigen::Index k = 0; k < cfg.n; ++k) {
    values[k + 1] = values[k] + sdt * normals.next();
  }
  return GridPath(0.0, dt, std::move(values));
}

FbmFactor::FbmFactor(Eigen::Index n, double T, double H)
    : n_(n), T_(T), H_(H), dt_(T / static_cast<double>(n)) {
  if (n < 1) throw ConfigError("fbm factor needs n >= 1");
  if (n > kFbmMaxSteps) {
    throw ConfigError("fbm grid capped at n = " + std::to_string(kFbmMaxSteps) +
                      " (dense Cholesky)");
  }
  if (!(T > 0.0)) throw ConfigError("fbm factor needs T > 0");
  if (!(H >= 0.5 && H < 1.0)) throw ConfigError("fbm needs H in [0.5, 1)");

  chol_ = fbm_covariance(n_, dt_, H_);
  Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(chol_);
  if (llt.info() != Eigen::Success) {
    const Eigen::MatrixXd cov = fbm_covariance(n_, dt_, H_);
    double pivot = 0.0;
    const Eigen::Index k = first_bad_pivot(cov, &pivot);
    throw NumericError("fbm covariance factorization failed at pivot " +
                       std::to_string(k) + " (value " + std::to_string(pivot) + ")");
  }
}

GridPath FbmFactor::sample(std::uint64_t seed) const {
  NormalStream normals(seed);
  const Eigen::VectorXd z = normals.draw(n_).matrix();
  Eigen::ArrayXd values(n_ + 1);
  values[0] = 0.0;
  values.tail(n_) = (chol_.triangularView<Eigen::Lower>() * z).array();
  return GridPath(0.0, dt_, std::move(values));
}

GridPath gen_fbm(const GenConfig& cfg) {
  check_common(cfg);
  return FbmFactor(cfg.n, cfg.T, cfg.H).sample(cfg.seed);
}

double holder_constant(const GridPath& path, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("holder_constant needs gamma in (0,1)");
  const Eigen::Index n = path.steps();
  Eigen::ArrayXd inv_pow(n + 1);
  for (Eigen::Index k = 1; k <= n; ++k) {
    inv_pow[k] = std::pow(path.dt * static_cast<double>(k), -gamma);
  }
  double best = 0.0;
  const auto& v = path.values;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j <= n; ++j) {
      const double q = std::abs(v[j] - v[i]) * inv_pow[j - i];
      if (q > best) best = q;
    }
  }
  return best;
}

}  // namespace mixedsde
