#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace mixedsde {

// Inverse of the standard normal CDF (Wichura's AS241 rational
// approximations, relative error below 1e-15 away from the endpoints).
double inverse_normal_cdf(double p);

// Deterministic stream of standard normals: mt19937_64, top 53 bits mapped
// to a uniform in (0,1), then the inverse CDF. One engine draw per normal,
// so output is a fixed function of the seed; no library distribution is
// involved and results do not depend on the standard library vendor.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    const double u = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    return inverse_normal_cdf(u);
  }

  Eigen::ArrayXd draw(Eigen::Index count) {
    Eigen::ArrayXd out(count);
    for (Eigen::Index i = 0; i < count; ++i) out[i] = next();
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

// Per-path seed derivation: master XOR index times a large odd constant.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return master ^ (index * 0x9E3779B97F4A7C15ULL);
}

}  // namespace mixedsde
