#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mixedsde {

// Scalar coefficient f(t, x) with an analytic x-derivative, drawn from a
// small named catalog so runs stay configurable from JSON without an
// expression interpreter.
class Coefficient {
 public:
  double operator()(double t, double x) const { return f_(t, x); }
  double dx(double t, double x) const { return dfdx_(t, x); }
  const std::string& describe() const { return desc_; }

  static Coefficient zero();
  static Coefficient constant(double value);
  static Coefficient linear(double scale);                       // scale * x
  static Coefficient sine(double amplitude, double frequency);   // amplitude * sin(frequency * x)
  static Coefficient logistic(double amplitude, double rate);    // amplitude * tanh(rate * x)

  using Fn = std::function<double(double, double)>;
  static Coefficient custom(Fn f, Fn dfdx, std::string desc);

  static Coefficient from_json(const nlohmann::json& j);

 private:
  Coefficient(Fn f, Fn dfdx, std::string desc);
  Fn f_, dfdx_;
  std::string desc_;
};

// Drift a, diffusion b, driver coefficient c, with the declared constants
// they are supposed to satisfy: linear growth / Lipschitz constant K, the
// optional uniform bound K1 for b, and the time-Hölder exponent beta > 1/2.
struct CoefficientSet {
  Coefficient a = Coefficient::zero();
  Coefficient b = Coefficient::zero();
  Coefficient c = Coefficient::zero();
  double K = 1.0;
  std::optional<double> K1;
  double beta = 0.75;

  static CoefficientSet from_json(const nlohmann::json& j);
};

struct ConditionCheck {
  std::string condition;
  double observed = 0.0;
  double limit = 0.0;
  bool pass = true;
};

struct ValidationReport {
  std::vector<ConditionCheck> checks;
  bool all_pass() const;
  nlohmann::json to_json() const;
};

// Empirically checks the declared constants on the sample grids: linear
// growth of |a|+|b|+|c|, the bound on |∂x c|, x-Lipschitz ratios, time
// Hölder ratios, |b| <= K1 when declared, and the four-point estimate
//   |c(t1,x1)-c(t2,x2)-c(t1,x3)+c(t2,x4)|
//     <= K|x1-x2-x3+x4| + K|x1-x3||t2-t1|^beta + K|x1-x3|(|x1-x2|+|x3-x4|)
// on seeded random quadruples. Violations become report entries, never
// exceptions.
ValidationReport validate_coefficients(const CoefficientSet& cs,
                                       const std::vector<double>& t_samples,
                                       const std::vector<double>& x_samples,
                                       int quadruples = 100000,
                                       std::uint64_t seed = 0x51AB1E5EEDULL);

}  // namespace mixedsde
