#include "mixedsde/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "mixedsde/errors.hpp"

namespace mixedsde {

Coefficient::Coefficient(Fn f, Fn dfdx, std::string desc)
    : f_(std::move(f)), dfdx_(std::move(dfdx)), desc_(std::move(desc)) {}

Coefficient Coefficient::zero() {
  return Coefficient([](double, double) { return 0.0; },
                     [](double, double) { return 0.0; }, "zero");
}

Coefficient Coefficient::constant(double value) {
  return Coefficient([value](double, double) { return value; },
                     [](double, double) { return 0.0; },
                     "constant(" + std::to_string(value) + ")");
}

Coefficient Coefficient::linear(double scale) {
  return Coefficient([scale](double, double x) { return scale * x; },
                     [scale](double, double) { return scale; },
                     "linear(" + std::to_string(scale) + ")");
}

Coefficient Coefficient::sine(double amplitude, double frequency) {
  return Coefficient(
      [amplitude, frequency](double, double x) { return amplitude * std::sin(frequency * x); },
      [amplitude, frequency](double, double x) {
        return amplitude * frequency * std::cos(frequency * x);
      },
      "sine(" + std::to_string(amplitude) + "," + std::to_string(frequency) + ")");
}

Coefficient Coefficient::logistic(double amplitude, double rate) {
  return Coefficient(
      [amplitude, rate](double, double x) { return amplitude * std::tanh(rate * x); },
      [amplitude, rate](double, double x) {
        const double c = std::cosh(rate * x);
        return amplitude * rate / (c * c);
      },
      "logistic(" + std::to_string(amplitude) + "," + std::to_string(rate) + ")");
}

Coefficient Coefficient::custom(Fn f, Fn dfdx, std::string desc) {
  return Coefficient(std::move(f), std::move(dfdx), std::move(desc));
}

Coefficient Coefficient::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ConfigError("coefficient needs an object with a \"kind\" field");
  }
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "zero") return zero();
    if (kind == "constant") return constant(j.at("value").get<double>());
    if (kind == "linear") return linear(j.at("scale").get<double>());
    if (kind == "sine") {
      return sine(j.value("amplitude", 1.0), j.value("frequency", 1.0));
    }
    if (kind == "logistic") {
      return logistic(j.value("amplitude", 1.0), j.value("rate", 1.0));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("coefficient \"") + kind + "\": " + e.what());
  }
  throw ConfigError("unknown coefficient kind \"" + kind +
                    "\" (catalog: zero, constant, linear, sine, logistic)");
}

CoefficientSet CoefficientSet::from_json(const nlohmann::json& j) {
  CoefficientSet cs;
  if (!j.is_object()) throw ConfigError("coefficient set must be a JSON object");
  if (j.contains("a")) cs.a = Coefficient::from_json(j.at("a"));
  if (j.contains("b")) cs.b = Coefficient::from_json(j.at("b"));
  if (j.contains("c")) cs.c = Coefficient::from_json(j.at("c"));
  cs.K = j.value("K", 1.0);
  if (j.contains("K1") && !j.at("K1").is_null()) cs.K1 = j.at("K1").get<double>();
  cs.beta = j.value("beta", 0.75);
  if (!(cs.K > 0.0)) throw ConfigError("coefficient set needs K > 0");
  if (!(cs.beta > 0.5)) throw ConfigError("coefficient set needs beta > 1/2");
  return cs;
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConditionCheck& c) { return c.pass; });
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"condition", c.condition},
                   {"observed", c.observed},
                   {"limit", c.limit},
                   {"pass", c.pass}});
  }
  return {{"checks", arr}, {"all_pass", all_pass()}};
}

ValidationReport validate_coefficients(const CoefficientSet& cs,
                                       const std::vector<double>& t_samples,
                                       const std::vector<double>& x_samples,
                                       int quadruples, std::uint64_t seed) {
  if (t_samples.empty() || x_samples.empty()) {
    throw ConfigError("validate_coefficients needs non-empty sample grids");
  }
  ValidationReport report;
  auto add = [&report](std::string cond, double observed, double limit) {
    report.checks.push_back({std::move(cond), observed, limit,
                             observed <= limit * (1.0 + 1e-12) + 1e-15});
  };

  // growth and derivative bound over the sample product grid
  double growth = 0.0, dc_bound = 0.0, b_bound = 0.0;
  for (const double t : t_samples) {
    for (const double x : x_samples) {
      const double s = std::abs(cs.a(t, x)) + std::abs(cs.b(t, x)) + std::abs(cs.c(t, x));
      growth = std::max(growth, s / (1.0 + std::abs(x)));
      dc_bound = std::max(dc_bound, std::abs(cs.c.dx(t, x)));
      b_bound = std::max(b_bound, std::abs(cs.b(t, x)));
    }
  }
  add("(|a|+|b|+|c|)/(1+|x|) <= K", growth, cs.K);
  add("|dc/dx| <= K", dc_bound, cs.K);

  // x-Lipschitz: |a(t,x)-a(t,y)| + |b(t,x)-b(t,y)| + |c_x(t,x)-c_x(t,y)| <= K|x-y|
  double lip = 0.0;
  for (const double t : t_samples) {
    for (std::size_t i = 0; i < x_samples.size(); ++i) {
      for (std::size_t j = i + 1; j < x_samples.size(); ++j) {
        const double x = x_samples[i], y = x_samples[j];
        if (x == y) continue;
        const double num = std::abs(cs.a(t, x) - cs.a(t, y)) +
                           std::abs(cs.b(t, x) - cs.b(t, y)) +
                           std::abs(cs.c.dx(t, x) - cs.c.dx(t, y));
        lip = std::max(lip, num / std::abs(x - y));
      }
    }
  }
  add("x-Lipschitz ratio <= K", lip, cs.K);

  // time Hölder: sum of increments <= K |s-t|^beta
  double tho = 0.0;
  for (std::size_t i = 0; i < t_samples.size(); ++i) {
    for (std::size_t j = i + 1; j < t_samples.size(); ++j) {
      const double s = t_samples[i], t = t_samples[j];
      if (s == t) continue;
      const double den = std::pow(std::abs(t - s), cs.beta);
      for (const double x : x_samples) {
        const double num = std::abs(cs.a(s, x) - cs.a(t, x)) +
                           std::abs(cs.b(s, x) - cs.b(t, x)) +
                           std::abs(cs.c(s, x) - cs.c(t, x)) +
                           std::abs(cs.c.dx(s, x) - cs.c.dx(t, x));
        tho = std::max(tho, num / den);
      }
    }
  }
  add("time-Hölder ratio <= K", tho, cs.K);

  if (cs.K1) {
    add("|b| <= K1", b_bound, *cs.K1);
  }

  // four-point estimate for c on random quadruples from the sample ranges
  const auto [tmin_it, tmax_it] = std::minmax_element(t_samples.begin(), t_samples.end());
  const auto [xmin_it, xmax_it] = std::minmax_element(x_samples.begin(), x_samples.end());
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> ut(*tmin_it, *tmax_it);
  std::uniform_real_distribution<double> ux(*xmin_it, *xmax_it);
  double four_point = 0.0;
  for (int q = 0; q < quadruples; ++q) {
    const double t1 = ut(eng), t2 = ut(eng);
    const double x1 = ux(eng), x2 = ux(eng), x3 = ux(eng), x4 = ux(eng);
    const double lhs = std::abs(cs.c(t1, x1) - cs.c(t2, x2) - cs.c(t1, x3) + cs.c(t2, x4));
    const double rhs = cs.K * std::abs(x1 - x2 - x3 + x4) +
                       cs.K * std::abs(x1 - x3) * std::pow(std::abs(t2 - t1), cs.beta) +
                       cs.K * std::abs(x1 - x3) * (std::abs(x1 - x2) + std::abs(x3 - x4));
    if (rhs > 0.0) {
      four_point = std::max(four_point, lhs / rhs);
    } else if (lhs > 0.0) {
      four_point = std::numeric_limits<double>::infinity();
    }
  }
  add("four-point ratio <= 1", four_point, 1.0);

  return report;
}

}  // namespace mixedsde
