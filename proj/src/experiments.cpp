#include "mixedsde/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include "mixedsde/errors.hpp"
#include "mixedsde/holder.hpp"
#include "mixedsde/io.hpp"
#include "mixedsde/mollify.hpp"
#include "mixedsde/process_gen.hpp"
#include "mixedsde/rng.hpp"
#include "mixedsde/singular_quad.hpp"
#include "mixedsde/solver.hpp"

namespace mixedsde {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMaxFailureFraction = 0.02;

double median_of(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return (v.size() % 2 == 1) ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// nearest-rank percentile (q in (0,1])
double percentile_of(std::vector<double> v, double q) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(v.size())));
  return v[std::min(v.size() - 1, std::max<std::size_t>(rank, 1) - 1)];
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return kNaN;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const auto k = static_cast<double>(x.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

// Runs body(i) for i = 0..count-1 on up to `jobs` workers. Each index is
// independent; results land in preallocated slots, so the outcome does not
// depend on the schedule.
void parallel_for(Eigen::Index count, int jobs,
                  const std::function<void(Eigen::Index)>& body) {
  if (jobs <= 1 || count <= 1) {
    for (Eigen::Index i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<Eigen::Index> next(0);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const Eigen::Index i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  const int workers = std::min<int>(jobs, static_cast<int>(count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct SeedPair {
  std::uint64_t w, z;
};

SeedPair seeds_for_path(std::uint64_t master, Eigen::Index i) {
  const auto idx = static_cast<std::uint64_t>(i);
  return {derive_seed(master, 2 * idx), derive_seed(master, 2 * idx + 1)};
}

void check_eps_decreasing(const std::vector<double>& eps, double T) {
  if (eps.empty()) throw ConfigError("experiment needs at least one eps level");
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(eps[k] > 0.0 && eps[k] < T)) throw ConfigError("eps levels must lie in (0, T)");
    if (k > 0 && !(eps[k] < eps[k - 1])) throw ConfigError("eps levels must decrease");
  }
}

void check_failures(Eigen::Index failures, Eigen::Index total) {
  const double frac = static_cast<double>(failures) / static_cast<double>(total);
  if (failures > 0 && frac >= kMaxFailureFraction) {
    throw NumericError("experiment failed: " + std::to_string(failures) + "/" +
                       std::to_string(total) + " paths overflowed");
  }
}

double sup_abs_diff(const GridPath& a, const GridPath& b) {
  return (a.values - b.values).abs().maxCoeff();
}

SolveConfig solve_config(const ExperimentConfig& cfg, const SeedPair& sp) {
  SolveConfig s;
  s.x0 = cfg.x0;
  s.n = cfg.n;
  s.T = cfg.T;
  s.alpha = cfg.effective_alpha();
  s.gamma = cfg.effective_gamma();
  s.seed_w = sp.w;
  s.seed_z = sp.z;
  return s;
}

nlohmann::json column_stats_json(const std::vector<double>& values) {
  nlohmann::json j = nlohmann::json::array();
  for (double v : values) j.push_back(v);
  return j;
}

}  // namespace

double ExperimentConfig::effective_gamma() const {
  return gamma > 0.0 ? gamma : H - 0.01;
}

double ExperimentConfig::effective_alpha() const {
  return alpha > 0.0 ? alpha : HolderParams::default_alpha(effective_gamma());
}

std::vector<double> ExperimentConfig::effective_eps() const {
  if (!eps_levels.empty()) return eps_levels;
  std::vector<double> out;
  for (int k = 3; k <= 8; ++k) out.push_back(std::pow(2.0, -k));
  return out;
}

std::vector<double> ExperimentConfig::effective_p_list() const {
  if (!p_list.empty()) return p_list;
  return {1.0, 2.0, 4.0};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  if (!j.contains("coefficients")) throw ConfigError("experiment config needs \"coefficients\"");
  ExperimentConfig cfg;
  cfg.coeffs = CoefficientSet::from_json(j.at("coefficients"));
  cfg.x0 = j.value("x0", 1.0);
  cfg.n = j.value("n", Eigen::Index(2048));
  cfg.T = j.value("T", 1.0);
  cfg.H = j.value("H", 0.7);
  cfg.gamma = j.value("gamma", 0.0);
  cfg.alpha = j.value("alpha", 0.0);
  cfg.master_seed = j.value("master_seed", std::uint64_t(1));
  cfg.paths = j.value("paths", 200);
  if (j.contains("eps_levels")) {
    cfg.eps_levels = j.at("eps_levels").get<std::vector<double>>();
  }
  cfg.dev_threshold = j.value("dev_threshold", 0.05);
  cfg.trunc_N = j.value("trunc_N", 0.0);
  cfg.radius_R = j.value("radius_R", 0.0);
  cfg.pilot_paths = j.value("pilot_paths", 50);
  if (j.contains("p_list")) cfg.p_list = j.at("p_list").get<std::vector<double>>();
  cfg.exp_scale = j.value("exp_scale", 0.002);
  cfg.n_refined = j.value("n_refined", Eigen::Index(0));
  cfg.jobs = j.value("jobs", 1);

  if (cfg.n < 1) throw ConfigError("experiment needs n >= 1");
  if (!(cfg.T > 0.0)) throw ConfigError("experiment needs T > 0");
  if (!(cfg.H >= 0.5 && cfg.H < 1.0)) throw ConfigError("experiment needs H in [0.5, 1)");
  if (cfg.paths < 1) throw ConfigError("experiment needs paths >= 1");
  return cfg;
}

nlohmann::json ExperimentConfig::echo_json(const std::string& experiment) const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["coefficients"] = {{"a", coeffs.a.describe()},
                       {"b", coeffs.b.describe()},
                       {"c", coeffs.c.describe()},
                       {"K", coeffs.K},
                       {"beta", coeffs.beta}};
  if (coeffs.K1) j["coefficients"]["K1"] = *coeffs.K1;
  j["x0"] = x0;
  j["n"] = n;
  j["T"] = T;
  j["H"] = H;
  j["gamma"] = effective_gamma();
  j["alpha"] = effective_alpha();
  j["master_seed"] = master_seed;
  j["paths"] = paths;
  return j;
}

// ---------------------------------------------------------------------------
// limit theorem: reference solution vs mollified-driver solutions
// ---------------------------------------------------------------------------

namespace {

nlohmann::json summarize_limit(const ExperimentConfig& cfg,
                               const std::vector<std::vector<double>>& records) {
  const auto eps = cfg.effective_eps();
  const auto levels = eps.size();
  const auto total = static_cast<Eigen::Index>(records.size());
  Eigen::Index ok = 0;
  std::vector<Eigen::Index> exceed(levels, 0);
  std::vector<std::vector<double>> norm2a(levels);
  for (const auto& row : records) {
    if (row[1] != 1.0) continue;
    ++ok;
    for (std::size_t k = 0; k < levels; ++k) {
      if (row[2 + k] > cfg.dev_threshold) ++exceed[k];
      norm2a[k].push_back(row[2 + 2 * levels + k]);
    }
  }
  std::vector<double> prob(levels, kNaN), med(levels, kNaN);
  for (std::size_t k = 0; k < levels; ++k) {
    if (ok > 0) prob[k] = static_cast<double>(exceed[k]) / static_cast<double>(ok);
    med[k] = median_of(norm2a[k]);
  }

  // non-increasing up to two binomial standard errors per consecutive pair
  bool monotone = true;
  for (std::size_t k = 0; k + 1 < levels; ++k) {
    const double pbar = 0.5 * (prob[k] + prob[k + 1]);
    const double se = std::sqrt(std::max(pbar * (1.0 - pbar), 0.0) /
                                std::max<double>(1.0, static_cast<double>(ok)));
    const double slack = 2.0 * std::max(se, 1.0 / std::max<double>(1.0, static_cast<double>(ok)));
    if (prob[k + 1] > prob[k] + slack) monotone = false;
  }

  nlohmann::json s;
  s["config"] = cfg.echo_json("converge");
  s["paths"] = total;
  s["failures"] = total - ok;
  s["dev_threshold"] = cfg.dev_threshold;
  s["eps"] = column_stats_json(eps);
  s["prob_exceed"] = column_stats_json(prob);
  s["median_norm2alpha"] = column_stats_json(med);
  s["monotone_within_noise"] = monotone;
  s["finest_prob"] = prob.empty() ? kNaN : prob.back();
  return s;
}

}  // namespace

EnsembleResult limit_theorem_experiment(const ExperimentConfig& cfg) {
  if (cfg.paths < 50) throw ConfigError("limit theorem experiment needs at least 50 paths");
  const auto eps = cfg.effective_eps();
  check_eps_decreasing(eps, cfg.T);
  const HolderParams p(cfg.effective_alpha(), cfg.effective_gamma());
  const FbmFactor factor(cfg.n, cfg.T, cfg.H);
  const auto levels = eps.size();

  EnsembleResult result;
  result.columns = {"seed", "status"};
  for (std::size_t k = 0; k < levels; ++k) result.columns.push_back("sup_dev_" + std::to_string(k));
  for (std::size_t k = 0; k < levels; ++k) result.columns.push_back("gap_" + std::to_string(k));
  for (std::size_t k = 0; k < levels; ++k) result.columns.push_back("norm2a_" + std::to_string(k));
  result.records.assign(cfg.paths, std::vector<double>(2 + 3 * levels, kNaN));

  parallel_for(cfg.paths, cfg.jobs, [&](Eigen::Index i) {
    auto& row = result.records[static_cast<std::size_t>(i)];
    row[0] = static_cast<double>(i);
    const SeedPair sp = seeds_for_path(cfg.master_seed, i);
    try {
      const GridPath W = gen_wiener({cfg.n, cfg.T, 0.5, sp.w});
      const GridPath Z = factor.sample(sp.z);
      const SolveConfig scfg = solve_config(cfg, sp);
      const GridPath X = euler_solve_mixed(cfg.coeffs, scfg, W, Z);
      for (std::size_t k = 0; k < levels; ++k) {
        const GridPath Zeps = mollify(Z, eps[k]);
        const GridPath Xeps = solve_smooth_driver(cfg.coeffs, scfg, W, Zeps);
        row[2 + k] = sup_abs_diff(Xeps, X);
        row[2 + levels + k] = seminorm_0alpha(Z - Zeps, p, cfg.T);
        row[2 + 2 * levels + k] = norm_2alpha(X - Xeps, p, cfg.T);
      }
      row[1] = 1.0;
    } catch (const NumericError&) {
      row[1] = 0.0;
    }
  });

  Eigen::Index failures = 0;
  for (const auto& row : result.records) {
    if (row[1] != 1.0) ++failures;
  }
  check_failures(failures, cfg.paths);

  result.summary = summarize_limit(cfg, result.records);
  result.plot_columns = {"eps", "prob_exceed", "median_norm2alpha"};
  for (std::size_t k = 0; k < levels; ++k) {
    result.plot_rows.push_back({eps[k],
                                result.summary["prob_exceed"][k].get<double>(),
                                result.summary["median_norm2alpha"][k].get<double>()});
  }
  return result;
}

// ---------------------------------------------------------------------------
// localized L2 difference regression
// ---------------------------------------------------------------------------

namespace {

nlohmann::json summarize_l2diff(const ExperimentConfig& cfg, double N, double R,
                                const std::vector<std::vector<double>>& records) {
  const auto eps = cfg.effective_eps();
  const auto levels = eps.size();
  const auto total = static_cast<Eigen::Index>(records.size());
  Eigen::Index ok = 0;
  std::vector<double> e_sup2(levels, 0.0), e_gap2(levels, 0.0);
  std::vector<Eigen::Index> in_a(levels, 0);
  for (const auto& row : records) {
    if (row[1] != 1.0) continue;
    ++ok;
    for (std::size_t k = 0; k < levels; ++k) {
      const double ind = row[4 + 4 * levels + k];
      e_sup2[k] += row[4 + k] * ind;
      e_gap2[k] += row[4 + levels + k] * ind;
      if (ind > 0.5) ++in_a[k];
    }
  }
  std::vector<double> xs, ys;
  nlohmann::json included = nlohmann::json::array();
  for (std::size_t k = 0; k < levels; ++k) {
    if (ok > 0) {
      e_sup2[k] /= static_cast<double>(ok);
      e_gap2[k] /= static_cast<double>(ok);
    }
    const bool incl = in_a[k] > 0 && e_gap2[k] > 0.0 && e_sup2[k] > 0.0;
    if (!incl) {
      std::cerr << "l2diff: level eps = " << eps[k]
                << " excluded (empty localization event or degenerate moments)\n";
    }
    included.push_back(incl);
    if (incl) {
      xs.push_back(e_gap2[k]);
      ys.push_back(e_sup2[k]);
    }
  }

  nlohmann::json s;
  s["config"] = cfg.echo_json("l2diff");
  s["paths"] = total;
  s["failures"] = total - ok;
  s["trunc_N"] = N;
  s["radius_R"] = R;
  s["eps"] = column_stats_json(eps);
  s["e_sup2_on_A"] = column_stats_json(e_sup2);
  s["e_gap2_on_A"] = column_stats_json(e_gap2);
  s["included"] = included;
  s["slope"] = fit_loglog_slope(xs, ys);
  return s;
}

}  // namespace

EnsembleResult l2_difference_experiment(const ExperimentConfig& cfg) {
  if (cfg.paths < 50) throw ConfigError("l2 difference experiment needs at least 50 paths");
  const auto eps = cfg.effective_eps();
  check_eps_decreasing(eps, cfg.T);
  const HolderParams p(cfg.effective_alpha(), cfg.effective_gamma());
  const FbmFactor factor(cfg.n, cfg.T, cfg.H);
  const auto levels = eps.size();

  // localization levels from a pilot run when not supplied
  double N = cfg.trunc_N;
  double R = cfg.radius_R;
  if (N <= 0.0 || R <= 0.0) {
    const Eigen::Index pilots = std::min<Eigen::Index>(cfg.pilot_paths, cfg.paths);
    std::vector<double> sem(pilots), sup(pilots);
    parallel_for(pilots, cfg.jobs, [&](Eigen::Index i) {
      const SeedPair sp = seeds_for_path(cfg.master_seed, i);
      const GridPath W = gen_wiener({cfg.n, cfg.T, 0.5, sp.w});
      const GridPath Z = factor.sample(sp.z);
      const GridPath X = euler_solve_mixed(cfg.coeffs, solve_config(cfg, sp), W, Z);
      sem[i] = seminorm_0alpha(Z, p, cfg.T);
      sup[i] = X.values.abs().maxCoeff();
    });
    if (N <= 0.0) N = percentile_of(sem, 0.9);
    if (R <= 0.0) R = percentile_of(sup, 0.9);
  }

  EnsembleResult result;
  result.columns = {"seed", "status", "sem_z", "sup_x"};
  for (std::size_t k = 0; k < levels; ++k) result.columns.push_back("sup2_" + std::to_string(k));
  for (std::size_t k = 0; k < levels; ++k) result.columns.push_back("gap2_" + std::to_string(k));
  for (std::size_t k = 0; k < levels; ++k) result.columns.push_back("sem_zeps_" + std::to_string(k));
  for (std::size_t k = 0; k < levels; ++k) result.columns.push_back("sup_xeps_" + std::to_string(k));
  for (std::size_t k = 0; k < levels; ++k) result.columns.push_back("in_a_" + std::to_string(k));
  result.records.assign(cfg.paths, std::vector<double>(4 + 5 * levels, kNaN));

  parallel_for(cfg.paths, cfg.jobs, [&](Eigen::Index i) {
    auto& row = result.records[static_cast<std::size_t>(i)];
    row[0] = static_cast<double>(i);
    const SeedPair sp = seeds_for_path(cfg.master_seed, i);
    try {
      const GridPath W = gen_wiener({cfg.n, cfg.T, 0.5, sp.w});
      const GridPath Z = factor.sample(sp.z);
      const SolveConfig scfg = solve_config(cfg, sp);
      const GridPath X = euler_solve_mixed(cfg.coeffs, scfg, W, Z);
      const double sem_z = seminorm_0alpha(Z, p, cfg.T);
      const double sup_x = X.values.abs().maxCoeff();
      row[2] = sem_z;
      row[3] = sup_x;
      for (std::size_t k = 0; k < levels; ++k) {
        const GridPath Zeps = mollify(Z, eps[k]);
        const GridPath Xeps = solve_smooth_driver(cfg.coeffs, scfg, W, Zeps);
        const double dev = sup_abs_diff(Xeps, X);
        const double gap = seminorm_0alpha(Z - Zeps, p, cfg.T);
        const double sem_zeps = seminorm_0alpha(Zeps, p, cfg.T);
        const double sup_xeps = Xeps.values.abs().maxCoeff();
        row[4 + k] = dev * dev;
        row[4 + levels + k] = gap * gap;
        row[4 + 2 * levels + k] = sem_zeps;
        row[4 + 3 * levels + k] = sup_xeps;
        const bool in_a = sup_x <= R && sup_xeps <= R && sem_z <= N && sem_zeps <= N;
        row[4 + 4 * levels + k] = in_a ? 1.0 : 0.0;
      }
      row[1] = 1.0;
    } catch (const NumericError&) {
      row[1] = 0.0;
    }
  });

  Eigen::Index failures = 0;
  for (const auto& row : result.records) {
    if (row[1] != 1.0) ++failures;
  }
  check_failures(failures, cfg.paths);

  result.summary = summarize_l2diff(cfg, N, R, result.records);
  result.plot_columns = {"eps", "e_gap2_on_A", "e_sup2_on_A"};
  for (std::size_t k = 0; k < levels; ++k) {
    result.plot_rows.push_back({eps[k],
                                result.summary["e_gap2_on_A"][k].get<double>(),
                                result.summary["e_sup2_on_A"][k].get<double>()});
  }
  return result;
}

// ---------------------------------------------------------------------------
// moments under grid refinement, plus the exponential-moment statistic
// ---------------------------------------------------------------------------

namespace {

nlohmann::json summarize_moments(const ExperimentConfig& cfg,
                                 const std::vector<std::vector<double>>& records) {
  const auto ps = cfg.effective_p_list();
  const auto total = static_cast<Eigen::Index>(records.size());
  std::vector<double> base, fine, expterms;
  for (const auto& row : records) {
    if (row[1] != 1.0) continue;
    base.push_back(row[2]);
    fine.push_back(row[3]);
    expterms.push_back(row[5]);
  }
  nlohmann::json moments = nlohmann::json::array();
  for (const double pw : ps) {
    double mb = 0.0, mf = 0.0;
    for (double v : base) mb += std::pow(v, pw);
    for (double v : fine) mf += std::pow(v, pw);
    mb /= std::max<double>(1.0, static_cast<double>(base.size()));
    mf /= std::max<double>(1.0, static_cast<double>(fine.size()));
    moments.push_back({{"p", pw},
                       {"mean_base", mb},
                       {"mean_refined", mf},
                       {"refinement_ratio", mf / mb}});
  }

  // running-mean stabilization of the exponential statistic
  double mean_all = 0.0, mean_half = 0.0;
  const std::size_t half = (expterms.size() + 1) / 2;
  for (std::size_t i = 0; i < expterms.size(); ++i) {
    mean_all += expterms[i];
    if (i < half) mean_half += expterms[i];
  }
  if (!expterms.empty()) {
    mean_all /= static_cast<double>(expterms.size());
    mean_half /= static_cast<double>(half);
  }
  const bool stabilized = std::isfinite(mean_all) && mean_all > 0.0 &&
                          std::abs(mean_all - mean_half) <= 0.2 * mean_all;

  nlohmann::json s;
  s["config"] = cfg.echo_json("moments");
  s["paths"] = total;
  s["failures"] = total - static_cast<Eigen::Index>(base.size());
  s["n_base"] = cfg.n;
  s["n_refined"] = cfg.n_refined > 0 ? cfg.n_refined : 2 * cfg.n;
  s["moments"] = moments;
  s["exp_scale"] = cfg.exp_scale;
  s["exp_moment"] = mean_all;
  s["exp_moment_first_half"] = mean_half;
  s["exp_moment_stabilized"] = stabilized;
  return s;
}

}  // namespace

EnsembleResult moment_experiment(const ExperimentConfig& cfg) {
  const double alpha = cfg.effective_alpha();
  if (!(alpha < 0.25)) {
    throw ConfigError("moment experiment needs alpha < 1/4");
  }
  if (!(cfg.H > 0.75)) throw ConfigError("moment experiment needs H > 3/4");
  if (!cfg.coeffs.K1) {
    throw ConfigError("moment experiment needs a declared bound K1 for b");
  }
  const HolderParams p(alpha, cfg.effective_gamma());
  const Eigen::Index n2 = cfg.n_refined > 0 ? cfg.n_refined : 2 * cfg.n;
  const FbmFactor factor(cfg.n, cfg.T, cfg.H);
  const FbmFactor factor2(n2, cfg.T, cfg.H);
  const double exp_power = 1.0 / (1.0 - 2.0 * alpha);

  EnsembleResult result;
  result.columns = {"seed", "status", "norminf_base", "norminf_refined", "sem_z", "exp_term"};
  result.records.assign(cfg.paths, std::vector<double>(6, kNaN));

  parallel_for(cfg.paths, cfg.jobs, [&](Eigen::Index i) {
    auto& row = result.records[static_cast<std::size_t>(i)];
    row[0] = static_cast<double>(i);
    const SeedPair sp = seeds_for_path(cfg.master_seed, i);
    try {
      const GridPath W = gen_wiener({cfg.n, cfg.T, 0.5, sp.w});
      const GridPath Z = factor.sample(sp.z);
      const SolveConfig scfg = solve_config(cfg, sp);
      const GridPath X = euler_solve_mixed(cfg.coeffs, scfg, W, Z);

      const GridPath W2 = gen_wiener({n2, cfg.T, 0.5, sp.w});
      const GridPath Z2 = factor2.sample(sp.z);
      SolveConfig scfg2 = scfg;
      scfg2.n = n2;
      const GridPath X2 = euler_solve_mixed(cfg.coeffs, scfg2, W2, Z2);

      row[2] = norm_infalpha(X, p, cfg.T);
      row[3] = norm_infalpha(X2, p, cfg.T);
      row[4] = seminorm_0alpha(Z, p, cfg.T);
      row[5] = std::exp(cfg.exp_scale * std::pow(row[4], exp_power));
      row[1] = 1.0;
    } catch (const NumericError&) {
      row[1] = 0.0;
    }
  });

  Eigen::Index failures = 0;
  for (const auto& row : result.records) {
    if (row[1] != 1.0) ++failures;
  }
  check_failures(failures, cfg.paths);

  result.summary = summarize_moments(cfg, result.records);
  result.plot_columns = {"p", "mean_base", "mean_refined", "refinement_ratio"};
  for (const auto& m : result.summary["moments"]) {
    result.plot_rows.push_back({m["p"].get<double>(), m["mean_base"].get<double>(),
                                m["mean_refined"].get<double>(),
                                m["refinement_ratio"].get<double>()});
  }
  return result;
}

// ---------------------------------------------------------------------------
// a-priori inequality spot check
// ---------------------------------------------------------------------------

namespace {

nlohmann::json summarize_apriori(const ExperimentConfig& cfg,
                                 const std::vector<std::vector<double>>& records) {
  const auto total = static_cast<Eigen::Index>(records.size());
  double max_all = 0.0, max_half = 0.0;
  Eigen::Index ok = 0;
  const auto half = static_cast<Eigen::Index>((records.size() + 1) / 2);
  for (Eigen::Index i = 0; i < total; ++i) {
    const auto& row = records[static_cast<std::size_t>(i)];
    if (row[1] != 1.0) continue;
    ++ok;
    max_all = std::max(max_all, row[2]);
    if (i < half) max_half = std::max(max_half, row[2]);
  }
  nlohmann::json s;
  s["config"] = cfg.echo_json("apriori");
  s["paths"] = total;
  s["failures"] = total - ok;
  s["max_ratio"] = max_all;
  s["max_ratio_first_half"] = max_half;
  s["half_to_full_ratio"] = max_half > 0.0 ? max_all / max_half : kNaN;
  return s;
}

}  // namespace

EnsembleResult apriori_inequality_check(const ExperimentConfig& cfg) {
  if (!cfg.coeffs.K1) {
    throw ConfigError("a-priori check needs a declared bound K1 for b");
  }
  const double alpha = cfg.effective_alpha();
  const HolderParams p(alpha, cfg.effective_gamma());
  const FbmFactor factor(cfg.n, cfg.T, cfg.H);

  // evaluation subgrid: eight equally spaced times
  std::vector<Eigen::Index> marks;
  for (int j = 1; j <= 8; ++j) {
    const Eigen::Index k = cfg.n * j / 8;
    if (k >= 1 && (marks.empty() || k != marks.back())) marks.push_back(k);
  }

  // t-dependent weights for ∫_0^t norm(X, s) (s^{-alpha} + (t-s)^{-2 alpha}) ds
  std::vector<CellWeights> w_left, w_right;
  w_left.reserve(marks.size());
  w_right.reserve(marks.size());
  const double dt = cfg.T / static_cast<double>(cfg.n);
  for (const Eigen::Index k : marks) {
    w_left.push_back(singular_cell_weights(alpha, dt, k));
    w_right.push_back(singular_cell_weights(2.0 * alpha, dt, k));
  }

  EnsembleResult result;
  result.columns = {"seed", "status", "max_ratio"};
  result.records.assign(cfg.paths, std::vector<double>(3, kNaN));

  parallel_for(cfg.paths, cfg.jobs, [&](Eigen::Index i) {
    auto& row = result.records[static_cast<std::size_t>(i)];
    row[0] = static_cast<double>(i);
    const SeedPair sp = seeds_for_path(cfg.master_seed, i);
    try {
      const GridPath W = gen_wiener({cfg.n, cfg.T, 0.5, sp.w});
      const GridPath Z = factor.sample(sp.z);
      const SolveConfig scfg = solve_config(cfg, sp);
      const GridPath X = euler_solve_mixed(cfg.coeffs, scfg, W, Z);

      // Ito integral of b along the solution, left-point sums
      Eigen::ArrayXd ito(cfg.n + 1);
      ito[0] = 0.0;
      for (Eigen::Index k = 0; k < cfg.n; ++k) {
        ito[k + 1] = ito[k] + cfg.coeffs.b(W.time(k), X.values[k]) *
                                  (W.values[k + 1] - W.values[k]);
      }
      const GridPath ito_path(0.0, dt, std::move(ito));

      const Eigen::ArrayXd norm_x = norm_alpha_profile(X, p, cfg.n);
      const Eigen::ArrayXd norm_ito = norm_alpha_profile(ito_path, p, cfg.n);
      const Eigen::ArrayXd sem_z = seminorm_profile(Z, p, cfg.n);

      double max_ratio = 0.0;
      for (std::size_t m = 0; m < marks.size(); ++m) {
        const Eigen::Index k = marks[m];
        double integral = 0.0;
        for (Eigen::Index ell = 1; ell <= k; ++ell) {
          integral += w_left[m].near_w[ell] * norm_x[ell - 1] +
                      w_left[m].far_w[ell] * norm_x[ell];
          integral += w_right[m].near_w[ell] * norm_x[k - ell + 1] +
                      w_right[m].far_w[ell] * norm_x[k - ell];
        }
        const double lhs = norm_x[k];
        const double rhs = sem_z[k] * (1.0 + integral) + norm_ito[k];
        const double ratio = (rhs > 0.0) ? lhs / rhs : (lhs > 0.0 ? kNaN : 0.0);
        max_ratio = std::max(max_ratio, ratio);
      }
      row[2] = max_ratio;
      row[1] = 1.0;
    } catch (const NumericError&) {
      row[1] = 0.0;
    }
  });

  Eigen::Index failures = 0;
  for (const auto& row : result.records) {
    if (row[1] != 1.0) ++failures;
  }
  check_failures(failures, cfg.paths);

  result.summary = summarize_apriori(cfg, result.records);
  result.plot_columns = {"seed", "max_ratio"};
  for (const auto& row : result.records) {
    result.plot_rows.push_back({row[0], row[2]});
  }
  return result;
}

nlohmann::json resummarize(const std::string& experiment, const ExperimentConfig& cfg,
                           const EnsembleResult& result) {
  if (experiment == "converge") return summarize_limit(cfg, result.records);
  if (experiment == "l2diff") {
    return summarize_l2diff(cfg, result.summary.at("trunc_N").get<double>(),
                            result.summary.at("radius_R").get<double>(), result.records);
  }
  if (experiment == "moments") return summarize_moments(cfg, result.records);
  if (experiment == "apriori") return summarize_apriori(cfg, result.records);
  throw ConfigError("unknown experiment \"" + experiment + "\"");
}

void write_ensemble(const EnsembleResult& result, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_table_csv(out_dir / "records.csv", result.columns, result.records);
  write_table_csv(out_dir / "plotdata.csv", result.plot_columns, result.plot_rows);
  std::ofstream out(out_dir / "summary.json");
  if (!out) throw ConfigError("cannot open summary.json for writing");
  out << result.summary.dump(2) << '\n';
}

}  // namespace mixedsde
