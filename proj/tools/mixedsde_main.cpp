// Command-line front end: path generation, norms, pathwise integration,
// mollification rates, the mixed-equation solver and the Monte Carlo
// experiment harness. All randomness flows from explicit seed flags.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixedsde/coefficients.hpp"
#include "mixedsde/errors.hpp"
#include "mixedsde/experiments.hpp"
#include "mixedsde/fracint.hpp"
#include "mixedsde/grid_path.hpp"
#include "mixedsde/holder.hpp"
#include "mixedsde/io.hpp"
#include "mixedsde/mollify.hpp"
#include "mixedsde/process_gen.hpp"
#include "mixedsde/solver.hpp"

namespace {

using namespace mixedsde;

nlohmann::json load_json(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open " + file);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(file + ": " + e.what());
  }
  return j;
}

struct PathsArgs {
  std::string kind = "wiener";
  Eigen::Index n = 1024;
  double T = 1.0;
  double H = 0.7;
  std::uint64_t seed = 0;
  std::string out;
};

int run_paths(const PathsArgs& a) {
  GenConfig cfg{a.n, a.T, a.H, a.seed};
  GridPath path = (a.kind == "wiener") ? gen_wiener(cfg) : gen_fbm(cfg);
  write_path_csv(a.out, path);
  return 0;
}

struct NormsArgs {
  std::string in;
  double alpha = 0.0;  // 0 -> midpoint default for gamma
  double gamma = 0.7;
  double t = -1.0;  // < 0 -> path horizon
  std::string which = "alpha";
};

int run_norms(const NormsArgs& a) {
  const GridPath f = read_path_csv(a.in);
  const double alpha = a.alpha > 0.0 ? a.alpha : HolderParams::default_alpha(a.gamma);
  const HolderParams p(alpha, a.gamma);
  const double t = a.t >= 0.0 ? a.t : f.horizon();
  double value = 0.0;
  if (a.which == "alpha") value = norm_alpha(f, p, t);
  else if (a.which == "0alpha") value = seminorm_0alpha(f, p, t);
  else if (a.which == "2alpha") value = norm_2alpha(f, p, t);
  else if (a.which == "infalpha") value = norm_infalpha(f, p, t);
  else throw ConfigError("unknown norm \"" + a.which + "\"");
  std::cout << nlohmann::json{{"value", value}}.dump() << "\n";
  return 0;
}

struct IntegrateArgs {
  std::string f_file, g_file;
  double alpha = 0.3;
  double a = 0.0;
  double b = -1.0;  // < 0 -> horizon
  bool check_bound = false;
};

int run_integrate(const IntegrateArgs& ia) {
  const GridPath f = read_path_csv(ia.f_file);
  const GridPath g = read_path_csv(ia.g_file);
  const double b = ia.b >= 0.0 ? ia.b : f.horizon();
  nlohmann::json out;
  out["alpha"] = ia.alpha;
  if (ia.check_bound) {
    const PathwiseBound pb = pathwise_bound(f, g, ia.alpha, ia.a, b);
    out["integral"] = pb.integral;
    out["bound"] = pb.bound;
  } else {
    out["integral"] = gls_integral(f, g, ia.alpha, ia.a, b);
    out["bound"] = nullptr;
  }
  std::cout << out.dump() << "\n";
  return 0;
}

struct MollifyArgs {
  std::string in;
  std::vector<double> eps;
  double alpha = 0.0;
  double gamma = 0.7;
  bool fit = false;
  std::string out;  // optional CSV target; default stdout
};

int run_mollify(const MollifyArgs& a) {
  const GridPath g = read_path_csv(a.in);
  const double alpha = a.alpha > 0.0 ? a.alpha : HolderParams::default_alpha(a.gamma);
  const HolderParams p(alpha, a.gamma);
  if (a.eps.empty()) throw ConfigError("mollify needs at least one --eps");

  std::vector<double> errors;
  for (const double eps : a.eps) {
    errors.push_back(seminorm_0alpha(g - mollify(g, eps), p, g.horizon()));
  }
  std::ostringstream csv;
  csv << "eps,error\n";
  for (std::size_t i = 0; i < a.eps.size(); ++i) {
    csv << format_double(a.eps[i]) << ',' << format_double(errors[i]) << '\n';
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(a.out);
    if (!f) throw ConfigError("cannot open " + a.out + " for writing");
    f << csv.str();
  }
  if (a.fit) {
    const MollifyRate rate = mollify_rate(g, p, a.eps);
    std::cout << nlohmann::json{{"slope", rate.slope}}.dump() << "\n";
  }
  return 0;
}

struct SolveArgs {
  std::string coeffs;
  double x0 = 1.0;
  Eigen::Index n = 1024;
  double T = 1.0;
  double H = 0.7;
  std::uint64_t seed_w = 0;
  std::uint64_t seed_z = 1;
  double mollify_eps = 0.0;
  std::string out;
};

int run_solve(const SolveArgs& a) {
  const CoefficientSet cs = CoefficientSet::from_json(load_json(a.coeffs));
  const GridPath W = gen_wiener({a.n, a.T, 0.5, a.seed_w});
  const GridPath Z = gen_fbm({a.n, a.T, a.H, a.seed_z});
  SolveConfig cfg;
  cfg.x0 = a.x0;
  cfg.n = a.n;
  cfg.T = a.T;
  cfg.seed_w = a.seed_w;
  cfg.seed_z = a.seed_z;
  GridPath x = (a.mollify_eps > 0.0)
                   ? solve_smooth_driver(cs, cfg, W, mollify(Z, a.mollify_eps))
                   : euler_solve_mixed(cs, cfg, W, Z);

  std::ofstream out(a.out);
  if (!out) throw ConfigError("cannot open " + a.out + " for writing");
  out << "t,x\n";
  for (Eigen::Index k = 0; k <= x.steps(); ++k) {
    out << format_double(x.time(k)) << ',' << format_double(x.values[k]) << '\n';
  }
  return 0;
}

struct ExperimentArgs {
  std::string config;
  std::string out_dir;
  int jobs = 0;  // 0 -> value from the config file
};

int run_experiment(const std::string& name, const ExperimentArgs& a) {
  ExperimentConfig cfg = ExperimentConfig::from_json(load_json(a.config));
  if (a.jobs > 0) cfg.jobs = a.jobs;
  EnsembleResult result;
  if (name == "converge") result = limit_theorem_experiment(cfg);
  else if (name == "l2diff") result = l2_difference_experiment(cfg);
  else if (name == "moments") result = moment_experiment(cfg);
  else result = apriori_inequality_check(cfg);
  write_ensemble(result, a.out_dir);
  std::cout << result.summary.dump(2) << "\n";
  return 0;
}

// --- selftest ------------------------------------------------------------

GridPath sampled(double T, Eigen::Index n, double (*fn)(double)) {
  Eigen::ArrayXd v(n + 1);
  for (Eigen::Index k = 0; k <= n; ++k) v[k] = fn(T * double(k) / double(n));
  return make_grid_path(T, v);
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

int run_selftest() {
  struct Check {
    const char* name;
    bool (*fn)();
  };
  const Check checks[] = {
      {"wiener starts at zero",
       [] { return gen_wiener({256, 1.0, 0.5, 7}).values[0] == 0.0; }},
      {"wiener is deterministic",
       [] {
         GenConfig c{256, 1.0, 0.5, 7};
         return (gen_wiener(c).values == gen_wiener(c).values).all();
       }},
      {"fbm starts at zero", [] { return gen_fbm({128, 1.0, 0.7, 3}).values[0] == 0.0; }},
      {"fbm at H=1/2 matches the Wiener construction",
       [] {
         GenConfig c{128, 1.0, 0.5, 11};
         return (gen_fbm(c).values - gen_wiener(c).values).abs().maxCoeff() < 1e-12;
       }},
      {"Hölder constant of a constant path is zero",
       [] {
         return holder_constant(sampled(1.0, 64, +[](double) { return 2.0; }), 0.6) == 0.0;
       }},
      {"Hölder constant of t at gamma=1/2 is one",
       [] {
         return near(holder_constant(sampled(1.0, 64, +[](double t) { return t; }), 0.5),
                     1.0, 1e-12);
       }},
      {"norm_alpha of a constant is |c|",
       [] {
         HolderParams p(0.3, 0.75);
         return near(norm_alpha(sampled(1.0, 128, +[](double) { return -3.0; }), p, 1.0),
                     3.0, 1e-12);
       }},
      {"norm_alpha of t matches 1 + 1/(1-alpha)",
       [] {
         HolderParams p(0.3, 0.75);
         return near(norm_alpha(sampled(1.0, 512, +[](double t) { return t; }), p, 1.0),
                     1.0 + 1.0 / 0.7, 1e-9);
       }},
      {"seminorm kills constants",
       [] {
         HolderParams p(0.4, 0.75);
         return seminorm_0alpha(sampled(1.0, 128, +[](double) { return 5.0; }), p, 1.0) == 0.0;
       }},
      {"seminorm of t matches 1 + 1/alpha",
       [] {
         HolderParams p(0.4, 0.75);
         return near(seminorm_0alpha(sampled(1.0, 512, +[](double t) { return t; }), p, 1.0),
                     3.5, 1e-9);
       }},
      {"norm_2alpha of zero is zero",
       [] {
         HolderParams p(0.3, 0.75);
         return norm_2alpha(sampled(1.0, 128, +[](double) { return 0.0; }), p, 1.0) == 0.0;
       }},
      {"norm_2alpha of one integrates the weight kernel",
       [] {
         HolderParams p(0.3, 0.75);
         return near(norm_2alpha(sampled(1.0, 512, +[](double) { return 1.0; }), p, 1.0),
                     1.0 / 0.7 + 1.0 / 0.2, 1e-9);
       }},
      {"norm_infalpha of a constant is |c|",
       [] {
         HolderParams p(0.3, 0.75);
         return near(norm_infalpha(sampled(1.0, 128, +[](double) { return -2.0; }), p, 1.0),
                     2.0, 1e-12);
       }},
      {"norm_infalpha of t is attained at the horizon",
       [] {
         HolderParams p(0.3, 0.75);
         const GridPath f = sampled(1.0, 256, +[](double t) { return t; });
         return norm_infalpha(f, p, 1.0) == norm_alpha(f, p, 1.0);
       }},
      {"left derivative of a constant",
       [] {
         const GridPath one = sampled(1.0, 512, +[](double) { return 1.0; });
         const GridPath d = frac_deriv_left(one, 0.3, 0.0, 1.0);
         for (Eigen::Index k = 1; k < d.steps(); ++k) {
           const double expect = std::pow(d.time(k), -0.3) / std::tgamma(0.7);
           if (!near(d.values[k] / expect, 1.0, 1e-9)) return false;
         }
         return true;
       }},
      {"left derivative of x - a",
       [] {
         const GridPath lin = sampled(1.0, 512, +[](double t) { return t; });
         const GridPath d = frac_deriv_left(lin, 0.3, 0.0, 1.0);
         for (Eigen::Index k = 1; k < d.steps(); ++k) {
           const double expect = std::pow(d.time(k), 0.7) / std::tgamma(1.7);
           if (!near(d.values[k] / expect, 1.0, 1e-9)) return false;
         }
         return true;
       }},
      {"right derivative of a constant vanishes",
       [] {
         const GridPath c = sampled(1.0, 256, +[](double) { return 4.0; });
         return frac_deriv_right(c, 0.4, 0.0, 1.0).values.abs().maxCoeff() == 0.0;
       }},
      {"right derivative of x matches its closed form",
       [] {
         const GridPath lin = sampled(1.0, 512, +[](double t) { return t; });
         const GridPath d = frac_deriv_right(lin, 0.4, 0.0, 1.0);
         for (Eigen::Index k = 1; k < d.steps(); ++k) {
           const double expect = -2.5 * std::pow(1.0 - d.time(k), 0.4) / std::tgamma(0.4);
           if (!near(d.values[k] / expect, 1.0, 1e-9)) return false;
         }
         return true;
       }},
      {"integral of 1 against g telescopes",
       [] {
         const GridPath one = sampled(1.0, 2048, +[](double) { return 1.0; });
         const GridPath g = sampled(1.0, 2048, +[](double t) { return t * t; });
         return near(gls_integral(one, g, 0.3, 0.0, 1.0), 1.0, 1e-3);
       }},
      {"integral of s against s^2 is 2/3",
       [] {
         const GridPath f = sampled(1.0, 2048, +[](double t) { return t; });
         const GridPath g = sampled(1.0, 2048, +[](double t) { return t * t; });
         return near(gls_integral(f, g, 0.3, 0.0, 1.0), 2.0 / 3.0, 1e-3);
       }},
      {"pathwise bound of the zero integrand is (0, 0)",
       [] {
         const GridPath zero = sampled(1.0, 256, +[](double) { return 0.0; });
         const GridPath g = sampled(1.0, 256, +[](double t) { return t; });
         const PathwiseBound pb = pathwise_bound(zero, g, 0.3, 0.0, 1.0);
         return pb.integral == 0.0 && pb.bound == 0.0;
       }},
      {"pathwise bound dominates the linear case",
       [] {
         const GridPath one = sampled(1.0, 512, +[](double) { return 1.0; });
         const GridPath g = sampled(1.0, 512, +[](double t) { return t; });
         const PathwiseBound pb = pathwise_bound(one, g, 0.3, 0.0, 1.0);
         return near(pb.integral, 1.0, 1e-3) && pb.bound >= 1.0;
       }},
      {"mollifying zero gives zero",
       [] {
         const GridPath z = sampled(1.0, 256, +[](double) { return 0.0; });
         return mollify(z, 0.125).values.abs().maxCoeff() == 0.0;
       }},
      {"mollifying t gives t - eps/2",
       [] {
         const GridPath lin = sampled(1.0, 256, +[](double t) { return t; });
         const GridPath m = mollify(lin, 0.25);
         for (Eigen::Index k = 0; k <= 256; ++k) {
           const double t = m.time(k);
           if (t >= 0.25 && !near(m.values[k], t - 0.125, 1e-12)) return false;
         }
         return true;
       }},
      {"smoothing sequence at n_max = 0 is a single mollification",
       [] {
         const GridPath lin = sampled(1.0, 128, +[](double t) { return t; });
         const auto seq = build_sequence(lin, 0.25, 0);
         return seq.size() == 1 && (seq[0].values == mollify(lin, 0.25).values).all();
       }},
      {"unit driver coefficient telescopes the driver",
       [] {
         CoefficientSet cs;
         cs.c = Coefficient::constant(1.0);
         const GridPath W = gen_wiener({512, 1.0, 0.5, 21});
         const GridPath Z = gen_fbm({512, 1.0, 0.7, 22});
         SolveConfig cfg;
         cfg.x0 = 2.0;
         cfg.n = 512;
         cfg.T = 1.0;
         const GridPath X = euler_solve_mixed(cs, cfg, W, Z);
         return ((X.values - (Z.values + 2.0)).abs().maxCoeff()) < 1e-11;
       }},
      {"zero coefficients keep the state constant",
       [] {
         CoefficientSet cs;
         const GridPath W = gen_wiener({256, 1.0, 0.5, 5});
         const GridPath Z = gen_fbm({256, 1.0, 0.7, 6});
         SolveConfig cfg;
         cfg.x0 = -1.5;
         cfg.n = 256;
         cfg.T = 1.0;
         return (euler_solve_mixed(cs, cfg, W, Z).values == -1.5).all();
       }},
      {"smooth-driver scheme matches the mixed scheme",
       [] {
         CoefficientSet cs;
         cs.a = Coefficient::linear(0.1);
         cs.b = Coefficient::linear(0.2);
         cs.c = Coefficient::linear(0.3);
         cs.K = 0.6;
         const GridPath W = gen_wiener({512, 1.0, 0.5, 31});
         const GridPath Z = gen_fbm({512, 1.0, 0.7, 32});
         SolveConfig cfg;
         cfg.x0 = 1.0;
         cfg.n = 512;
         cfg.T = 1.0;
         const GridPath a = euler_solve_mixed(cs, cfg, W, Z);
         const GridPath b = solve_smooth_driver(cs, cfg, W, Z);
         const double scale = 1.0 + a.values.abs().maxCoeff();
         return (a.values - b.values).abs().maxCoeff() <= 1e-10 * scale;
       }},
      {"zero driver never reaches the truncation level",
       [] {
         const GridPath z = sampled(1.0, 128, +[](double) { return 0.0; });
         HolderParams p(0.4, 0.75);
         return tau_N(z, p, {1.0}) == 1.0;
       }},
      {"stopping at the horizon leaves the path unchanged",
       [] {
         const GridPath Z = gen_fbm({128, 1.0, 0.7, 77});
         return (stop_process(Z, 1.0).values == Z.values).all() &&
                (stop_process(Z, 0.0).values == 0.0).all();
       }},
      {"zero coefficient set validates cleanly",
       [] {
         CoefficientSet cs;
         const std::vector<double> ts{0.0, 0.5, 1.0}, xs{-2.0, 0.0, 2.0};
         return validate_coefficients(cs, ts, xs, 1000).all_pass();
       }},
      {"coefficient catalog round-trips through JSON",
       [] {
         const auto j = nlohmann::json::parse(
             R"({"kind":"logistic","amplitude":0.5,"rate":2.0})");
         const Coefficient c = Coefficient::from_json(j);
         return near(c(0.0, 0.3), 0.5 * std::tanh(0.6), 1e-15);
       }},
  };

  int failed = 0;
  for (const auto& check : checks) {
    bool ok = false;
    try {
      ok = check.fn();
    } catch (const std::exception& e) {
      std::printf("%-55s FAIL (%s)\n", check.name, e.what());
      ++failed;
      continue;
    }
    std::printf("%-55s %s\n", check.name, ok ? "pass" : "FAIL");
    if (!ok) ++failed;
  }
  std::printf("selftest: %d/%zu passed\n",
              static_cast<int>(std::size(checks)) - failed, std::size(checks));
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pathwise fractional calculus and mixed SDE toolkit"};
  app.require_subcommand(1);

  PathsArgs pa;
  auto* paths = app.add_subcommand("paths", "generate a Wiener or fBm path as CSV");
  paths->add_option("--kind", pa.kind)->check(CLI::IsMember({"wiener", "fbm"}));
  paths->add_option("--n", pa.n);
  paths->add_option("--T", pa.T);
  paths->add_option("--H", pa.H);
  paths->add_option("--seed", pa.seed);
  paths->add_option("--out", pa.out)->required();

  NormsArgs na;
  auto* norms = app.add_subcommand("norms", "evaluate a weighted Hölder norm");
  norms->add_option("--in", na.in)->required();
  norms->add_option("--alpha", na.alpha);
  norms->add_option("--gamma", na.gamma);
  norms->add_option("--t", na.t);
  norms->add_option("--which", na.which)
      ->check(CLI::IsMember({"alpha", "0alpha", "2alpha", "infalpha"}));

  IntegrateArgs ia;
  auto* integrate = app.add_subcommand("integrate", "pathwise Stieltjes integral of f against g");
  integrate->add_option("--f", ia.f_file)->required();
  integrate->add_option("--g", ia.g_file)->required();
  integrate->add_option("--alpha", ia.alpha);
  integrate->add_option("--a", ia.a);
  integrate->add_option("--b", ia.b);
  integrate->add_flag("--check-bound", ia.check_bound);

  MollifyArgs ma;
  auto* mol = app.add_subcommand("mollify", "moving-average smoothing errors and rate fit");
  mol->add_option("--in", ma.in)->required();
  mol->add_option("--eps", ma.eps)->expected(-1);
  mol->add_option("--alpha", ma.alpha);
  mol->add_option("--gamma", ma.gamma);
  mol->add_flag("--fit", ma.fit);
  mol->add_option("--out", ma.out);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Euler solution of the mixed equation");
  solve->add_option("--coeffs", sa.coeffs)->required();
  solve->add_option("--x0", sa.x0);
  solve->add_option("--n", sa.n);
  solve->add_option("--T", sa.T);
  solve->add_option("--H", sa.H);
  solve->add_option("--seed-w", sa.seed_w);
  solve->add_option("--seed-z", sa.seed_z);
  solve->add_option("--mollify-eps", sa.mollify_eps);
  solve->add_option("--out", sa.out)->required();

  ExperimentArgs ea;
  const char* exp_names[] = {"converge", "l2diff", "moments", "apriori"};
  const char* exp_help[] = {
      "smooth-driver limit experiment",
      "localized L2 difference regression",
      "moment boundedness under grid refinement",
      "a-priori inequality spot check",
  };
  std::vector<CLI::App*> exp_cmds;
  for (int i = 0; i < 4; ++i) {
    auto* cmd = app.add_subcommand(exp_names[i], exp_help[i]);
    cmd->add_option("--config", ea.config)->required();
    cmd->add_option("--out-dir", ea.out_dir)->required();
    cmd->add_option("--jobs", ea.jobs);
    exp_cmds.push_back(cmd);
  }

  auto* selftest = app.add_subcommand("selftest", "run the built-in analytic example suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (paths->parsed()) return run_paths(pa);
    if (norms->parsed()) return run_norms(na);
    if (integrate->parsed()) return run_integrate(ia);
    if (mol->parsed()) return run_mollify(ma);
    if (solve->parsed()) return run_solve(sa);
    for (int i = 0; i < 4; ++i) {
      if (exp_cmds[i]->parsed()) return run_experiment(exp_names[i], ea);
    }
    if (selftest->parsed()) return run_selftest();
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
