#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "phi3/gff.hpp"
#include "phi3/gibbs.hpp"
#include "phi3/lattice.hpp"
#include "phi3/reduce.hpp"
#include "phi3/runio.hpp"
#include "phi3/variational.hpp"
#include "phi3/wick.hpp"

namespace {

using namespace phi3;

struct Options {
  int d = 1;
  double alpha = 1.0 / 3.0;
  std::string N_list = "32..1024";
  std::string M_list = "8..64";
  std::string sigma_list = "0.1";
  double A = 1.0;
  double gamma = 0.0;  // 0 = regime preset
  double delta = 0.1;
  int q = 20;
  int k = 2;
  double s = -1e9;  // sentinel: derive from (d, alpha, k)
  double a = 0.0, b = 0.0, lambda = 0.0;
  std::int64_t n_samples = 2000;
  std::uint64_t seed = 1;
  int time_steps = 64;
  int threads = 0;
  std::string output_dir = "out";
  std::string estimator = "plain";
};

void apply_config(Options& o, const std::string& path) {
  for (const auto& [k, v] : parse_config_file(path)) {
    if (k == "d") o.d = std::stoi(v);
    else if (k == "alpha") o.alpha = std::stod(v);
    else if (k == "N_list" || k == "N") o.N_list = v;
    else if (k == "M_list" || k == "M") o.M_list = v;
    else if (k == "sigma_list" || k == "sigma") o.sigma_list = v;
    else if (k == "A") o.A = std::stod(v);
    else if (k == "gamma") o.gamma = std::stod(v);
    else if (k == "delta") o.delta = std::stod(v);
    else if (k == "q") o.q = std::stoi(v);
    else if (k == "k") o.k = std::stoi(v);
    else if (k == "s") o.s = std::stod(v);
    else if (k == "a") o.a = std::stod(v);
    else if (k == "b") o.b = std::stod(v);
    else if (k == "lambda") o.lambda = std::stod(v);
    else if (k == "n_samples") o.n_samples = std::stoll(v);
    else if (k == "seed") o.seed = std::stoull(v);
    else if (k == "time_steps") o.time_steps = std::stoi(v);
    else if (k == "output_dir") o.output_dir = v;
    else if (k == "estimator") o.estimator = v;
    else throw std::invalid_argument("unknown config key: " + k);
  }
}

const std::vector<std::string> kCheckHeader{"check",  "N",     "estimate",
                                           "stderr", "bound", "pass"};
const std::vector<std::string> kGibbsHeader{
    "experiment", "d",     "alpha",    "N",      "sigma", "A",    "gamma",
    "delta",      "q",     "estimate", "stderr", "n_samples", "seed", "flags"};

std::vector<std::string> check_row(const CheckRow& r) {
  return {r.check,           fmt_num(r.N),     fmt_num(r.estimate),
          fmt_num(r.stderr_), fmt_num(r.bound), r.pass ? "1" : "0"};
}

std::vector<std::string> gibbs_row(const std::string& exp,
                                   const PotentialParams& p,
                                   const Estimate& e) {
  return {exp,
          fmt_num(static_cast<std::int64_t>(p.d)),
          fmt_num(p.alpha),
          fmt_num(static_cast<std::int64_t>(p.N)),
          fmt_num(p.sigma),
          fmt_num(p.A),
          fmt_num(p.gamma),
          fmt_num(p.delta),
          fmt_num(static_cast<std::int64_t>(p.q)),
          fmt_num(e.mean),
          fmt_num(e.stderr_),
          fmt_num(e.n_samples),
          std::to_string(e.seed),
          e.flags.empty() ? "-" : e.flags};
}

struct RunResult {
  CsvTable table;
  KeyValues manifest_extra;
  bool pass = true;
  std::vector<double> svg_x, svg_y;
  bool svg_logx = false, svg_logy = false;
};

RunResult run_sigma_scaling(const Options& o) {
  RunResult r;
  r.table.header = kCheckHeader;
  const auto Ns = parse_int_list(o.N_list);
  std::vector<double> logN, logS, ratio;
  for (int N : Ns) {
    const double s = sigma_N(FrequencyLattice(o.d, N, o.alpha)).value;
    r.table.rows.push_back(
        check_row({"sigma_N", static_cast<double>(N), s, 0.0, 0.0, true}));
    logN.push_back(std::log(static_cast<double>(N)));
    logS.push_back(std::log(s));
    ratio.push_back(s / std::log(static_cast<double>(N)));
    r.svg_x.push_back(N);
    r.svg_y.push_back(s);
  }
  r.svg_logx = r.svg_logy = true;
  if (std::fabs(o.d - 2.0 * o.alpha) <= 1e-9) {
    double lo = ratio[0], hi = ratio[0];
    for (double v : ratio) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double drift = hi / lo - 1.0;
    const bool ok = drift < 0.10;
    r.table.rows.push_back(check_row({"log_ratio_drift", 0.0, drift, 0.0, 0.10, ok}));
    r.pass = ok;
  } else {
    const double slope = regression_slope(logN, logS);
    const double target = o.d - 2.0 * o.alpha;
    const bool ok = std::fabs(slope - target) <= 0.05;
    r.table.rows.push_back(check_row({"slope", 0.0, slope, 0.0, target, ok}));
    r.pass = ok;
  }
  return r;
}

RunResult run_wick_checks(const Options& o) {
  RunResult r;
  r.table.header = kCheckHeader;
  const auto orth =
      check_hermite_orthogonality(1.0, 1.0, 0.5, 3, o.n_samples, o.seed);
  for (const auto& row : orth.rows) r.table.rows.push_back(check_row(row));
  r.pass = orth.pass;
  for (int N : parse_int_list(o.N_list)) {
    FrequencyLattice lat(o.d, N, o.alpha);
    for (int k : {2, 3}) {
      const auto X =
          sample_wick_integrals(lat, k, o.n_samples, o.seed, 0x70 + k);
      for (double p : {4.0, 6.0}) {
        const auto h = check_hypercontractivity(X, k, p);
        r.table.rows.push_back(check_row(
            {"hyperc_k" + std::to_string(k) + "_p" + fmt_num(p),
             static_cast<double>(N), h.lhs, h.lhs_stderr, h.rhs, h.pass}));
        r.pass = r.pass && h.pass;
      }
    }
  }
  return r;
}

RunResult run_regularity(const Options& o) {
  RunResult r;
  r.table.header = kCheckHeader;
  double s = o.s;
  if (s <= -1e8) s = o.k * (o.alpha - 0.5 * o.d) - 0.05;
  const auto rep = check_pathwise_regularity(o.d, o.alpha, o.k, s,
                                             parse_int_list(o.N_list),
                                             o.n_samples, o.seed);
  for (const auto& row : rep.rows) r.table.rows.push_back(check_row(row));
  r.pass = rep.pass;
  r.manifest_extra.emplace_back("s_target", fmt_num(s));
  return r;
}

RunResult run_beta(const Options& o) {
  RunResult r;
  r.table.header = kGibbsHeader;
  const auto sigmas = parse_double_list(o.sigma_list);
  for (int N : parse_int_list(o.N_list)) {
    for (double sigma : sigmas) {
      PotentialParams p = PotentialParams::preset(o.d, o.alpha, N, sigma, o.A);
      const double closed = beta_N(p.lattice(), sigma);
      auto mc = beta_N_mc(p, o.n_samples, o.time_steps, o.seed);
      auto mc2 = beta_N_mc(p, o.n_samples, 2 * o.time_steps, o.seed);
      Estimate cf;
      cf.mean = closed;
      cf.n_samples = 0;
      cf.seed = o.seed;
      cf.flags = "closed_form";
      mc.flags = "mc_K" + std::to_string(o.time_steps);
      mc2.flags = "mc_K" + std::to_string(2 * o.time_steps);
      r.table.rows.push_back(gibbs_row("beta", p, cf));
      r.table.rows.push_back(gibbs_row("beta", p, mc));
      r.table.rows.push_back(gibbs_row("beta", p, mc2));
      if (closed > 0.0) {
        const bool ok = std::fabs(mc.mean - closed) <= 0.02 * closed &&
                        std::fabs(mc2.mean - mc.mean) <= 0.005 * mc.mean;
        r.pass = r.pass && ok;
      }
    }
  }
  return r;
}

RunResult run_zscan(const Options& o, bool tamed) {
  RunResult r;
  r.table.header = kGibbsHeader;
  for (int N : parse_int_list(o.N_list)) {
    for (double sigma : parse_double_list(o.sigma_list)) {
      PotentialParams p = PotentialParams::preset(o.d, o.alpha, N, sigma, o.A,
                                                  tamed ? o.delta : 0.0);
      if (o.gamma > 0.0) p.gamma = o.gamma;
      p.q = o.q;
      const Estimate e = tamed
                             ? estimate_Z_tamed(p, o.n_samples, o.seed, o.estimator)
                             : estimate_Z(p, o.n_samples, o.seed, o.estimator);
      r.table.rows.push_back(
          gibbs_row(tamed ? "zscan-tamed" : "zscan", p, e));
      if (e.flags.find("overflow") != std::string::npos) r.pass = false;
      r.svg_x.push_back(N);
      r.svg_y.push_back(e.mean);
    }
  }
  r.svg_logx = true;
  return r;
}

RunResult run_singularity(const Options& o) {
  RunResult r;
  r.table.header = kCheckHeader;
  const auto sigmas = parse_double_list(o.sigma_list);
  PotentialParams proto =
      PotentialParams::preset(o.d, o.alpha, 2, sigmas.front(), o.A);
  const auto rep = singularity_statistic(proto, parse_int_list(o.N_list),
                                         o.n_samples, o.seed);
  for (const auto& row : rep.rows) {
    r.table.rows.push_back(check_row(row));
    r.svg_x.push_back(row.N);
    r.svg_y.push_back(row.estimate);
  }
  r.svg_logx = true;
  r.pass = rep.pass;
  return r;
}

RunResult run_drift_scan(const Options& o) {
  RunResult r;
  r.table.header = {"M",    "sigma",       "objective",   "stderr",
                    "diff", "diff_stderr", "classification"};
  const auto Ms = parse_int_list(o.M_list);
  const int N = Ms.back();
  PotentialParams proto =
      PotentialParams::preset(o.d, o.alpha, N, 1.0, o.A, o.delta);
  const auto rep =
      scan_nonnormalisability(proto, Ms, parse_double_list(o.sigma_list),
                              o.n_samples, o.seed, o.time_steps);
  for (const auto& row : rep.rows) {
    r.table.rows.push_back({fmt_num(static_cast<std::int64_t>(row.M)),
                            fmt_num(row.sigma), fmt_num(row.objective),
                            fmt_num(row.stderr_), fmt_num(row.diff_prev),
                            fmt_num(row.diff_stderr), row.classification});
    if (row.sigma == rep.rows.back().sigma) {
      r.svg_x.push_back(row.M);
      r.svg_y.push_back(row.objective);
    }
  }
  r.svg_logx = true;
  if (rep.has_window) {
    r.manifest_extra.emplace_back("crossover_window_lo", fmt_num(rep.window_lo));
    r.manifest_extra.emplace_back("crossover_window_hi", fmt_num(rep.window_hi));
  } else {
    r.manifest_extra.emplace_back("crossover_window", "not bracketed");
  }
  return r;
}

RunResult run_fm_zm(const Options& o) {
  RunResult r;
  r.table.header = kCheckHeader;
  const auto rep = check_fm_zm_lemmas(o.d, o.alpha, parse_int_list(o.M_list),
                                      o.n_samples, o.seed);
  for (const auto& row : rep.rows) r.table.rows.push_back(check_row(row));
  r.pass = rep.pass;
  return r;
}

RunResult run_discrconv(const Options& o) {
  RunResult r;
  r.table.header = kCheckHeader;
  const auto rep = check_discrete_convolution(o.d, o.a, o.b, o.lambda,
                                              parse_int_list(o.N_list));
  for (std::size_t i = 0; i < rep.N_list.size(); ++i)
    r.table.rows.push_back(
        check_row({"conv_max", static_cast<double>(rep.N_list[i]),
                   rep.maxima[i], 0.0, 0.0, true}));
  r.table.rows.push_back(
      check_row({"worst_ratio", 0.0, rep.worst_ratio, 0.0, 1.1, rep.pass}));
  r.pass = rep.pass;
  return r;
}

int dispatch(const std::string& name, const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult res;
  if (name == "sigma-scaling") res = run_sigma_scaling(o);
  else if (name == "wick-checks") res = run_wick_checks(o);
  else if (name == "regularity") res = run_regularity(o);
  else if (name == "beta") res = run_beta(o);
  else if (name == "zscan") res = run_zscan(o, false);
  else if (name == "zscan-tamed") res = run_zscan(o, true);
  else if (name == "singularity") res = run_singularity(o);
  else if (name == "drift-scan") res = run_drift_scan(o);
  else if (name == "fm-zm-lemmas") res = run_fm_zm(o);
  else if (name == "discrconv") res = run_discrconv(o);
  else throw std::invalid_argument("unknown experiment " + name);

  namespace fs = std::filesystem;
  fs::create_directories(o.output_dir);
  write_csv((fs::path(o.output_dir) / (name + ".csv")).string(), res.table);
  if (!res.svg_x.empty())
    write_svg_line((fs::path(o.output_dir) / (name + ".svg")).string(), name,
                   res.svg_x, res.svg_y, res.svg_logx, res.svg_logy);

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  KeyValues man{{"experiment", name},
                {"version", "phi3d 0.1.0"},
                {"d", fmt_num(static_cast<std::int64_t>(o.d))},
                {"alpha", fmt_num(o.alpha)},
                {"N_list", o.N_list},
                {"M_list", o.M_list},
                {"sigma_list", o.sigma_list},
                {"A", fmt_num(o.A)},
                {"delta", fmt_num(o.delta)},
                {"q", fmt_num(static_cast<std::int64_t>(o.q))},
                {"n_samples", fmt_num(o.n_samples)},
                {"master_seed", std::to_string(o.seed)},
                {"estimator", o.estimator},
                {"time_steps", fmt_num(static_cast<std::int64_t>(o.time_steps))},
                {"pass", res.pass ? "1" : "0"},
                {"wall_seconds", fmt_num(secs)}};
  for (const auto& kv : res.manifest_extra) man.push_back(kv);
  write_manifest((fs::path(o.output_dir) / "manifest.txt").string(), man);
  return res.pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral Monte Carlo laboratory for truncated fractional "
               "Phi^3 measures on the torus"};
  app.require_subcommand(1);

  Options o;
  std::string config_path;
  const std::vector<std::string> experiments{
      "sigma-scaling", "wick-checks", "regularity",   "beta",
      "zscan",         "zscan-tamed", "singularity",  "drift-scan",
      "fm-zm-lemmas",  "discrconv"};
  for (const auto& name : experiments) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value config file");
    sub->add_option("--d", o.d);
    sub->add_option("--alpha", o.alpha);
    sub->add_option("--N", o.N_list, "N list: a,b,c or doubling a..b");
    sub->add_option("--M", o.M_list, "M list: a,b,c or doubling a..b");
    sub->add_option("--sigma", o.sigma_list, "sigma list");
    sub->add_option("--A", o.A);
    sub->add_option("--gamma", o.gamma, "0 = regime preset");
    sub->add_option("--delta", o.delta);
    sub->add_option("--q", o.q);
    sub->add_option("--k", o.k);
    sub->add_option("--s", o.s, "Holder target exponent");
    sub->add_option("--a", o.a);
    sub->add_option("--b", o.b);
    sub->add_option("--lambda", o.lambda);
    sub->add_option("--n-samples", o.n_samples);
    sub->add_option("--seed", o.seed);
    sub->add_option("--time-steps", o.time_steps);
    sub->add_option("--threads", o.threads, "cap worker count (results identical)");
    sub->add_option("--output-dir", o.output_dir);
    sub->add_option("--estimator", o.estimator)
        ->check(CLI::IsMember({"plain", "median_of_means"}));
  }

  try {
    // config first, explicit flags override: parse once to learn the config
    // path, apply it, then parse again on a fresh copy of the defaults
    try {
      app.parse(argc, argv);
      if (!config_path.empty()) {
        Options fresh;
        apply_config(fresh, config_path);
        o = fresh;
        app.clear();
        app.parse(argc, argv);
      }
    } catch (const CLI::ParseError& e) {
      const int rc = app.exit(e);
      return rc == 0 ? 0 : 2;
    }
    if (const char* env = std::getenv("PHI3D_SEED")) o.seed = std::stoull(env);
#ifdef _OPENMP
    if (o.threads > 0) omp_set_num_threads(o.threads);
#endif
    return dispatch(app.get_subcommands().front()->get_name(), o);
  } catch (const CLI::Error& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
