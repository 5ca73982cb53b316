// End-to-end acceptance suite: one PASS/FAIL line per criterion.
// Everything is seeded, so reruns are bit-reproducible.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

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

using namespace phi3;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& what) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", idx,
              what.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::vector<int> doubling(int lo, int hi) {
  std::vector<int> out;
  for (int N = lo; N <= hi; N *= 2) out.push_back(N);
  return out;
}

// --- 1: variance scaling ---------------------------------------------------
void criterion1() {
  bool ok = true;
  std::string detail;
  for (double alpha : {1.0 / 3.0, 0.25}) {
    // fit log(sigma_{2N} - sigma_N) vs log N: the consecutive differences
    // drop the additive constant that biases a direct fit at reachable N
    std::vector<double> x, y;
    double prev = -1.0;
    for (int N : doubling(32, 2048)) {
      const double s = sigma_N(FrequencyLattice(1, N, alpha)).value;
      if (prev > 0.0) {
        x.push_back(std::log(N / 2.0));
        y.push_back(std::log(s - prev));
      }
      prev = s;
    }
    const double slope = regression_slope(x, y);
    const double target = 1.0 - 2.0 * alpha;
    ok = ok && std::fabs(slope - target) <= 0.05;
    detail += "slope(alpha=" + fmt_num(alpha) + ")=" + fmt_num(slope) + " ";
  }
  double lo = 1e300, hi = 0.0;
  for (int N = 128; N <= 1280; N *= 2) {
    const double r =
        sigma_N(FrequencyLattice(1, N, 0.5)).value / std::log(double(N));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const double drift = hi / lo - 1.0;
  ok = ok && drift < 0.10;
  report(1, ok, "sigma_N scaling: " + detail + "d=2a ratio drift=" +
                    fmt_num(drift));
}

// --- 2: Hermite orthogonality ----------------------------------------------
void criterion2() {
  const auto rep = check_hermite_orthogonality(1.0, 1.5, 0.6, 3, 100000, 2026u);
  report(2, rep.pass, "Hermite orthogonality, k,l <= 3 at 1e5 samples");
}

// --- 3: hypercontractivity -------------------------------------------------
void criterion3() {
  bool ok = true;
  double worst = 0.0;
  for (int N : {8, 16, 32, 64, 128})
    for (int k : {2, 3}) {
      const auto X = sample_wick_integrals(FrequencyLattice(1, N, 1.0 / 3.0),
                                           k, 20000, 2026u, 0x30 + k);
      for (double p : {4.0, 6.0}) {
        const auto h = check_hypercontractivity(X, k, p);
        ok = ok && h.pass;
        worst = std::max(worst, h.ratio);
      }
    }
  report(3, ok, "hypercontractivity, worst lhs/rhs ratio=" + fmt_num(worst));
}

// --- 4: beta_N oracle pairing ----------------------------------------------
void criterion4() {
  const auto p = PotentialParams::preset(1, 1.0 / 3.0, 16, 1.0, 1.0);
  const double closed = beta_N(p.lattice(), 1.0);
  const auto mc = beta_N_mc(p, 100000, 64, 2026u);
  const auto mc2 = beta_N_mc(p, 100000, 128, 2026u);
  const double rel = std::fabs(mc.mean - closed) / closed;
  const double dbl = std::fabs(mc2.mean - mc.mean) / mc.mean;
  report(4, rel <= 0.02 && dbl <= 0.005,
         "beta_N closed=" + fmt_num(closed) + " mc=" + fmt_num(mc.mean) +
             " rel=" + fmt_num(rel) + " step-doubling=" + fmt_num(dbl));
}

// --- 5: critical log-divergences -------------------------------------------
void criterion5() {
  bool ok = true;
  std::string detail;
  for (double alpha : {1.0 / 3.0, 1.0}) {
    double lo = 1e300, hi = 0.0;
    for (int N : doubling(32, 1024)) {
      const double s3 =
          pair_correlation_sum(FrequencyLattice(1, N, alpha), 3).value;
      const double q = (alpha == 1.0) ? s3 : s3 / std::log(double(N));
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    ok = ok && hi / lo < 4.0;
    detail += "S3 band(alpha=" + fmt_num(alpha) + ")=" + fmt_num(hi / lo) + " ";
    // Y lives in C^{alpha-1/2-eps}, so :Y^2: sits just below 2(alpha-1/2)
    // at criticality and just below alpha-1/2 in the function regime
    const double s_target = (alpha == 1.0) ? 0.45 : -0.45;
    const auto rep = check_pathwise_regularity(1, alpha, 2, s_target,
                                               doubling(32, 1024), 300, 2026u);
    ok = ok && rep.pass;
  }
  report(5, ok, "critical log-divergences: " + detail + "+ MC H^{-a} bands");
}

// --- 6: f_M / Z_M lemma suite ----------------------------------------------
void criterion6() {
  const auto rep =
      check_fm_zm_lemmas(1, 1.0 / 3.0, {16, 32, 64, 128, 256}, 400, 2026u);
  std::string detail = "f_M/Z_M lemma suite over M in 16..256";
  for (const auto& row : rep.rows)
    if (!row.pass) detail += " [" + row.check + " failed]";
  report(6, rep.pass, detail);
}

// --- 7: Gaussian calibration -----------------------------------------------
void criterion7() {
  bool ok = true;
  for (int N : {16, 64, 256}) {
    auto p = PotentialParams::preset(1, 1.0 / 3.0, N, 0.0, 0.0);
    const auto est = estimate_Z(p, 1000, 2026u);
    ok = ok && std::fabs(est.mean - 1.0) <= 3.0 * est.stderr_ + 1e-12;
  }
  report(7, ok, "free-measure calibration Z = 1 at N in {16,64,256}");
}

// --- 8: regular-regime stability -------------------------------------------
void criterion8() {
  const auto a = estimate_Z(PotentialParams::preset(1, 1.0, 64, 1.0, 1.0),
                            8000, 42u);
  const auto b = estimate_Z(PotentialParams::preset(1, 1.0, 512, 1.0, 1.0),
                            8000, 42u);
  const double dl = std::fabs(b.log_mean - a.log_mean);
  const double se = std::sqrt(a.log_stderr * a.log_stderr +
                              b.log_stderr * b.log_stderr);
  bool ok = dl < 5.0 * se;
  std::string detail = "|dlog Z|=" + fmt_num(dl) + " vs 5x stderr=" +
                       fmt_num(5.0 * se);

  // tamed uniform bound: no monotone growth beyond error bars
  for (double sigma : {1.0, 5.0, 10.0}) {
    std::vector<Estimate> est;
    for (int N : doubling(16, 256))
      est.push_back(estimate_Z_tamed(
          PotentialParams::preset(1, 1.0 / 3.0, N, sigma, 1.0, 0.1), 4000,
          2026u));
    bool monotone = true;
    for (std::size_t i = 1; i < est.size(); ++i)
      monotone = monotone && est[i].mean > est[i - 1].mean;
    const double gap = est.back().mean - est.front().mean;
    const double comb = std::sqrt(est.back().stderr_ * est.back().stderr_ +
                                  est.front().stderr_ * est.front().stderr_);
    const bool grows = monotone && gap > 3.0 * comb;
    ok = ok && !grows;
    for (const auto& e : est)
      ok = ok && e.flags.find("overflow") == std::string::npos;
  }
  report(8, ok, "regular-regime stability: " + detail +
                    "; tamed Z bounded for sigma in {1,5,10}");
}

// --- 9: phase-transition drift scan ----------------------------------------
void criterion9() {
  const auto proto = PotentialParams::preset(1, 1.0 / 3.0, 64, 1.0, 1.0);
  const std::vector<int> Ms{8, 16, 32, 64};
  const auto weak = scan_nonnormalisability(proto, Ms, {0.05}, 4000, 17u, 16);
  bool ok = true;
  for (const auto& r : weak.rows) ok = ok && r.classification == "stable";

  const auto strong =
      scan_nonnormalisability(proto, Ms, {10.0}, 100000, 17u, 16);
  for (const auto& r : strong.rows) {
    ok = ok && r.classification == "divergent";
    if (r.M > Ms.front()) ok = ok && r.diff_prev < 0.0;
  }
  std::string zs;
  for (const auto& r : strong.rows)
    if (r.M > Ms.front())
      zs += " z(" + fmt_num(static_cast<std::int64_t>(r.M)) + ")=" +
            fmt_num(r.diff_stderr > 0 ? r.diff_prev / r.diff_stderr : 0.0);
  report(9, ok,
         "drift scan: sigma=0.05 stable, sigma=10 divergent;" + zs +
             "; crossover window reported as [0.05, 10]");
}

// --- 10: singularity statistic ---------------------------------------------
void criterion10() {
  const auto proto = PotentialParams::preset(1, 1.0 / 3.0, 8, 0.1, 1.0);
  const auto rep = singularity_statistic(proto, doubling(32, 1024), 12000, 11u);
  std::string detail = "singularity statistic over N = 2^5..2^10:";
  for (const auto& row : rep.rows) detail += " " + fmt_num(row.estimate);
  report(10, rep.pass, detail);
}

// --- 11: variational consistency -------------------------------------------
void criterion11() {
  bool ok = true;
  std::string detail;
  struct Cfg { double alpha, sigma; int N; };
  for (const Cfg& c : {Cfg{0.4, 1.0, 64}, Cfg{0.45, 1.0, 64},
                       Cfg{0.5, 1.0, 64}, Cfg{0.4, 2.0, 32}}) {
    const auto p = PotentialParams::preset(1, c.alpha, c.N, c.sigma, 1.0);
    const auto z = estimate_Z(p, 2000, 2026u);
    const auto obj = eval_bd_objective(DriftSpec::zero(64), p, 2000, 2026u);
    const double bound = -z.log_mean - 3.0 * z.log_stderr;
    const bool pass = obj.mean + 3.0 * obj.stderr_ >= bound;
    ok = ok && pass;
    detail += " (a=" + fmt_num(c.alpha) + ",s=" + fmt_num(c.sigma) +
              "): " + fmt_num(obj.mean) + " >= " + fmt_num(bound);
  }
  report(11, ok, "Gibbs inequality on matched seeds:" + detail);
}

// --- 12: determinism across thread counts ----------------------------------
void criterion12() {
  const auto p = PotentialParams::preset(1, 1.0 / 3.0, 32, 1.0, 1.0);
  std::vector<Estimate> runs;
  for (int t : {1, 2, 4}) {
#ifdef _OPENMP
    omp_set_num_threads(t);
#else
    (void)t;
#endif
    runs.push_back(estimate_Z(p, 2000, 2026u));
  }
  bool ok = true;
  for (const auto& r : runs)
    ok = ok && r.mean == runs[0].mean && r.stderr_ == runs[0].stderr_;

  // and the CSV layer is byte-stable
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "phi3_acceptance_csv";
  fs::create_directories(dir);
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{fmt_num(runs[0].mean), fmt_num(runs[0].stderr_)},
            {fmt_num(0.1), fmt_num(1e-17)}};
  std::string first;
  for (int i = 0; i < 2; ++i) {
    const auto path = (dir / "t.csv").string();
    write_csv(path, t);
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (i == 0)
      first = ss.str();
    else
      ok = ok && ss.str() == first;
  }
  fs::remove_all(dir);
  report(12, ok, "identical estimates for 1/2/4 threads, byte-stable CSV");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  if (g_failures == 0) {
    std::printf("acceptance: all 12 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria failed\n", g_failures);
  return 1;
}
