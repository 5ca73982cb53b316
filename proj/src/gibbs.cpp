#include "phi3/gibbs.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "phi3/gff.hpp"
#include "phi3/reduce.hpp"
#include "phi3/rng.hpp"
#include "phi3/wick.hpp"

namespace phi3 {

namespace {

// int p2 and int p3 from one grid pass; sig is the Wick variance (0 = plain).
struct WickMoments {
  double i2 = 0.0;
  double i3 = 0.0;
};

WickMoments wick_integrals(const SpectralField& u, double sig) {
  if (u.G < 3 * u.N + 1)
    throw std::invalid_argument("grid too small for cubic quadrature");
  const auto grid = to_real(u);
  Accum m1, m2, m3;
  for (double x : grid) {
    m1.add(x);
    m2.add(x * x);
    m3.add(x * x * x);
  }
  const double inv = 1.0 / static_cast<double>(grid.size());
  WickMoments w;
  w.i2 = m2.sum * inv - sig;
  w.i3 = m3.sum * inv - 3.0 * sig * m1.sum * inv;
  return w;
}

double potential_core(const WickMoments& w, const PotentialParams& p) {
  const double v = -(p.sigma / 3.0) * w.i3 +
                   p.A * std::pow(std::fabs(w.i2), p.gamma) + p.beta;
  return v;
}

Estimate summarize(const std::vector<double>& weights, std::uint64_t seed,
                   const std::string& estimator) {
  Estimate est;
  est.n_samples = static_cast<std::int64_t>(weights.size());
  est.seed = seed;
  est.estimator = estimator;
  std::int64_t bad = 0;
  for (double x : weights)
    if (!std::isfinite(x)) ++bad;
  const auto m = mean_stderr(weights);
  est.mean = m.mean;
  est.stderr_ = m.stderr_;
  est.mom = median_of_means(weights, 32);
  if (estimator == "median_of_means") est.mean = est.mom;
  if (bad > 0) est.flags = "overflow:" + std::to_string(bad);
  if (bad == 0 && top_fraction_share(weights, 0.01) > 0.5) {
    if (!est.flags.empty()) est.flags += ";";
    est.flags += "heavy_tail";
  }
  if (est.mean > 0.0 && std::isfinite(est.mean)) {
    est.log_mean = std::log(est.mean);
    est.log_stderr = est.stderr_ / est.mean;
  } else {
    est.log_mean = std::nan("");
    est.log_stderr = std::nan("");
  }
  return est;
}

Estimate estimate_impl(const PotentialParams& p, std::int64_t n_samples,
                       std::uint64_t seed, const std::string& estimator,
                       bool tamed) {
  if (n_samples < 1) throw std::invalid_argument("need n_samples >= 1");
  PotentialParams pp = p;
  const FrequencyLattice lat = pp.lattice();
  if (pp.sigma_N == 0.0) pp.sigma_N = sigma_N(lat).value;
  const double sig = pp.wick ? pp.sigma_N : 0.0;
  const NormRequest areq = NormRequest::anorm(pp.alpha, pp.anorm_eps);

  auto weights = parallel_table(n_samples, [&](std::int64_t i) {
    const auto path = sample_Y(lat, {1.0}, sample_key(seed, kStreamGibbs, i));
    const auto u = field_at(path, 0);
    double v = potential_core(wick_integrals(u, sig), pp);
    if (tamed && pp.delta > 0.0)
      v += pp.delta * std::pow(norm(u, areq), static_cast<double>(pp.q));
    return std::exp(-v);
  });
  return summarize(weights, seed, estimator);
}

}  // namespace

PotentialParams PotentialParams::preset(int d, double alpha, int N,
                                        double sigma, double A, double delta) {
  if (d < 1 || d > 3 || N < 1 || alpha <= 0.0)
    throw std::invalid_argument("bad preset parameters");
  if (3.0 * alpha < d - 1e-9)
    throw std::invalid_argument("d > 3 alpha: no renormalizable preset");
  PotentialParams p;
  p.d = d;
  p.alpha = alpha;
  p.N = N;
  p.sigma = sigma;
  p.A = A;
  p.delta = delta;
  const double da = static_cast<double>(d);
  if (da < 2.0 * alpha - 1e-9) {
    p.regime = Regime::very_regular;
    p.gamma = 1.5;
    p.wick = false;  // plain powers: u_N is a function here
  } else if (std::fabs(da - 2.0 * alpha) <= 1e-9) {
    p.regime = Regime::log_regular;
    p.gamma = 2.1;
  } else if (std::fabs(da - 3.0 * alpha) <= 1e-9) {
    p.regime = Regime::critical;
    p.gamma = da / (da - 2.0 * alpha);  // = 3
    p.beta = beta_N(p.lattice(), sigma);
  } else {
    p.regime = Regime::regular;
    p.gamma = da / (da - 2.0 * alpha);
  }
  p.sigma_N = ::phi3::sigma_N(p.lattice()).value;
  return p;
}

double eval_V_N(const SpectralField& u, const PotentialParams& p) {
  double sig = 0.0;
  if (p.wick) sig = (p.sigma_N != 0.0) ? p.sigma_N : sigma_N(p.lattice()).value;
  const double v = potential_core(wick_integrals(u, sig), p);
  if (!std::isfinite(v)) throw std::overflow_error("potential overflow");
  return v;
}

Estimate estimate_Z(const PotentialParams& p, std::int64_t n_samples,
                    std::uint64_t seed, const std::string& estimator) {
  return estimate_impl(p, n_samples, seed, estimator, false);
}

Estimate estimate_Z_tamed(const PotentialParams& p, std::int64_t n_samples,
                          std::uint64_t seed, const std::string& estimator) {
  if (p.delta <= 0.0) throw std::invalid_argument("tamed estimate needs delta > 0");
  if (p.q < 2 || p.q % 2 != 0) throw std::invalid_argument("q must be even >= 2");
  return estimate_impl(p, n_samples, seed, estimator, true);
}

Estimate beta_N_mc(const PotentialParams& p, std::int64_t n_samples,
                   int time_steps, std::uint64_t seed) {
  if (time_steps < 16) throw std::invalid_argument("time_steps must be >= 16");
  const FrequencyLattice lat = p.lattice();
  const double sigN = sigma_N(lat).value;
  const int K = time_steps;

  // weights <n>^{-2 alpha} at the box positions of a (4N+1)-grid field
  const int G = SpectralField::default_grid(p.N);
  SpectralField probe(p.d, p.N, G);
  std::vector<std::size_t> idx(static_cast<std::size_t>(lat.size()));
  std::vector<double> wgt(idx.size());
  for (std::int64_t i = 0; i < lat.size(); ++i) {
    const auto n = lat.coords(i);
    idx[static_cast<std::size_t>(i)] = probe.index(n);
    wgt[static_cast<std::size_t>(i)] = lat.weight(n);
  }

  auto vals = parallel_table(n_samples, [&](std::int64_t s) {
    const auto path = sample_Y_dyadic(lat, K, sample_key(seed, kStreamBeta, s));
    Accum integral;
    for (int j = 1; j <= K; ++j) {
      const double t = static_cast<double>(j) / K;
      const auto f = field_at(path, static_cast<std::size_t>(j - 1), G);
      const auto h = wick_power(f, 2, t * sigN);
      Accum q;
      for (std::size_t m = 0; m < idx.size(); ++m)
        q.add(wgt[m] * std::norm(h.coeffs[idx[m]]));
      // trapezoid on [0, 1]; the t = 0 value vanishes
      integral.add(q.sum * ((j == K) ? 0.5 : 1.0) / K);
    }
    return 0.5 * p.sigma * p.sigma * integral.sum;
  });
  Estimate est = summarize(vals, seed, "plain");
  est.flags.clear();  // weight diagnostics are meaningless here
  return est;
}

CheckReport singularity_statistic(const PotentialParams& proto,
                                  const std::vector<int>& N_list,
                                  std::int64_t n_samples, std::uint64_t seed) {
  if (std::fabs(static_cast<double>(proto.d) - 3.0 * proto.alpha) > 1e-9)
    throw std::invalid_argument("singularity statistic requires d = 3 alpha");
  CheckReport rep;
  std::vector<double> est, scales, means;
  std::vector<std::vector<double>> samples;
  for (int N : N_list) {
    PotentialParams p = PotentialParams::preset(proto.d, proto.alpha, N,
                                                proto.sigma, proto.A);
    const FrequencyLattice lat = p.lattice();
    const double sig = p.sigma_N;
    auto sq = parallel_table(n_samples, [&](std::int64_t i) {
      const auto path = sample_Y(lat, {1.0}, sample_key(seed, kStreamGibbs, i));
      const auto w = wick_integrals(field_at(path, 0), sig);
      const double centred = -(p.sigma / 3.0) * w.i3 +
                             p.A * std::pow(std::fabs(w.i2), p.gamma);
      return centred * centred;
    });
    const auto m = mean_stderr(sq);
    const double scale = std::pow(std::log(static_cast<double>(N)), -0.75);
    const double stat = std::sqrt(m.mean) * scale;
    const double stat_err =
        (m.mean > 0.0) ? 0.5 * m.stderr_ / std::sqrt(m.mean) * scale : 0.0;
    // cubic-chaos part of the exact second moment
    const double cubic = std::sqrt((2.0 / 3.0) * p.sigma * p.sigma *
                                   pair_correlation_sum(lat, 3).value) *
                         scale;
    CheckRow row{"singularity", static_cast<double>(N), stat, stat_err, cubic,
                 stat >= cubic};
    rep.rows.push_back(row);
    est.push_back(stat);
    scales.push_back(scale);
    means.push_back(m.mean);
    samples.push_back(std::move(sq));
  }
  // Consecutive estimates share samples (common random numbers), so the
  // trend test uses the paired, delta-method stderr of each difference.
  rep.pass = est.size() >= 2;
  for (std::size_t i = 0; i + 1 < est.size(); ++i) {
    const double diff = est[i] - est[i + 1];
    std::vector<double> z(samples[i].size());
    const double ca = scales[i] / (2.0 * std::sqrt(means[i]));
    const double cb = scales[i + 1] / (2.0 * std::sqrt(means[i + 1]));
    for (std::size_t s = 0; s < z.size(); ++s)
      z[s] = ca * samples[i][s] - cb * samples[i + 1][s];
    const auto dz = mean_stderr(z);
    if (!(diff > dz.stderr_)) rep.pass = false;
  }
  for (const auto& row : rep.rows) rep.pass = rep.pass && row.pass;
  return rep;
}

}  // namespace phi3
