#include "phi3/wick.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phi3/gff.hpp"
#include "phi3/reduce.hpp"
#include "phi3/rng.hpp"

namespace phi3 {

double hermite(int k, double x, double sigma) {
  switch (k) {
    case 0: return 1.0;
    case 1: return x;
    case 2: return x * x - sigma;
    case 3: return x * (x * x - 3.0 * sigma);
    case 4: return x * x * (x * x - 6.0 * sigma) + 3.0 * sigma * sigma;
    default: break;
  }
  if (k < 0) throw std::invalid_argument("hermite: k must be >= 0");
  throw std::invalid_argument("hermite: k > 4 unsupported");
}

SpectralField wick_power(const SpectralField& f, int k, double sigma) {
  if (k < 1 || k > 3) throw std::invalid_argument("wick_power: k must be 1..3");
  if (f.G < 2 * k * f.N + 1)
    throw std::invalid_argument("wick_power: grid under-resolved for degree");
  if (k == 1) return f;
  auto grid = to_real(f);
  for (double& x : grid) x = hermite(k, x, sigma);
  SpectralField out = from_real(grid, f.d, std::min(k * f.N, f.nyquist()), f.G);
  return out;
}

double integrate_wick_power(const SpectralField& f, int k, double sigma) {
  if (k < 1 || k > 3) throw std::invalid_argument("k must be 1..3");
  if (f.G < k * f.N + 1)
    throw std::invalid_argument("grid too small for quadrature");
  const auto grid = to_real(f);
  const std::int64_t n = static_cast<std::int64_t>(grid.size());
  Accum m1, m2, m3;
  for (double x : grid) {
    m1.add(x);
    if (k >= 2) m2.add(x * x);
    if (k >= 3) m3.add(x * x * x);
  }
  const double inv = 1.0 / static_cast<double>(n);
  switch (k) {
    case 1: return m1.sum * inv;
    case 2: return m2.sum * inv - sigma;
    default: return m3.sum * inv - 3.0 * sigma * m1.sum * inv;
  }
}

std::vector<double> sample_wick_integrals(const FrequencyLattice& lat, int k,
                                          std::int64_t n_samples,
                                          std::uint64_t seed,
                                          std::uint64_t stream) {
  const double sig = sigma_N(lat).value;
  const std::vector<double> times{1.0};
  return parallel_table(n_samples, [&](std::int64_t i) {
    const auto path = sample_Y(lat, times, sample_key(seed, stream, i));
    const auto f = field_at(path, 0);
    return integrate_wick_power(f, k, sig);
  });
}

HypercontractivityResult check_hypercontractivity(const std::vector<double>& X,
                                                  int k, double p) {
  if (p < 2.0) throw std::invalid_argument("p must be >= 2");
  std::vector<double> pw(X.size()), sq(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    pw[i] = std::pow(std::fabs(X[i]), p);
    sq[i] = X[i] * X[i];
  }
  const auto mp = mean_stderr(pw);
  const auto m2 = mean_stderr(sq);
  if (m2.mean <= 0.0)
    throw std::invalid_argument("degenerate (zero-variance) X");
  HypercontractivityResult r;
  r.lhs = mp.mean;
  r.lhs_stderr = mp.stderr_;
  r.rhs = std::pow(std::pow(p - 1.0, k) * m2.mean, p / 2.0);
  r.ratio = r.lhs / r.rhs;
  r.pass = r.lhs - 3.0 * mp.stderr_ <= r.rhs;
  return r;
}

CheckReport check_hermite_orthogonality(double var_f, double var_g, double cov,
                                        int kmax, std::int64_t n_samples,
                                        std::uint64_t seed) {
  if (var_f <= 0.0 || var_g <= 0.0 || cov * cov > var_f * var_g)
    throw std::invalid_argument("invalid covariance structure");
  CheckReport rep;
  const double a = cov / std::sqrt(var_f);
  const double b = std::sqrt(var_g - cov * cov / var_f);
  for (int k = 1; k <= kmax; ++k) {
    for (int l = 1; l <= kmax; ++l) {
      auto vals = parallel_table(n_samples, [&](std::int64_t i) {
        double g0, g1;
        gauss_pair(sample_key(seed, 0xbeef, i), 0, 0, 0, g0, g1);
        const double f = std::sqrt(var_f) * g0;
        const double g = a * g0 + b * g1;
        return hermite(k, f, var_f) * hermite(l, g, var_g);
      });
      const auto m = mean_stderr(vals);
      double target = 0.0;
      if (k == l) {
        target = std::tgamma(k + 1.0) * std::pow(cov, k);
      }
      CheckRow row;
      row.check = "hermite_orth_k" + std::to_string(k) + "_l" + std::to_string(l);
      row.N = k * 10 + l;
      row.estimate = m.mean;
      row.stderr_ = m.stderr_;
      row.bound = target;
      row.pass = std::fabs(m.mean - target) <= 3.0 * m.stderr_;
      rep.rows.push_back(row);
      rep.pass = rep.pass && row.pass;
    }
  }
  return rep;
}

CheckReport check_pathwise_regularity(int d, double alpha, int k,
                                      double s_target,
                                      const std::vector<int>& N_list,
                                      std::int64_t n_samples,
                                      std::uint64_t seed) {
  if (k < 1 || k > 3) throw std::invalid_argument("k must be 1..3");
  const double s_expected = k * (alpha - 0.5 * d);
  if (s_expected < 0.0 && s_target >= 0.0)
    throw std::invalid_argument("regime mismatch: s_target should be negative");
  const bool critical = std::fabs(d - 3.0 * alpha) < 1e-6;

  CheckReport rep;
  std::vector<double> holder_vals, hneg_vals;
  for (int N : N_list) {
    FrequencyLattice lat(d, N, alpha);
    const double sig = sigma_N(lat).value;
    const int G = std::max(4 * N + 1, 2 * k * N + 1);
    const NormRequest hreq = NormRequest::holder(s_target);

    auto vals = parallel_table(n_samples, [&](std::int64_t i) {
      const auto path = sample_Y(lat, {1.0}, sample_key(seed, 0x9a11, i));
      const auto f = field_at(path, 0, G);
      const double nrm = norm(wick_power(f, k, sig), hreq);
      return nrm * nrm;
    });
    const auto m = mean_stderr(vals);
    CheckRow row{"holder_k" + std::to_string(k), static_cast<double>(N),
                 m.mean, m.stderr_, 0.0, true};
    rep.rows.push_back(row);
    holder_vals.push_back(m.mean);

    if (k == 2) {
      const std::vector<double> ts{0.25, 0.5, 1.0};
      auto sob = NormRequest::sobolev(-alpha);
      for (std::size_t ti = 0; ti < ts.size(); ++ti) {
        const double t = ts[ti];
        auto v2 = parallel_table(n_samples, [&](std::int64_t i) {
          // marginal draw at time t: B(t) = sqrt(t) B(1) in law
          const auto path = sample_Y(lat, {1.0}, sample_key(seed, 0x9a12, i));
          auto f = field_at(path, 0, G);
          for (auto& c : f.coeffs) c *= std::sqrt(t);
          const double nrm = norm(wick_power(f, 2, t * sig), sob);
          return nrm * nrm;
        });
        const auto m2 = mean_stderr(v2);
        const double denom =
            critical ? t * t * std::log(static_cast<double>(N)) : t * t;
        CheckRow r2{"hneg_t" + std::to_string(ti), static_cast<double>(N),
                    m2.mean / denom, m2.stderr_ / denom, 0.0, true};
        rep.rows.push_back(r2);
        hneg_vals.push_back(m2.mean / denom);
      }
    }
  }
  auto band_ok = [](const std::vector<double>& v) {
    if (v.size() < 2) return true;
    const double lo = *std::min_element(v.begin(), v.end());
    const double hi = *std::max_element(v.begin(), v.end());
    return lo > 0.0 && hi / lo < 4.0;
  };
  rep.pass = band_ok(holder_vals) && band_ok(hneg_vals);
  return rep;
}

}  // namespace phi3
