#include "phi3/variational.hpp"

#include <cmath>
#include <stdexcept>

#include "phi3/reduce.hpp"
#include "phi3/rng.hpp"
#include "phi3/wick.hpp"

namespace phi3 {

namespace {

// c += s * a, fields sharing (d, G)
void axpy(SpectralField& c, double s, const SpectralField& a) {
  if (c.d != a.d || c.G != a.G) throw std::invalid_argument("grid mismatch");
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) c.coeffs[i] += s * a.coeffs[i];
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double h_alpha_sq(const SpectralField& f, double alpha) {
  FrequencyLattice box(f.d, f.N, alpha);
  Accum s;
  for (std::int64_t i = 0; i < box.size(); ++i) {
    const auto n = box.coords(i);
    s.add(std::pow(box.bracket2(n), alpha) * std::norm(f.at(n)));
  }
  return s.sum;
}

double parseval_sq(const SpectralField& f) {
  Accum s;
  for (const auto& c : f.coeffs) s.add(std::norm(c));
  return s.sum;
}

}  // namespace

SpectralField assemble_fZ(const GaussianPath& path, const PotentialParams& p) {
  const FrequencyLattice lat = p.lattice();
  if (path.lat.N != p.N || path.lat.d != p.d)
    throw std::invalid_argument("path lattice mismatch");
  const int K = static_cast<int>(path.times.size());
  const double sigN = (p.sigma_N != 0.0) ? p.sigma_N : sigma_N(lat).value;
  const int G = SpectralField::default_grid(p.N);

  SpectralField out(p.d, p.N, G);
  for (int j = 1; j <= K; ++j) {
    const double t = path.times[static_cast<std::size_t>(j - 1)];
    const auto f = field_at(path, static_cast<std::size_t>(j - 1), G);
    const auto h = wick_power(f, 2, t * sigN);
    // trapezoid weight; the t = 0 endpoint value vanishes
    const double w = ((j == K) ? 0.5 : 1.0) / K;
    for (std::int64_t i = 0; i < lat.size(); ++i) {
      const auto n = lat.coords(i);
      out.at(n) += w * lat.weight(n) * h.at(n);
    }
  }
  return out;
}

SpectralField assemble_upsilon(const DriftSpec& drift, const GaussianPath& path,
                               const PotentialParams& p) {
  const int G = SpectralField::default_grid(p.N);
  if (drift.kind == DriftKind::zero) return SpectralField(p.d, p.N, G);
  if (drift.M < 2 || drift.M > p.N)
    throw std::invalid_argument("explicit drift needs 2 <= M <= N");
  SpectralField ups = build_Z_M(path, drift.M, G);
  for (auto& c : ups.coeffs) c = -c;
  const double amp = sgn(p.sigma) * std::sqrt(kappa_M(p.lattice(), drift.M));
  if (amp != 0.0) axpy(ups, amp, build_f_M(BumpSpec(p.d, drift.M), G));
  ups.N = p.N;
  return ups;
}

SpectralField assemble_theta(const DriftSpec& drift, const GaussianPath& path,
                             const PotentialParams& p) {
  SpectralField theta = assemble_upsilon(drift, path, p);
  if (p.sigma != 0.0) axpy(theta, p.sigma, assemble_fZ(path, p));
  return theta;
}

double kinetic_energy(const DriftSpec& drift, const GaussianPath& path,
                      const PotentialParams& p) {
  if (drift.kind == DriftKind::zero) return 0.0;
  // dUps = 2 * 1{t > 1/2} W: (1/2) * |2|^2 * (1/2) = 1 times ||W||^2
  SpectralField w = assemble_upsilon(drift, path, p);
  w.N = drift.M;  // supported in the M-box
  return h_alpha_sq(w, p.alpha);
}

namespace {

void check_time_steps(int K) {
  if (K < 2 || (K & (K - 1)) != 0)
    throw std::invalid_argument("time_steps must be a power of two");
}

// Objective for one sample with the path-independent pieces (Y at t = 1
// and the fZ shift) precomputed, so an M-scan can share them.
double objective_one(const SpectralField& Y, const GaussianPath& path,
                     const SpectralField& fz, const DriftSpec& drift,
                     const PotentialParams& pp) {
  SpectralField theta = assemble_upsilon(drift, path, pp);
  double kin = 0.0;
  if (drift.kind == DriftKind::explicit_nn) {
    SpectralField w = theta;  // the step before the fZ shift
    w.N = drift.M;
    kin = h_alpha_sq(w, pp.alpha);
  }
  if (pp.sigma != 0.0) axpy(theta, pp.sigma, fz);
  SpectralField sum = Y;
  axpy(sum, 1.0, theta);
  const double wick2 = parseval_sq(sum) - pp.sigma_N;
  return -pp.sigma * integrate_product(Y, theta, theta) -
         (pp.sigma / 3.0) * integrate_product(theta, theta, theta) +
         pp.A * std::pow(std::fabs(wick2), pp.gamma) + kin;
}

}  // namespace

std::vector<double> bd_objective_samples(const DriftSpec& drift,
                                         const PotentialParams& p,
                                         std::int64_t n_samples,
                                         std::uint64_t seed) {
  check_time_steps(drift.time_steps);
  PotentialParams pp = p;
  const FrequencyLattice lat = pp.lattice();
  if (pp.sigma_N == 0.0) pp.sigma_N = sigma_N(lat).value;
  const int G = SpectralField::default_grid(pp.N);

  return parallel_table(n_samples, [&](std::int64_t i) {
    const auto path = sample_Y_dyadic(lat, drift.time_steps,
                                      sample_key(seed, kStreamGibbs, i));
    const auto Y = field_at(path, path.times.size() - 1);
    const auto fz = (pp.sigma != 0.0) ? assemble_fZ(path, pp)
                                      : SpectralField(pp.d, pp.N, G);
    return objective_one(Y, path, fz, drift, pp);
  });
}

Estimate eval_bd_objective(const DriftSpec& drift, const PotentialParams& p,
                           std::int64_t n_samples, std::uint64_t seed) {
  const auto vals = bd_objective_samples(drift, p, n_samples, seed);
  const auto m = mean_stderr(vals);
  Estimate est;
  est.mean = m.mean;
  est.stderr_ = m.stderr_;
  est.mom = median_of_means(vals, 32);
  est.n_samples = n_samples;
  est.seed = seed;
  std::int64_t bad = 0;
  for (double v : vals)
    if (!std::isfinite(v)) ++bad;
  if (bad > 0) est.flags = "overflow:" + std::to_string(bad);
  return est;
}

DriftScanReport scan_nonnormalisability(const PotentialParams& proto,
                                        const std::vector<int>& M_list,
                                        const std::vector<double>& sigma_list,
                                        std::int64_t n_samples,
                                        std::uint64_t seed, int time_steps) {
  if (std::fabs(static_cast<double>(proto.d) - 3.0 * proto.alpha) > 1e-9)
    throw std::invalid_argument("drift scan requires d = 3 alpha");
  if (M_list.size() < 2) throw std::invalid_argument("need at least two M");
  check_time_steps(time_steps);

  DriftScanReport rep;
  double best_stable = 0.0, best_div = 0.0;
  bool saw_stable = false, saw_div = false;
  for (double sigma : sigma_list) {
    PotentialParams p = PotentialParams::preset(proto.d, proto.alpha, proto.N,
                                                sigma, proto.A, proto.delta);
    const FrequencyLattice lat = p.lattice();
    const int G = SpectralField::default_grid(p.N);
    for (int M : M_list)
      if (M < 2 || M > p.N)
        throw std::invalid_argument("explicit drift needs 2 <= M <= N");
    // all M cells share each sample's path and fZ shift, both for speed
    // and so the M-trend test can use exactly paired differences
    std::vector<std::vector<double>> cell(
        M_list.size(), std::vector<double>(static_cast<std::size_t>(n_samples)));
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n_samples; ++i) {
      const auto path =
          sample_Y_dyadic(lat, time_steps, sample_key(seed, kStreamGibbs, i));
      const auto Y = field_at(path, path.times.size() - 1);
      const auto fz = (sigma != 0.0) ? assemble_fZ(path, p)
                                     : SpectralField(p.d, p.N, G);
      for (std::size_t mi = 0; mi < M_list.size(); ++mi)
        cell[mi][static_cast<std::size_t>(i)] = objective_one(
            Y, path, fz, DriftSpec::explicit_nn(M_list[mi], time_steps), p);
    }
    // paired consecutive differences (shared Y samples per column)
    std::vector<MeanErr> diffs(M_list.size());
    for (std::size_t mi = 1; mi < M_list.size(); ++mi) {
      std::vector<double> diff(cell[mi].size());
      for (std::size_t i = 0; i < diff.size(); ++i)
        diff[i] = cell[mi][i] - cell[mi - 1][i];
      diffs[mi] = mean_stderr(diff);
    }
    // classify on the end-to-end paired trend: the per-octave decrease in
    // the divergent phase sits in the tail and single octaves resolve slowly
    std::vector<double> total(cell.front().size());
    for (std::size_t i = 0; i < total.size(); ++i)
      total[i] = cell.back()[i] - cell.front()[i];
    const auto trend = mean_stderr(total);
    const bool divergent = trend.mean < -3.0 * trend.stderr_;
    const std::string cls = divergent ? "divergent" : "stable";
    for (std::size_t mi = 0; mi < M_list.size(); ++mi) {
      const auto m = mean_stderr(cell[mi]);
      rep.rows.push_back({M_list[mi], sigma, m.mean, m.stderr_,
                          diffs[mi].mean, diffs[mi].stderr_, cls});
    }
    const double as = std::fabs(sigma);
    if (divergent) {
      if (!saw_div || as < best_div) best_div = as;
      saw_div = true;
    } else {
      if (!saw_stable || as > best_stable) best_stable = as;
      saw_stable = true;
    }
  }
  rep.has_window = saw_stable && saw_div && best_stable < best_div;
  rep.window_lo = best_stable;
  rep.window_hi = best_div;
  return rep;
}

}  // namespace phi3
