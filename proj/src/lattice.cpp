#include "phi3/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phi3/fft.hpp"
#include "phi3/reduce.hpp"

namespace phi3 {

FrequencyLattice::FrequencyLattice(int d_, int N_, double alpha_)
    : d(d_), N(N_), alpha(alpha_) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1..3");
  if (N < 0) throw std::invalid_argument("truncation radius must be >= 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
}

std::int64_t FrequencyLattice::size() const {
  std::int64_t s = 1;
  for (int i = 0; i < d; ++i) s *= side();
  return s;
}

std::array<int, 3> FrequencyLattice::coords(std::int64_t flat) const {
  std::array<int, 3> n{0, 0, 0};
  for (int i = d - 1; i >= 0; --i) {
    n[i] = static_cast<int>(flat % side()) - N;
    flat /= side();
  }
  return n;
}

std::int64_t FrequencyLattice::flat(const std::array<int, 3>& n) const {
  std::int64_t f = 0;
  for (int i = 0; i < d; ++i) f = f * side() + (n[i] + N);
  return f;
}

double FrequencyLattice::bracket2(const std::array<int, 3>& n) const {
  double b = 1.0;
  for (int i = 0; i < d; ++i) b += static_cast<double>(n[i]) * n[i];
  return b;
}

double FrequencyLattice::bracket(const std::array<int, 3>& n) const {
  return std::sqrt(bracket2(n));
}

double FrequencyLattice::weight(const std::array<int, 3>& n) const {
  return std::pow(bracket2(n), -alpha);
}

LatticeSumResult sigma_N(const FrequencyLattice& lat) {
  LatticeSumResult r;
  r.N = lat.N;
  r.terms = lat.size();
  r.value = det_sum(lat.size(), [&](std::int64_t i) {
    return lat.weight(lat.coords(i));
  });
  return r;
}

namespace {

// weight array over [-N, N]^d, row-major
std::vector<double> weight_array(const FrequencyLattice& lat) {
  std::vector<double> w(static_cast<std::size_t>(lat.size()));
  for (std::int64_t i = 0; i < lat.size(); ++i)
    w[static_cast<std::size_t>(i)] = lat.weight(lat.coords(i));
  return w;
}

std::vector<double> conv_direct_1d(const FrequencyLattice& lat, int R,
                                   bool parallel) {
  const int N = lat.N;
  const auto w = weight_array(lat);
  const int out_side = 2 * R + 1;
  std::vector<double> out(out_side, 0.0);
#pragma omp parallel for schedule(static) if (parallel)
  for (int oi = 0; oi < out_side; ++oi) {
    const int n = oi - R;
    Accum a;
    const int lo = std::max(-N, n - N);
    const int hi = std::min(N, n + N);
    for (int m = lo; m <= hi; ++m) a.add(w[m + N] * w[n - m + N]);
    out[oi] = a.sum;
  }
  return out;
}

// zero-padded FFT self-convolution for d >= 2
std::vector<double> conv_fft(const FrequencyLattice& lat, int R) {
  const int N = lat.N;
  const int P = 4 * N + 1;  // conv support |n| <= 2N fits with no wraparound
  std::size_t total = 1;
  for (int i = 0; i < lat.d; ++i) total *= static_cast<std::size_t>(P);
  if (total > (std::size_t{1} << 28))
    throw std::invalid_argument("lattice too large for FFT convolution");
  std::vector<std::complex<double>> grid(total, 0.0);
  // place w at wrapped indices n mod P
  for (std::int64_t i = 0; i < lat.size(); ++i) {
    const auto n = lat.coords(i);
    std::size_t idx = 0;
    for (int k = 0; k < lat.d; ++k)
      idx = idx * P + static_cast<std::size_t>((n[k] % P + P) % P);
    grid[idx] = lat.weight(n);
  }
  fft(lat.d, P, grid.data(), -1);
  for (auto& z : grid) z *= z;
  fft(lat.d, P, grid.data(), +1);
  const double scale = 1.0 / static_cast<double>(total);

  FrequencyLattice out_lat(lat.d, R, lat.alpha);
  std::vector<double> out(static_cast<std::size_t>(out_lat.size()), 0.0);
  for (std::int64_t i = 0; i < out_lat.size(); ++i) {
    const auto n = out_lat.coords(i);
    std::size_t idx = 0;
    for (int k = 0; k < lat.d; ++k)
      idx = idx * P + static_cast<std::size_t>((n[k] % P + P) % P);
    out[static_cast<std::size_t>(i)] = grid[idx].real() * scale;
  }
  return out;
}

}  // namespace

std::vector<double> self_convolve_box(const FrequencyLattice& lat, int R) {
  if (R > 2 * lat.N) throw std::invalid_argument("R beyond conv support");
  if (lat.d == 1) return conv_direct_1d(lat, R, true);
  return conv_fft(lat, R);
}

std::vector<double> self_convolve_box_serial(const FrequencyLattice& lat,
                                             int R) {
  if (R > 2 * lat.N) throw std::invalid_argument("R beyond conv support");
  if (lat.d == 1) return conv_direct_1d(lat, R, false);
  return conv_fft(lat, R);
}

LatticeSumResult pair_correlation_sum(const FrequencyLattice& lat, int k) {
  if (k != 2 && k != 3)
    throw std::invalid_argument("pair_correlation_sum: k must be 2 or 3");
  LatticeSumResult r;
  r.N = lat.N;
  r.terms = lat.size();
  if (k == 2) {
    // (w * w)(0) = sum_m w(m)^2
    r.value = det_sum(lat.size(), [&](std::int64_t i) {
      const double w = lat.weight(lat.coords(i));
      return w * w;
    });
    return r;
  }
  // k = 3: ((w * w) * w)(0) = sum_{|n| <= N} (w*w)(n) w(n), w even
  const auto conv = self_convolve_box(lat, lat.N);
  r.value = det_sum(lat.size(), [&](std::int64_t i) {
    return conv[static_cast<std::size_t>(i)] * lat.weight(lat.coords(i));
  });
  return r;
}

double beta_N(const FrequencyLattice& lat, double sigma) {
  if (sigma == 0.0) return 0.0;
  // E||dZ_N/dt(t)||_{H^alpha}^2 = 2 t^2 sum_{|n|<=N} <n>^{-2a} (w*w)(n);
  // the 2 is the Hermite orthogonality constant 2!, the time integral
  // contributes 1/3.
  const auto conv = self_convolve_box(lat, lat.N);
  const double s = det_sum(lat.size(), [&](std::int64_t i) {
    return conv[static_cast<std::size_t>(i)] * lat.weight(lat.coords(i));
  });
  return sigma * sigma * s / 3.0;
}

double discrete_convolution_max(int d, double a, double b, double lambda,
                                int N) {
  const FrequencyLattice outer(d, N, 1.0);
  const FrequencyLattice inner(d, 4 * N, 1.0);
  std::vector<double> vals(static_cast<std::size_t>(outer.size()));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < outer.size(); ++i) {
    const auto n = outer.coords(i);
    Accum s;
    for (std::int64_t j = 0; j < inner.size(); ++j) {
      const auto m = inner.coords(j);
      std::array<int, 3> nm{n[0] - m[0], n[1] - m[1], n[2] - m[2]};
      s.add(std::pow(inner.bracket2(m), -a / 2.0) *
            std::pow(inner.bracket2(nm), -b / 2.0));
    }
    vals[static_cast<std::size_t>(i)] =
        std::pow(outer.bracket2(n), (a - lambda) / 2.0) * s.sum;
  }
  return *std::max_element(vals.begin(), vals.end());
}

DiscrConvReport check_discrete_convolution(int d, double a, double b,
                                           double lambda,
                                           const std::vector<int>& N_list) {
  if (!(a + b > d) || !(a < d))
    throw std::invalid_argument("need a + b > d and a < d");
  if (b == static_cast<double>(d) && !(lambda > 0.0))
    throw std::invalid_argument("lambda must be > 0 when b = d");
  DiscrConvReport rep;
  rep.N_list = N_list;
  for (int N : N_list)
    rep.maxima.push_back(discrete_convolution_max(d, a, b, lambda, N));
  for (std::size_t i = 1; i < rep.maxima.size(); ++i)
    rep.worst_ratio =
        std::max(rep.worst_ratio, rep.maxima[i] / rep.maxima[i - 1]);
  rep.pass = rep.maxima.size() < 2 || rep.worst_ratio < 1.1;
  return rep;
}

}  // namespace phi3
