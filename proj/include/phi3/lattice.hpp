#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace phi3 {

// Index set {n in Z^d : |n|_inf <= N} with Japanese-bracket weights
// <n> = sqrt(1 + |n|_2^2).
struct FrequencyLattice {
  int d = 1;
  int N = 0;
  double alpha = 0.5;

  FrequencyLattice(int d_, int N_, double alpha_);

  int side() const { return 2 * N + 1; }
  std::int64_t size() const;

  // flat index <-> coordinates, row-major over [-N, N]^d
  std::array<int, 3> coords(std::int64_t flat) const;
  std::int64_t flat(const std::array<int, 3>& n) const;

  double bracket2(const std::array<int, 3>& n) const;  // 1 + |n|^2
  double bracket(const std::array<int, 3>& n) const;
  // <n>^{-2 alpha}
  double weight(const std::array<int, 3>& n) const;
};

struct LatticeSumResult {
  double value = 0.0;
  int N = 0;
  std::int64_t terms = 0;
};

// sigma_N = sum_{|n|_inf <= N} <n>^{-2 alpha}; Wick variance at t = 1.
// Variance at time t is t * sigma_N.
LatticeSumResult sigma_N(const FrequencyLattice& lat);

// (w * w)(n) for |n|_inf <= R, where w(m) = <m>^{-2 alpha} 1{|m|_inf <= N}.
// Serial reference and OpenMP versions agree bit-for-bit for d = 1; the
// FFT-backed path used for d >= 2 agrees to roundoff.
std::vector<double> self_convolve_box(const FrequencyLattice& lat, int R);
std::vector<double> self_convolve_box_serial(const FrequencyLattice& lat, int R);

// sum over k-tuples with n_1 + ... + n_k = 0, all |n_i|_inf <= N, of
// prod_i <n_i>^{-2 alpha}. Bare lattice sum: no k! factor (the Hermite
// orthogonality constant is applied by callers that compare against
// L^2(mu) moments; see wick tests).
LatticeSumResult pair_correlation_sum(const FrequencyLattice& lat, int k);

// Closed form of (sigma^2/2) E int_0^1 ||d/dt Z_N(t)||_{H^alpha}^2 dt with
// dZ_N/dt = pi_N <grad>^{-2 alpha} :Y_N^2(t):. Reduces to
// (sigma^2/3) * sum_{|n|_inf <= N} <n>^{-2 alpha} (w*w)(n).
double beta_N(const FrequencyLattice& lat, double sigma);

// max over |n|_inf <= N of <n>^{a-lambda} * sum_{|m|_inf <= 4N}
// <m>^{-a} <n-m>^{-b}.
double discrete_convolution_max(int d, double a, double b, double lambda, int N);

struct DiscrConvReport {
  std::vector<int> N_list;
  std::vector<double> maxima;
  double worst_ratio = 0.0;  // max of consecutive maxima ratios
  bool pass = false;         // worst_ratio < 1.1
};

// Bounded-ratio check across a doubling sequence of N. Preconditions
// a + b > d, a < d; lambda must be > 0 when b == d.
DiscrConvReport check_discrete_convolution(int d, double a, double b,
                                           double lambda,
                                           const std::vector<int>& N_list);

}  // namespace phi3
