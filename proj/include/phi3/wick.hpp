#pragma once

#include <cstdint>
#include <vector>

#include "phi3/field.hpp"
#include "phi3/lattice.hpp"
#include "phi3/report.hpp"

namespace phi3 {

// probabilists' Hermite polynomial with variance parameter, k <= 4:
// H_0 = 1, H_1 = x, H_2 = x^2 - s, H_3 = x^3 - 3 s x, H_4 = x^4 - 6 s x^2 + 3 s^2
double hermite(int k, double x, double sigma);

// H_k applied pointwise to the real field values; exact on the grid when
// G >= 2 k N + 1 (the polynomial of a bandlimited field stays bandlimited).
SpectralField wick_power(const SpectralField& f, int k, double sigma);

// int H_k(u; sigma) dx from grid moments; quadrature-exact when G >= k N + 1.
double integrate_wick_power(const SpectralField& f, int k, double sigma);

// MC samples of int :Y_N^k(1): dx, one value per sample, Wick variance
// sigma_N. Deterministic given (seed, stream).
std::vector<double> sample_wick_integrals(const FrequencyLattice& lat, int k,
                                          std::int64_t n_samples,
                                          std::uint64_t seed,
                                          std::uint64_t stream);

struct HypercontractivityResult {
  double lhs = 0.0;       // E|X|^p estimate
  double lhs_stderr = 0.0;
  double rhs = 0.0;       // ((p-1)^k E|X|^2)^{p/2} estimate
  double ratio = 0.0;
  bool pass = false;
};

// E|X|^p <= ((p-1)^k E|X|^2)^{p/2} for X in chaos of order <= k
HypercontractivityResult check_hypercontractivity(const std::vector<double>& X,
                                                  int k, double p);

// E[H_k(f; var_f) H_l(g; var_g)] = delta_{kl} k! (E[fg])^k for jointly
// Gaussian (f, g); one row per (k, l), pass when within 3 stderr.
CheckReport check_hermite_orthogonality(double var_f, double var_g, double cov,
                                        int kmax, std::int64_t n_samples,
                                        std::uint64_t seed);

// Lemma-style scaling checks for :Y_N^k(t):.
//  - rows "holder": MC E|| :Y_N^k(1): ||_{C^{s_target}}^2 per N (uniform
//    boundedness witness)
//  - rows "hneg" (k = 2 only): MC E|| :Y_N^2(t): ||_{H^{-alpha}}^2 divided
//    by t^2 log N (critical d = 3 alpha) or t^2 (otherwise), per (N, t)
// pass when each family stays within a max/min band of 4.
CheckReport check_pathwise_regularity(int d, double alpha, int k,
                                      double s_target,
                                      const std::vector<int>& N_list,
                                      std::int64_t n_samples,
                                      std::uint64_t seed);

}  // namespace phi3
