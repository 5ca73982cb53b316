#pragma once

#include <cstdint>
#include <vector>

#include "phi3/field.hpp"
#include "phi3/lattice.hpp"
#include "phi3/report.hpp"

namespace phi3 {

// Per-mode complex Brownian coefficients on a time skeleton in (0, 1].
// Increments are drawn from counter-based streams keyed by absolute mode
// coordinates, so the draw for a given mode never depends on N, the time
// skeleton resolution, or thread count.
struct GaussianPath {
  FrequencyLattice lat;
  std::vector<double> times;
  std::vector<std::complex<double>> values;  // [time][mode flat]
  std::uint64_t key = 0;

  const std::complex<double>& value(std::size_t tidx, std::int64_t mode) const {
    return values[tidx * static_cast<std::size_t>(lat.size()) +
                  static_cast<std::size_t>(mode)];
  }
  std::size_t time_index(double t) const;  // throws if t absent
};

// Brownian coefficient paths B_n(t); B_{-n} = conj(B_n), B_0 real,
// Re B_n(1) and Im B_n(1) each of variance 1/2.
GaussianPath sample_Y(const FrequencyLattice& lat,
                      const std::vector<double>& times, std::uint64_t key);

// Brownian values on the dyadic skeleton t = j/K (K a power of two),
// built by Levy midpoint refinement: a finer skeleton extends a coarser
// one pathwise, so step-doubling isolates time-discretization bias.
GaussianPath sample_Y_dyadic(const FrequencyLattice& lat, int K,
                             std::uint64_t key);

// Field Y_N(t) with coeff(n) = B_n(t) / <n>^alpha. G = 0 picks 4N+1.
SpectralField field_at(const GaussianPath& path, std::size_t tidx, int G = 0);

// Half-time field: coeff(n) = B_n(1/2) / <n>^alpha for |n|_inf <= M.
SpectralField build_Z_M(const GaussianPath& path, int M, int G = 0);

// exact E[Z_M(x)^2]: half the bracket sum over the |n|_inf <= M box
double kappa_M(const FrequencyLattice& lat, int M);

// Deterministic bump with Fourier support in the Euclidean annulus
// {M/4 < |n| < M}, L^2(R^d)-normalized profile. The inner radius sits at
// M/4 rather than M/2 so that zero-sum frequency triples exist in d = 1
// and the cubic integral scales like M^{d/2} in every dimension.
struct BumpSpec {
  int d = 1;
  int M = 2;
  BumpSpec(int d_, int M_);
  double fhat(double r) const;  // normalized annular profile
 private:
  double norm_const_ = 1.0;
};

// f_M with coeff(n) = M^{-d/2} fhat(|n| / M). G = 0 picks 4M+1.
SpectralField build_f_M(const BumpSpec& spec, int G = 0);

// Scaling suite for the f_M / Z_M constructions. Rows per M:
//   fM_L2       int f_M^2, exact             -> close to 1
//   fM_Hneg     M^{2a} int (<grad>^-a f_M)^2 -> bounded band
//   fM_L3       M^{-d/2} int f_M^3, exact    -> bounded band
//   kappa_M     exact, plus a "kappa_slope" row against d - 2a
//   ZM_var1/2   MC variances of int Z_M^2 and int (Y - Z_M) Z_M -> bounded
//   ZMsmall_1/2 M^{2a} E (int Y f_M)^2, M^{2a} E (int Z_M f_M)^2 -> bounded
CheckReport check_fm_zm_lemmas(int d, double alpha,
                               const std::vector<int>& M_list,
                               std::int64_t n_samples, std::uint64_t seed);

}  // namespace phi3
