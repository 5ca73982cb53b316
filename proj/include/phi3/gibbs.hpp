#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phi3/field.hpp"
#include "phi3/lattice.hpp"
#include "phi3/report.hpp"

namespace phi3 {

enum class Regime { very_regular, log_regular, regular, critical };

// Parameter bundle for V_N and W_{N, delta}.
struct PotentialParams {
  int d = 1;
  double alpha = 1.0;
  int N = 16;
  double sigma = 1.0;   // cubic coupling
  double A = 1.0;       // taming amplitude
  double gamma = 1.5;   // taming exponent
  double beta = 0.0;    // second renormalization (closed lattice form at d = 3a)
  double delta = 0.0;   // A-norm taming weight
  int q = 20;           // A-norm exponent
  double anorm_eps = 0.01;
  bool wick = true;     // plain powers in the very regular regime
  double sigma_N = 0.0; // Wick variance, filled by preset()
  Regime regime = Regime::regular;

  // gamma table: d < 2a -> 1.5; d = 2a -> 2.1; 2a < d <= 3a -> d/(d - 2a).
  // beta is the closed lattice form iff d = 3a.
  static PotentialParams preset(int d, double alpha, int N, double sigma,
                                double A, double delta = 0.0);
  FrequencyLattice lattice() const { return {d, N, alpha}; }
};

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  double mom = 0.0;          // median-of-means companion
  double log_mean = 0.0;     // log of the mean estimate
  double log_stderr = 0.0;   // delta-method error of log_mean
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::string estimator = "plain";
  std::string flags;         // "heavy_tail", "overflow:<k>", ...
};

// V_N(u) = -(sigma/3) int p3(u_N) + A |int p2(u_N)|^gamma + beta, with
// p_k Wick-renormalized unless params.wick is false. Throws on overflow.
double eval_V_N(const SpectralField& u, const PotentialParams& p);

// MC mean of exp(-V_N(Y_N)) over Y_N ~ mu_N
Estimate estimate_Z(const PotentialParams& p, std::int64_t n_samples,
                    std::uint64_t seed, const std::string& estimator = "plain");

// as estimate_Z with the exp(-delta ||u_N||_A^q) taming factor
Estimate estimate_Z_tamed(const PotentialParams& p, std::int64_t n_samples,
                          std::uint64_t seed,
                          const std::string& estimator = "plain");

// Independent oracle for lattice beta_N: trapezoid time quadrature of
// (sigma^2/2) int_0^1 ||pi_N <grad>^{-2a} :Y_N^2(t):||_{H^a}^2 dt on a
// dyadic Brownian skeleton with `time_steps` intervals.
Estimate beta_N_mc(const PotentialParams& p, std::int64_t n_samples,
                   int time_steps, std::uint64_t seed);

// MC estimates of ||(log N)^{-3/4} (V_N - beta_N)||_{L^2(mu)} per N;
// pass when the sequence decreases from first to last beyond 3 stderr.
CheckReport singularity_statistic(const PotentialParams& proto,
                                  const std::vector<int>& N_list,
                                  std::int64_t n_samples, std::uint64_t seed);

}  // namespace phi3
