#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phi3/field.hpp"
#include "phi3/gff.hpp"
#include "phi3/gibbs.hpp"

namespace phi3 {

enum class DriftKind { zero, explicit_nn };

// Control in the Boue-Dupuis representation. The explicit kind is the
// step drift 2 * 1{t > 1/2} (-Z_M + sgn(sigma) sqrt(kappa_M) f_M).
struct DriftSpec {
  DriftKind kind = DriftKind::zero;
  int M = 0;            // scale of the explicit drift
  int time_steps = 64;  // dyadic skeleton resolution K

  static DriftSpec zero(int K = 64) { return {DriftKind::zero, 0, K}; }
  static DriftSpec explicit_nn(int M, int K = 64) {
    return {DriftKind::explicit_nn, M, K};
  }
};

// fZ_N = pi_N int_0^1 <grad>^{-2a} :Y_N^2(t): dt, trapezoid quadrature on
// the path's dyadic skeleton.
SpectralField assemble_fZ(const GaussianPath& path, const PotentialParams& p);

// Ups_N = int_0^1 dUps dt; 0 for the zero drift, the closed form
// -Z_M + sgn(sigma) sqrt(kappa_M) f_M for the explicit step drift.
SpectralField assemble_upsilon(const DriftSpec& drift, const GaussianPath& path,
                               const PotentialParams& p);

// Theta_N = Ups_N + sigma fZ_N
SpectralField assemble_theta(const DriftSpec& drift, const GaussianPath& path,
                             const PotentialParams& p);

// (1/2) int_0^1 ||dUps||_{H^alpha}^2 dt, exact for the step drift:
// ||-Z_M + sgn(sigma) sqrt(kappa_M) f_M||_{H^alpha}^2
double kinetic_energy(const DriftSpec& drift, const GaussianPath& path,
                      const PotentialParams& p);

// Per-sample values of the objective
//   -sigma int Y Theta^2 - (sigma/3) int Theta^3
//   + A |int :(Y + Theta)^2:|^gamma + kinetic.
// Samples are coupled to gibbs.estimate_Z through the shared stream, so
// the Gibbs inequality holds on matched seeds.
std::vector<double> bd_objective_samples(const DriftSpec& drift,
                                         const PotentialParams& p,
                                         std::int64_t n_samples,
                                         std::uint64_t seed);

Estimate eval_bd_objective(const DriftSpec& drift, const PotentialParams& p,
                           std::int64_t n_samples, std::uint64_t seed);

struct DriftScanRow {
  int M = 0;
  double sigma = 0.0;
  double objective = 0.0;
  double stderr_ = 0.0;
  // paired difference against the previous M at the same sigma; the cells
  // share their Y samples, so this is far better resolved than the
  // marginal stderr suggests. Zero on the first row of a sigma column.
  double diff_prev = 0.0;
  double diff_stderr = 0.0;
  std::string classification;  // per-sigma verdict, repeated on each row
};

struct DriftScanReport {
  std::vector<DriftScanRow> rows;
  double window_lo = 0.0;  // largest |sigma| classified stable
  double window_hi = 0.0;  // smallest |sigma| classified divergent
  bool has_window = false;
};

// Objective grid over (M, sigma) with the explicit drift. A sigma column is
// "divergent" when the objective strictly decreases between the two largest
// M beyond 3x the paired stderr, "stable" otherwise.
DriftScanReport scan_nonnormalisability(const PotentialParams& proto,
                                        const std::vector<int>& M_list,
                                        const std::vector<double>& sigma_list,
                                        std::int64_t n_samples,
                                        std::uint64_t seed,
                                        int time_steps = 64);

}  // namespace phi3
