#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "phi3/lattice.hpp"

namespace phi3 {

// Real trigonometric polynomial on T^d, stored as complex Fourier
// coefficients on a G^d cube in FFT wrap order (index n mod G per axis).
// Hermitian symmetry coeff(-n) = conj(coeff(n)) keeps the field real.
// G odd; G >= 4N+1 makes cubic integrands quadrature-exact.
struct SpectralField {
  int d = 1;
  int N = 0;
  int G = 1;
  std::vector<std::complex<double>> coeffs;

  SpectralField() = default;
  SpectralField(int d_, int N_, int G_);

  static int default_grid(int N) { return 4 * N + 1; }
  static SpectralField zero(int d, int N) {
    return SpectralField(d, N, default_grid(N));
  }

  std::int64_t grid_size() const;
  int nyquist() const { return (G - 1) / 2; }

  std::size_t index(const std::array<int, 3>& n) const;
  std::complex<double>& at(const std::array<int, 3>& n);
  const std::complex<double>& at(const std::array<int, 3>& n) const;

  // set coeff(n) and coeff(-n) consistently
  void set_mode(const std::array<int, 3>& n, std::complex<double> c);

  double max_hermitian_defect() const;
};

// Inverse transform: sample the series on the G^d grid (real part).
std::vector<double> to_real(const SpectralField& f);
// Forward transform: field from real grid samples; coefficients beyond
// radius N are kept (callers truncate if needed).
SpectralField from_real(const std::vector<double>& grid, int d, int N, int G);

// exact integral over T^d (volume 1) of the pointwise product of <= 3
// fields sharing (d, G); throws if the product bandwidth exceeds the grid.
double integrate_product(const std::vector<const SpectralField*>& fields);
double integrate_product(const SpectralField& a);
double integrate_product(const SpectralField& a, const SpectralField& b);
double integrate_product(const SpectralField& a, const SpectralField& b,
                         const SpectralField& c);

// heat kernel multiplier exp(-4 pi^2 |n|^2 t); t > 0 (t = 0 allowed, identity)
SpectralField heat_smooth(const SpectralField& f, double t);

// zero all modes with |n|_inf > M
SpectralField project(const SpectralField& f, int M);

enum class NormKind { Lp, Sobolev, Holder, Anorm };

struct NormRequest {
  NormKind kind = NormKind::Lp;
  double p = 2.0;      // Lp exponent
  double s = 0.0;      // regularity (Sobolev/Holder); alpha for Anorm
  double eps = 0.01;   // Anorm slack
  std::vector<double> t_grid;  // Anorm times in (0, 1]
  int q_blocks = 64;   // max Littlewood-Paley block index

  static NormRequest lp(double p);
  static NormRequest sobolev(double s);
  static NormRequest holder(double s);
  // sup_t t^{alpha - d/6 - eps} ||p_t * u||_{L^3} on a 32-point
  // log-uniform grid over [1e-4, 1]
  static NormRequest anorm(double alpha, double eps = 0.01);
};

double norm(const SpectralField& f, const NormRequest& req);

// smooth LP bump: 1 on [-5/4, 5/4], supported in [-8/5, 8/5]
double lp_bump(double r);
// phi_j multiplier at radius r (j = 0 is the low block)
double lp_block(int j, double r);

// flat binary layout: int32 d, N, G (little-endian), then complex
// coefficients in row-major frequency order n in [-h, h]^d
void save_field(const SpectralField& f, std::ostream& os);
SpectralField load_field(std::istream& is);

}  // namespace phi3
