#include "phi3/field.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "phi3/fft.hpp"
#include "phi3/reduce.hpp"

namespace phi3 {

SpectralField::SpectralField(int d_, int N_, int G_) : d(d_), N(N_), G(G_) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1..3");
  if (G % 2 == 0) throw std::invalid_argument("grid side must be odd");
  if (G < 2 * N + 1) throw std::invalid_argument("grid below truncation");
  coeffs.assign(static_cast<std::size_t>(grid_size()), {0.0, 0.0});
}

std::int64_t SpectralField::grid_size() const {
  std::int64_t s = 1;
  for (int i = 0; i < d; ++i) s *= G;
  return s;
}

std::size_t SpectralField::index(const std::array<int, 3>& n) const {
  std::size_t idx = 0;
  for (int i = 0; i < d; ++i) {
    if (std::abs(n[i]) > nyquist()) throw std::out_of_range("mode beyond grid");
    idx = idx * G + static_cast<std::size_t>((n[i] % G + G) % G);
  }
  return idx;
}

std::complex<double>& SpectralField::at(const std::array<int, 3>& n) {
  return coeffs[index(n)];
}

const std::complex<double>& SpectralField::at(const std::array<int, 3>& n) const {
  return coeffs[index(n)];
}

void SpectralField::set_mode(const std::array<int, 3>& n,
                             std::complex<double> c) {
  at(n) = c;
  const std::array<int, 3> neg{-n[0], -n[1], -n[2]};
  at(neg) = std::conj(c);
}

double SpectralField::max_hermitian_defect() const {
  const int h = nyquist();
  double worst = 0.0;
  FrequencyLattice box(d, h, 1.0);
  for (std::int64_t i = 0; i < box.size(); ++i) {
    const auto n = box.coords(i);
    const std::array<int, 3> neg{-n[0], -n[1], -n[2]};
    worst = std::max(worst, std::abs(at(n) - std::conj(at(neg))));
  }
  return worst;
}

std::vector<double> to_real(const SpectralField& f) {
  std::vector<std::complex<double>> buf(f.coeffs);
  fft(f.d, f.G, buf.data(), +1);
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return out;
}

SpectralField from_real(const std::vector<double>& grid, int d, int N, int G) {
  SpectralField f(d, N, G);
  if (grid.size() != f.coeffs.size())
    throw std::invalid_argument("grid size mismatch");
  for (std::size_t i = 0; i < grid.size(); ++i) f.coeffs[i] = grid[i];
  fft(d, G, f.coeffs.data(), -1);
  const double scale = 1.0 / static_cast<double>(f.grid_size());
  for (auto& z : f.coeffs) z *= scale;
  return f;
}

double integrate_product(const std::vector<const SpectralField*>& fields) {
  if (fields.empty() || fields.size() > 3)
    throw std::invalid_argument("1..3 fields");
  const int d = fields[0]->d;
  const int G = fields[0]->G;
  int degree = 0;
  for (const auto* f : fields) {
    if (f->d != d || f->G != G)
      throw std::invalid_argument("fields must share (d, G)");
    degree += f->N;
  }
  if (G < degree + 1)
    throw std::invalid_argument("grid too small for product bandwidth");
  std::vector<std::vector<double>> grids;
  grids.reserve(fields.size());
  for (const auto* f : fields) grids.push_back(to_real(*f));
  const std::int64_t n = fields[0]->grid_size();
  const double s = det_sum(n, [&](std::int64_t i) {
    double p = 1.0;
    for (const auto& g : grids) p *= g[static_cast<std::size_t>(i)];
    return p;
  });
  return s / static_cast<double>(n);
}

double integrate_product(const SpectralField& a) {
  return integrate_product(std::vector<const SpectralField*>{&a});
}
double integrate_product(const SpectralField& a, const SpectralField& b) {
  return integrate_product(std::vector<const SpectralField*>{&a, &b});
}
double integrate_product(const SpectralField& a, const SpectralField& b,
                         const SpectralField& c) {
  return integrate_product(std::vector<const SpectralField*>{&a, &b, &c});
}

SpectralField heat_smooth(const SpectralField& f, double t) {
  if (t < 0.0) throw std::invalid_argument("t must be >= 0");
  SpectralField out = f;
  const int h = f.nyquist();
  FrequencyLattice box(f.d, h, 1.0);
  for (std::int64_t i = 0; i < box.size(); ++i) {
    const auto n = box.coords(i);
    const double n2 = box.bracket2(n) - 1.0;
    out.at(n) *= std::exp(-4.0 * M_PI * M_PI * n2 * t);
  }
  return out;
}

SpectralField project(const SpectralField& f, int M) {
  SpectralField out = f;
  const int h = f.nyquist();
  FrequencyLattice box(f.d, h, 1.0);
  for (std::int64_t i = 0; i < box.size(); ++i) {
    const auto n = box.coords(i);
    int ninf = 0;
    for (int k = 0; k < f.d; ++k) ninf = std::max(ninf, std::abs(n[k]));
    if (ninf > M) out.at(n) = 0.0;
  }
  out.N = std::min(f.N, M);
  return out;
}

NormRequest NormRequest::lp(double p) {
  NormRequest r;
  r.kind = NormKind::Lp;
  r.p = p;
  return r;
}

NormRequest NormRequest::sobolev(double s) {
  NormRequest r;
  r.kind = NormKind::Sobolev;
  r.s = s;
  return r;
}

NormRequest NormRequest::holder(double s) {
  NormRequest r;
  r.kind = NormKind::Holder;
  r.s = s;
  return r;
}

NormRequest NormRequest::anorm(double alpha, double eps) {
  NormRequest r;
  r.kind = NormKind::Anorm;
  r.s = alpha;
  r.eps = eps;
  r.p = 3.0;
  const int pts = 32;
  const double lo = std::log(1e-4), hi = std::log(1.0);
  for (int i = 0; i < pts; ++i)
    r.t_grid.push_back(std::exp(lo + (hi - lo) * i / (pts - 1)));
  return r;
}

double lp_bump(double r) {
  r = std::fabs(r);
  if (r <= 1.25) return 1.0;
  if (r >= 1.6) return 0.0;
  const double u = (r - 1.25) / 0.35;
  const double s = u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
  return 1.0 - s;
}

double lp_block(int j, double r) {
  if (j == 0) return lp_bump(r);
  return lp_bump(std::ldexp(r, -j)) - lp_bump(std::ldexp(r, -j + 1));
}

namespace {

double lp_norm_grid(const std::vector<double>& g, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : g) m = std::max(m, std::fabs(x));
    return m;
  }
  Accum a;
  for (double x : g) a.add(std::pow(std::fabs(x), p));
  return std::pow(a.sum / static_cast<double>(g.size()), 1.0 / p);
}

double sup_norm_grid(const std::vector<double>& g) {
  double m = 0.0;
  for (double x : g) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

double norm(const SpectralField& f, const NormRequest& req) {
  switch (req.kind) {
    case NormKind::Lp:
      return lp_norm_grid(to_real(f), req.p);
    case NormKind::Sobolev: {
      const int h = f.nyquist();
      FrequencyLattice box(f.d, h, 1.0);
      const double s2 = det_sum(box.size(), [&](std::int64_t i) {
        const auto n = box.coords(i);
        const std::complex<double> c = f.at(n);
        return std::pow(box.bracket2(n), req.s) * std::norm(c);
      });
      return std::sqrt(s2);
    }
    case NormKind::Holder: {
      const int h = f.nyquist();
      FrequencyLattice box(f.d, h, 1.0);
      // highest block touching the grid
      int jmax = 0;
      const double rmax = std::sqrt(static_cast<double>(f.d)) * h;
      while (jmax < req.q_blocks && std::ldexp(1.25, jmax - 1) < rmax) ++jmax;
      double best = 0.0;
      for (int j = 0; j <= jmax; ++j) {
        SpectralField blk = f;
        bool nonzero = false;
        for (std::int64_t i = 0; i < box.size(); ++i) {
          const auto n = box.coords(i);
          const double r = std::sqrt(box.bracket2(n) - 1.0);
          const double m = lp_block(j, r);
          blk.at(n) *= m;
          if (m != 0.0 && std::norm(f.at(n)) > 0.0) nonzero = true;
        }
        if (!nonzero) continue;
        best = std::max(best,
                        std::pow(2.0, req.s * j) * sup_norm_grid(to_real(blk)));
      }
      return best;
    }
    case NormKind::Anorm: {
      const double expo = req.s - static_cast<double>(f.d) / 6.0 - req.eps;
      double best = 0.0;
      for (double t : req.t_grid) {
        const SpectralField sm = heat_smooth(f, t);
        best = std::max(best,
                        std::pow(t, expo) * lp_norm_grid(to_real(sm), 3.0));
      }
      return best;
    }
  }
  throw std::invalid_argument("unsupported norm kind");
}

namespace {

template <class T>
void write_le(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_le(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

void save_field(const SpectralField& f, std::ostream& os) {
  write_le<std::int32_t>(os, f.d);
  write_le<std::int32_t>(os, f.N);
  write_le<std::int32_t>(os, f.G);
  FrequencyLattice box(f.d, f.nyquist(), 1.0);
  for (std::int64_t i = 0; i < box.size(); ++i) {
    const auto c = f.at(box.coords(i));
    write_le<double>(os, c.real());
    write_le<double>(os, c.imag());
  }
}

SpectralField load_field(std::istream& is) {
  const int d = read_le<std::int32_t>(is);
  const int N = read_le<std::int32_t>(is);
  const int G = read_le<std::int32_t>(is);
  SpectralField f(d, N, G);
  FrequencyLattice box(d, f.nyquist(), 1.0);
  for (std::int64_t i = 0; i < box.size(); ++i) {
    const double re = read_le<double>(is);
    const double im = read_le<double>(is);
    f.at(box.coords(i)) = {re, im};
  }
  if (!is) throw std::runtime_error("truncated field file");
  return f;
}

}  // namespace phi3
