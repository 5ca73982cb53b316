#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "phi3/gff.hpp"
#include "phi3/reduce.hpp"
#include "phi3/rng.hpp"

using namespace phi3;

namespace {
const FrequencyLattice kLat{1, 4, 1.0 / 3.0};
}

TEST_CASE("sampling is a pure function of the key") {
  const std::vector<double> times{0.25, 0.5, 1.0};
  const auto a = sample_Y(kLat, times, 42u);
  const auto b = sample_Y(kLat, times, 42u);
  const auto c = sample_Y(kLat, times, 43u);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
}

TEST_CASE("time skeleton validation") {
  CHECK_THROWS(sample_Y(kLat, {}, 1u));
  CHECK_THROWS(sample_Y(kLat, {0.0, 1.0}, 1u));
  CHECK_THROWS(sample_Y(kLat, {0.5, 0.25}, 1u));
  CHECK_THROWS(sample_Y(kLat, {0.5, 1.5}, 1u));
  const auto p = sample_Y(kLat, {0.5, 1.0}, 1u);
  CHECK(p.time_index(0.5) == 0);
  CHECK_THROWS(p.time_index(0.75));
}

TEST_CASE("conjugation symmetry and real zero mode") {
  const auto p = sample_Y(kLat, {0.5, 1.0}, 7u);
  for (std::size_t t = 0; t < 2; ++t) {
    CHECK(p.value(t, kLat.flat({0, 0, 0})).imag() == 0.0);
    for (int n = 1; n <= 4; ++n)
      CHECK(p.value(t, kLat.flat({n, 0, 0})) ==
            std::conj(p.value(t, kLat.flat({-n, 0, 0}))));
  }
  CHECK(field_at(p, 1).max_hermitian_defect() < 1e-15);
}

TEST_CASE("common random numbers across truncation levels") {
  const FrequencyLattice big(1, 8, 1.0 / 3.0);
  const auto a = sample_Y(kLat, {1.0}, 99u);
  const auto b = sample_Y(big, {1.0}, 99u);
  for (int n = -4; n <= 4; ++n)
    CHECK(a.value(0, kLat.flat({n, 0, 0})) == b.value(0, big.flat({n, 0, 0})));
}

TEST_CASE("Brownian covariance structure") {
  const std::vector<double> times{0.25, 1.0};
  const std::int64_t n = 40000;
  std::vector<double> bb(n), b0sq(n), resq(n), imsq(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto p = sample_Y(kLat, times, sample_key(5u, 1u, i));
    const auto z0 = p.value(0, kLat.flat({0, 0, 0}));
    const auto z1 = p.value(1, kLat.flat({0, 0, 0}));
    bb[i] = z0.real() * z1.real();  // E = min(1/4, 1)
    b0sq[i] = z0.real() * z0.real();
    const auto w = p.value(1, kLat.flat({3, 0, 0}));
    resq[i] = w.real() * w.real();  // E = 1/2
    imsq[i] = w.imag() * w.imag();
  }
  auto within3 = [](const MeanErr& m, double target) {
    return std::fabs(m.mean - target) <= 3.0 * m.stderr_;
  };
  CHECK(within3(mean_stderr(bb), 0.25));
  CHECK(within3(mean_stderr(b0sq), 0.25));
  CHECK(within3(mean_stderr(resq), 0.5));
  CHECK(within3(mean_stderr(imsq), 0.5));
}

TEST_CASE("field variance reproduces sigma_N") {
  const double sig = sigma_N(kLat).value;
  const std::int64_t n = 20000;
  std::vector<double> l2(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto p = sample_Y(kLat, {1.0}, sample_key(6u, 2u, i));
    const auto f = field_at(p, 0);
    double s = 0.0;
    for (const auto& c : f.coeffs) s += std::norm(c);
    l2[i] = s;
  }
  const auto m = mean_stderr(l2);
  CHECK(std::fabs(m.mean - sig) <= 3.0 * m.stderr_);
}

TEST_CASE("dyadic refinement extends coarser skeletons pathwise") {
  const auto k4 = sample_Y_dyadic(kLat, 4, 77u);
  const auto k8 = sample_Y_dyadic(kLat, 8, 77u);
  const auto end = sample_Y(kLat, {1.0}, 77u);
  for (std::int64_t i = 0; i < kLat.size(); ++i) {
    CHECK(k4.value(k4.time_index(1.0), i) == k8.value(k8.time_index(1.0), i));
    CHECK(k4.value(k4.time_index(0.5), i) == k8.value(k8.time_index(0.5), i));
    CHECK(k4.value(k4.time_index(0.25), i) == k8.value(k8.time_index(0.25), i));
    CHECK(k4.value(k4.time_index(1.0), i) == end.value(0, i));
  }
  CHECK_THROWS(sample_Y_dyadic(kLat, 3, 1u));
  CHECK_THROWS(sample_Y_dyadic(kLat, 0, 1u));
}

TEST_CASE("dyadic midpoint has the right variance") {
  const std::int64_t n = 40000;
  std::vector<double> mid(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto p = sample_Y_dyadic(kLat, 2, sample_key(8u, 3u, i));
    const auto z = p.value(p.time_index(0.5), kLat.flat({1, 0, 0}));
    mid[i] = std::norm(z);  // E |B_n(1/2)|^2 = 1/2
  }
  const auto m = mean_stderr(mid);
  CHECK(std::fabs(m.mean - 0.5) <= 3.0 * m.stderr_);
}

TEST_CASE("Z_M extraction and kappa_M") {
  const FrequencyLattice lat(1, 8, 1.0 / 3.0);
  const auto p = sample_Y(lat, {0.5, 1.0}, 31u);
  const auto z = build_Z_M(p, 4);
  const auto full = field_at(p, 0, z.G);
  for (int n = -4; n <= 4; ++n)
    CHECK(z.at({n, 0, 0}) == full.at({n, 0, 0}));
  CHECK(kappa_M(lat, 4) ==
        doctest::Approx(0.5 * sigma_N(FrequencyLattice(1, 4, 1.0 / 3.0)).value)
            .epsilon(1e-14));
  CHECK_THROWS(build_Z_M(p, 16));
}

TEST_CASE("f_M bump: support, normalization, symmetry") {
  const int M = 64;
  const auto f = build_f_M(BumpSpec(1, M));
  double l2 = 0.0;
  for (int n = -M; n <= M; ++n) {
    const auto c = f.at({n, 0, 0});
    CHECK(c.imag() == 0.0);
    CHECK(c.real() >= 0.0);
    const double r = std::fabs(static_cast<double>(n));
    if (r <= M / 4.0 || r >= M) CHECK(c.real() == 0.0);
    l2 += std::norm(c);
  }
  CHECK(std::fabs(l2 - 1.0) <= 0.05);
  CHECK(f.max_hermitian_defect() == 0.0);
  CHECK_THROWS(BumpSpec(1, 1));
}

TEST_CASE("f_M/Z_M lemma suite at small scale") {
  const auto rep = check_fm_zm_lemmas(1, 1.0 / 3.0, {16, 32, 64, 128}, 400, 3u);
  for (const auto& row : rep.rows)
    INFO(row.check, " M=", row.N, " est=", row.estimate);
  CHECK(rep.pass);
}
