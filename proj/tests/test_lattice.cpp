#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "phi3/lattice.hpp"
#include "phi3/reduce.hpp"

using namespace phi3;

TEST_CASE("flat/coords round trip") {
  FrequencyLattice lat(2, 3, 0.5);
  for (std::int64_t i = 0; i < lat.size(); ++i)
    CHECK(lat.flat(lat.coords(i)) == i);
}

TEST_CASE("sigma_N against hand sums") {
  // d = 1, N = 1: 1 + 2 * 2^{-2a}
  for (double a : {0.25, 1.0 / 3.0, 0.5, 1.0}) {
    FrequencyLattice lat(1, 1, a);
    CHECK(sigma_N(lat).value ==
          doctest::Approx(1.0 + 2.0 * std::pow(2.0, -a)).epsilon(1e-14));
  }
  // d = 2, N = 1: 1 + 4 * 2^{-2a} + 4 * 3^{-2a}
  FrequencyLattice lat2(2, 1, 0.4);
  CHECK(sigma_N(lat2).value ==
        doctest::Approx(1.0 + 4.0 * std::pow(2.0, -0.4) +
                        4.0 * std::pow(3.0, -0.4))
            .epsilon(1e-14));
}

TEST_CASE("sigma_N monotone in N") {
  double prev = 0.0;
  for (int N : {1, 2, 4, 8, 16, 32}) {
    const double s = sigma_N(FrequencyLattice(1, N, 1.0 / 3.0)).value;
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("pair correlation sums, N = 1 brute force") {
  const double a = 1.0 / 3.0;
  FrequencyLattice lat(1, 1, a);
  const double w1 = std::pow(2.0, -a);  // <(+-1)>^{-2a} = 2^{-a}
  CHECK(pair_correlation_sum(lat, 2).value ==
        doctest::Approx(1.0 + 2.0 * w1 * w1).epsilon(1e-14));
  // triples summing to zero in {-1,0,1}: (0,0,0) and the 6 perms of (1,-1,0)
  CHECK(pair_correlation_sum(lat, 3).value ==
        doctest::Approx(1.0 + 6.0 * w1 * w1).epsilon(1e-14));
  CHECK_THROWS(pair_correlation_sum(lat, 4));
}

TEST_CASE("k = 3 sum against direct triple loop") {
  const double a = 0.45;
  FrequencyLattice lat(1, 5, a);
  Accum brute;
  for (int x = -5; x <= 5; ++x)
    for (int y = -5; y <= 5; ++y) {
      const int z = -x - y;
      if (z < -5 || z > 5) continue;
      brute.add(lat.weight({x, 0, 0}) * lat.weight({y, 0, 0}) *
                lat.weight({z, 0, 0}));
    }
  CHECK(pair_correlation_sum(lat, 3).value ==
        doctest::Approx(brute.sum).epsilon(1e-13));
}

TEST_CASE("serial and parallel 1d convolutions agree bitwise") {
  FrequencyLattice lat(1, 64, 1.0 / 3.0);
  const auto a = self_convolve_box(lat, 128);
  const auto b = self_convolve_box_serial(lat, 128);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("fft convolution matches direct sum in d = 2") {
  const double a = 0.5;
  FrequencyLattice lat(2, 3, a);
  const int R = 4;
  const auto conv = self_convolve_box(lat, R);
  FrequencyLattice out(2, R, a);
  for (std::int64_t i = 0; i < out.size(); ++i) {
    const auto n = out.coords(i);
    Accum s;
    for (int x = -3; x <= 3; ++x)
      for (int y = -3; y <= 3; ++y) {
        const int u = n[0] - x, v = n[1] - y;
        if (u < -3 || u > 3 || v < -3 || v > 3) continue;
        s.add(lat.weight({x, y, 0}) * lat.weight({u, v, 0}));
      }
    CHECK(conv[static_cast<std::size_t>(i)] ==
          doctest::Approx(s.sum).epsilon(1e-11));
  }
}

TEST_CASE("beta_N closed form basics") {
  FrequencyLattice lat(1, 16, 1.0 / 3.0);
  CHECK(beta_N(lat, 0.0) == 0.0);
  const double b1 = beta_N(lat, 1.0);
  CHECK(b1 > 0.0);
  CHECK(beta_N(lat, 2.0) == doctest::Approx(4.0 * b1).epsilon(1e-14));
  CHECK(beta_N(lat, -1.0) == doctest::Approx(b1).epsilon(1e-14));
  CHECK(b1 == doctest::Approx(pair_correlation_sum(lat, 3).value / 3.0)
                  .epsilon(1e-13));
}

TEST_CASE("discrete convolution bound") {
  // lambda = max{d - b, 0} away from b = d, any lambda > 0 at b = d
  // the prefactor converges like N^{-0.1}: start high enough that the
  // consecutive-maxima ratio has dropped below the 1.1 gate
  CHECK(check_discrete_convolution(1, 0.9, 0.9, 0.1, {128, 256, 512, 1024}).pass);
  CHECK(check_discrete_convolution(1, 0.5, 1.0, 0.05, {64, 128, 256, 512}).pass);
  CHECK_THROWS(check_discrete_convolution(1, 1.2, 0.5, 0.0, {4, 8}));
  CHECK_THROWS(check_discrete_convolution(1, 0.5, 1.0, 0.0, {4, 8}));
}

TEST_CASE("regression slope of exact power law") {
  std::vector<double> x, y;
  for (int N : {8, 16, 32, 64}) {
    x.push_back(std::log(static_cast<double>(N)));
    y.push_back(std::log(std::pow(static_cast<double>(N), 1.7)));
  }
  CHECK(regression_slope(x, y) == doctest::Approx(1.7).epsilon(1e-12));
}
