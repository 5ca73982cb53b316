// Timing comparison between the serial reference kernels and the
// OpenMP-parallel ones, with agreement checks on the results.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "phi3/lattice.hpp"
#include "phi3/reduce.hpp"

using namespace phi3;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double timed(const char* name, F&& f, double* out) {
  const double t0 = now_ms();
  *out = f();
  const double dt = now_ms() - t0;
  std::printf("%-28s %10.2f ms   result %.12g\n", name, dt, *out);
  return dt;
}

}  // namespace

int main() {
  {
    const std::int64_t n = 20'000'000;
    auto term = [](std::int64_t i) {
      const double x = static_cast<double>(i) + 0.5;
      return 1.0 / (x * std::sqrt(x));
    };
    double a = 0.0, b = 0.0;
    const double ts = timed("det_sum serial", [&] { return det_sum_serial(n, term); }, &a);
    const double tp = timed("det_sum parallel", [&] { return det_sum(n, term); }, &b);
    std::printf("  speedup %.2fx, bit-identical: %s\n\n", ts / tp,
                a == b ? "yes" : "NO");
  }
  {
    const FrequencyLattice lat(1, 4096, 1.0 / 3.0);
    std::vector<double> cs, cp;
    double dummy = 0.0;
    const double ts = timed(
        "self-convolution serial",
        [&] {
          cs = self_convolve_box_serial(lat, lat.N);
          return cs[cs.size() / 2];
        },
        &dummy);
    const double tp = timed(
        "self-convolution parallel",
        [&] {
          cp = self_convolve_box(lat, lat.N);
          return cp[cp.size() / 2];
        },
        &dummy);
    bool same = cs.size() == cp.size();
    for (std::size_t i = 0; same && i < cs.size(); ++i) same = cs[i] == cp[i];
    std::printf("  speedup %.2fx, bit-identical: %s\n", ts / tp,
                same ? "yes" : "NO");
  }
  return 0;
}
