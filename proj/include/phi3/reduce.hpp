#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace phi3 {

// Kahan-compensated accumulator.
struct Accum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Deterministic parallel sum: the index range is split into fixed-size
// chunks, chunk subtotals are computed independently (parallelizable) and
// combined serially in index order. The result is bit-identical for any
// thread count.
double det_sum(std::int64_t n, const std::function<double(std::int64_t)>& term);
double det_sum_serial(std::int64_t n,
                      const std::function<double(std::int64_t)>& term);

// Fill v[i] = f(i) in parallel; trivially deterministic.
std::vector<double> parallel_table(std::int64_t n,
                                   const std::function<double(std::int64_t)>& f);

struct MeanErr {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t n = 0;
};

MeanErr mean_stderr(const std::vector<double>& v);
double median_of_means(const std::vector<double>& v, int blocks);

// Fraction of the (signed) total carried by the largest `frac` of |values|.
double top_fraction_share(const std::vector<double>& v, double frac);

// Least-squares slope of y against x.
double regression_slope(const std::vector<double>& x,
                        const std::vector<double>& y);

}  // namespace phi3
