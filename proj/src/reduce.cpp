#include "phi3/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phi3 {

namespace {
constexpr std::int64_t kChunk = 4096;
}

double det_sum(std::int64_t n, const std::function<double(std::int64_t)>& term) {
  if (n <= 0) return 0.0;
  const std::int64_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    Accum a;
    const std::int64_t lo = c * kChunk;
    const std::int64_t hi = std::min(n, lo + kChunk);
    for (std::int64_t i = lo; i < hi; ++i) a.add(term(i));
    partial[c] = a.sum;
  }
  Accum total;
  for (double p : partial) total.add(p);
  return total.sum;
}

double det_sum_serial(std::int64_t n,
                      const std::function<double(std::int64_t)>& term) {
  if (n <= 0) return 0.0;
  const std::int64_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, 0.0);
  for (std::int64_t c = 0; c < nchunks; ++c) {
    Accum a;
    const std::int64_t lo = c * kChunk;
    const std::int64_t hi = std::min(n, lo + kChunk);
    for (std::int64_t i = lo; i < hi; ++i) a.add(term(i));
    partial[c] = a.sum;
  }
  Accum total;
  for (double p : partial) total.add(p);
  return total.sum;
}

std::vector<double> parallel_table(
    std::int64_t n, const std::function<double(std::int64_t)>& f) {
  std::vector<double> v(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = f(i);
  return v;
}

MeanErr mean_stderr(const std::vector<double>& v) {
  MeanErr r;
  r.n = static_cast<std::int64_t>(v.size());
  if (v.empty()) return r;
  Accum s;
  for (double x : v) s.add(x);
  r.mean = s.sum / static_cast<double>(v.size());
  if (v.size() < 2) return r;
  Accum q;
  for (double x : v) q.add((x - r.mean) * (x - r.mean));
  r.stderr_ = std::sqrt(q.sum / (static_cast<double>(v.size()) *
                                 static_cast<double>(v.size() - 1)));
  return r;
}

double median_of_means(const std::vector<double>& v, int blocks) {
  if (v.empty() || blocks <= 0) throw std::invalid_argument("median_of_means");
  blocks = std::min<int>(blocks, static_cast<int>(v.size()));
  std::vector<double> means(blocks, 0.0);
  const std::size_t per = v.size() / blocks;
  for (int b = 0; b < blocks; ++b) {
    Accum a;
    const std::size_t lo = b * per;
    const std::size_t hi = (b == blocks - 1) ? v.size() : lo + per;
    for (std::size_t i = lo; i < hi; ++i) a.add(v[i]);
    means[b] = a.sum / static_cast<double>(hi - lo);
  }
  std::sort(means.begin(), means.end());
  const int m = blocks / 2;
  return (blocks % 2 == 1) ? means[m] : 0.5 * (means[m - 1] + means[m]);
}

double top_fraction_share(const std::vector<double>& v, double frac) {
  if (v.empty()) return 0.0;
  std::vector<double> a(v);
  std::sort(a.begin(), a.end(),
            [](double x, double y) { return std::fabs(x) > std::fabs(y); });
  const std::size_t k =
      std::max<std::size_t>(1, static_cast<std::size_t>(frac * a.size()));
  Accum top, all;
  for (std::size_t i = 0; i < a.size(); ++i) {
    all.add(a[i]);
    if (i < k) top.add(a[i]);
  }
  if (all.sum == 0.0) return 0.0;
  return top.sum / all.sum;
}

double regression_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("regression_slope");
  Accum sx, sy;
  for (double v : x) sx.add(v);
  for (double v : y) sy.add(v);
  const double mx = sx.sum / static_cast<double>(x.size());
  const double my = sy.sum / static_cast<double>(y.size());
  Accum num, den;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num.add((x[i] - mx) * (y[i] - my));
    den.add((x[i] - mx) * (x[i] - mx));
  }
  if (den.sum == 0.0) throw std::invalid_argument("degenerate abscissae");
  return num.sum / den.sum;
}

}  // namespace phi3
