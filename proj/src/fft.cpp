#include "phi3/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace phi3 {

namespace {

std::mutex plan_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> plan_cache;

fftw_plan get_plan(int d, int G, int sign) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  const auto key = std::make_tuple(d, G, sign);
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;

  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(G);
  std::vector<std::complex<double>> scratch(n);
  std::vector<int> dims(d, G);
  fftw_plan p = fftw_plan_dft(
      d, dims.data(), reinterpret_cast<fftw_complex*>(scratch.data()),
      reinterpret_cast<fftw_complex*>(scratch.data()),
      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("fftw plan failed");
  plan_cache.emplace(key, p);
  return p;
}

}  // namespace

void fft(int d, int G, std::complex<double>* data, int sign) {
  fftw_plan p = get_plan(d, G, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

}  // namespace phi3
