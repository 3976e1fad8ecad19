#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace halfwave::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

std::mutex plan_mutex;

const PlanPair& plans_for(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  // FFTW_ESTIMATE keeps plan choice (and therefore rounding) deterministic.
  std::vector<std::complex<double>> scratch(n);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  auto pair = std::make_unique<PlanPair>();
  const int len = static_cast<int>(n);
  pair->forward = fftw_plan_dft_1d(len, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  pair->backward = fftw_plan_dft_1d(len, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  return *cache.emplace(n, std::move(pair)).first->second;
}

}  // namespace

void dft_forward(std::span<std::complex<double>> data) {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_for(data.size()).forward, p, p);
}

void dft_backward(std::span<std::complex<double>> data) {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_for(data.size()).backward, p, p);
}

}  // namespace halfwave::detail
