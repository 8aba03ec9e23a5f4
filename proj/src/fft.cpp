// SPDX-License-Identifier: Apache-2.0
#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace specfact::detail {

namespace {

struct PlanCache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

fftw_plan plan_for(std::size_t n, int sign) {
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  auto it = c.plans.find({n, sign});
  if (it != c.plans.end()) return it->second;
  std::vector<Complex> scratch(n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  c.plans.emplace(std::make_pair(n, sign), p);
  return p;
}

void run(std::span<Complex> data, int sign) {
  if (data.size() <= 1) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_for(data.size(), sign), buf, buf);
}

}  // namespace

void fft_forward(std::span<Complex> data) { run(data, FFTW_FORWARD); }

void fft_backward(std::span<Complex> data) { run(data, FFTW_BACKWARD); }

}  // namespace specfact::detail
