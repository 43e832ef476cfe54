// SPDX-License-Identifier: Apache-2.0
#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace tcg::detail {

namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

class PlanCache {
 public:
  fftw_plan get(int n, int N, int sign) {
    std::lock_guard lock(mu_);
    auto key = std::make_tuple(n, N, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second.get();
    std::vector<int> dims(static_cast<std::size_t>(n), N);
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(N);
    fftw_complex* buf = fftw_alloc_complex(total);
    fftw_plan p = fftw_plan_dft(n, dims.data(), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!p) throw std::runtime_error("fftw: plan creation failed");
    return plans_.emplace(key, Plan(p)).first->second.get();
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, Plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft_inplace(std::span<cplx> data, int n, int N, int sign) {
  fftw_plan p = cache().get(n, N, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

}  // namespace tcg::detail
