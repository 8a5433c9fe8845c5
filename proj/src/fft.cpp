#include "kpforge/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace kpforge::fft {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once under the lock and never destroyed.
class PlanCache {
 public:
  fftw_plan get(int n, int N, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(n, N, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t total = n == 1 ? static_cast<std::size_t>(N) : static_cast<std::size_t>(N) * N;
    auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
    if (scratch == nullptr) throw std::bad_alloc();
    int dims[2] = {N, N};
    fftw_plan plan = fftw_plan_dft(n, dims, scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) throw std::runtime_error("fftw planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(std::span<const cplx> in, std::span<cplx> out, int n, int N, int sign) {
  std::size_t total = n == 1 ? static_cast<std::size_t>(N) : static_cast<std::size_t>(N) * N;
  if (in.size() != total || out.size() != total) throw std::invalid_argument("fft: size mismatch");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  fftw_plan plan = cache().get(n, N, sign);
  auto* data = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, data, data);
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out, int n, int N) { run(in, out, n, N, FFTW_FORWARD); }

void inverse(std::span<const cplx> in, std::span<cplx> out, int n, int N) { run(in, out, n, N, FFTW_BACKWARD); }

}  // namespace kpforge::fft
