#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "kdvbbm/errors.hpp"

namespace kdvbbm::detail {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // FFTW_ESTIMATE leaves the arrays untouched and gives reproducible plans.
    std::vector<std::complex<double>> a(n), b(n);
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
        reinterpret_cast<fftw_complex*>(b.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out, int sign) {
  if (in.size() != out.size()) throw ShapeError("fft buffer size mismatch");
  if (in.data() == out.data()) throw ShapeError("fft requires distinct buffers");
  fftw_plan plan = cache().get(in.size(), sign);
  // fftw_execute_dft does not write to its input for out-of-place plans.
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(
                       const_cast<std::complex<double>*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void fft_forward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) {
  execute(in, out, FFTW_FORWARD);
}

void fft_backward(std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out) {
  execute(in, out, FFTW_BACKWARD);
}

}  // namespace kdvbbm::detail
