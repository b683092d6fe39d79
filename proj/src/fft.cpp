#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace gdnls::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

fftw_complex* as_fftw(const std::complex<double>* p) {
  // Out-of-place complex transforms leave the input untouched.
  return reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(p));
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  std::vector<std::complex<double>> a(n), b(n);
  const int len = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft_1d(len, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
  inverse_plan_ = fftw_plan_dft_1d(len, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
    throw std::runtime_error("FFTW planning failed");
  }
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

const FftPlan& FftPlan::for_size(std::size_t n) {
  // The mutex must outlive the cache: construct it first.
  std::mutex& mutex = planner_mutex();
  static std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::unique_ptr<FftPlan>(new FftPlan(n))).first;
  }
  return *it->second;
}

void FftPlan::forward(std::span<const std::complex<double>> in,
                      std::span<std::complex<double>> out) const {
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(in.data()), as_fftw(out.data()));
}

void FftPlan::inverse(std::span<const std::complex<double>> in,
                      std::span<std::complex<double>> out) const {
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), as_fftw(in.data()), as_fftw(out.data()));
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : out) v *= scale;
}

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> in) {
  std::vector<std::complex<double>> out(in.size());
  FftPlan::for_size(in.size()).forward(in, out);
  return out;
}

std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> in) {
  std::vector<std::complex<double>> out(in.size());
  FftPlan::for_size(in.size()).inverse(in, out);
  return out;
}

}  // namespace gdnls::detail
