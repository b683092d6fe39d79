#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gdnls::detail {

/// Cached FFTW plans for one transform length. Planning is serialized;
/// execution is reentrant (new-array execute on unaligned plans).
class FftPlan {
 public:
  static const FftPlan& for_size(std::size_t n);

  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  /// Unnormalized forward transform, out-of-place.
  void forward(std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) const;
  /// Inverse transform including the 1/N factor, out-of-place.
  void inverse(std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) const;

  std::size_t size() const { return n_; }

 private:
  explicit FftPlan(std::size_t n);

  std::size_t n_;
  void* forward_plan_;
  void* inverse_plan_;
};

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> in);
std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> in);

}  // namespace gdnls::detail
