#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "gdnls/error.hpp"

namespace gdnls {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// Nonlinearity power, frequency, speed and the scaling exponents of the
/// virial functional.
struct Params {
  double sigma = 1.0;
  double omega = 1.0;
  double c = 0.0;
  double alpha = 1.0;
  double beta = 0.0;

  /// omega - c^2/4, clamped at zero on the massless line.
  double detuning() const;
  bool massless() const;
};

/// omega > c^2/4, or omega = c^2/4 with c > 0.
bool admissible(double omega, double c);

/// Sign conditions on (alpha, beta) for an admissible (omega, c).
bool exponents_valid(const Params& p);

/// Returns p unchanged when both predicates hold.
/// Throws NotAdmissible or BadExponents naming the failing inequality.
Params validate_params(const Params& p);

// ---------------------------------------------------------------------------
// Grid and fields
// ---------------------------------------------------------------------------

/// Periodic box [-L/2, L/2) sampled at N nodes; wavenumbers in FFT order.
class Grid {
 public:
  Grid(double length, std::size_t size);

  double length() const { return length_; }
  std::size_t size() const { return size_; }
  double dx() const { return length_ / static_cast<double>(size_); }
  double node(std::size_t j) const;
  /// 2*pi*m/L with m = j for j < N/2 and m = j - N for j >= N/2.
  double wavenumber(std::size_t j) const;
  double max_wavenumber() const;
  std::vector<double> nodes() const;
  std::vector<double> wavenumbers() const;
  /// Index of the node x = 0.
  std::size_t origin_index() const { return size_ / 2; }

  bool operator==(const Grid& other) const = default;

 private:
  double length_;
  std::size_t size_;
};

/// Real-valued samples on a grid.
class RealField {
 public:
  RealField(Grid grid, std::vector<double> values, bool slow_decay = false);
  static RealField zeros(const Grid& grid);
  static RealField sample(const Grid& grid, const std::function<double(double)>& f);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  /// Set for algebraically decaying profiles (massless branch).
  bool slow_decay() const { return slow_decay_; }

 private:
  Grid grid_;
  std::vector<double> values_;
  bool slow_decay_;
};

/// Complex-valued samples on a grid. Immutable; operations return new fields.
class Field {
 public:
  Field(Grid grid, std::vector<cplx> values, bool slow_decay = false);
  explicit Field(const RealField& real);
  static Field zeros(const Grid& grid);
  static Field sample(const Grid& grid, const std::function<cplx(double)>& f);

  const Grid& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  cplx operator[](std::size_t j) const { return values_[j]; }
  bool slow_decay() const { return slow_decay_; }
  Field with_slow_decay(bool flag) const;

  bool finite() const;
  RealField modulus() const;
  Field scaled(cplx factor) const;
  /// Pointwise multiplication by f(x_j).
  Field multiplied(const std::function<cplx(double)>& f) const;

  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator*(cplx s, const Field& a) { return a.scaled(s); }

 private:
  Grid grid_;
  std::vector<cplx> values_;
  bool slow_decay_;
};

// ---------------------------------------------------------------------------
// Spectral calculus and quadrature
// ---------------------------------------------------------------------------

/// Fourier-collocation derivative; the Nyquist mode is dropped.
Field spectral_derivative(const Field& f);
RealField spectral_derivative(const RealField& f);
/// Multiplies by -k^2 in Fourier space.
Field spectral_second_derivative(const Field& f);
RealField spectral_second_derivative(const RealField& f);

/// Spectral derivative after removing the linear phase drift that makes the
/// periodic extension of f discontinuous. Needed for fields whose modulus is
/// still non-negligible at the box edge.
Field phase_compensated_derivative(const Field& f);

/// The derivative used by all functionals: phase-compensated for slow-decay
/// fields, plain spectral otherwise.
Field derivative(const Field& f);

/// Periodic rectangle rule dx * sum_j f(x_j).
double quadrature(const RealField& f);
double quadrature(const Grid& grid, std::span<const double> values);

/// (quadrature |f|^p)^(1/p); grid maximum for p = infinity.
double lp_norm(const Field& f, double p);
double lp_norm(const RealField& f, double p);

/// Estimate of the integral of a non-negative algebraically decaying
/// integrand outside the box, from a local power-law fit at each edge.
struct TailEstimate {
  double correction = 0.0;
  double left_exponent = 0.0;
  double right_exponent = 0.0;
  /// False when the fitted decay is not faster than 1/|x|.
  bool integrable = true;
};
TailEstimate algebraic_tail(const Grid& grid, std::span<const double> integrand);

/// lp_norm with the algebraic tail added back for slow-decay fields.
double tail_corrected_lp_norm(const Field& f, double p);

/// x -> integral of f over [0, x]: spectral antiderivative of the mean-free
/// part plus the linear mean term.
RealField cumulative_integral(const RealField& f);

/// max(|f| at the two edge nodes) / max|f|.
double boundary_ratio(const Field& f);
/// Boundary magnitude below 1e-10 (1e-6 for slow-decay fields) relative to
/// the sup norm.
bool boundary_decayed(const Field& f);

/// True when cL/(4 pi) is an integer, i.e. exp(i c x / 2) is box-periodic.
bool modulation_compatible(double c, double length, double tol = 1e-9);
/// Nearest c' = 4 pi m / L with m >= 1.
double nearest_compatible_speed(double c, double length);

/// Sum of a few random Gaussian wave packets, decaying inside the box.
/// Used for randomized identity corpora.
Field random_smooth_field(const Grid& grid, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Warnings
// ---------------------------------------------------------------------------

using WarningHandler = void (*)(std::string_view);
/// Installs a handler and returns the previous one. Default writes to stderr.
WarningHandler set_warning_handler(WarningHandler handler);
void emit_warning(std::string_view message);

}  // namespace gdnls
