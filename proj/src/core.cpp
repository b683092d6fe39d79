#include "gdnls/core.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <sstream>

#include "fft.hpp"

namespace gdnls {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

namespace {

std::string describe_admissibility(double omega, double c) {
  std::ostringstream os;
  os << "NotAdmissible: (omega, c) = (" << omega << ", " << c << ") requires omega > c^2/4 = "
     << c * c / 4.0 << ", or omega = c^2/4 with c > 0";
  return os.str();
}

}  // namespace

NotAdmissible::NotAdmissible(double omega, double c)
    : Error(describe_admissibility(omega, c)), omega_(omega), c_(c) {}

SigmaUnsupported::SigmaUnsupported(double sigma)
    : Error("SigmaUnsupported: operation is only defined for sigma = 1, got sigma = " +
            std::to_string(sigma)) {}

IncompatibleModulation::IncompatibleModulation(double c, double length)
    : Error("IncompatibleModulation: c L / (4 pi) = " + std::to_string(c * length / (4.0 * kPi)) +
            " is not an integer") {}

// ---------------------------------------------------------------------------
// Params
// ---------------------------------------------------------------------------

namespace {

// Relative tolerance identifying the massless line omega = c^2/4.
constexpr double kMasslessTol = 1e-14;

bool on_massless_line(double omega, double c) {
  const double q = c * c / 4.0;
  return std::abs(omega - q) <= kMasslessTol * std::max(1.0, std::abs(q));
}

}  // namespace

double Params::detuning() const { return massless() ? 0.0 : omega - c * c / 4.0; }

bool Params::massless() const { return on_massless_line(omega, c); }

bool admissible(double omega, double c) {
  if (!std::isfinite(omega) || !std::isfinite(c)) return false;
  if (on_massless_line(omega, c)) return c > 0.0;
  return omega > c * c / 4.0;
}

bool exponents_valid(const Params& p) {
  if (!(2.0 * p.alpha - p.beta > 0.0) || !(2.0 * p.alpha + p.beta > 0.0)) return false;
  if (p.massless()) return p.beta < 0.0;
  return p.beta * p.c <= 0.0;
}

Params validate_params(const Params& p) {
  if (!(p.sigma >= 1.0) || !std::isfinite(p.sigma)) {
    throw InvalidArgument("sigma must be >= 1, got " + std::to_string(p.sigma));
  }
  if (!admissible(p.omega, p.c)) throw NotAdmissible(p.omega, p.c);
  std::ostringstream os;
  os << "BadExponents: (alpha, beta) = (" << p.alpha << ", " << p.beta << ") ";
  if (!(2.0 * p.alpha - p.beta > 0.0)) {
    os << "violates 2 alpha - beta > 0";
    throw BadExponents(os.str());
  }
  if (!(2.0 * p.alpha + p.beta > 0.0)) {
    os << "violates 2 alpha + beta > 0";
    throw BadExponents(os.str());
  }
  if (p.massless() && !(p.beta < 0.0)) {
    os << "violates beta < 0 (required on the massless line omega = c^2/4)";
    throw BadExponents(os.str());
  }
  if (!p.massless() && !(p.beta * p.c <= 0.0)) {
    os << "violates beta c <= 0";
    throw BadExponents(os.str());
  }
  return p;
}

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

Grid::Grid(double length, std::size_t size) : length_(length), size_(size) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidArgument("grid length must be positive and finite");
  }
  if (size < 16 || (size & (size - 1)) != 0) {
    throw InvalidArgument("grid size must be a power of two >= 16, got " + std::to_string(size));
  }
}

double Grid::node(std::size_t j) const { return -0.5 * length_ + static_cast<double>(j) * dx(); }

double Grid::wavenumber(std::size_t j) const {
  const auto n = static_cast<std::ptrdiff_t>(size_);
  auto m = static_cast<std::ptrdiff_t>(j);
  if (m >= n / 2) m -= n;
  return 2.0 * kPi * static_cast<double>(m) / length_;
}

double Grid::max_wavenumber() const { return kPi / dx(); }

std::vector<double> Grid::nodes() const {
  std::vector<double> x(size_);
  for (std::size_t j = 0; j < size_; ++j) x[j] = node(j);
  return x;
}

std::vector<double> Grid::wavenumbers() const {
  std::vector<double> k(size_);
  for (std::size_t j = 0; j < size_; ++j) k[j] = wavenumber(j);
  return k;
}

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

RealField::RealField(Grid grid, std::vector<double> values, bool slow_decay)
    : grid_(grid), values_(std::move(values)), slow_decay_(slow_decay) {
  if (values_.size() != grid_.size()) throw InvalidArgument("field size does not match grid");
}

RealField RealField::zeros(const Grid& grid) {
  return RealField(grid, std::vector<double>(grid.size(), 0.0));
}

RealField RealField::sample(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.node(j));
  return RealField(grid, std::move(v));
}

Field::Field(Grid grid, std::vector<cplx> values, bool slow_decay)
    : grid_(grid), values_(std::move(values)), slow_decay_(slow_decay) {
  if (values_.size() != grid_.size()) throw InvalidArgument("field size does not match grid");
}

Field::Field(const RealField& real)
    : grid_(real.grid()), values_(real.size()), slow_decay_(real.slow_decay()) {
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] = real[j];
}

Field Field::zeros(const Grid& grid) { return Field(grid, std::vector<cplx>(grid.size())); }

Field Field::sample(const Grid& grid, const std::function<cplx(double)>& f) {
  std::vector<cplx> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.node(j));
  return Field(grid, std::move(v));
}

Field Field::with_slow_decay(bool flag) const {
  Field out = *this;
  out.slow_decay_ = flag;
  return out;
}

bool Field::finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

RealField Field::modulus() const {
  std::vector<double> m(values_.size());
  for (std::size_t j = 0; j < m.size(); ++j) m[j] = std::abs(values_[j]);
  return RealField(grid_, std::move(m), slow_decay_);
}

Field Field::scaled(cplx factor) const {
  Field out = *this;
  for (auto& v : out.values_) v *= factor;
  return out;
}

Field Field::multiplied(const std::function<cplx(double)>& f) const {
  Field out = *this;
  for (std::size_t j = 0; j < out.values_.size(); ++j) out.values_[j] *= f(grid_.node(j));
  return out;
}

Field operator+(const Field& a, const Field& b) {
  if (!(a.grid_ == b.grid_)) throw InvalidArgument("fields live on different grids");
  Field out = a;
  for (std::size_t j = 0; j < out.values_.size(); ++j) out.values_[j] += b.values_[j];
  out.slow_decay_ = a.slow_decay_ || b.slow_decay_;
  return out;
}

Field operator-(const Field& a, const Field& b) { return a + b.scaled(-1.0); }

// ---------------------------------------------------------------------------
// Spectral calculus
// ---------------------------------------------------------------------------

namespace {

std::vector<cplx> differentiate(const Grid& grid, std::span<const cplx> values) {
  auto spectrum = detail::forward(values);
  const std::size_t n = grid.size();
  for (std::size_t j = 0; j < n; ++j) {
    spectrum[j] *= (j == n / 2) ? cplx(0.0) : cplx(0.0, grid.wavenumber(j));
  }
  return detail::inverse(spectrum);
}

std::vector<cplx> differentiate_twice(const Grid& grid, std::span<const cplx> values) {
  auto spectrum = detail::forward(values);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double k = grid.wavenumber(j);
    spectrum[j] *= -k * k;
  }
  return detail::inverse(spectrum);
}

std::vector<cplx> complexify(std::span<const double> v) { return {v.begin(), v.end()}; }

std::vector<double> real_part(const std::vector<cplx>& v) {
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j].real();
  return out;
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * kPi); }

}  // namespace

Field spectral_derivative(const Field& f) {
  return Field(f.grid(), differentiate(f.grid(), f.values()), f.slow_decay());
}

RealField spectral_derivative(const RealField& f) {
  return RealField(f.grid(), real_part(differentiate(f.grid(), complexify(f.values()))),
                   f.slow_decay());
}

Field spectral_second_derivative(const Field& f) {
  return Field(f.grid(), differentiate_twice(f.grid(), f.values()), f.slow_decay());
}

RealField spectral_second_derivative(const RealField& f) {
  return RealField(f.grid(), real_part(differentiate_twice(f.grid(), complexify(f.values()))),
                   f.slow_decay());
}

Field phase_compensated_derivative(const Field& f) {
  const Grid& g = f.grid();
  const std::size_t n = g.size();
  const auto v = f.values();
  const double floor = 1e-300;
  if (std::abs(v[0]) < floor || std::abs(v[n - 1]) < floor || std::abs(v[n - 2]) < floor) {
    return spectral_derivative(f);
  }
  // Extrapolate the phase one node past the right edge and match it to the
  // left edge; the mismatch defines a linear drift exp(i kappa x).
  const double right = std::arg(v[n - 1]);
  const double step = wrap_angle(right - std::arg(v[n - 2]));
  const double kappa = wrap_angle(right + step - std::arg(v[0])) / g.length();
  std::vector<cplx> demodulated(n);
  for (std::size_t j = 0; j < n; ++j) {
    demodulated[j] = v[j] * std::polar(1.0, -kappa * g.node(j));
  }
  auto d = differentiate(g, demodulated);
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = (d[j] + cplx(0.0, kappa) * demodulated[j]) * std::polar(1.0, kappa * g.node(j));
  }
  return Field(g, std::move(d), f.slow_decay());
}

Field derivative(const Field& f) {
  return f.slow_decay() ? phase_compensated_derivative(f) : spectral_derivative(f);
}

double quadrature(const Grid& grid, std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return grid.dx() * sum;
}

double quadrature(const RealField& f) { return quadrature(f.grid(), f.values()); }

namespace {

template <class Values>
double lp_norm_impl(const Grid& grid, const Values& values, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (auto v : values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm requires p >= 1");
  double sum = 0.0;
  for (auto v : values) sum += std::pow(std::abs(v), p);
  return std::pow(grid.dx() * sum, 1.0 / p);
}

}  // namespace

double lp_norm(const Field& f, double p) { return lp_norm_impl(f.grid(), f.values(), p); }

double lp_norm(const RealField& f, double p) { return lp_norm_impl(f.grid(), f.values(), p); }

TailEstimate algebraic_tail(const Grid& grid, std::span<const double> integrand) {
  TailEstimate t;
  const std::size_t n = grid.size();
  const double half = 0.5 * grid.length();
  auto fit = [&](double f_edge, double x_edge, double f_in, double x_in, double& exponent) {
    if (!(f_edge > 0.0) || !(f_in > 0.0)) {
      exponent = kInfinity;
      return 0.0;
    }
    exponent = std::log(f_in / f_edge) / std::log(std::abs(x_edge) / std::abs(x_in));
    if (!(exponent > 1.0)) {
      t.integrable = false;
      return 0.0;
    }
    const double at_edge = f_edge * std::pow(std::abs(x_edge) / half, exponent);
    return at_edge * half / (exponent - 1.0);
  };
  const double left = fit(integrand[0], grid.node(0), integrand[1], grid.node(1), t.left_exponent);
  const double right =
      fit(integrand[n - 1], grid.node(n - 1), integrand[n - 2], grid.node(n - 2), t.right_exponent);
  t.correction = t.integrable ? left + right : 0.0;
  return t;
}

double tail_corrected_lp_norm(const Field& f, double p) {
  if (!f.slow_decay() || std::isinf(p)) return lp_norm(f, p);
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm requires p >= 1");
  std::vector<double> integrand(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) integrand[j] = std::pow(std::abs(f[j]), p);
  const TailEstimate tail = algebraic_tail(f.grid(), integrand);
  if (!tail.integrable) {
    emit_warning("tail_corrected_lp_norm: |f|^p decays no faster than 1/|x|; value is box-dependent");
  }
  return std::pow(quadrature(f.grid(), integrand) + tail.correction, 1.0 / p);
}

RealField cumulative_integral(const RealField& f) {
  const Grid& g = f.grid();
  const std::size_t n = g.size();
  auto spectrum = detail::forward(complexify(f.values()));
  const double mean = spectrum[0].real() / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    spectrum[j] = (j == 0 || j == n / 2) ? cplx(0.0) : spectrum[j] / cplx(0.0, g.wavenumber(j));
  }
  const auto periodic = detail::inverse(spectrum);
  const double anchor = periodic[g.origin_index()].real();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = periodic[j].real() - anchor + mean * g.node(j);
  return RealField(g, std::move(out), f.slow_decay());
}

double boundary_ratio(const Field& f) {
  const double sup = lp_norm(f, kInfinity);
  if (sup == 0.0) return 0.0;
  return std::max(std::abs(f[0]), std::abs(f[f.size() - 1])) / sup;
}

bool boundary_decayed(const Field& f) {
  return boundary_ratio(f) < (f.slow_decay() ? 1e-6 : 1e-10);
}

bool modulation_compatible(double c, double length, double tol) {
  const double m = c * length / (4.0 * kPi);
  return std::abs(m - std::round(m)) <= tol * std::max(1.0, std::abs(m));
}

double nearest_compatible_speed(double c, double length) {
  const double unit = 4.0 * kPi / length;
  return std::max(1.0, std::round(c / unit)) * unit;
}

Field random_smooth_field(const Grid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amplitude(0.3, 1.5);
  std::uniform_real_distribution<double> center(-grid.length() / 10.0, grid.length() / 10.0);
  std::uniform_real_distribution<double> width(0.6, 1.6);
  std::uniform_real_distribution<double> wavenumber(-2.0, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  struct Packet {
    double a, x0, w, k, theta;
  };
  std::vector<Packet> packets(3);
  for (auto& pk : packets) {
    pk = {amplitude(rng), center(rng), width(rng), wavenumber(rng), phase(rng)};
  }
  return Field::sample(grid, [&](double x) {
    cplx sum = 0.0;
    for (const auto& pk : packets) {
      const double s = (x - pk.x0) / pk.w;
      sum += pk.a * std::exp(-s * s) * std::polar(1.0, pk.k * x + pk.theta);
    }
    return sum;
  });
}

// ---------------------------------------------------------------------------
// Warnings
// ---------------------------------------------------------------------------

namespace {

void stderr_warning(std::string_view message) { std::cerr << "warning: " << message << '\n'; }

std::atomic<WarningHandler> g_warning_handler{&stderr_warning};

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  return g_warning_handler.exchange(handler != nullptr ? handler : &stderr_warning);
}

void emit_warning(std::string_view message) { g_warning_handler.load()(message); }

}  // namespace gdnls
