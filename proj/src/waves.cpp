#include "gdnls/waves.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

namespace gdnls {

namespace {

// Shape constants of the cosh branch:
//   Phi^(2s) = amplitude / (spread cosh(rate x) - c).
struct CoshBranch {
  double amplitude;
  double spread;
  double rate;
};

CoshBranch cosh_branch(const SolitonSpec& s) {
  const double d = 4.0 * s.omega - s.c * s.c;
  return {(s.sigma + 1.0) * d, 2.0 * std::sqrt(s.omega), s.sigma * std::sqrt(d)};
}

double massless_denominator(const SolitonSpec& s, double y) {
  const double cy = s.c * y;
  return s.sigma * s.sigma * cy * cy + 1.0;
}

}  // namespace

bool SolitonSpec::massless() const { return Params{sigma, omega, c, 1.0, 0.0}.massless(); }

void require_admissible(const SolitonSpec& spec) {
  if (!(spec.sigma >= 1.0)) throw InvalidArgument("sigma must be >= 1");
  if (!admissible(spec.omega, spec.c)) throw NotAdmissible(spec.omega, spec.c);
}

double profile_value(const SolitonSpec& s, double x) {
  const double y = x - s.x0;
  double power;  // Phi^(2 sigma)
  if (s.massless()) {
    power = 2.0 * (s.sigma + 1.0) * s.c / massless_denominator(s, y);
  } else {
    const CoshBranch b = cosh_branch(s);
    const double ch = std::cosh(b.rate * y);
    power = std::isinf(ch) ? 0.0 : b.amplitude / (b.spread * ch - s.c);
  }
  return std::pow(power, 1.0 / (2.0 * s.sigma));
}

double profile_slope(const SolitonSpec& s, double x) {
  const double y = x - s.x0;
  const double value = profile_value(s, x);
  if (s.massless()) {
    return -value * s.sigma * s.c * s.c * y / massless_denominator(s, y);
  }
  const CoshBranch b = cosh_branch(s);
  const double t = b.rate * y;
  // sinh(t) / (cosh(t) - c/spread), stable for large |t|.
  const double ratio = std::abs(t) > 700.0
                           ? std::copysign(1.0, t)
                           : std::tanh(t) / (1.0 - (s.c / b.spread) / std::cosh(t));
  return -value * b.rate * ratio / (2.0 * s.sigma);
}

double phase_integral(const SolitonSpec& s, double x) {
  const double y = x - s.x0;
  const double scale = 2.0 * (s.sigma + 1.0) / s.sigma;
  if (s.massless()) return scale * std::atan(s.sigma * s.c * y);
  const CoshBranch b = cosh_branch(s);
  const double skew = std::sqrt((b.spread + s.c) / (b.spread - s.c));
  return scale * std::atan(skew * std::tanh(0.5 * b.rate * y));
}

RealField profile_modulus(const SolitonSpec& spec, const Grid& grid) {
  require_admissible(spec);
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = profile_value(spec, grid.node(j));
  return RealField(grid, std::move(v), spec.massless());
}

Field profile(const SolitonSpec& spec, const Grid& grid) {
  require_admissible(spec);
  const double damping = 1.0 / (2.0 * spec.sigma + 2.0);
  std::vector<cplx> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double x = grid.node(j);
    const double theta =
        0.5 * spec.c * (x - spec.x0) - damping * phase_integral(spec, x) + spec.theta0;
    v[j] = std::polar(profile_value(spec, x), theta);
  }
  return Field(grid, std::move(v), spec.massless());
}

Field traveling_wave(const SolitonSpec& spec, double t, const Grid& grid) {
  SolitonSpec moved = spec;
  moved.x0 = spec.x0 + spec.c * t;
  moved.theta0 = spec.theta0 + spec.omega * t;
  Field wave = profile(moved, grid);
  if (!boundary_decayed(wave)) {
    std::ostringstream os;
    os << "BoundaryProximity: wave centred at x = " << moved.x0
       << " is not resolved inside the box (edge/peak ratio " << boundary_ratio(wave) << ")";
    emit_warning(os.str());
  }
  return wave;
}

namespace {

double pow_abs(double v, double e) { return std::pow(std::abs(v), e); }

}  // namespace

double elliptic_residual(const RealField& phi, const Params& p) {
  const double s = p.sigma;
  const double kappa = p.detuning();
  const double quintic = (2.0 * s + 1.0) / ((2.0 * s + 2.0) * (2.0 * s + 2.0));
  const RealField second = spectral_second_derivative(phi);
  std::vector<double> sq(phi.size());
  for (std::size_t j = 0; j < sq.size(); ++j) {
    const double f = phi[j];
    const double r = -second[j] + kappa * f + 0.5 * p.c * pow_abs(f, 2.0 * s) * f -
                     quintic * pow_abs(f, 4.0 * s) * f;
    sq[j] = r * r;
  }
  return std::sqrt(quadrature(phi.grid(), sq));
}

double first_integral_residual(const RealField& phi, const Params& p) {
  const double s = p.sigma;
  const double kappa = p.detuning();
  const double cubic = p.c / (4.0 * (s + 1.0));
  const double quintic = 1.0 / (2.0 * (2.0 * s + 2.0) * (2.0 * s + 2.0));
  const RealField slope = spectral_derivative(phi);
  double worst = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double f = std::abs(phi[j]);
    const double v = -0.5 * slope[j] * slope[j] + 0.5 * kappa * f * f +
                     cubic * std::pow(f, 2.0 * s + 2.0) - quintic * std::pow(f, 4.0 * s + 2.0);
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

ClosedFormInvariants closed_form_invariants(double sigma, double omega, double c) {
  if (sigma != 1.0) throw SigmaUnsupported(sigma);
  if (!admissible(omega, c)) throw NotAdmissible(omega, c);
  const Params p{sigma, omega, c};
  const double root = std::sqrt(std::max(0.0, 4.0 * omega - c * c));
  ClosedFormInvariants inv;
  if (p.massless()) {
    inv.mass = 4.0 * kPi;
  } else {
    const double w = 2.0 * std::sqrt(omega);
    inv.mass = 8.0 * std::atan(std::sqrt((w + c) / (w - c)));
  }
  inv.momentum = 2.0 * root;
  inv.energy = -0.5 * c * root;
  inv.action = inv.energy + 0.5 * omega * inv.mass + 0.5 * c * inv.momentum;
  return inv;
}

double profile_action_quadrature(double sigma, double omega, double c) {
  const SolitonSpec spec{sigma, omega, c};
  require_admissible(spec);
  const double kappa = Params{sigma, omega, c}.detuning();
  const double cubic = c / (2.0 * (2.0 * sigma + 2.0));
  const double quintic = 1.0 / (2.0 * (2.0 * sigma + 2.0) * (2.0 * sigma + 2.0));
  // With psi = Phi exp(-i/(2s+2) int Phi^(2s)), the reduced action density is
  //   Phi'^2/2 + kappa Phi^2/2 + c Phi^(2s+2) / (2(2s+2)) - Phi^(4s+2) / (2(2s+2)^2).
  auto density = [&](double x) {
    const double f = profile_value(spec, x);
    const double df = profile_slope(spec, x);
    double d = 0.5 * df * df + cubic * std::pow(f, 2.0 * sigma + 2.0) -
               quintic * std::pow(f, 4.0 * sigma + 2.0);
    if (kappa > 0.0) d += 0.5 * kappa * f * f;
    return d;
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  const double half = integrator.integrate(density, 0.0, kInfinity, 1e-13, &error);
  if (!std::isfinite(half)) throw QuadratureFailure("profile action quadrature diverged");
  return 2.0 * half;
}

double stability_function(double z, double sigma, const QuadratureOptions& opts) {
  if (!(std::abs(z) < 1.0)) throw InvalidArgument("stability_function requires |z| < 1");
  if (!(sigma > 0.0)) throw InvalidArgument("stability_function requires sigma > 0");
  const double gap = 1.0 - z;
  const double inv = 1.0 / sigma;
  // cosh y - z and z cosh y - 1 written without cancellation near y = 0, z = 1.
  auto lift = [](double y) {
    const double h = std::sinh(0.5 * y);
    return 2.0 * h * h;
  };
  auto first = [&](double y) { return std::pow(lift(y) + gap, -inv); };
  auto second = [&](double y) {
    const double l = lift(y);
    return std::pow(l + gap, -inv - 1.0) * (z * l - gap);
  };

  // Both integrands are bounded by (e^y/4)^(-1/s) once e^y >= 4.
  const double cutoff =
      std::max(std::log(4.0), sigma * std::log(sigma * std::pow(4.0, inv) / opts.tail_tolerance));
  std::vector<double> coarse{0.0};
  for (double b = std::min(1.0, std::sqrt(2.0 * gap)); b < 1.0; b *= 2.0) coarse.push_back(b);
  for (double b = 1.0; b < cutoff; b *= 2.0) coarse.push_back(b);
  coarse.push_back(cutoff);
  const unsigned pieces = std::max(1u, opts.subdivision);
  std::vector<double> breaks{0.0};
  for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
    for (unsigned k = 1; k <= pieces; ++k) {
      breaks.push_back(coarse[i] + (coarse[i + 1] - coarse[i]) * k / pieces);
    }
  }

  // Each piece is mapped onto [-1, 1] first: the library compares its raw
  // error estimate against a tolerance scaled by the interval width.
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto integrate = [&](auto&& f) {
    double total = 0.0;
    double total_error = 0.0;
    double total_abs = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
      const double half = 0.5 * (breaks[i + 1] - breaks[i]);
      auto mapped = [&](double t) { return half * f(mid + half * t); };
      double err = 0.0;
      double l1 = 0.0;
      total += Rule::integrate(mapped, -1.0, 1.0, opts.max_depth, opts.tolerance, &err, &l1);
      total_error += err;
      total_abs += l1;
    }
    if (!std::isfinite(total) || total_error > 100.0 * opts.tolerance * std::max(1.0, total_abs)) {
      std::ostringstream os;
      os << "QuadratureFailure: stability_function(z=" << z << ", sigma=" << sigma
         << ") error estimate " << total_error;
      throw QuadratureFailure(os.str());
    }
    return total;
  };
  const double i1 = integrate(first);
  const double i2 = integrate(second);
  const double s1 = sigma - 1.0;
  return s1 * s1 * i1 * i1 - i2 * i2;
}

double stability_root(double sigma, const QuadratureOptions& opts) {
  if (!(sigma > 1.0 && sigma < 2.0)) {
    throw InvalidArgument("stability_root requires 1 < sigma < 2, got " + std::to_string(sigma));
  }
  constexpr double eps = 1e-3;
  constexpr int scan_points = 200;
  double lo = -1.0 + eps;
  double f_lo = stability_function(lo, sigma, opts);
  double hi = lo;
  double f_hi = f_lo;
  bool bracketed = false;
  for (int i = 1; i <= scan_points; ++i) {
    hi = -1.0 + eps + (2.0 - 2.0 * eps) * i / scan_points;
    f_hi = stability_function(hi, sigma, opts);
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      bracketed = true;
      break;
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (!bracketed) {
    throw NoBracket("no sign change of the stability function on (-1, 1) for sigma = " +
                    std::to_string(sigma));
  }
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = stability_function(mid, sigma, opts);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gdnls
