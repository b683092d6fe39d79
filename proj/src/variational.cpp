#include "gdnls/variational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "gdnls/functionals.hpp"

namespace gdnls {

namespace {

double inner(const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] * std::conj(b[j])).real();
  return s * a.grid().dx();
}

// Phi(x - x0) exp(-i/(2s+2) int_{x0}^x Phi^(2s)): the solitary wave with the
// carrier exp(i c x/2) removed.
Field demodulated_wave(const Params& p, const Grid& grid, double x0) {
  const SolitonSpec spec{p.sigma, p.omega, p.c, x0, 0.0};
  require_admissible(spec);
  const double damping = 1.0 / (2.0 * p.sigma + 2.0);
  return Field::sample(grid, [&](double x) {
    return std::polar(profile_value(spec, x), -damping * phase_integral(spec, x));
  }).with_slow_decay(spec.massless());
}

}  // namespace

HomogeneitySplit homogeneity_split(const Field& psi, const Params& p) {
  const double m = mass(psi);
  if (!(m > 0.0)) throw ZeroField();
  const double a = p.alpha;
  const double b = p.beta;
  const double q = 2.0 * p.sigma + 2.0;
  HomogeneitySplit h;
  h.quadratic = 0.5 * (2.0 * a - b) * mass(derivative(psi)) + 0.5 * (2.0 * a + b) * p.detuning() * m;
  h.higher = (q * a + b) * p.c / (2.0 * q) * std::pow(lp_norm(psi, q), q) -
             a * nonlinear_term(psi, p.sigma);
  return h;
}

double constraint_scaling(const Field& psi, const Params& p) {
  const HomogeneitySplit h = homogeneity_split(psi, p);
  const double q = 2.0 * p.sigma + 2.0;
  // Magnitude the degree-(2s+2) part is measured against: both of its terms
  // with unit coefficients, the nonlinear one through its absolute integrand.
  const Field dpsi = derivative(psi);
  std::vector<double> bound(psi.size());
  for (std::size_t j = 0; j < bound.size(); ++j) {
    bound[j] = std::pow(std::abs(psi[j]), q - 1.0) * std::abs(dpsi[j]);
  }
  const double scale = p.alpha * (std::abs(p.c) * std::pow(lp_norm(psi, q), q) + quadrature(psi.grid(), bound));
  if (!(h.higher < -1e-12 * scale) || !(h.quadratic > 0.0)) {
    std::ostringstream os;
    os << "NotProjectable: degree-(2 sigma + 2) part of the virial is " << h.higher
       << " (must be negative); real data with c = 0 has no nonlinear phase to exploit";
    throw NotProjectable(os.str());
  }
  return std::pow(h.quadratic / -h.higher, 1.0 / (2.0 * p.sigma));
}

Field project_to_constraint(const Field& psi, const Params& p) {
  return psi.scaled(constraint_scaling(psi, p));
}

Field default_initial_guess(const Params& p, const Grid& grid) {
  const Field wave = demodulated_wave(p, grid, 0.0);
  const Field bump = Field::sample(grid, [](double x) {
    return cplx(0.05, 0.03) * x * std::exp(-0.25 * x * x);
  });
  return wave.scaled(1.2) + bump;
}

LevelEstimate estimate_level(const Params& params, const MinimizeConfig& cfg) {
  const Params p = validate_params(params);
  if (!(cfg.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (cfg.step < 0.0) throw InvalidArgument("step must be non-negative");
  const Grid& grid = cfg.initial ? cfg.initial->grid() : cfg.grid;
  const double kmax = grid.max_wavenumber();
  const double initial_step = cfg.step > 0.0 ? cfg.step : 1.0 / (kmax * kmax + p.detuning() + 1.0);
  double step = initial_step;
  const double q = 2.0 * p.sigma + 2.0;

  Field psi = project_to_constraint(cfg.initial ? *cfg.initial : default_initial_guess(p, grid), p);
  double level = reduced_functionals(psi, p).action;
  std::vector<double> history{level};
  std::size_t iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;

  for (; iterations < cfg.max_iterations; ++iterations) {
    const Field g = reduced_action_gradient(psi, p);
    const Field n = reduced_virial_gradient(psi, p);
    const Field tangent = g - n.scaled(inner(g, n) / inner(n, n));
    gradient_norm = std::sqrt(inner(tangent, tangent));
    if (gradient_norm < cfg.tolerance) {
      converged = true;
      break;
    }
    bool accepted = false;
    for (int halving = 0; halving < 40 && !accepted; ++halving) {
      const Field candidate = project_to_constraint(psi - tangent.scaled(step), p);
      const double candidate_level = reduced_functionals(candidate, p).action;
      if (candidate_level <= level + 1e-12 * std::abs(level)) {
        psi = candidate;
        level = candidate_level;
        accepted = true;
      } else {
        step *= 0.5;
      }
    }
    if (!accepted) break;
    history.push_back(level);
    step = std::min(initial_step, 1.25 * step);
  }

  if (!converged && cfg.require_convergence) {
    std::ostringstream os;
    os << "NotConverged: tangential gradient " << gradient_norm << " after " << iterations
       << " iterations (tolerance " << cfg.tolerance << ")";
    throw NotConverged(os.str());
  }
  const ReducedFunctionals r = reduced_functionals(psi, p);
  return LevelEstimate{.level = r.action,
                       .level_from_complement = r.complement / (p.alpha * q),
                       .minimizer = psi,
                       .iterations = iterations,
                       .converged = converged,
                       .virial_residual = r.virial,
                       .gradient_norm = gradient_norm,
                       .history = std::move(history)};
}

double reference_level(const Params& params) {
  const Params p = validate_params(params);
  if (p.sigma == 1.0) {
    if (p.massless()) return 0.5 * kPi * p.c * p.c;
    const double root = 2.0 * std::sqrt(p.omega);
    return 4.0 * p.omega * std::atan(std::sqrt((root + p.c) / (root - p.c))) +
           0.5 * p.c * std::sqrt(4.0 * p.omega - p.c * p.c);
  }
  return profile_action_quadrature(p.sigma, p.omega, p.c);
}

ProfileAlignment align_to_profile(const Field& f, const Params& p) {
  const Grid& grid = f.grid();
  const std::size_t n = grid.size();
  const SolitonSpec centred{p.sigma, p.omega, p.c};
  std::vector<cplx> a(n), b(n);
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = std::abs(f[j]);
    b[j] = profile_value(centred, grid.node(j));
  }
  const auto fa = detail::forward(a);
  const auto fb = detail::forward(b);
  std::vector<cplx> prod(n);
  for (std::size_t j = 0; j < n; ++j) prod[j] = fa[j] * std::conj(fb[j]);
  const auto corr = detail::inverse(prod);

  std::size_t best = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (corr[j].real() > corr[best].real()) best = j;
  }
  const double left = corr[(best + n - 1) % n].real();
  const double mid = corr[best].real();
  const double right = corr[(best + 1) % n].real();
  const double curvature = left - 2.0 * mid + right;
  const double offset = curvature < 0.0 ? 0.5 * (left - right) / curvature : 0.0;
  double lag = static_cast<double>(best) + offset;
  if (lag > 0.5 * static_cast<double>(n)) lag -= static_cast<double>(n);

  ProfileAlignment out;
  out.shift = lag * grid.dx();
  const SolitonSpec shifted{p.sigma, p.omega, p.c, out.shift, 0.0};
  const Field reference = demodulated_wave(p, grid, out.shift);
  cplx overlap = 0.0;
  for (std::size_t j = 0; j < n; ++j) overlap += f[j] * std::conj(reference[j]);
  out.phase = std::arg(overlap);
  const cplx rotation = std::polar(1.0, out.phase);
  for (std::size_t j = 0; j < n; ++j) {
    out.modulus_error = std::max(out.modulus_error,
                                 std::abs(std::abs(f[j]) - profile_value(shifted, grid.node(j))));
    out.field_error = std::max(out.field_error, std::abs(f[j] - rotation * reference[j]));
  }
  return out;
}

}  // namespace gdnls
