#pragma once

#include "gdnls/core.hpp"

namespace gdnls {

/// One member of the solitary-wave family, including its symmetry
/// parameters (translation x0, phase theta0).
struct SolitonSpec {
  double sigma = 1.0;
  double omega = 1.0;
  double c = 0.0;
  double x0 = 0.0;
  double theta0 = 0.0;

  bool massless() const;
};

/// Validates admissibility of (omega, c) and sigma >= 1.
void require_admissible(const SolitonSpec& spec);

// Pointwise closed forms (x is the absolute coordinate; x0 is applied).

/// Positive even modulus: cosh branch for omega > c^2/4, algebraic branch on
/// the massless line.
double profile_value(const SolitonSpec& spec, double x);
/// d/dx of profile_value.
double profile_slope(const SolitonSpec& spec, double x);
/// Integral of profile_value^(2 sigma) over [x0, x], in closed form.
double phase_integral(const SolitonSpec& spec, double x);

/// Samples the modulus Phi; slow_decay is set on the massless branch.
RealField profile_modulus(const SolitonSpec& spec, const Grid& grid);

/// phi(x) = Phi(x) exp(i c x/2 - i/(2 sigma + 2) int_0^x Phi^(2 sigma)) e^(i theta0),
/// with the phase integral anchored at the wave centre.
Field profile(const SolitonSpec& spec, const Grid& grid);

/// exp(i omega t) phi(x - c t), resampled from the closed form.
/// Warns when the centre comes within a quarter box of the edge.
Field traveling_wave(const SolitonSpec& spec, double t, const Grid& grid);

/// L2 norm of -Phi'' + (omega - c^2/4) Phi + (c/2) Phi^(2s+1) - (2s+1)/(2s+2)^2 Phi^(4s+1).
double elliptic_residual(const RealField& modulus, const Params& p);

/// Sup over nodes of the first integral of the profile equation,
///   -Phi'^2/2 + (omega - c^2/4) Phi^2/2 + c Phi^(2s+2) / (4(s+1)) - Phi^(4s+2) / (2 (2s+2)^2),
/// which vanishes identically on decaying solutions.
double first_integral_residual(const RealField& modulus, const Params& p);

struct ClosedFormInvariants {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double action = 0.0;
};

/// Mass, momentum, energy and action of phi_{omega,c} for the cubic case.
/// Throws SigmaUnsupported for sigma != 1.
ClosedFormInvariants closed_form_invariants(double sigma, double omega, double c);

/// Action of phi_{omega,c} for any sigma >= 1, by quadrature on the half line
/// of the modulus/phase-reduced density (independent of any grid).
double profile_action_quadrature(double sigma, double omega, double c);

struct QuadratureOptions {
  /// Relative tolerance per subinterval of the adaptive Gauss-Kronrod rule.
  double tolerance = 1e-13;
  /// Bound on the neglected tail beyond the truncation point.
  double tail_tolerance = 1e-12;
  unsigned max_depth = 15;
  /// Each panel between the fixed breakpoints is split into this many equal
  /// pieces; 2 halves the quadrature step.
  unsigned subdivision = 1;
};

/// F_s(z) = (s-1)^2 (int_0^inf (cosh y - z)^(-1/s) dy)^2
///        - (int_0^inf (cosh y - z)^(-1/s-1) (z cosh y - 1) dy)^2
/// for |z| < 1. Throws QuadratureFailure when the tolerance cannot be met.
double stability_function(double z, double sigma, const QuadratureOptions& opts = {});

/// Root z0 in (-1, 1) of stability_function for 1 < sigma < 2: bracket by a
/// scan of (-1 + 1e-3, 1 - 1e-3), then bisection to 1e-8.
double stability_root(double sigma, const QuadratureOptions& opts = {});

}  // namespace gdnls
