#pragma once

#include "gdnls/core.hpp"

namespace gdnls {

// Conserved quantities. Derivatives go through derivative(), so slow-decay
// fields get the phase-compensated form.

/// M = ||u||^2.
double mass(const Field& u);
/// P = Re int i u_x conj(u).
double momentum(const Field& u);
/// N = Re int i |u|^(2 sigma) conj(u) u_x.
double nonlinear_term(const Field& u, double sigma);
/// E = ||u_x||^2 / 2 - N / (2 sigma + 2).
double energy(const Field& u, double sigma);

/// S = E + (omega/2) M + (c/2) P.
double action(const Field& u, const Params& p);

/// Virial functional of the (alpha, beta) scaling, in modulation-free form:
///   ((2a-b)/2) ||u_x||^2 + ((2a+b)/2 omega - b c^2/4) M + ((2a-b)/2) c P
///   + b c / (2(2s+2)) ||u||_{2s+2}^{2s+2} - a N.
double virial(const Field& u, const Params& p);

/// ((2a-b)/2) ||u_x||^2 + ((2a+b)/2) omega M + c a P - a N.
/// Equals virial() when beta = 0.
double nehari_functional(const Field& u, const Params& p);

/// Functionals of the de-modulated field psi; kappa = omega - c^2/4.
///   action     = ||psi_x||^2/2 + kappa ||psi||^2/2 + c ||psi||_{2s+2}^{2s+2} / (2(2s+2)) - N / (2s+2)
///   virial     = ((2a-b)/2) ||psi_x||^2 + ((2a+b)/2) kappa ||psi||^2
///                + ((2s+2)a + b) c / (2(2s+2)) ||psi||_{2s+2}^{2s+2} - a N
///   complement = ((2sa+b)/2) ||psi_x||^2 + kappa ((2sa-b)/2) ||psi||^2 - b c / (2(2s+2)) ||psi||_{2s+2}^{2s+2}
/// so that a (2s+2) action = virial + complement.
struct ReducedFunctionals {
  double action = 0.0;
  double virial = 0.0;
  double complement = 0.0;
};

/// Evaluated on psi directly.
ReducedFunctionals reduced_functionals(const Field& psi, const Params& p);

/// Evaluated on psi = exp(-i c x/2) u without sampling the modulation: uses
/// ||psi_x|| = ||u_x - (i c/2) u|| and N(psi) = N(u) + (c/2) ||u||_{2s+2}^{2s+2}.
ReducedFunctionals reduced_functionals_of_modulated(const Field& u, const Params& p);

/// L2 gradients (pairing Re int g conj(h)) of the reduced action and virial at psi.
Field reduced_action_gradient(const Field& psi, const Params& p);
Field reduced_virial_gradient(const Field& psi, const Params& p);

struct FunctionalReport {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double nonlinear = 0.0;
  double action = 0.0;
  /// Reduced functionals of exp(-i c x/2) u.
  double reduced_action = 0.0;
  double virial = 0.0;
  double reduced_virial = 0.0;
  double complement = 0.0;
  double nehari = 0.0;
};

FunctionalReport evaluate(const Field& u, const Params& p);

/// Absolute residual of one identity next to the magnitude of its largest term.
struct IdentityResidual {
  double residual = 0.0;
  double scale = 0.0;

  /// residual <= tol * max(scale, 1e-300)
  bool within(double tol) const;
};

struct IdentityReport {
  /// c P = -||u_x||^2 - (c^2/4) M + ||u_x - (i c/2) u||^2.
  IdentityResidual momentum_shift;
  /// N(u) = -(c/2) ||u||_{2s+2}^{2s+2} + N(exp(-i c x/2) u).
  IdentityResidual nonlinear_shift;
  /// -N = -||u_x||^2 - ||u||_{4s+2}^{4s+2} / 4 + ||u_x + (i/2) |u|^(2s) u||^2.
  IdentityResidual nonlinear_split;
  /// a (2s+2) S = K + ((2sa+b)/2) ||u_x - (i c/2) u||^2 + kappa ((2sa-b)/2) M
  ///              - b c / (2(2s+2)) ||u||_{2s+2}^{2s+2}.
  IdentityResidual action_split;
  /// a (2s+2) reduced action = reduced virial + complement, on u as psi.
  IdentityResidual reduced_split;
};

/// Each side of each identity is assembled from independently computed terms.
IdentityReport identity_suite(const Field& u, const Params& p);

// Gauge transformation of the cubic equation. The phase integral is anchored
// at the left box edge, standing in for -infinity.

/// w = u exp((i/4) int_{-L/2}^x |u|^2). Throws SigmaUnsupported for sigma != 1.
Field gauge_forward(const Field& u, double sigma = 1.0);
/// u = w exp(-(i/4) int_{-L/2}^x |w|^2).
Field gauge_inverse(const Field& w, double sigma = 1.0);
/// ||w_x||^2 / 2 - ||w||_6^6 / 32.
double gauge_energy(const Field& w);
/// Re int i w_x conj(w) + ||w||_4^4 / 4.
double gauge_momentum(const Field& w);

/// Ratios of each interpolation inequality (left side over right side with
/// the sharp constant); all are at most one.
struct InterpolationRatios {
  /// ||f||_inf^(2p) / (2p ||f||_{4p-2}^(2p-1) ||f_x||).
  double agmon = 0.0;
  /// ||f||_6^6 / ((4/pi^2) ||f||_2^4 ||f_x||^2); equality at the sigma = 1 ground state.
  double sextic_by_mass = 0.0;
  /// ||f||_6^6 / (3 (2 pi)^(-2/3) ||f||_4^(16/3) ||f_x||^(2/3)); equality at
  /// the sigma = 1 massless profile.
  double sextic_by_quartic = 0.0;
};

/// Throws ZeroField. Norms of slow-decay fields include the algebraic tail.
InterpolationRatios interpolation_ratios(const Field& f, double p = 1.0);

}  // namespace gdnls
