#pragma once

#include <optional>
#include <vector>

#include "gdnls/core.hpp"
#include "gdnls/waves.hpp"

namespace gdnls {

/// Reduced virial along the ray lambda psi:
///   K(lambda psi) = lambda^2 quadratic + lambda^(2s+2) higher.
struct HomogeneitySplit {
  /// ((2a-b)/2) ||psi_x||^2 + ((2a+b)/2) kappa ||psi||^2
  double quadratic = 0.0;
  /// ((2s+2)a + b) c / (2(2s+2)) ||psi||_{2s+2}^{2s+2} - a N(psi)
  double higher = 0.0;
};

/// Throws ZeroField.
HomogeneitySplit homogeneity_split(const Field& psi, const Params& p);

/// lambda0 psi with lambda0 = (quadratic / -higher)^(1/(2s)), the unique
/// positive scaling on the constraint set. Throws NotProjectable when the
/// higher-order part is not negative.
Field project_to_constraint(const Field& psi, const Params& p);

/// The scaling factor used by project_to_constraint.
double constraint_scaling(const Field& psi, const Params& p);

struct MinimizeConfig {
  Grid grid{40.0, 256};
  /// Descent step; 0 selects 1 / (k_max^2 + kappa + 1).
  double step = 0.0;
  std::size_t max_iterations = 60000;
  /// Stop when the tangential gradient has L2 norm below this.
  double tolerance = 1e-6;
  /// Starting field; default_initial_guess when empty.
  std::optional<Field> initial;
  /// Throw NotConverged instead of returning an unconverged estimate.
  bool require_convergence = true;
};

struct LevelEstimate {
  /// Reduced action at the final iterate.
  double level = 0.0;
  /// complement / (a (2s+2)) at the final iterate.
  double level_from_complement = 0.0;
  Field minimizer;
  std::size_t iterations = 0;
  bool converged = false;
  double virial_residual = 0.0;
  double gradient_norm = 0.0;
  /// Reduced action after every accepted step, starting with the projected
  /// initial field.
  std::vector<double> history;
};

/// 1.2 times the de-modulated solitary wave plus a small complex, odd
/// perturbation, built without sampling exp(-i c x/2).
Field default_initial_guess(const Params& p, const Grid& grid);

/// Projected gradient descent of the reduced action on the constraint set
/// {reduced virial = 0}: step along the gradient component tangent to the
/// constraint, rescale back onto it, halve the step whenever the action rises.
/// Throws NotProjectable if an iterate leaves the projectable cone.
LevelEstimate estimate_level(const Params& p, const MinimizeConfig& cfg = {});

/// Action of the solitary wave: closed form for sigma = 1, half-line
/// quadrature otherwise. Independent of (alpha, beta).
double reference_level(const Params& p);

/// Best match of a field against translates and phase rotations of the
/// de-modulated solitary wave.
struct ProfileAlignment {
  double shift = 0.0;
  double phase = 0.0;
  /// max_j | |f_j| - Phi(x_j - shift) |
  double modulus_error = 0.0;
  /// max_j | f_j - e^(i phase) psi(x_j - shift) |
  double field_error = 0.0;
};

/// Shift from the cross-correlation maximum of |f| against Phi, refined by a
/// parabola through the peak; phase from the L2 projection.
ProfileAlignment align_to_profile(const Field& f, const Params& p);

}  // namespace gdnls
