#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "gdnls/core.hpp"

namespace gdnls {

/// Integrating-factor RK4 for i u_t + u_xx + i |u|^(2 sigma) u_x = 0 on the
/// periodic grid of the initial field.
struct SchemeConfig {
  double dt = 1e-3;
  /// Final time.
  double t_final = 1.0;
  /// Zero the top third of the spectrum of the nonlinear term.
  bool dealias = true;
  double cfl_safety = 0.5;
  /// Shrink dt to cfl_safety dx / max(1, max|u|^(2 sigma)), checked every 10 steps.
  bool adaptive = true;
  /// Diagnostics every this many steps; the final time is always sampled.
  std::size_t sample_every = 100;
  /// Keep the field at every sample.
  bool store_fields = true;
  /// Give up (Trajectory::truncated) after this many steps; the CFL limit can
  /// shrink dt without bound when the amplitude grows.
  std::size_t max_steps = 2'000'000;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double momentum = 0.0;
  /// ||u_x||
  double h1_seminorm = 0.0;
  /// ||u_x - (i c/2) u|| with c of the monitored parameters (0 without).
  double shifted_h1 = 0.0;
  /// Virial at the monitored parameters; NaN without.
  double virial = 0.0;
  bool blowup = false;
};

struct Trajectory {
  double sigma = 1.0;
  /// Parameters the virial column refers to.
  std::optional<Params> monitored;
  std::vector<DiagnosticsRecord> records;
  /// Parallel to records when SchemeConfig::store_fields is set.
  std::vector<Field> fields;
  /// Last state with all values finite and below the blow-up threshold.
  Field final_state;
  std::size_t steps = 0;
  /// Smallest step used.
  double min_dt = 0.0;
  bool blowup = false;
  /// Stopped at SchemeConfig::max_steps before the final time.
  bool truncated = false;
};

/// One step of size dt. Returns the zero field for zero input.
Field step(const Field& u, double sigma, double dt, bool dealias = true);

/// Marches u0 to cfg.t_final. Stops early, with the blowup flag on the last
/// record, when max|u| exceeds 1e6 times its initial value or a value stops
/// being finite.
Trajectory integrate(const Field& u0, double sigma, const SchemeConfig& cfg,
                     const std::optional<Params>& monitored = std::nullopt);

DiagnosticsRecord diagnostics(const Field& u, double t, double sigma,
                              const std::optional<Params>& monitored);

/// Header `t,M,E,P,H1seminorm,shiftedH1,K,blowup`, one row per record.
void write_csv(std::ostream& out, const Trajectory& traj);

struct InvarianceReport {
  double min_virial = 0.0;
  double max_virial = 0.0;
  /// Largest relative drift of M, E and P over the samples, times the sum of
  /// the absolute values of the terms of the initial virial.
  double drift_scale = 0.0;
  /// max |S(u(t)) - S(u0)|
  double action_drift = 0.0;
  /// C + (|c|/2) ||u0|| from the certificate parameters.
  double gradient_bound = 0.0;
  double max_gradient = 0.0;
  bool bound_held = false;
  /// min_virial >= -drift_scale
  bool virial_nonnegative = false;
  /// max_virial <= drift_scale
  bool virial_nonpositive = false;

  bool passed() const { return bound_held && virial_nonnegative; }
};

/// Flow-invariance and H1-bound check of a trajectory against certificate
/// parameters. The trajectory must carry its initial sample.
InvarianceReport invariance_check(const Trajectory& traj, const Field& u0, const Params& p);

}  // namespace gdnls
