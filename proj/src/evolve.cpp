#include "gdnls/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fft.hpp"
#include "gdnls/criterion.hpp"
#include "gdnls/functionals.hpp"

namespace gdnls {

namespace {

using Spectrum = std::vector<cplx>;

class Stepper {
 public:
  Stepper(const Grid& grid, double sigma, bool dealias)
      : grid_(grid), sigma_(sigma), plan_(detail::FftPlan::for_size(grid.size())),
        ik_(grid.size()), mask_(grid.size(), 1.0), work_(grid.size()), deriv_(grid.size()) {
    const std::size_t n = grid.size();
    const double cutoff = 2.0 / 3.0 * grid.max_wavenumber();
    for (std::size_t j = 0; j < n; ++j) {
      const double k = grid.wavenumber(j);
      ik_[j] = j == n / 2 ? cplx(0.0) : cplx(0.0, k);
      if (dealias && std::abs(k) > cutoff) mask_[j] = 0.0;
    }
  }

  void set_step(double h) {
    if (h == h_) return;
    h_ = h;
    half_.resize(grid_.size());
    full_.resize(grid_.size());
    for (std::size_t j = 0; j < grid_.size(); ++j) {
      const double k = grid_.wavenumber(j);
      half_[j] = std::polar(1.0, -0.5 * k * k * h);
      full_[j] = half_[j] * half_[j];
    }
  }

  // Lawson RK4 in Fourier space; the linear part -i k^2 is integrated exactly.
  void advance(Spectrum& v) {
    const std::size_t n = v.size();
    Spectrum k1(n), k2(n), k3(n), k4(n), stage(n);
    nonlinear(v, k1);
    for (std::size_t j = 0; j < n; ++j) stage[j] = half_[j] * (v[j] + 0.5 * h_ * k1[j]);
    nonlinear(stage, k2);
    for (std::size_t j = 0; j < n; ++j) stage[j] = half_[j] * v[j] + 0.5 * h_ * k2[j];
    nonlinear(stage, k3);
    for (std::size_t j = 0; j < n; ++j) stage[j] = full_[j] * v[j] + h_ * half_[j] * k3[j];
    nonlinear(stage, k4);
    for (std::size_t j = 0; j < n; ++j) {
      v[j] = full_[j] * v[j] +
             h_ / 6.0 * (full_[j] * k1[j] + 2.0 * half_[j] * (k2[j] + k3[j]) + k4[j]);
    }
  }

  void to_physical(const Spectrum& v, std::vector<cplx>& u) const { plan_.inverse(v, u); }
  void to_spectral(const std::vector<cplx>& u, Spectrum& v) const { plan_.forward(u, v); }

 private:
  // Transform of -|u|^(2 sigma) u_x.
  void nonlinear(const Spectrum& v, Spectrum& out) {
    const std::size_t n = v.size();
    plan_.inverse(v, work_);
    for (std::size_t j = 0; j < n; ++j) out[j] = ik_[j] * v[j];
    plan_.inverse(out, deriv_);
    for (std::size_t j = 0; j < n; ++j) {
      const double m2 = std::norm(work_[j]);
      const double w = sigma_ == 1.0 ? m2 : std::pow(m2, sigma_);
      deriv_[j] *= -w;
    }
    plan_.forward(deriv_, out);
    for (std::size_t j = 0; j < n; ++j) out[j] *= mask_[j];
  }

  Grid grid_;
  double sigma_;
  const detail::FftPlan& plan_;
  std::vector<cplx> ik_;
  std::vector<double> mask_;
  std::vector<cplx> work_, deriv_;
  std::vector<cplx> half_, full_;
  double h_ = std::numeric_limits<double>::quiet_NaN();
};

double max_modulus(std::span<const cplx> u) {
  double m = 0.0;
  for (const cplx& z : u) {
    const double a = std::abs(z);
    if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
    m = std::max(m, a);
  }
  return m;
}

double cfl_limit(const Grid& grid, double sigma, double safety, double peak) {
  return safety * grid.dx() / std::max(1.0, std::pow(peak, 2.0 * sigma));
}

}  // namespace

DiagnosticsRecord diagnostics(const Field& u, double t, double sigma,
                              const std::optional<Params>& monitored) {
  DiagnosticsRecord r;
  r.t = t;
  r.mass = mass(u);
  r.energy = energy(u, sigma);
  r.momentum = momentum(u);
  const Field du = derivative(u);
  r.h1_seminorm = std::sqrt(mass(du));
  const double c = monitored ? monitored->c : 0.0;
  r.shifted_h1 = std::sqrt(mass(du - u.scaled(cplx(0.0, 0.5 * c))));
  r.virial = monitored ? virial(u, *monitored) : std::numeric_limits<double>::quiet_NaN();
  return r;
}

Field step(const Field& u, double sigma, double dt, bool dealias) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  Stepper stepper(u.grid(), sigma, dealias);
  stepper.set_step(dt);
  std::vector<cplx> values(u.values().begin(), u.values().end());
  Spectrum v(values.size());
  stepper.to_spectral(values, v);
  stepper.advance(v);
  stepper.to_physical(v, values);
  return Field(u.grid(), std::move(values), u.slow_decay());
}

Trajectory integrate(const Field& u0, double sigma, const SchemeConfig& cfg,
                     const std::optional<Params>& monitored) {
  if (!(cfg.dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!(cfg.t_final > 0.0)) throw InvalidArgument("final time must be positive");
  if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) {
    throw InvalidArgument("cfl_safety must lie in (0, 1]");
  }
  if (cfg.sample_every == 0) throw InvalidArgument("sample_every must be positive");
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  if (!u0.finite()) throw InvalidArgument("initial field is not finite");
  if (monitored) validate_params(*monitored);

  const Grid& grid = u0.grid();
  Trajectory traj{.sigma = sigma,
                  .monitored = monitored,
                  .records = {},
                  .fields = {},
                  .final_state = u0,
                  .steps = 0,
                  .min_dt = cfg.dt,
                  .blowup = false,
                  .truncated = false};
  auto record = [&](const Field& u, double t, bool blowup) {
    DiagnosticsRecord r = diagnostics(u, t, sigma, monitored);
    r.blowup = blowup;
    traj.records.push_back(r);
    if (cfg.store_fields) traj.fields.push_back(u);
  };
  record(u0, 0.0, false);

  const double initial_peak = max_modulus(u0.values());
  const double blowup_threshold = 1e6 * std::max(initial_peak, std::numeric_limits<double>::min());
  Stepper stepper(grid, sigma, cfg.dealias);
  std::vector<cplx> values(u0.values().begin(), u0.values().end());
  Spectrum v(values.size());
  stepper.to_spectral(values, v);

  double dt = cfg.dt;
  if (cfg.adaptive) dt = std::min(dt, cfl_limit(grid, sigma, cfg.cfl_safety, initial_peak));
  double t = 0.0;
  std::size_t since_sample = 0;
  while (cfg.t_final - t > 1e-12 * cfg.t_final) {
    if (traj.steps == cfg.max_steps) {
      traj.truncated = true;
      if (since_sample > 0) record(traj.final_state, t, false);
      return traj;
    }
    double h = dt;
    if (t + h > cfg.t_final - 1e-9 * dt) h = cfg.t_final - t;
    stepper.set_step(h);
    Spectrum next = v;
    stepper.advance(next);
    stepper.to_physical(next, values);
    const double peak = max_modulus(values);
    if (!(peak <= blowup_threshold)) {
      traj.blowup = true;
      traj.records.back().blowup = true;
      if (traj.records.back().t != t) record(traj.final_state, t, true);
      return traj;
    }
    v = std::move(next);
    t += h;
    ++traj.steps;
    ++since_sample;
    traj.min_dt = std::min(traj.min_dt, h);
    traj.final_state = Field(grid, values, u0.slow_decay());
    const bool last = cfg.t_final - t <= 1e-12 * cfg.t_final;
    if (since_sample == cfg.sample_every || last) {
      record(traj.final_state, last ? cfg.t_final : t, false);
      since_sample = 0;
    }
    if (cfg.adaptive && traj.steps % 10 == 0) {
      dt = std::min(dt, cfl_limit(grid, sigma, cfg.cfl_safety, peak));
    }
  }
  return traj;
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  const auto precision = out.precision(17);
  out << "t,M,E,P,H1seminorm,shiftedH1,K,blowup\n";
  for (const DiagnosticsRecord& r : traj.records) {
    out << r.t << ',' << r.mass << ',' << r.energy << ',' << r.momentum << ',' << r.h1_seminorm
        << ',' << r.shifted_h1 << ',';
    if (std::isnan(r.virial)) {
      out << "nan";
    } else {
      out << r.virial;
    }
    out << ',' << (r.blowup ? 1 : 0) << '\n';
  }
  out.precision(precision);
}

InvarianceReport invariance_check(const Trajectory& traj, const Field& u0, const Params& params) {
  const Params p = validate_params(params);
  if (traj.records.empty()) throw InvalidArgument("trajectory has no samples");
  const bool same = traj.monitored && traj.monitored->sigma == p.sigma &&
                    traj.monitored->omega == p.omega && traj.monitored->c == p.c &&
                    traj.monitored->alpha == p.alpha && traj.monitored->beta == p.beta;
  if (!same && traj.fields.size() != traj.records.size()) {
    throw InvalidArgument("trajectory monitors other parameters and stores no fields");
  }
  if (p.sigma != traj.sigma) throw InvalidArgument("certificate sigma differs from the trajectory");

  const double s = p.sigma;
  const double q = 2.0 * s + 2.0;
  const double a = p.alpha;
  const double b = p.beta;
  const Field du0 = derivative(u0);
  const double grad0 = mass(du0);
  const double m0 = mass(u0);
  const double nl0 = nonlinear_term(u0, s);
  const double virial_scale = std::abs(0.5 * (2.0 * a - b)) * grad0 +
                              std::abs(0.5 * (2.0 * a + b) * p.omega - 0.25 * b * p.c * p.c) * m0 +
                              std::abs(0.5 * (2.0 * a - b) * p.c * momentum(u0)) +
                              std::abs(b * p.c / (2.0 * q)) * std::pow(lp_norm(u0, q), q) +
                              std::abs(a * nl0);
  const double energy_scale = 0.5 * grad0 + std::abs(nl0) / q;
  const double momentum_scale = std::sqrt(m0 * grad0);
  const double e0 = energy(u0, s);
  const double p0 = momentum(u0);
  const double s0 = action(u0, p);

  InvarianceReport r;
  r.gradient_bound = gradient_bound(u0, p);
  r.min_virial = std::numeric_limits<double>::infinity();
  r.max_virial = -std::numeric_limits<double>::infinity();
  double drift = 0.0;
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    const DiagnosticsRecord& rec = traj.records[i];
    const double k = same ? rec.virial : virial(traj.fields[i], p);
    r.min_virial = std::min(r.min_virial, k);
    r.max_virial = std::max(r.max_virial, k);
    drift = std::max({drift, std::abs(rec.mass - m0) / m0,
                      energy_scale > 0.0 ? std::abs(rec.energy - e0) / energy_scale : 0.0,
                      momentum_scale > 0.0 ? std::abs(rec.momentum - p0) / momentum_scale : 0.0});
    const double s_t = rec.energy + 0.5 * p.omega * rec.mass + 0.5 * p.c * rec.momentum;
    r.action_drift = std::max(r.action_drift, std::abs(s_t - s0));
    r.max_gradient = std::max(r.max_gradient, rec.h1_seminorm);
  }
  r.drift_scale = drift * virial_scale;
  r.bound_held = r.max_gradient <= r.gradient_bound;
  r.virial_nonnegative = r.min_virial >= -r.drift_scale;
  r.virial_nonpositive = r.max_virial <= r.drift_scale;
  return r;
}

}  // namespace gdnls
