#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gdnls/criterion.hpp"
#include "gdnls/evolve.hpp"
#include "gdnls/functionals.hpp"
#include "gdnls/waves.hpp"

using namespace gdnls;

namespace {

double max_error(const Field& a, const Field& b) {
  double e = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) e = std::max(e, std::abs(a[j] - b[j]));
  return e;
}

struct Drift {
  double mass = 0.0;
  double energy = 0.0;
  double momentum = 0.0;
};

// Energy and momentum drift are measured against the size of their terms,
// since either may vanish (E = 0 for the cubic ground state).
Drift relative_drift(const Trajectory& traj, const Field& u0) {
  const double grad = mass(derivative(u0));
  const double m0 = mass(u0);
  const double escale = 0.5 * grad + std::abs(nonlinear_term(u0, traj.sigma)) / (2.0 * traj.sigma + 2.0);
  const double pscale = std::sqrt(m0 * grad);
  const DiagnosticsRecord& first = traj.records.front();
  Drift d;
  for (const DiagnosticsRecord& r : traj.records) {
    d.mass = std::max(d.mass, std::abs(r.mass - first.mass) / m0);
    d.energy = std::max(d.energy, std::abs(r.energy - first.energy) / escale);
    d.momentum = std::max(d.momentum, std::abs(r.momentum - first.momentum) / pscale);
  }
  return d;
}

Trajectory soliton_run(double dt, const Params& monitored) {
  const Grid grid(60.0, 1024);
  SchemeConfig cfg;
  cfg.dt = dt;
  cfg.t_final = 5.0;
  return integrate(profile({1.0, 1.0, 0.0}, grid), 1.0, cfg, monitored);
}

}  // namespace

TEST_CASE("zero stays zero") {
  const Grid grid(20.0, 64);
  const Field u = step(Field::zeros(grid), 1.0, 1e-2);
  CHECK(max_error(u, Field::zeros(grid)) == 0.0);
  CHECK_THROWS_AS(step(u, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("linear regime follows free Schroedinger evolution") {
  // u_t = i u_xx from A exp(-x^2): A (1 + 4 i t)^(-1/2) exp(-x^2 / (1 + 4 i t)).
  const Grid grid(80.0, 1024);
  const double amp = 1e-8;
  const Field u0 = Field::sample(grid, [&](double x) { return cplx(amp * std::exp(-x * x), 0.0); });
  SchemeConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_final = 1.0;
  const Trajectory traj = integrate(u0, 1.0, cfg);
  const Field exact = Field::sample(grid, [&](double x) {
    const cplx z(1.0, 4.0);
    return amp / std::sqrt(z) * std::exp(-x * x / z);
  });
  CHECK(max_error(traj.final_state, exact) < 1e-10 * amp);
  CHECK(traj.records.back().t == 1.0);
}

TEST_CASE("one step of the ground state") {
  const Grid grid(60.0, 1024);
  const SolitonSpec spec{1.0, 1.0, 0.0};
  const Field u = step(profile(spec, grid), 1.0, 1e-3);
  CHECK(max_error(u, traveling_wave(spec, 1e-3, grid)) < 1e-9);
}

TEST_CASE("ground state to t = 5, fourth order in dt") {
  const Params p{1.0, 1.0, 0.0, 1.0, 0.0};
  const Grid grid(60.0, 1024);
  const Field exact = traveling_wave({1.0, 1.0, 0.0}, 5.0, grid);
  const Trajectory coarse = soliton_run(2e-3, p);
  const Trajectory fine = soliton_run(1e-3, p);
  const double e_coarse = max_error(coarse.final_state, exact);
  const double e_fine = max_error(fine.final_state, exact);
  CHECK(e_fine < 1e-4);
  CHECK(e_coarse / e_fine > 12.0);
  CHECK(e_coarse / e_fine < 24.0);
  const Drift d = relative_drift(fine, profile({1.0, 1.0, 0.0}, grid));
  CHECK(d.mass < 1e-8);
  CHECK(d.energy < 1e-8);
  CHECK(d.momentum < 1e-8);
  MESSAGE("errors " << e_coarse << ", " << e_fine);

  // The ground state sits on the boundary K = 0. Its excursion is the
  // fourth-order truncation error of the scheme, not conservation drift.
  const InvarianceReport rc = invariance_check(coarse, profile({1.0, 1.0, 0.0}, grid), p);
  const InvarianceReport rf = invariance_check(fine, profile({1.0, 1.0, 0.0}, grid), p);
  const double kc = std::max(std::abs(rc.min_virial), std::abs(rc.max_virial));
  const double kf = std::max(std::abs(rf.min_virial), std::abs(rf.max_virial));
  CHECK(kf < 1e-7);
  CHECK(kc / kf > 12.0);
  CHECK(rf.bound_held);
  MESSAGE("virial excursion " << kf << " against drift scale " << rf.drift_scale);
}

TEST_CASE("conservation for generic data") {
  std::mt19937_64 rng(11);
  const Grid grid(60.0, 1024);
  for (double sigma : {1.0, 2.0}) {
    const Field u0 = random_smooth_field(grid, rng).scaled(0.7);
    SchemeConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 5.0;
    const Trajectory traj = integrate(u0, sigma, cfg);
    REQUIRE_FALSE(traj.blowup);
    const Drift d = relative_drift(traj, u0);
    CHECK(d.mass < 1e-8);
    CHECK(d.energy < 1e-8);
    CHECK(d.momentum < 1e-8);
    CHECK(std::isnan(traj.records.back().virial));
  }
}

TEST_CASE("certified subcritical data stays on the positive side") {
  const Grid grid(40.0, 512);
  const double a = std::sqrt(3.9 * kPi / std::sqrt(kPi / 2.0));
  const Field u0 = Field::sample(grid, [&](double x) { return cplx(a * std::exp(-x * x), 0.0); });
  const CertificationResult cert = certify_global(u0, 1.0);
  REQUIRE(cert.certificate);
  SchemeConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 5.0;
  cfg.sample_every = 50;
  const Trajectory traj = integrate(u0, 1.0, cfg, cert.certificate->params);
  const InvarianceReport r = invariance_check(traj, u0, cert.certificate->params);
  CHECK(r.virial_nonnegative);
  CHECK(r.min_virial > 0.0);
  CHECK(r.bound_held);
  CHECK(r.passed());
  CHECK(r.max_gradient < r.gradient_bound);
}

TEST_CASE("negative-virial data keeps its sign") {
  const Grid grid(60.0, 1024);
  const Params p{1.0, 1.0, 0.0, 1.0, 0.0};
  const Field u0 = profile({1.0, 1.0, 0.0}, grid).scaled(1.2);
  SchemeConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 1.0;
  const Trajectory traj = integrate(u0, 1.0, cfg, p);
  const InvarianceReport r = invariance_check(traj, u0, p);
  CHECK(r.max_virial < 0.0);
  CHECK(r.virial_nonpositive);
  CHECK_FALSE(r.virial_nonnegative);
}

TEST_CASE("large supercritical data terminates cleanly") {
  const Grid grid(30.0, 256);
  const Field u0 = profile({3.0, 1.0, 0.0}, grid).scaled(3.0);
  SchemeConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 0.2;
  cfg.max_steps = 20000;
  const Trajectory traj = integrate(u0, 3.0, cfg);
  REQUIRE_FALSE(traj.records.empty());
  CHECK(traj.min_dt < cfg.dt);
  for (const DiagnosticsRecord& r : traj.records) {
    if (!r.blowup) CHECK(std::isfinite(r.h1_seminorm));
  }
  CHECK((traj.blowup || traj.truncated || traj.records.back().t == cfg.t_final));
  MESSAGE("blowup " << traj.blowup << ", truncated " << traj.truncated << ", steps " << traj.steps << ", gradient "
                    << traj.records.front().h1_seminorm << " -> " << traj.records.back().h1_seminorm);
}

TEST_CASE("csv export") {
  const Grid grid(40.0, 128);
  SchemeConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_final = 0.1;
  cfg.sample_every = 5;
  const Trajectory traj = integrate(profile({1.0, 1.0, 0.0}, grid), 1.0, cfg, Params{});
  std::ostringstream os;
  write_csv(os, traj);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,M,E,P,H1seminorm,shiftedH1,K,blowup");
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == traj.records.size());
  CHECK(rows == 3);
  CHECK(traj.fields.size() == rows);
}

TEST_CASE("invalid configuration") {
  const Grid grid(40.0, 128);
  const Field u0 = profile({1.0, 1.0, 0.0}, grid);
  SchemeConfig cfg;
  cfg.cfl_safety = 1.5;
  CHECK_THROWS_AS(integrate(u0, 1.0, cfg), InvalidArgument);
  cfg = {};
  cfg.t_final = 0.0;
  CHECK_THROWS_AS(integrate(u0, 1.0, cfg), InvalidArgument);
  cfg = {};
  cfg.store_fields = false;
  cfg.t_final = 0.01;
  const Trajectory traj = integrate(u0, 1.0, cfg);
  CHECK_THROWS_AS(invariance_check(traj, u0, Params{}), InvalidArgument);
}
