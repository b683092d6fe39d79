#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gdnls/functionals.hpp"
#include "gdnls/waves.hpp"

using namespace gdnls;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Field demodulate(const Field& u, double c) {
  return u.multiplied([c](double x) { return std::polar(1.0, -0.5 * c * x); });
}

}  // namespace

TEST_CASE("conserved quantities of the solitary waves") {
  const Grid grid(60.0, 4096);
  const Field q = profile({1.0, 1.0, 0.0}, grid);
  CHECK(rel(mass(q), 2.0 * kPi) < 1e-6);
  CHECK(rel(momentum(q), 4.0) < 1e-6);
  CHECK(std::abs(energy(q, 1.0)) < 1e-6);

  const Field moving = profile({1.0, 1.0, 1.0}, grid);
  CHECK(rel(mass(moving), 8.0 * kPi / 3.0) < 1e-6);
  CHECK(rel(momentum(moving), 2.0 * std::sqrt(3.0)) < 1e-6);
  CHECK(rel(energy(moving, 1.0), -std::sqrt(3.0) / 2.0) < 1e-6);

  const Field real = Field::sample(grid, [](double x) { return cplx(std::exp(-x * x) * (1 + x), 0.0); });
  CHECK(std::abs(momentum(real)) < 1e-15);
  CHECK(std::abs(nonlinear_term(real, 1.0)) < 1e-15);
}

TEST_CASE("action") {
  const Grid grid(60.0, 4096);
  CHECK(rel(action(profile({1.0, 1.0, 0.0}, grid), {1.0, 1.0, 0.0}), kPi) < 1e-6);
  CHECK(action(Field::zeros(grid), {1.0, 1.0, 0.0}) == 0.0);

  const Grid wide(400.0, 16384);
  const Params massless{1.0, 1.0, 2.0, 1.0, -0.5};
  CHECK(rel(action(profile({1.0, 1.0, 2.0}, wide), massless), 2.0 * kPi) < 1e-5);
}

TEST_CASE("virial functional vanishes on solitary waves for every exponent pair") {
  const Grid grid(60.0, 4096);
  const std::pair<double, double> waves[] = {{1.0, 0.0}, {1.0, 1.0}, {1.0, -1.0}};
  for (double sigma : {1.0, 2.0}) {
    for (auto [omega, c] : waves) {
      const Field phi = profile({sigma, omega, c}, grid);
      int tested = 0;
      for (double alpha : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        for (double t : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
          const Params p{sigma, omega, c, alpha, t * 2.0 * alpha * (c > 0 ? -1.0 : 1.0)};
          if (!exponents_valid(p)) continue;
          ++tested;
          const Field du = derivative(phi);
          const double scale = (2.0 * alpha + std::abs(p.beta)) * (mass(du) + mass(phi));
          CHECK(std::abs(virial(phi, p)) < 1e-6 * scale);
        }
      }
      CHECK(tested >= 15);
    }
  }
  CHECK(virial(Field::zeros(grid), {1.0, 1.0, 0.0}) == 0.0);
  CHECK(virial(profile({1.0, 1.0, 0.0}, grid).scaled(0.9), {1.0, 1.0, 0.0}) > 0.0);
}

TEST_CASE("nehari functional") {
  const Grid grid(60.0, 2048);
  std::mt19937_64 rng(11);
  const Params p{1.0, 1.0, 0.7, 1.0, 0.0};
  for (int i = 0; i < 5; ++i) {
    const Field u = random_smooth_field(grid, rng);
    CHECK(std::abs(nehari_functional(u, p) - virial(u, p)) < 1e-12 * std::abs(virial(u, p)) + 1e-13);
  }
  CHECK(nehari_functional(Field::zeros(grid), p) == 0.0);
  CHECK(std::abs(nehari_functional(profile({1.0, 1.0, 0.0}, Grid(60.0, 4096)), {1.0, 1.0, 0.0})) < 1e-6);
}

TEST_CASE("reduced functionals") {
  const Grid grid(40.0, 512);
  std::mt19937_64 rng(3);
  const Params p{1.0, 1.0, 1.0, 1.0, -0.5};
  for (int i = 0; i < 20; ++i) {
    const Field psi = random_smooth_field(grid, rng);
    const auto r = reduced_functionals(psi, p);
    const double lhs = p.alpha * 4.0 * r.action;
    CHECK(std::abs(lhs - r.virial - r.complement) < 1e-10 * std::abs(lhs));
    CHECK(r.complement > 0.0);
  }
  const auto zero = reduced_functionals(Field::zeros(grid), p);
  CHECK(zero.action == 0.0);
  CHECK(zero.virial == 0.0);
  CHECK(zero.complement == 0.0);

  // c L / (4 pi) = 60 / (4 pi) * c is an integer for c = 4 pi / 60 * 5.
  const Grid big(60.0, 4096);
  const double c = 4.0 * kPi / 60.0 * 5.0;
  REQUIRE(modulation_compatible(c, big.length()));
  const Params q{1.0, 1.0, c, 1.0, 0.0};
  const Field phi = profile({1.0, 1.0, c}, big);
  const Field psi = demodulate(phi, c);
  CHECK(std::abs(reduced_functionals(psi, q).action - action(phi, q)) < 1e-8);
  CHECK(std::abs(reduced_functionals_of_modulated(phi, q).action - action(phi, q)) < 1e-8);
  CHECK(std::abs(reduced_functionals(psi, q).virial - virial(phi, q)) < 1e-8);
}

TEST_CASE("reduced gradients match finite differences") {
  const Grid grid(40.0, 256);
  std::mt19937_64 rng(5);
  const Params p{1.5, 1.2, 0.8, 1.0, -0.3};
  const Field psi = random_smooth_field(grid, rng);
  const Field h = random_smooth_field(grid, rng);
  const double eps = 1e-5;
  auto pairing = [&](const Field& g) {
    double s = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) s += (g[j] * std::conj(h[j])).real();
    return s * grid.dx();
  };
  const auto plus = reduced_functionals(psi + h.scaled(eps), p);
  const auto minus = reduced_functionals(psi - h.scaled(eps), p);
  const double ds = (plus.action - minus.action) / (2.0 * eps);
  const double dk = (plus.virial - minus.virial) / (2.0 * eps);
  CHECK(rel(pairing(reduced_action_gradient(psi, p)), ds) < 1e-7);
  CHECK(rel(pairing(reduced_virial_gradient(psi, p)), dk) < 1e-7);
}

TEST_CASE("identity suite") {
  const Grid grid(40.0, 512);
  std::mt19937_64 rng(7);
  const Params p{1.0, 1.0, 1.0, 1.0, -0.5};
  auto all_within = [](const IdentityReport& r, double tol) {
    return r.momentum_shift.within(tol) && r.nonlinear_shift.within(tol) &&
           r.nonlinear_split.within(tol) && r.action_split.within(tol) && r.reduced_split.within(tol);
  };
  for (int i = 0; i < 10; ++i) CHECK(all_within(identity_suite(random_smooth_field(grid, rng), p), 1e-9));
  const auto zero = identity_suite(Field::zeros(grid), p);
  CHECK(zero.momentum_shift.residual == 0.0);
  CHECK(zero.action_split.residual == 0.0);
  CHECK(all_within(identity_suite(profile({1.0, 1.0, 1.0}, Grid(60.0, 2048)), p), 1e-9));
}

TEST_CASE("gauge transformation") {
  const Grid grid(40.0, 1024);
  const Field w = Field::sample(grid, [](double x) { return cplx(1.0 / std::cosh(x), 0.0); });
  const Field u = gauge_inverse(w);
  for (std::size_t j = 0; j < grid.size(); ++j) CHECK(std::abs(std::abs(u[j]) - std::abs(w[j])) < 1e-15);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 10; ++i) {
    const Field v = random_smooth_field(grid, rng);
    const Field g = gauge_forward(v);
    CHECK(lp_norm(gauge_inverse(g) - v, kInfinity) < 1e-12);
    CHECK(std::abs(energy(v, 1.0) - gauge_energy(g)) < 1e-8);
    CHECK(std::abs(momentum(v) - gauge_momentum(g)) < 1e-8);

    // A priori lower bound on the gauge momentum.
    const double l2 = lp_norm(g, 2.0);
    const double l4 = std::pow(lp_norm(g, 4.0), 4.0);
    const double bound = 0.25 * l4 * (1.0 - l2 / (2.0 * std::sqrt(kPi))) -
                         8.0 * std::sqrt(kPi) * gauge_energy(g) * l2 / l4;
    CHECK(gauge_momentum(g) >= bound);
  }
  const Field q = gauge_forward(profile({1.0, 1.0, 0.0}, Grid(60.0, 4096)));
  CHECK(std::abs(gauge_energy(q)) < 1e-6);
  CHECK(gauge_energy(Field::zeros(grid)) == 0.0);
  CHECK(gauge_momentum(Field::zeros(grid)) == 0.0);
  CHECK_THROWS_AS(gauge_forward(w, 2.0), SigmaUnsupported);
}

TEST_CASE("interpolation ratios") {
  const Field q = Field(profile_modulus({1.0, 1.0, 0.0}, Grid(60.0, 4096)));
  const auto rq = interpolation_ratios(q);
  CHECK(std::abs(rq.sextic_by_mass - 1.0) < 1e-6);
  CHECK(rel(mass(q), 2.0 * kPi) < 1e-6);
  CHECK(rq.sextic_by_quartic <= 1.0 + 1e-6);
  CHECK(rq.agmon <= 1.0 + 1e-6);

  const Field w = Field(profile_modulus({1.0, 0.25, 1.0}, Grid(400.0, 32768)));
  const auto rw = interpolation_ratios(w);
  CHECK(std::abs(rw.sextic_by_quartic - 1.0) < 1e-5);
  CHECK(rel(std::pow(tail_corrected_lp_norm(w, 2.0), 2.0), 4.0 * kPi) < 1e-4);
  CHECK(rw.sextic_by_mass <= 1.0 + 1e-6);

  const Field gaussian = Field::sample(Grid(40.0, 1024), [](double x) { return cplx(std::exp(-x * x), 0.0); });
  const auto rg = interpolation_ratios(gaussian);
  // Gaussian norms: ||f||_2^2 = ||f_x||_2^2 = sqrt(pi/2), sup = 1.
  CHECK(std::abs(rg.agmon - 1.0 / std::sqrt(2.0 * kPi)) < 1e-10);
  CHECK(rg.sextic_by_mass < 1.0);
  CHECK(rg.sextic_by_quartic < 1.0);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const auto r = interpolation_ratios(random_smooth_field(Grid(40.0, 512), rng), 1.5);
    CHECK(r.agmon <= 1.0 + 1e-6);
    CHECK(r.sextic_by_mass <= 1.0 + 1e-6);
    CHECK(r.sextic_by_quartic <= 1.0 + 1e-6);
  }
  CHECK_THROWS_AS(interpolation_ratios(Field::zeros(Grid(40.0, 64))), ZeroField);
}
