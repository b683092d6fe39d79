#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gdnls/criterion.hpp"
#include "gdnls/functionals.hpp"
#include "gdnls/variational.hpp"
#include "gdnls/waves.hpp"

using namespace gdnls;

namespace {

const Grid kGrid(40.0, 512);

// a exp(-x^2) exp(i k x) with mass m.
Field gaussian_with_mass(double m, double k = 0.0) {
  const double a = std::sqrt(m / std::sqrt(kPi / 2.0));
  return Field::sample(kGrid, [&](double x) { return std::polar(a * std::exp(-x * x), k * x); });
}

void check_round_trip(const Field& u0, const Certificate& cert) {
  const Membership m = classify(u0, cert.params);
  CHECK(m.region == Region::positive_virial);
  CHECK(m.action == cert.action);
  CHECK(m.level == cert.level);
  CHECK(m.virial == cert.virial);
}

}  // namespace

TEST_CASE("classification") {
  const Grid grid(60.0, 4096);
  const Params p{1.0, 1.0, 1.0, 1.0, -0.5};
  const Field phi = profile({1.0, 1.0, 1.0}, grid);
  const Membership on = classify(phi, p);
  CHECK(std::abs(on.action - on.level) < 1e-8 * on.level);
  CHECK(std::abs(on.virial) < 1e-8);

  const Membership zero = classify(Field::zeros(grid), p);
  CHECK(zero.region == Region::positive_virial);
  CHECK(zero.action == 0.0);
  CHECK(zero.virial == 0.0);

  const Params q{1.0, 1.0, 0.0, 1.0, 0.0};
  const Field ground = profile({1.0, 1.0, 0.0}, grid);
  const HomogeneitySplit h = homogeneity_split(ground, q);
  const Membership big = classify(ground.scaled(1.2), q);
  CHECK(big.virial < 0.0);
  CHECK(std::abs(big.virial - 1.44 * h.quadratic * (1.0 - 1.44)) < 1e-8 * h.quadratic);
  CHECK(big.region != Region::positive_virial);
  CHECK(big.region == (big.action > big.level ? Region::above_level : Region::negative_virial));
  CHECK(to_string(Region::positive_virial) == "positive-virial");
}

TEST_CASE("subcritical mass is certified by the massless scan") {
  const Field u0 = gaussian_with_mass(3.9 * kPi);
  CHECK(mass(u0) == doctest::Approx(3.9 * kPi).epsilon(1e-12));
  const CertificationResult r = certify_global(u0, 1.0);
  REQUIRE(r.certificate);
  CHECK(r.certificate->strategy == Strategy::massless_scan);
  CHECK(r.certificate->params.massless());
  CHECK(modulation_compatible(r.certificate->params.c, kGrid.length()));
  check_round_trip(u0, *r.certificate);
  // Exact massless level for the cubic case.
  const double c = r.certificate->params.c;
  CHECK(r.certificate->level == doctest::Approx(kPi * c * c / 2.0).epsilon(1e-14));
  // S <= mu at the massless point reduces to E <= (4 pi - M) c^2 / 8.
  CHECK(c * c >= 8.0 * energy(u0, 1.0) / (0.1 * kPi));
  MESSAGE("certified at c = " << c);
}

TEST_CASE("threshold mass with negative momentum is certified") {
  const Field u0 = gaussian_with_mass(4.0 * kPi, 1.0);
  CHECK(momentum(u0) < 0.0);
  CHECK(momentum(u0) == doctest::Approx(-mass(u0)).epsilon(1e-10));
  const CertificationResult r = certify_global(u0, 1.0);
  REQUIRE(r.certificate);
  CHECK(r.certificate->strategy == Strategy::negative_momentum);
  check_round_trip(u0, *r.certificate);
}

TEST_CASE("modulated quintic data is certified at large speed") {
  const Field psi = Field::sample(kGrid, [](double x) { return cplx(std::exp(-x * x), 0.0); });
  const double c = nearest_compatible_speed(8.0, kGrid.length());
  const Field u0 = modulated_data(psi, c);
  const CertificationResult r = certify_global(u0, 2.0);
  REQUIRE(r.certificate);
  CHECK(r.certificate->strategy == Strategy::modulation);
  check_round_trip(u0, *r.certificate);
  MESSAGE("certified at c = " << r.certificate->params.c);
}

TEST_CASE("supercritical soliton-shaped data is not certified by the scan") {
  const Grid grid(400.0, 16384);
  const Field u0 = profile({1.0, 0.25, 1.0}, grid).scaled(1.05);
  SearchConfig cfg;
  cfg.grid_search = false;
  const CertificationResult r = certify_global(u0, 1.0, cfg);
  CHECK_FALSE(r.certificate);
  REQUIRE(r.best);
  CHECK(r.best->margin() < 0.0);
  REQUIRE(r.rows.size() > 1);
  CHECK(r.rows.back().virial > 0.0);
  // The carrier of the wave gives P != 0, so S <= mu does happen near its own
  // speed, but only with negative virial.
  for (const ScanRow& row : r.rows) {
    if (row.action <= row.level) CHECK(row.virial < 0.0);
  }
  CHECK_THROWS_AS(certify_global(Field::zeros(grid), 1.0), ZeroField);
}

TEST_CASE("virial is positive at the top of the scan") {
  const Field u0 = gaussian_with_mass(6.0 * kPi, -0.5);
  SearchConfig cfg;
  cfg.grid_search = false;
  const CertificationResult r = certify_global(u0, 1.0, cfg);
  REQUIRE_FALSE(r.rows.empty());
  CHECK(r.rows.back().virial > 0.0);
}

TEST_CASE("modulated data") {
  std::mt19937_64 rng(5);
  const Field psi = random_smooth_field(kGrid, rng);
  CHECK(modulated_data(psi, 0.0).values()[7] == psi.values()[7]);
  for (int m : {1, 3, 10}) {
    const double c = 4.0 * kPi * m / kGrid.length();
    const Field u = modulated_data(psi, c);
    CHECK(mass(u) == doctest::Approx(mass(psi)).epsilon(1e-13));
    for (double sigma : {1.0, 2.0}) {
      const Params p{sigma, 0.25 * c * c, c, 1.0, -0.5};
      const double full = action(u, p);
      const double reduced = reduced_functionals(psi, p).action;
      CHECK(std::abs(full - reduced) < 1e-8 * std::max(1.0, std::abs(reduced)));
    }
  }
  CHECK_THROWS_AS(modulated_data(psi, 1.0), IncompatibleModulation);
}

TEST_CASE("threshold gradient bound") {
  const Field u0 = gaussian_with_mass(4.0 * kPi, 1.0);
  const double bound = threshold_gradient_bound(u0);
  CHECK(std::isfinite(bound));
  CHECK(bound > mass(derivative(u0)));
  CHECK_THROWS_AS(threshold_gradient_bound(gaussian_with_mass(4.0 * kPi, -1.0)), Inapplicable);
  CHECK_THROWS_AS(threshold_gradient_bound(gaussian_with_mass(4.0 * kPi)), Inapplicable);
  CHECK_THROWS_AS(threshold_gradient_bound(gaussian_with_mass(3.0 * kPi, 1.0)), Inapplicable);
  CHECK_THROWS_AS(threshold_gradient_bound(u0, 2.0), SigmaUnsupported);

  // Monotone in E at fixed M and P.
  const double m = mass(u0);
  const double p = momentum(u0);
  auto formula = [&](double e) {
    const double z = 8.0 * std::sqrt(kPi) * e * std::sqrt(m) / std::abs(p);
    return 4.0 * e + 2.0 * std::sqrt(3.0) / (9.0 * kPi) * z * z;
  };
  CHECK(bound == doctest::Approx(formula(energy(u0, 1.0))).epsilon(1e-14));
  CHECK(formula(1.1 * energy(u0, 1.0)) > bound);
}

TEST_CASE("uniform gradient bound") {
  const Field u0 = gaussian_with_mass(3.9 * kPi);
  const Params p{1.0, 100.0, 20.0, 1.0, -0.5};
  const double s = action(u0, p);
  const double expected = std::sqrt(2.0 * 4.0 * s / 1.5) + 10.0 * std::sqrt(mass(u0));
  CHECK(gradient_bound(u0, p) == doctest::Approx(expected).epsilon(1e-14));
}
