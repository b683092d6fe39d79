#include "gdnls/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gdnls/functionals.hpp"
#include "gdnls/variational.hpp"

namespace gdnls {

std::string to_string(Region r) {
  switch (r) {
    case Region::positive_virial: return "positive-virial";
    case Region::negative_virial: return "negative-virial";
    case Region::above_level: return "above-level";
  }
  return "unknown";
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::massless_scan: return "massless-scan";
    case Strategy::negative_momentum: return "negative-momentum";
    case Strategy::modulation: return "modulation";
    case Strategy::grid_search: return "grid-search";
  }
  return "unknown";
}

Membership classify(const Field& u0, const Params& params) {
  const Params p = validate_params(params);
  Membership m;
  m.action = action(u0, p);
  m.level = reference_level(p);
  m.virial = virial(u0, p);
  if (m.action > m.level) {
    m.region = Region::above_level;
  } else {
    m.region = m.virial >= 0.0 ? Region::positive_virial : Region::negative_virial;
  }
  return m;
}

double ScanRow::margin() const { return std::min(level - action, virial) / level; }

namespace {

ScanRow evaluate_candidate(const Field& u0, const Params& p) {
  const Membership m = classify(u0, p);
  return {p, m.action, m.level, m.virial};
}

// P < 0 beyond roundoff, measured against the Cauchy-Schwarz bound |P| <= ||u|| ||u_x||.
bool momentum_negative(const Field& u, double p) {
  return p < -1e-12 * std::sqrt(mass(u) * mass(derivative(u)));
}

Strategy massless_strategy(const Field& u0, double sigma) {
  if (sigma != 1.0) return Strategy::modulation;
  const double m = mass(u0);
  if (std::abs(m - 4.0 * kPi) <= 1e-6 * 4.0 * kPi && momentum_negative(u0, momentum(u0))) {
    return Strategy::negative_momentum;
  }
  return Strategy::massless_scan;
}

}  // namespace

CertificationResult certify_global(const Field& u0, double sigma, const SearchConfig& cfg) {
  if (!(mass(u0) > 0.0)) throw ZeroField();
  if (cfg.points < 2) throw InvalidArgument("massless scan needs at least two points");
  const double length = u0.grid().length();
  const double c_min = cfg.c_min > 0.0 ? cfg.c_min : 4.0 * kPi / length;

  CertificationResult result;
  auto consider = [&](const Params& p, Strategy strategy) {
    ScanRow row = evaluate_candidate(u0, p);
    result.rows.push_back(row);
    if (!result.best || row.margin() > result.best->margin()) result.best = row;
    if (row.accepted()) {
      result.best = row;
      result.certificate = Certificate{p, row.action, row.level, row.virial, strategy};
      return true;
    }
    return false;
  };

  if (cfg.massless) {
    const Strategy tag = massless_strategy(u0, sigma);
    double previous = -1.0;
    for (std::size_t k = 0; k < cfg.points; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(cfg.points - 1);
      double c = c_min * std::pow(cfg.span, t);
      if (cfg.round_to_grid) c = nearest_compatible_speed(c, length);
      if (c == previous) continue;
      previous = c;
      if (consider(Params{sigma, 0.25 * c * c, c, 1.0, -0.5}, tag)) return result;
    }
  }

  if (cfg.grid_search) {
    for (double c : cfg.grid_speeds) {
      for (double kappa : cfg.grid_detunings) {
        for (double beta : {0.0, -0.5}) {
          const Params p{sigma, 0.25 * c * c + kappa, c, 1.0, beta};
          if (!exponents_valid(p)) continue;
          if (consider(p, Strategy::grid_search)) return result;
        }
      }
    }
  }
  return result;
}

Field modulated_data(const Field& psi, double c) {
  if (!modulation_compatible(c, psi.grid().length())) {
    throw IncompatibleModulation(c, psi.grid().length());
  }
  return psi.multiplied([c](double x) { return std::polar(1.0, 0.5 * c * x); });
}

double threshold_gradient_bound(const Field& u0, double sigma) {
  if (sigma != 1.0) throw SigmaUnsupported(sigma);
  const double m = mass(u0);
  const double p = momentum(u0);
  const double e = energy(u0, 1.0);
  std::ostringstream os;
  if (std::abs(m - 4.0 * kPi) > 1e-6 * 4.0 * kPi) {
    os << "Inapplicable: mass " << m << " differs from 4 pi";
  } else if (!momentum_negative(u0, p)) {
    os << "Inapplicable: momentum " << p << " is not negative";
  } else if (!(e > 0.0)) {
    os << "Inapplicable: energy " << e << " is not positive";
  }
  if (!os.str().empty()) throw Inapplicable(os.str());
  const double quartic = 8.0 * std::sqrt(kPi) * e * std::sqrt(m) / std::abs(p);
  // ||u||_6^6 <= 3 (2 pi)^(-2/3) ||u||_4^(16/3) ||u_x||^(2/3), then Young with
  // exponents 3 and 3/2.
  const double young = std::sqrt(3.0) / (9.0 * kPi);
  return 4.0 * e + 2.0 * young * quartic * quartic;
}

double gradient_bound(const Field& u0, const Params& params) {
  const Params p = validate_params(params);
  const double q = 2.0 * p.sigma + 2.0;
  const double s = action(u0, p);
  const double c = std::sqrt(std::max(0.0, 2.0 * p.alpha * q * s / (2.0 * p.sigma * p.alpha + p.beta)));
  return c + 0.5 * std::abs(p.c) * std::sqrt(mass(u0));
}

}  // namespace gdnls
