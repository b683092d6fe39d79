#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdnls/core.hpp"

namespace gdnls {

/// Position of initial data relative to the level set of the action.
enum class Region {
  /// action <= level and virial >= 0: the global-existence side.
  positive_virial,
  /// action <= level and virial < 0.
  negative_virial,
  /// action > level.
  above_level,
};

std::string to_string(Region r);

struct Membership {
  Region region = Region::above_level;
  double action = 0.0;
  double level = 0.0;
  double virial = 0.0;
};

/// Exact comparisons: action == level and virial == 0 both count as inside.
Membership classify(const Field& u0, const Params& p);

enum class Strategy { massless_scan, negative_momentum, modulation, grid_search };

std::string to_string(Strategy s);

/// Parameters for which the data lies on the global-existence side, with the
/// numbers that prove it.
struct Certificate {
  Params params;
  double action = 0.0;
  double level = 0.0;
  double virial = 0.0;
  Strategy strategy = Strategy::massless_scan;
};

struct SearchConfig {
  /// Smallest speed of the massless scan; 0 selects 4 pi / L.
  double c_min = 0.0;
  /// c_max = span * c_min.
  double span = 1024.0;
  std::size_t points = 40;
  /// Round each scanned speed to the nearest 4 pi m / L.
  bool round_to_grid = true;
  bool massless = true;
  /// Fallback search over omega > c^2/4 with (alpha, beta) in {(1, 0), (1, -1/2)}.
  bool grid_search = true;
  std::vector<double> grid_speeds{-8.0, -4.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
  /// Values of omega - c^2/4.
  std::vector<double> grid_detunings{1e-3, 1e-2, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0};
};

/// One evaluated candidate.
struct ScanRow {
  Params params;
  double action = 0.0;
  double level = 0.0;
  double virial = 0.0;

  bool accepted() const { return action <= level && virial >= 0.0; }
  /// min(level - action, virial) / level: positive exactly when accepted
  /// with room to spare.
  double margin() const;
};

struct CertificationResult {
  std::optional<Certificate> certificate;
  /// Every candidate evaluated, in scan order.
  std::vector<ScanRow> rows;
  /// Candidate with the largest margin (the accepted one when found).
  std::optional<ScanRow> best;
};

/// Massless scan over a geometric speed grid with (alpha, beta) = (1, -1/2),
/// then the optional grid search. Throws ZeroField for u0 = 0.
CertificationResult certify_global(const Field& u0, double sigma, const SearchConfig& cfg = {});

/// exp(i c x/2) psi. Throws IncompatibleModulation unless c L / (4 pi) is an integer.
Field modulated_data(const Field& psi, double c);

/// A priori bound on ||u_x(t)||^2 for cubic data with mass 4 pi (relative
/// tolerance 1e-6), negative momentum and positive energy:
///   ||u||_4^4 <= Z = 8 sqrt(pi) E ||u0|| / |P|,
///   ||u_x||^2 <= 4 E + 2 C Z^2,  C = sqrt(3) / (9 pi).
/// Throws Inapplicable otherwise.
double threshold_gradient_bound(const Field& u0, double sigma = 1.0);

/// Constant of the uniform H1 bound for data on the global-existence side:
///   ||u_x(t)|| <= sqrt(2 a (2s+2) S / (2sa + b)) + (|c|/2) ||u0||.
double gradient_bound(const Field& u0, const Params& p);

}  // namespace gdnls
