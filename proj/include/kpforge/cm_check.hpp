#pragma once

#include <string>
#include <vector>

#include "kpforge/symbols.hpp"

namespace kpforge {

/// Sample points (xi, eta) in R^n x R^n on log-spaced shells
/// radius_min <= sqrt(|xi|^2 + |eta|^2) <= radius_max.
struct CMSampleSpec {
  int n = 1;
  int radii = 256;
  /// Angles on [0, pi) when n == 1; quasi-uniform points on S^3 when n == 2.
  int directions = 256;
  double radius_min = 1.0;
  double radius_max = 2.0;
  /// Finite-difference step relative to |xi| + |eta|.
  double rel_step = 2e-4;

  CMSampleSpec doubled() const;
  std::vector<std::pair<Vec2, Vec2>> points() const;
};

struct CMEntry {
  std::vector<int> alpha;  // n components
  std::vector<int> beta;
  /// sup over samples of |d^alpha_xi d^beta_eta sigma| (|xi|+|eta|)^{|alpha|+|beta|} (step h/2)
  double constant = 0.0;
  /// The same sup with step h.
  double constant_coarse = 0.0;
  /// Samples whose estimate moved more than 10% between h and h/2 beyond roundoff.
  int flagged = 0;
  /// |constant - constant_coarse| <= 10% of constant (or both at the roundoff floor).
  bool stable = true;
};

struct CMReport {
  std::string symbol;
  int n = 1;
  int max_order = 0;
  CMSampleSpec sampling;
  std::vector<CMEntry> entries;

  const CMEntry* find(const std::vector<int>& alpha, const std::vector<int>& beta) const;
  /// JSON array of {alpha, beta, constant, stable, flagged}.
  std::string to_json() const;
};

/// Central finite-difference weights (order 6) for derivative order d on
/// integer offsets -K..K, K = weights.size()/2.
std::vector<double> central_difference_weights(int d);

/// Empirical Coifman-Meyer constants of sigma for all |alpha|+|beta| <= max_order.
/// Requires max_order <= 2n+1.
CMReport cm_check(const SymbolSpec& sigma, int max_order, const CMSampleSpec& sampling);

}  // namespace kpforge
