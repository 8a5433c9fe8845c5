#pragma once

#include <string>

#include "kpforge/spectral_field.hpp"

namespace kpforge {

enum class NormKind { Lp, Sup, Besov, Bmo, WeakL1 };

std::string to_string(NormKind kind);

/// A norm estimate together with what produced it.
struct NormValue {
  double value = 0.0;
  NormKind kind = NormKind::Sup;
  GridSpec grid;
  /// Free-form estimator parameters: "p=2", "j=[-5,6]", "depth=8", ...
  std::string params;

  operator double() const { return value; }
};

/// Grid maximum of |f|.
NormValue sup_norm(const SpectralField& f);

/// Riemann sum ((L/N)^n sum |f|^p)^{1/p}, p >= 1.
NormValue lp_norm(const SpectralField& f, double p);

/// Homogeneous Besov B^{0,inf}_inf: max over j in [j_min, j_max] of sup|Delta_j f|.
NormValue besov_norm(const SpectralField& f);

/// Dyadic BMO lower estimate: max over grid-aligned cubes of side L/2^k,
/// k = 0..max_depth, of the mean of |f - mean_Q f| over the cube.
NormValue bmo_norm(const SpectralField& f, int max_depth);

/// Weak-L1 quasi-norm sup_lambda lambda * |{ |f| > lambda }| on the grid
/// measure. The sup is approached as lambda rises to a sample level, so each
/// level contributes level * (L/N)^n * #{ |f| >= level }.
NormValue weak_l1(const SpectralField& f);

/// ||Psi^||_{L1(R^n)} over |x| < 64 (n = 1) or |x| < 32 (n = 2), computed
/// once per n.
double psi_hat_l1(int n);

}  // namespace kpforge
