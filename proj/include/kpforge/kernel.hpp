#pragma once

#include <complex>
#include <memory>

#include "kpforge/fourier_coeffs.hpp"
#include "kpforge/spectral_field.hpp"
#include "kpforge/transforms.hpp"

namespace kpforge {

/// Bilinear kernel of Pi_1 in one dimension,
///   K1(y,z) = sum_{j=-depth}^{0} sum_{|m|<=m_max} c_{s,m} 2^{j(s-r)} 2^{2j}
///             Psi_(-r)^(m/16 + 2^j y) Phi^(m/16 + 2^j z),
/// with Psi_(-r)^ and Phi^ tabulated on |x| <= range and interpolated.
class K1Kernel {
 public:
  /// Requires s > r >= 0, j_depth >= 0, m_max >= 0. The tables cover
  /// |argument| <= max(range, m_max/16 + 1); pass m_max/16 + 2L to cover
  /// every difference of two points in a box of side L.
  K1Kernel(double s, double r, int j_depth, int m_max, double range);

  std::complex<double> operator()(double y, double z) const;

  double s() const { return s_; }
  double r() const { return r_; }
  int j_depth() const { return j_depth_; }
  int m_max() const { return coeffs_->m_max; }
  double range() const { return range_; }

  /// Bound on the levels j < -j_depth left out of the truncated sum:
  ///   2^{-j_depth(s-r)} / (1 - 2^{-(s-r)}) * sum|c| * sup|Psi_(-r)^| * sup|Phi^|
  double tail_bound() const;
  /// sum_{j<=0} 2^{j(s-r)} * sum|c| * sup|Psi_(-r)^| * sup|Phi^|, a bound on |K1|.
  double magnitude_bound() const;

  const CubicTable& psi_hat() const { return psi_hat_; }
  const CubicTable& phi_hat() const { return phi_hat_; }
  const FourierCoefficients& coefficients() const { return *coeffs_; }

 private:
  double s_;
  double r_;
  int j_depth_;
  double range_;
  std::shared_ptr<const FourierCoefficients> coeffs_;
  CubicTable psi_hat_;
  CubicTable phi_hat_;
};

/// Single kernel value; builds the tables on every call.
std::complex<double> kernel_K1(double y, double z, double s, double r, int j_depth, int m_max);

/// Pi_1(fr, g)(x) = int int K1(x-y, x-z) fr(y) g(z) dy dz by the grid
/// Riemann sum over the box (x - y is not wrapped). fr stands for D^r f.
/// Separable per (j, m), so each term is two discrete convolutions.
/// One-dimensional grids only; throws ResolutionError when the tables do
/// not cover m_max/16 + 2L.
SpectralField apply_pi1_kernel(const K1Kernel& kernel, const SpectralField& fr, const SpectralField& g);

}  // namespace kpforge
