#pragma once

#include <complex>
#include <vector>

namespace kpforge {

/// Fourier coefficients of Phi_(s)(t) = |t|^s Phi~(t) on the cube [-8,8]^n,
///   c_{s,m} = 16^{-n} int_{[-8,8]^n} |t|^s Phi~(t) e^{-2 pi i m.t/16} dt,
/// for |m|_inf <= m_max.
struct FourierCoefficients {
  int n = 1;
  double s = 0.0;
  int m_max = 0;
  int quad_N = 0;
  /// Largest coefficient change between quad_N and 2*quad_N.
  double doubling_change = 0.0;
  /// Row-major over m_i + m_max in [0, 2*m_max].
  std::vector<std::complex<double>> values;

  std::complex<double> at(int m0, int m1 = 0) const;
  int side() const { return 2 * m_max + 1; }
  /// sum over stored m of |c_{s,m}|
  double abs_sum() const;
};

/// Trapezoidal rule on the quad_N-point periodic grid (FFT in 1-D, radial
/// trapezoid of the Hankel form in 2-D) with the generalized Euler-Maclaurin
/// correction for the |t|^s singularity at the origin. Requires s > 0,
/// quad_N a power of two >= 8*m_max. Throws ResolutionError if doubling
/// quad_N moves any coefficient by more than 1e-8.
FourierCoefficients fourier_coeffs_phi_s(int n, double s, int m_max, int quad_N);

/// Same quadrature at a single resolution, without the doubling check.
FourierCoefficients fourier_coeffs_phi_s_single(int n, double s, int m_max, int quad_N);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  int bins = 0;
};

/// Least-squares line through (log b, log mean|c_{s,m}|) over integer bins
/// b = round(|m|) with 8 <= b <= m_max. Requires m_max >= 64.
DecayFit coeff_decay_fit(const FourierCoefficients& c);

/// Truncated series sum_{|m|_inf <= m_max} c_{s,m} e^{2 pi i m.t/16}.
std::complex<double> evaluate_series(const FourierCoefficients& c, double t0, double t1 = 0.0);

}  // namespace kpforge
