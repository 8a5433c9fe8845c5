#include "kpforge/paraproduct.hpp"

#include <bit>

#include "kpforge/bilinear.hpp"
#include "kpforge/error.hpp"
#include "kpforge/multipliers.hpp"
#include "kpforge/norms.hpp"
#include "kpforge/symbols.hpp"

namespace kpforge {

namespace {

double ratio_or_abs(double num, double den) { return den > 0.0 ? num / den : num; }

double sup(const SpectralField& f) { return sup_norm(f).value; }

}  // namespace

void require_product_safe(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  if (!is_half_band_limited(f) || !is_half_band_limited(g))
    throw AliasingError("inputs must be band-limited to half the Nyquist radius");
}

Decomposition decompose_Ds(const SpectralField& f, const SpectralField& g,
                           std::shared_ptr<const FourierCoefficients> coeffs) {
  require_product_safe(f, g);
  if (!coeffs) throw ParameterError("decompose_Ds needs a coefficient table");
  if (coeffs->n != f.grid().n) throw ParameterError("coefficient table dimension differs from the grid");
  const double s = coeffs->s;

  Decomposition d;
  d.m_max = coeffs->m_max;
  d.direct = fractional_derivative(pointwise_product(f, g), s);
  const auto fs = fractional_derivative(f, s);
  const auto gs = fractional_derivative(g, s);
  d.t1 = apply_bilinear_symbol(sigma1(s), fs, g);
  d.t2 = apply_bilinear_symbol(sigma2(s), f, gs);
  d.t3 = apply_bilinear_symbol(sigma3_series(coeffs), f, gs);
  d.complement = apply_bilinear_symbol(sigma3_complement(s), f, gs);
  d.residual = d.direct - d.t1 - d.t2 - d.t3;
  const double ref = sup(d.direct);
  d.relative_residual = ratio_or_abs(sup(d.residual), ref);
  d.complement_relative_residual = ratio_or_abs(sup(d.direct - d.t1 - d.t2 - d.complement), ref);
  return d;
}

Decomposition decompose_Ds(const SpectralField& f, const SpectralField& g, double s, int m_max) {
  if (!(s > 0.0)) throw ParameterError("decompose_Ds requires s > 0");
  const auto quad_N = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max(16 * m_max, 64))));
  auto c = std::make_shared<const FourierCoefficients>(fourier_coeffs_phi_s(f.grid().n, s, m_max, quad_N));
  return decompose_Ds(f, g, c);
}

PiSplit pi_split(const SpectralField& f, const SpectralField& g, double s) {
  require_product_safe(f, g);
  if (!(s > 0.0)) throw ParameterError("pi_split requires s > 0");
  PiSplit p;
  p.direct = fractional_derivative(pointwise_product(f, g), s);
  p.pi = apply_bilinear_symbol(pi_symbol(s), f, g);
  p.pi_tilde = apply_bilinear_symbol(pi_tilde_symbol(s), f, g);
  p.relative_residual = ratio_or_abs(sup(p.direct - p.pi - p.pi_tilde), sup(p.direct));
  return p;
}

SpectralField pi_diagonal(const SpectralField& f, const SpectralField& g, double s) {
  require_product_safe(f, g);
  return apply_bilinear_symbol(pi_diagonal_symbol(s), f, g);
}

SpectralField pi1(const SpectralField& fr, const SpectralField& g, double r, double s) {
  if (!(r >= 0.0 && r < s)) throw ParameterError("requires 0 <= r < s");
  require_product_safe(fr, g);
  return apply_bilinear_symbol(pi1_symbol(s, r), fr, g);
}

SpectralField pi2(const SpectralField& ft, const SpectralField& g, double s, double t) {
  if (!(s < t)) throw ParameterError("requires s < t");
  require_product_safe(ft, g);
  return apply_bilinear_symbol(pi2_symbol(s, t), ft, g);
}

PiReweighting pi1_pi2(const SpectralField& f, const SpectralField& g, double r, double s, double t) {
  if (!(r >= 0.0 && r < s && s < t)) throw ParameterError("requires 0 <= r < s < t");
  require_product_safe(f, g);
  PiReweighting w;
  // D^r and D^t keep the support of f^, so the check above covers both; redoing
  // it on D^t f would trip on rounding noise lifted by |xi|^t near Nyquist.
  w.pi1 = apply_bilinear_symbol(pi1_symbol(s, r), fractional_derivative(f, r), g);
  w.pi2 = apply_bilinear_symbol(pi2_symbol(s, t), fractional_derivative(f, t), g);
  w.pi = apply_bilinear_symbol(pi_symbol(s), f, g);
  w.relative_residual = ratio_or_abs(sup(w.pi - w.pi1 - w.pi2), sup(w.pi));
  return w;
}

ShiftIdentity t1_shift_identity_check(const SpectralField& f, const SpectralField& g, double s, double eps) {
  if (!(s > 0.0) || !(eps >= 0.0)) throw ParameterError("requires s > 0 and eps >= 0");
  require_product_safe(f, g);
  const auto lhs = fractional_derivative(apply_bilinear_symbol(sigma1(s), fractional_derivative(f, s), g), eps);
  const auto rhs = apply_bilinear_symbol(sigma1(s + eps), fractional_derivative(f, s + eps), g);
  ShiftIdentity out;
  out.absolute = sup_distance(lhs, rhs);
  out.relative = ratio_or_abs(out.absolute, sup(rhs));
  return out;
}

}  // namespace kpforge
