#pragma once

#include <memory>

#include "kpforge/fourier_coeffs.hpp"
#include "kpforge/spectral_field.hpp"

namespace kpforge {

/// D^s(fg) = T1(D^s f, g) + T2(f, D^s g) + T3(f, D^s g) + residual.
struct Decomposition {
  SpectralField direct;      // D^s of the pointwise product
  SpectralField t1;          // sigma_1 applied to (D^s f, g)
  SpectralField t2;          // sigma_2 applied to (f, D^s g)
  SpectralField t3;          // series diagonal symbol applied to (f, D^s g)
  SpectralField complement;  // complement symbol applied to (f, D^s g)
  SpectralField residual;    // direct - t1 - t2 - t3
  double relative_residual = 0.0;             // sup|residual| / sup|direct|
  double complement_relative_residual = 0.0;  // same with the complement in place of t3
  int m_max = 0;
};

/// Throws AliasingError unless both inputs fit in |xi| <= nyquist/2.
void require_product_safe(const SpectralField& f, const SpectralField& g);

Decomposition decompose_Ds(const SpectralField& f, const SpectralField& g, double s, int m_max);
Decomposition decompose_Ds(const SpectralField& f, const SpectralField& g,
                           std::shared_ptr<const FourierCoefficients> coeffs);

struct PiSplit {
  SpectralField direct;
  SpectralField pi;
  SpectralField pi_tilde;
  double relative_residual = 0.0;  // |direct - pi - pi_tilde| / |direct|
};

PiSplit pi_split(const SpectralField& f, const SpectralField& g, double s);

/// Pi with only the diagonal pairs j = k, so Pi(f,g) - Pi~(g,f) equals this.
SpectralField pi_diagonal(const SpectralField& f, const SpectralField& g, double s);

/// Pi_1(D^r f, g) from a caller-supplied fr = D^r f; requires 0 <= r < s.
SpectralField pi1(const SpectralField& fr, const SpectralField& g, double r, double s);
/// Pi_2(D^t f, g) from a caller-supplied ft = D^t f; requires s < t.
SpectralField pi2(const SpectralField& ft, const SpectralField& g, double s, double t);

struct PiReweighting {
  SpectralField pi1;  // Pi_1(D^r f, g)
  SpectralField pi2;  // Pi_2(D^t f, g)
  SpectralField pi;   // Pi(f, g)
  double relative_residual = 0.0;
};

/// Requires 0 <= r < s < t.
PiReweighting pi1_pi2(const SpectralField& f, const SpectralField& g, double r, double s, double t);

struct ShiftIdentity {
  double absolute = 0.0;  // sup|D^eps T_{1,s}(D^s f,g) - T_{1,s+eps}(D^{s+eps} f,g)|
  double relative = 0.0;  // absolute / sup of the second form
};

/// Checks D^eps T_{1,s}(D^s f, g) = T_{1,s+eps}(D^{s+eps} f, g).
ShiftIdentity t1_shift_identity_check(const SpectralField& f, const SpectralField& g, double s, double eps);

}  // namespace kpforge
