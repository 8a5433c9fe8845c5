#pragma once

#include "kpforge/spectral_field.hpp"

namespace kpforge {

/// D^s: multiplies the spectrum by |xi|^s. The zero mode is kept for s = 0
/// (D^0 is the identity) and annihilated for s > 0. Throws on s < 0.
SpectralField fractional_derivative(const SpectralField& f, double s);

/// Littlewood-Paley block Delta_j (symbol Psi(2^{-j} xi)). Indices outside
/// [j_min, j_max] are allowed and yield the zero field.
SpectralField lp_block(const SpectralField& f, int j);

/// Low-pass S_j (symbol Phi(2^{-j} xi)); keeps the zero mode.
SpectralField lowpass(const SpectralField& f, int j);

/// Whether the annulus of Delta_j can meet the nonzero lattice of `grid`.
bool block_in_range(const GridSpec& grid, int j);

/// S_{j_min} f + sum_{j_min < j <= j_max} Delta_j f, which telescopes to S_{j_max} f = f.
SpectralField littlewood_paley_sum(const SpectralField& f);

/// f -> f(2^{j0} x) on the torus.
///
/// j0 >= 0: samples are re-indexed exactly (x -> 2^{j0} x mod L); the
/// spectrum must fit in |m_i| < N / 2^{j0+1}.
/// j0 < 0: the spectrum must live on multiples of 2^{-j0} (the field is
/// L/2^{-j0}-periodic); coefficients move to the coarser lattice points.
/// Throws AliasingError when content above `tol * max|F|` would be lost.
SpectralField dilate(const SpectralField& f, int j0, double tol = 1e-12);

/// Largest |F(xi)| over lattice points with |xi| > radius, relative to max |F|.
double spectral_tail(const SpectralField& f, double radius);

/// True when all spectral content above tol (relative) sits in |xi| <= nyquist/2,
/// the condition under which products of two such fields do not alias.
bool is_half_band_limited(const SpectralField& f, double tol = 1e-12);

}  // namespace kpforge
