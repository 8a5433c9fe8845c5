#pragma once

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "kpforge/grid.hpp"

namespace kpforge {

using cplx = std::complex<double>;

/// Real-valued field on a discrete torus, carried in both sample and
/// frequency representation.
///
/// Either representation may be the source; the other is computed on first
/// access and cached. Copies share the (immutable) state, so a field may be
/// read from several threads at once.
///
/// The spectrum is the normalized DFT of the samples in array order,
///   F[m] = N^{-n} sum_k f_k e^{-2 pi i m.k/N},
/// so that multiplying F by a real even symbol of the lattice frequency and
/// inverting realizes the corresponding Fourier multiplier on the torus.
class SpectralField {
 public:
  SpectralField() = default;

  static SpectralField from_samples(const GridSpec& grid, std::vector<double> samples);
  /// Builds a field from FFT-order coefficients. The real part of the
  /// inverse transform is kept; callers supply Hermitian spectra.
  static SpectralField from_spectrum(const GridSpec& grid, std::vector<cplx> spectrum);
  static SpectralField zero(const GridSpec& grid);
  static SpectralField constant(const GridSpec& grid, double value);
  /// Samples fn at every grid point x = L*k/N - L/2 (second coordinate 0 when n == 1).
  static SpectralField sample(const GridSpec& grid, const std::function<double(std::array<double, 2>)>& fn);

  const GridSpec& grid() const;
  std::span<const double> samples() const;
  std::span<const cplx> spectrum() const;

  std::size_t size() const { return grid().size(); }
  bool empty() const { return state_ == nullptr; }

  SpectralField scaled(double factor) const;
  /// Multiplies the spectrum by symbol(flat FFT index).
  SpectralField multiplied(const std::function<double(std::size_t)>& symbol) const;

  friend SpectralField operator+(const SpectralField& a, const SpectralField& b);
  friend SpectralField operator-(const SpectralField& a, const SpectralField& b);
  /// Pointwise product of samples (aliasing folds back, as on any grid).
  friend SpectralField pointwise_product(const SpectralField& a, const SpectralField& b);

 private:
  struct State {
    GridSpec grid;
    bool has_samples = false;
    bool has_spectrum = false;
    std::once_flag samples_once;
    std::once_flag spectrum_once;
    std::vector<double> samples;
    std::vector<cplx> spectrum;
  };
  explicit SpectralField(std::shared_ptr<State> s) : state_(std::move(s)) {}

  std::shared_ptr<State> state_;
};

void require_same_grid(const SpectralField& a, const SpectralField& b);

/// max_k |a_k - b_k|
double sup_distance(const SpectralField& a, const SpectralField& b);

/// sup_distance(a, b) / max(sup|b|, tiny); the reference is b.
double relative_sup_error(const SpectralField& a, const SpectralField& b);

}  // namespace kpforge
