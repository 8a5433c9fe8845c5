#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace kpforge {

/// Discrete torus [-L/2, L/2)^n sampled with N points per axis.
///
/// Sample k (per axis) sits at x = L*k/N - L/2. The frequency lattice is
/// { m/L : -N/2 <= m_i < N/2 } under the e^{2 pi i xi.x} convention. Spectra
/// are stored in FFT order: array index i holds lattice index m = i for
/// i < N/2 and m = i - N otherwise.
struct GridSpec {
  int n = 1;
  int N = 0;
  double L = 0.0;

  std::size_t size() const;  // N^n
  double spacing() const { return L / N; }
  double cell_volume() const;  // (L/N)^n
  double volume() const;       // L^n
  double nyquist() const { return N / (2.0 * L); }

  /// Physical coordinate of per-axis sample index k.
  double coordinate(int k) const { return L * k / N - L / 2; }
  /// Signed lattice index of per-axis FFT-order index i.
  int lattice_index(int i) const { return i < N / 2 ? i : i - N; }
  /// FFT-order index of a signed lattice index m in [-N/2, N/2).
  int fft_index(int m) const { return m >= 0 ? m : m + N; }

  /// Frequency vector (m/L) for flat FFT-order index `flat`; unused
  /// components are zero when n == 1.
  std::array<double, 2> frequency(std::size_t flat) const;
  std::array<int, 2> lattice(std::size_t flat) const;
  double frequency_norm(std::size_t flat) const;

  /// Lowest and highest j for which the dyadic annulus
  /// {2^{j-1} <= |xi| <= 2^{j+1}} can meet the nonzero lattice.
  int j_min() const;
  int j_max() const;

  bool operator==(const GridSpec&) const = default;
  std::string describe() const;
};

/// Validates and builds a grid: n in {1,2}, N a power of two >= 16, L > 0.
GridSpec make_grid(int n, int N, double L);

/// Same grid with the per-axis sample count doubled.
GridSpec refine(const GridSpec& grid);

bool is_power_of_two(long long v);

}  // namespace kpforge
