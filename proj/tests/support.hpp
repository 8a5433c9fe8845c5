#pragma once

#include <cmath>
#include <numbers>

#include "kpforge/rng.hpp"
#include "kpforge/spectral_field.hpp"

namespace kpforge::testing {

inline constexpr double kPi = std::numbers::pi;

inline SpectralField trig(const GridSpec& grid, double k, double phase, bool cosine = false) {
  return SpectralField::sample(grid, [=](std::array<double, 2> x) {
    const double a = 2 * kPi * k * x[0] + phase;
    return cosine ? std::cos(a) : std::sin(a);
  });
}

/// Random band-limited field: coefficients on |m| <= m_cap with decaying
/// amplitudes, Hermitian by construction.
inline SpectralField random_band_limited(const GridSpec& grid, int m_cap, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> x(grid.size(), 0.0);
  const int cap = grid.n == 1 ? 0 : m_cap;
  for (int a = -m_cap; a <= m_cap; ++a) {
    for (int b = -cap; b <= cap; ++b) {
      const double amp = rng.normal() / (1.0 + a * a + b * b);
      const double ph = rng.uniform(0.0, 2 * kPi);
      for (int i = 0; i < grid.N; ++i) {
        for (int j = 0; j < (grid.n == 1 ? 1 : grid.N); ++j) {
          const double arg = 2 * kPi * (a * i + b * j) / grid.N + ph;
          x[static_cast<std::size_t>(i) * (grid.n == 1 ? 1 : grid.N) + j] += amp * std::cos(arg);
        }
      }
    }
  }
  return SpectralField::from_samples(grid, std::move(x));
}

}  // namespace kpforge::testing
