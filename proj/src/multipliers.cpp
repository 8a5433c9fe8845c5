#include "kpforge/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kpforge/bump.hpp"
#include "kpforge/error.hpp"

namespace kpforge {

SpectralField fractional_derivative(const SpectralField& f, double s) {
  if (!(s >= 0.0)) throw ParameterError("fractional derivative order must be >= 0");
  if (s == 0.0) return f;
  const GridSpec& g = f.grid();
  return f.multiplied([&](std::size_t i) {
    const double r = g.frequency_norm(i);
    return r == 0.0 ? 0.0 : std::pow(r, s);
  });
}

SpectralField lp_block(const SpectralField& f, int j) {
  const GridSpec& g = f.grid();
  const double scale = std::ldexp(1.0, -j);
  return f.multiplied([&](std::size_t i) { return bump::psi(scale * g.frequency_norm(i)); });
}

SpectralField lowpass(const SpectralField& f, int j) {
  const GridSpec& g = f.grid();
  const double scale = std::ldexp(1.0, -j);
  return f.multiplied([&](std::size_t i) { return bump::phi(scale * g.frequency_norm(i)); });
}

bool block_in_range(const GridSpec& grid, int j) { return j >= grid.j_min() && j <= grid.j_max(); }

SpectralField littlewood_paley_sum(const SpectralField& f) {
  const GridSpec& g = f.grid();
  auto F = f.spectrum();
  std::vector<cplx> acc(F.size());
  // Accumulate symbols first so the sum is one multiplier applied once.
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double r = g.frequency_norm(i);
    double sym = bump::phi(std::ldexp(r, -g.j_min()));
    for (int j = g.j_min() + 1; j <= g.j_max(); ++j) sym += bump::psi(std::ldexp(r, -j));
    acc[i] = F[i] * sym;
  }
  return SpectralField::from_spectrum(g, std::move(acc));
}

double spectral_tail(const SpectralField& f, double radius) {
  const GridSpec& g = f.grid();
  auto F = f.spectrum();
  double peak = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double a = std::abs(F[i]);
    peak = std::max(peak, a);
    if (g.frequency_norm(i) > radius) tail = std::max(tail, a);
  }
  return peak == 0.0 ? 0.0 : tail / peak;
}

bool is_half_band_limited(const SpectralField& f, double tol) {
  return spectral_tail(f, f.grid().nyquist() / 2.0) <= tol;
}

namespace {

double max_abs(std::span<const cplx> F) {
  double m = 0.0;
  for (auto c : F) m = std::max(m, std::abs(c));
  return m;
}

SpectralField dilate_up(const SpectralField& f, int j0, double tol) {
  const GridSpec& g = f.grid();
  const int lambda = 1 << j0;
  const int limit = g.N / (2 * lambda);  // need |m| < limit per axis
  auto F = f.spectrum();
  const double peak = max_abs(F);
  for (std::size_t i = 0; i < F.size(); ++i) {
    auto m = g.lattice(i);
    bool inside = std::abs(m[0]) < limit && (g.n == 1 || std::abs(m[1]) < limit);
    if (!inside && std::abs(F[i]) > tol * peak)
      throw AliasingError("dilate by 2^" + std::to_string(j0) + ": spectrum exceeds Nyquist/2^" + std::to_string(j0));
  }
  // Sample index k' reads the source at lambda*k' - (lambda-1)*N/2 (mod N).
  const long long N = g.N;
  const long long shift = static_cast<long long>(lambda - 1) * N / 2;
  auto src_index = [&](long long k) { return static_cast<std::size_t>((((lambda * k - shift) % N) + N) % N); };
  auto x = f.samples();
  std::vector<double> v(x.size());
  if (g.n == 1) {
    for (long long k = 0; k < N; ++k) v[k] = x[src_index(k)];
  } else {
    for (long long a = 0; a < N; ++a)
      for (long long b = 0; b < N; ++b) v[a * N + b] = x[src_index(a) * g.N + src_index(b)];
  }
  return SpectralField::from_samples(g, std::move(v));
}

SpectralField dilate_down(const SpectralField& f, int j0, double tol) {
  const GridSpec& g = f.grid();
  const int q = -j0;
  const int step = 1 << q;
  auto F = f.spectrum();
  const double peak = max_abs(F);
  std::vector<cplx> out(F.size(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < F.size(); ++i) {
    auto m = g.lattice(i);
    bool on_sublattice = m[0] % step == 0 && m[1] % step == 0;
    if (!on_sublattice) {
      if (std::abs(F[i]) > tol * peak)
        throw AliasingError("dilate by 2^" + std::to_string(j0) + ": field is not L/" + std::to_string(step) + "-periodic");
      continue;
    }
    const int m0 = m[0] / step;
    const int m1 = m[1] / step;
    // Array-order coefficients carry the sample-origin phase (-1)^m.
    const double sign = ((m[0] + m0 + m[1] + m1) % 2 == 0) ? 1.0 : -1.0;
    std::size_t dst = g.n == 1 ? static_cast<std::size_t>(g.fft_index(m0))
                               : static_cast<std::size_t>(g.fft_index(m0)) * g.N + g.fft_index(m1);
    out[dst] = sign * F[i];
  }
  return SpectralField::from_spectrum(g, std::move(out));
}

}  // namespace

SpectralField dilate(const SpectralField& f, int j0, double tol) {
  if (j0 == 0) return f;
  if (j0 > 0) {
    if ((1 << j0) > f.grid().N / 2) throw AliasingError("dilation factor exceeds the grid");
    return dilate_up(f, j0, tol);
  }
  if ((1 << -j0) > f.grid().N / 2) throw AliasingError("dilation factor exceeds the grid");
  return dilate_down(f, j0, tol);
}

}  // namespace kpforge
