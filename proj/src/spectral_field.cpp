#include "kpforge/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kpforge/error.hpp"
#include "kpforge/fft.hpp"

namespace kpforge {

SpectralField SpectralField::from_samples(const GridSpec& grid, std::vector<double> samples) {
  if (samples.size() != grid.size()) throw ParameterError("sample count does not match grid");
  auto s = std::make_shared<State>();
  s->grid = grid;
  s->samples = std::move(samples);
  s->has_samples = true;
  return SpectralField(std::move(s));
}

SpectralField SpectralField::from_spectrum(const GridSpec& grid, std::vector<cplx> spectrum) {
  if (spectrum.size() != grid.size()) throw ParameterError("spectrum size does not match grid");
  auto s = std::make_shared<State>();
  s->grid = grid;
  s->spectrum = std::move(spectrum);
  s->has_spectrum = true;
  return SpectralField(std::move(s));
}

SpectralField SpectralField::zero(const GridSpec& grid) { return constant(grid, 0.0); }

SpectralField SpectralField::constant(const GridSpec& grid, double value) {
  return from_samples(grid, std::vector<double>(grid.size(), value));
}

SpectralField SpectralField::sample(const GridSpec& grid, const std::function<double(std::array<double, 2>)>& fn) {
  std::vector<double> v(grid.size());
  if (grid.n == 1) {
    for (int k = 0; k < grid.N; ++k) v[k] = fn({grid.coordinate(k), 0.0});
  } else {
    for (int a = 0; a < grid.N; ++a)
      for (int b = 0; b < grid.N; ++b)
        v[static_cast<std::size_t>(a) * grid.N + b] = fn({grid.coordinate(a), grid.coordinate(b)});
  }
  return from_samples(grid, std::move(v));
}

const GridSpec& SpectralField::grid() const {
  if (!state_) throw std::logic_error("empty SpectralField");
  return state_->grid;
}

std::span<const double> SpectralField::samples() const {
  State& s = *state_;
  std::call_once(s.samples_once, [&s] {
    if (s.has_samples) return;
    std::vector<cplx> tmp(s.spectrum.size());
    fft::inverse(s.spectrum, tmp, s.grid.n, s.grid.N);
    s.samples.resize(tmp.size());
    std::transform(tmp.begin(), tmp.end(), s.samples.begin(), [](cplx c) { return c.real(); });
  });
  return s.samples;
}

std::span<const cplx> SpectralField::spectrum() const {
  State& s = *state_;
  std::call_once(s.spectrum_once, [&s] {
    if (s.has_spectrum) return;
    std::vector<cplx> tmp(s.samples.begin(), s.samples.end());
    fft::forward(tmp, tmp, s.grid.n, s.grid.N);
    const double norm = 1.0 / static_cast<double>(tmp.size());
    for (auto& c : tmp) c *= norm;
    s.spectrum = std::move(tmp);
  });
  return s.spectrum;
}

SpectralField SpectralField::scaled(double factor) const {
  auto x = samples();
  std::vector<double> v(x.begin(), x.end());
  for (auto& e : v) e *= factor;
  return from_samples(grid(), std::move(v));
}

SpectralField SpectralField::multiplied(const std::function<double(std::size_t)>& symbol) const {
  auto F = spectrum();
  std::vector<cplx> out(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) out[i] = F[i] * symbol(i);
  return from_spectrum(grid(), std::move(out));
}

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw GridMismatch("fields live on different grids: " + a.grid().describe() + " vs " + b.grid().describe());
}

namespace {

template <typename Op>
SpectralField combine(const SpectralField& a, const SpectralField& b, Op op) {
  require_same_grid(a, b);
  auto x = a.samples();
  auto y = b.samples();
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(x[i], y[i]);
  return SpectralField::from_samples(a.grid(), std::move(v));
}

}  // namespace

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  return combine(a, b, [](double u, double v) { return u + v; });
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  return combine(a, b, [](double u, double v) { return u - v; });
}

SpectralField pointwise_product(const SpectralField& a, const SpectralField& b) {
  return combine(a, b, [](double u, double v) { return u * v; });
}

double sup_distance(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  auto x = a.samples();
  auto y = b.samples();
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double relative_sup_error(const SpectralField& a, const SpectralField& b) {
  double ref = 0.0;
  for (double v : b.samples()) ref = std::max(ref, std::abs(v));
  return sup_distance(a, b) / std::max(ref, std::numeric_limits<double>::min());
}

}  // namespace kpforge
