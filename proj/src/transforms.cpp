#include "kpforge/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "kpforge/fft.hpp"

namespace kpforge {

namespace {

int signed_index(int i, int M) { return i < M / 2 ? i : i - M; }

}  // namespace

std::vector<double> even_transform_1d(const std::function<double(double)>& h, double dxi, int M) {
  std::vector<fft::cplx> buf(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) buf[i] = h(std::abs(signed_index(i, M) * dxi));
  fft::inverse(buf, buf, 1, M);
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real() * dxi;
  return out;
}

std::vector<double> radial_transform_2d(const std::function<double(double)>& h, double dxi, int M) {
  const auto M_ = static_cast<std::size_t>(M);
  std::vector<fft::cplx> buf(M_ * M_);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      buf[a * M_ + b] = h(std::hypot(signed_index(a, M) * dxi, signed_index(b, M) * dxi));
  fft::inverse(buf, buf, 2, M);
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real() * dxi * dxi;
  return out;
}

CubicTable::CubicTable(std::vector<double> values, double x0, double dx) : values_(std::move(values)), x0_(x0), dx_(dx) {
  if (values_.size() < 4) throw std::invalid_argument("CubicTable needs at least 4 nodes");
}

double CubicTable::operator()(double x) const {
  const double u = (x - x0_) / dx_;
  if (!(u >= 0.0) || u > static_cast<double>(values_.size() - 1)) return 0.0;
  auto i = static_cast<long>(std::floor(u));
  const long last = static_cast<long>(values_.size()) - 1;
  if (i >= last) i = last - 1;
  const double t = u - static_cast<double>(i);
  auto at = [&](long k) { return values_[static_cast<std::size_t>(std::clamp(k, 0L, last))]; };
  const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
  return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + t * (3.0 * (p1 - p2) + p3 - p0)));
}

double CubicTable::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double CubicTable::l1() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double w = (i == 0 || i + 1 == values_.size()) ? 0.5 : 1.0;
    acc += w * std::abs(values_[i]);
  }
  return acc * dx_;
}

CubicTable centered_table(const std::vector<double>& fft_order, double dx) {
  const int M = static_cast<int>(fft_order.size());
  std::vector<double> v(fft_order.size());
  for (int i = 0; i < M; ++i) v[static_cast<std::size_t>(signed_index(i, M) + M / 2)] = fft_order[static_cast<std::size_t>(i)];
  return CubicTable(std::move(v), -(M / 2) * dx, dx);
}

}  // namespace kpforge
