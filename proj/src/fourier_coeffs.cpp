#include "kpforge/fourier_coeffs.hpp"

#include <algorithm>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <map>
#include <numbers>

#include "kpforge/bump.hpp"
#include "kpforge/error.hpp"
#include "kpforge/fft.hpp"
#include "kpforge/grid.hpp"

namespace kpforge {

namespace {

constexpr double kPi = std::numbers::pi;

double zeta_neg(double x) { return boost::math::zeta(-x); }

// Generalized Euler-Maclaurin (Navot) correction for the half-line
// trapezoidal sum h * sum_{k>=1} x_k^sigma g(x_k), with g even and
//   g^{(2k)}(0) = deriv(k):
//   T_h - I = sum_k zeta(-sigma-2k) g^{(2k)}(0) h^{sigma+2k+1} / (2k)!
template <typename Deriv>
double navot_correction(double sigma, double h, Deriv deriv_over_factorial) {
  double total = 0.0;
  for (int k = 0; k < 80; ++k) {
    const double z = zeta_neg(sigma + 2 * k);
    const double term = z * deriv_over_factorial(k) * std::pow(h, sigma + 2 * k + 1);
    total += term;
    if (k >= 2 && std::abs(term) < 1e-22 * std::max(1.0, std::abs(total)) && z != 0.0) break;
    if (k >= 2 && z == 0.0 && std::abs(deriv_over_factorial(k)) * std::pow(h, sigma + 2 * k + 1) < 1e-300) break;
  }
  return total;
}

FourierCoefficients coeffs_1d(double s, int m_max, int Q) {
  std::vector<fft::cplx> buf(static_cast<std::size_t>(Q));
  const double h = 16.0 / Q;
  for (int k = 0; k < Q; ++k) {
    const double t = -8.0 + h * k;
    buf[k] = bump::phi_s(std::abs(t), s);
  }
  fft::forward(buf, buf, 1, Q);

  FourierCoefficients c;
  c.n = 1;
  c.s = s;
  c.m_max = m_max;
  c.quad_N = Q;
  c.values.resize(static_cast<std::size_t>(c.side()));
  for (int m = -m_max; m <= m_max; ++m) {
    const int idx = m >= 0 ? m : m + Q;
    // Grid starts at t = -8: e^{-2 pi i m (-8)/16} = (-1)^m.
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double trap = sign * buf[idx].real() / Q;
    // Integrand on each half line is t^s cos(omega t) / 16 (even in m).
    const double omega = 2.0 * kPi * m / 16.0;
    const double corr = navot_correction(s, h, [&](int k) {
      double v = (k % 2 == 0 ? 1.0 : -1.0) * std::pow(omega, 2 * k);
      for (int i = 2; i <= 2 * k; ++i) v /= i;
      return v;
    });
    c.values[static_cast<std::size_t>(m + m_max)] = trap - 2.0 * corr / 16.0;
  }
  return c;
}

FourierCoefficients coeffs_2d(double s, int m_max, int Q) {
  const double h = 16.0 / Q;
  const int nodes = Q / 2;  // rho_k = k h, k = 1..Q/2
  std::vector<double> radial(static_cast<std::size_t>(nodes) + 1);
  for (int k = 1; k <= nodes; ++k) {
    const double rho = k * h;
    radial[k] = std::pow(rho, s + 1.0) * bump::phi_tilde(rho);
  }
  const double prefactor = 2.0 * kPi / 256.0;
  const double sigma = s + 1.0;

  FourierCoefficients c;
  c.n = 2;
  c.s = s;
  c.m_max = m_max;
  c.quad_N = Q;
  c.values.resize(static_cast<std::size_t>(c.side()) * c.side());

  std::map<int, double> by_radius;  // |m|^2 -> coefficient
  for (int a = -m_max; a <= m_max; ++a) {
    for (int b = -m_max; b <= m_max; ++b) {
      const int r2 = a * a + b * b;
      auto it = by_radius.find(r2);
      if (it == by_radius.end()) {
        const double omega = 2.0 * kPi * std::sqrt(static_cast<double>(r2)) / 16.0;
        double trap = 0.0;
        for (int k = 1; k <= nodes; ++k)
          if (radial[k] != 0.0) trap += radial[k] * boost::math::cyl_bessel_j(0, omega * k * h);
        trap *= h;
        // J0(omega rho) = sum_k (-1)^k (omega rho / 2)^{2k} / (k!)^2
        const double corr = navot_correction(sigma, h, [&](int k) {
          double v = (k % 2 == 0 ? 1.0 : -1.0) * std::pow(omega / 2.0, 2 * k);
          for (int i = 2; i <= k; ++i) v /= static_cast<double>(i) * i;
          return v;
        });
        it = by_radius.emplace(r2, prefactor * (trap - corr)).first;
      }
      c.values[static_cast<std::size_t>(a + m_max) * c.side() + (b + m_max)] = it->second;
    }
  }
  return c;
}

}  // namespace

std::complex<double> FourierCoefficients::at(int m0, int m1) const {
  if (std::abs(m0) > m_max || std::abs(m1) > m_max) return {0.0, 0.0};
  if (n == 1) return values[static_cast<std::size_t>(m0 + m_max)];
  return values[static_cast<std::size_t>(m0 + m_max) * side() + (m1 + m_max)];
}

double FourierCoefficients::abs_sum() const {
  double acc = 0.0;
  for (auto v : values) acc += std::abs(v);
  return acc;
}

FourierCoefficients fourier_coeffs_phi_s_single(int n, double s, int m_max, int quad_N) {
  if (n != 1 && n != 2) throw ParameterError("fourier coefficients: n must be 1 or 2");
  if (!(s > 0.0)) throw ParameterError("fourier coefficients require s > 0");
  if (m_max < 0) throw ParameterError("m_max must be >= 0");
  if (!is_power_of_two(quad_N) || quad_N < 8 * std::max(m_max, 1))
    throw ParameterError("quad_N must be a power of two >= 8*m_max");
  return n == 1 ? coeffs_1d(s, m_max, quad_N) : coeffs_2d(s, m_max, quad_N);
}

FourierCoefficients fourier_coeffs_phi_s(int n, double s, int m_max, int quad_N) {
  auto coarse = fourier_coeffs_phi_s_single(n, s, m_max, quad_N);
  auto fine = fourier_coeffs_phi_s_single(n, s, m_max, 2 * quad_N);
  double change = 0.0;
  for (std::size_t i = 0; i < coarse.values.size(); ++i)
    change = std::max(change, std::abs(coarse.values[i] - fine.values[i]));
  if (change > 1e-8)
    throw ResolutionError("fourier coefficients: quadrature not converged (doubling change " + std::to_string(change) + ")");
  coarse.doubling_change = change;
  return coarse;
}

DecayFit coeff_decay_fit(const FourierCoefficients& c) {
  if (c.m_max < 64) throw ParameterError("decay fit requires m_max >= 64");
  std::vector<double> sum(static_cast<std::size_t>(c.m_max) + 1, 0.0);
  std::vector<int> count(sum.size(), 0);
  const int lo = -c.m_max;
  const int hi = c.m_max;
  for (int a = lo; a <= hi; ++a) {
    for (int b = (c.n == 1 ? 0 : lo); b <= (c.n == 1 ? 0 : hi); ++b) {
      const auto bin = static_cast<long>(std::lround(std::hypot(a, b)));
      if (bin < 8 || bin > c.m_max) continue;
      sum[bin] += std::abs(c.at(a, b));
      count[bin] += 1;
    }
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (int b = 8; b <= c.m_max; ++b) {
    if (count[b] == 0) continue;
    const double mean = sum[b] / count[b];
    if (mean <= 0.0) continue;
    xs.push_back(std::log(static_cast<double>(b)));
    ys.push_back(std::log(mean));
  }
  if (xs.size() < 2) throw ResolutionError("decay fit: coefficient tail is identically zero");
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  DecayFit fit;
  fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / k;
  fit.bins = static_cast<int>(xs.size());
  return fit;
}

std::complex<double> evaluate_series(const FourierCoefficients& c, double t0, double t1) {
  const int M = c.m_max;
  if (c.n == 1) {
    const auto z = std::polar(1.0, 2.0 * kPi * t0 / 16.0);
    std::complex<double> acc = c.values[M];
    std::complex<double> zm{1.0, 0.0};
    for (int m = 1; m <= M; ++m) {
      zm *= z;
      acc += c.values[M + m] * zm + c.values[M - m] * std::conj(zm);
    }
    return acc;
  }
  auto powers = [M](double t) {
    std::vector<std::complex<double>> p(static_cast<std::size_t>(2 * M + 1));
    const auto z = std::polar(1.0, 2.0 * kPi * t / 16.0);
    p[M] = 1.0;
    for (int m = 1; m <= M; ++m) {
      p[M + m] = p[M + m - 1] * z;
      p[M - m] = std::conj(p[M + m]);
    }
    return p;
  };
  auto p0 = powers(t0);
  auto p1 = powers(t1);
  std::complex<double> acc{0.0, 0.0};
  for (int a = 0; a < c.side(); ++a) {
    std::complex<double> row{0.0, 0.0};
    for (int b = 0; b < c.side(); ++b) row += c.values[static_cast<std::size_t>(a) * c.side() + b] * p1[b];
    acc += row * p0[a];
  }
  return acc;
}

}  // namespace kpforge
