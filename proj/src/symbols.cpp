#include "kpforge/symbols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "kpforge/bump.hpp"
#include "kpforge/error.hpp"

namespace kpforge {

namespace {

using cplx = std::complex<double>;

Vec2 sum(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }

double power_or_zero(double radius, double s) {
  if (radius == 0.0) return s == 0.0 ? 1.0 : 0.0;
  return std::pow(radius, s);
}

// Psi(2^{-j} rho) can be nonzero only for j = ilogb(rho) and ilogb(rho) + 1.
template <typename Fn>
void for_live_scales(double rho, Fn&& fn) {
  if (rho == 0.0 || !std::isfinite(rho)) return;
  const int j0 = std::ilogb(rho);
  for (int j = j0; j <= j0 + 1; ++j) {
    const double p = bump::psi(std::ldexp(rho, -j));
    if (p != 0.0) fn(j, p);
  }
}

void require_positive(double s, const char* what) {
  if (!(s > 0.0)) throw ParameterError(std::string(what) + " requires s > 0");
}

}  // namespace

double norm(const Vec2& v) { return std::hypot(v[0], v[1]); }

double sigma1_value(double s, const Vec2& xi, const Vec2& eta) {
  const double rx = norm(xi);
  const double re = norm(eta);
  double acc = 0.0;
  for_live_scales(rx, [&](int j, double p) { acc += p * bump::phi(std::ldexp(re, 3 - j)); });
  if (acc == 0.0) return 0.0;
  return acc * std::pow(norm(sum(xi, eta)) / rx, s);
}

double littlewood_paley_diagonal(const Vec2& xi, const Vec2& eta) {
  const double re = norm(eta);
  double acc = 0.0;
  for_live_scales(norm(xi), [&](int k, double p) { acc += p * bump::psi(std::ldexp(re, -k)); });
  return acc;
}

SymbolSpec constant_symbol(double value) {
  return {"constant", [value](const Vec2&, const Vec2&) { return cplx{value, 0.0}; }, {{"value", value}}};
}

SymbolSpec sum_power_symbol(double s) {
  return {"sum_power", [s](const Vec2& xi, const Vec2& eta) { return cplx{power_or_zero(norm(sum(xi, eta)), s), 0.0}; },
          {{"s", s}}};
}

SymbolSpec product_symbol(const SymbolSpec& a, const SymbolSpec& b) {
  auto params = a.params;
  params.insert(b.params.begin(), b.params.end());
  return {a.label + "*" + b.label, [a, b](const Vec2& xi, const Vec2& eta) { return a(xi, eta) * b(xi, eta); },
          params};
}

SymbolSpec sigma1(double s) {
  require_positive(s, "sigma1");
  return {"sigma1", [s](const Vec2& xi, const Vec2& eta) { return cplx{sigma1_value(s, xi, eta), 0.0}; }, {{"s", s}}};
}

SymbolSpec sigma2(double s) {
  require_positive(s, "sigma2");
  return {"sigma2", [s](const Vec2& xi, const Vec2& eta) { return cplx{sigma1_value(s, eta, xi), 0.0}; }, {{"s", s}}};
}

SymbolSpec sigma3_series(std::shared_ptr<const FourierCoefficients> coeffs) {
  if (!coeffs) throw ParameterError("sigma3_series needs a coefficient table");
  const double s = coeffs->s;
  SymbolSpec spec;
  spec.label = "sigma3_series";
  spec.params = {{"s", s}, {"m_max", static_cast<double>(coeffs->m_max)}};
  spec.eval = [coeffs, s](const Vec2& xi, const Vec2& eta) {
    const double re = norm(eta);
    if (re == 0.0) return cplx{0.0, 0.0};
    const Vec2 z = sum(xi, eta);
    cplx acc{0.0, 0.0};
    for_live_scales(norm(xi), [&](int k, double p) {
      const double q = bump::psi_weighted(std::ldexp(re, -k), -s);
      if (q == 0.0) return;
      acc += p * q * evaluate_series(*coeffs, std::ldexp(z[0], -k), std::ldexp(z[1], -k));
    });
    return acc;
  };
  return spec;
}

SymbolSpec sigma3_series(int n, double s, int m_max) {
  require_positive(s, "sigma3_series");
  const auto quad_N = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max(16 * m_max, 64))));
  auto c = std::make_shared<const FourierCoefficients>(fourier_coeffs_phi_s(n, s, m_max, quad_N));
  return sigma3_series(c);
}

SymbolSpec sigma3_closed(double s) {
  require_positive(s, "sigma3_closed");
  return {"sigma3_closed",
          [s](const Vec2& xi, const Vec2& eta) {
            const double d = littlewood_paley_diagonal(xi, eta);
            if (d == 0.0) return cplx{0.0, 0.0};
            return cplx{d * std::pow(norm(sum(xi, eta)) / norm(eta), s), 0.0};
          },
          {{"s", s}}};
}

SymbolSpec sigma3_complement(double s) {
  require_positive(s, "sigma3_complement");
  return {"sigma3_complement",
          [s](const Vec2& xi, const Vec2& eta) {
            const double re = norm(eta);
            if (re == 0.0) return cplx{0.0, 0.0};
            const double rx = norm(xi);
            const double whole = power_or_zero(norm(sum(xi, eta)), s);
            const double t1 = rx == 0.0 ? 0.0 : sigma1_value(s, xi, eta) * std::pow(rx, s);
            const double t2 = sigma1_value(s, eta, xi) * std::pow(re, s);
            return cplx{(whole - t1 - t2) / std::pow(re, s), 0.0};
          },
          {{"s", s}}};
}

SymbolSpec pi_symbol(double s) {
  return {"pi",
          [s](const Vec2& xi, const Vec2& eta) {
            const double re = norm(eta);
            double acc = 0.0;
            for_live_scales(norm(xi), [&](int j, double p) { acc += p * bump::phi(std::ldexp(re, -j)); });
            return cplx{acc == 0.0 ? 0.0 : acc * power_or_zero(norm(sum(xi, eta)), s), 0.0};
          },
          {{"s", s}}};
}

SymbolSpec pi_tilde_symbol(double s) {
  return {"pi_tilde",
          [s](const Vec2& xi, const Vec2& eta) {
            const double rx = norm(xi);
            double acc = 0.0;
            for_live_scales(norm(eta), [&](int k, double p) { acc += p * bump::phi(std::ldexp(rx, 1 - k)); });
            return cplx{acc == 0.0 ? 0.0 : acc * power_or_zero(norm(sum(xi, eta)), s), 0.0};
          },
          {{"s", s}}};
}

SymbolSpec pi_diagonal_symbol(double s) {
  return {"pi_diagonal",
          [s](const Vec2& xi, const Vec2& eta) {
            const double d = littlewood_paley_diagonal(xi, eta);
            return cplx{d == 0.0 ? 0.0 : d * power_or_zero(norm(sum(xi, eta)), s), 0.0};
          },
          {{"s", s}}};
}

namespace {

SymbolSpec pi_part(const char* label, double s, double weight, bool low) {
  return {label,
          [s, weight, low](const Vec2& xi, const Vec2& eta) {
            const double rx = norm(xi);
            const double re = norm(eta);
            double acc = 0.0;
            for_live_scales(rx, [&](int j, double p) {
              if ((j <= 0) == low) acc += p * bump::phi(std::ldexp(re, -j));
            });
            if (acc == 0.0) return cplx{0.0, 0.0};
            return cplx{acc * power_or_zero(norm(sum(xi, eta)), s) / std::pow(rx, weight), 0.0};
          },
          {{"s", s}, {low ? "r" : "t", weight}}};
}

}  // namespace

SymbolSpec pi1_symbol(double s, double r) { return pi_part("pi1", s, r, true); }

SymbolSpec pi2_symbol(double s, double t) { return pi_part("pi2", s, t, false); }

}  // namespace kpforge
