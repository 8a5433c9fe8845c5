#include "kpforge/bump.hpp"

#include <cmath>

namespace kpforge::bump {

namespace {

double chi(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double profile(double rho) {
  if (rho <= 1.0) return 1.0;
  if (rho >= 2.0) return 0.0;
  const double a = chi(2.0 - rho);
  const double b = chi(rho - 1.0);
  return a / (a + b);
}

double psi_weighted(double radius, double power) {
  const double p = psi(radius);
  return p == 0.0 ? 0.0 : std::pow(radius, power) * p;
}

double phi_s(double radius, double s) {
  if (radius == 0.0) return s == 0.0 ? 1.0 : 0.0;
  return std::pow(radius, s) * phi_tilde(radius);
}

double radius(std::span<const double> xi) {
  if (xi.size() == 1) return std::abs(xi[0]);
  double acc = 0.0;
  for (double v : xi) acc += v * v;
  return std::sqrt(acc);
}

}  // namespace kpforge::bump
