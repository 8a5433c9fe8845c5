#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include "kpforge/fourier_coeffs.hpp"

namespace kpforge {

using Vec2 = std::array<double, 2>;  // second component unused (0) when n == 1

/// A bilinear frequency symbol sigma(xi, eta) acting as
///   B(f,g)^(zeta) = sum_{xi+eta=zeta} sigma(xi,eta) f^(xi) g^(eta).
struct SymbolSpec {
  std::string label;
  std::function<std::complex<double>(const Vec2& xi, const Vec2& eta)> eval;
  std::map<std::string, double> params;

  std::complex<double> operator()(const Vec2& xi, const Vec2& eta) const { return eval(xi, eta); }
};

double norm(const Vec2& v);

/// sigma == value
SymbolSpec constant_symbol(double value);

/// |xi+eta|^s, the symbol of D^s(fg) (zero at xi+eta = 0 for s > 0).
SymbolSpec sum_power_symbol(double s);

/// Product of two symbols, evaluated pointwise.
SymbolSpec product_symbol(const SymbolSpec& a, const SymbolSpec& b);

/// sigma_1(xi,eta) = sum_j Psi(2^{-j} xi) Phi(2^{-j+3} eta) |xi+eta|^s / |xi|^s
SymbolSpec sigma1(double s);
/// sigma_2(xi,eta) = sigma_1(eta,xi)
SymbolSpec sigma2(double s);

/// Diagonal symbol in Fourier-series form,
///   sum_k sum_m c_{s,m} e^{2 pi i 2^{-k}(xi+eta).m/16} Psi(2^{-k} xi) |2^{-k} eta|^{-s} Psi(2^{-k} eta),
/// with the m-sum truncated at the coefficient table's m_max.
SymbolSpec sigma3_series(std::shared_ptr<const FourierCoefficients> coeffs);
SymbolSpec sigma3_series(int n, double s, int m_max);

/// The same diagonal symbol with the series summed in closed form:
///   |xi+eta|^s / |eta|^s * sum_k Psi(2^{-k} xi) Psi(2^{-k} eta).
SymbolSpec sigma3_closed(double s);

/// What the third term would have to be for an exact decomposition:
///   (|xi+eta|^s - sigma_1 |xi|^s - sigma_2 |eta|^s) / |eta|^s, 0 at eta = 0.
SymbolSpec sigma3_complement(double s);

/// Pi:  sum_j Psi(2^{-j} xi) Phi(2^{-j} eta) |xi+eta|^s   (pairs k <= j)
SymbolSpec pi_symbol(double s);
/// Pi~: sum_k Psi(2^{-k} eta) Phi(2^{-k+1} xi) |xi+eta|^s (pairs j < k)
SymbolSpec pi_tilde_symbol(double s);
/// Diagonal pairs only: sum_j Psi(2^{-j} xi) Psi(2^{-j} eta) |xi+eta|^s
SymbolSpec pi_diagonal_symbol(double s);

/// Pi restricted to j <= 0, reweighted by |xi|^{-r}; acts on (D^r f, g).
SymbolSpec pi1_symbol(double s, double r);
/// Pi restricted to j > 0, reweighted by |xi|^{-t}; acts on (D^t f, g).
SymbolSpec pi2_symbol(double s, double t);

/// Point values used by several symbols.
double sigma1_value(double s, const Vec2& xi, const Vec2& eta);
double littlewood_paley_diagonal(const Vec2& xi, const Vec2& eta);

}  // namespace kpforge
