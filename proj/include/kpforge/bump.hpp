#pragma once

#include <span>

namespace kpforge {

/// The fixed Littlewood-Paley bump pair, as functions of the radius |xi|.
///
/// Phi(xi) = eta(|xi|) with eta = 1 on [0,1], 0 on [2,inf) and on (1,2)
///   eta(rho) = chi(2-rho) / (chi(2-rho) + chi(rho-1)),  chi(x) = exp(-1/x) for x > 0.
/// Psi(xi) = Phi(xi) - Phi(2 xi) lives on 1/2 <= |xi| <= 2.
namespace bump {

double profile(double rho);

inline double phi(double radius) { return profile(radius); }
inline double psi(double radius) { return profile(radius) - profile(2.0 * radius); }
/// Phi~(xi) = Phi(xi/4): equal to 1 on |xi| <= 4.
inline double phi_tilde(double radius) { return profile(radius / 4.0); }

/// |xi|^power * Psi(xi); power = -r gives Psi_(-r). Zero at the origin.
double psi_weighted(double radius, double power);
/// Phi_(s)(xi) = |xi|^s Phi~(xi) (zero at the origin for s > 0).
double phi_s(double radius, double s);

double radius(std::span<const double> xi);

}  // namespace bump
}  // namespace kpforge
