#pragma once

#include "kpforge/spectral_field.hpp"
#include "kpforge/symbols.hpp"

namespace kpforge {

/// B_sigma(f,g): for every output lattice frequency zeta,
///   B^(zeta) = sum_{xi+eta=zeta} sigma(xi,eta) f^(xi) g^(eta)
/// with xi, eta ranging over the lattice. Output frequencies outside the
/// lattice are dropped, not folded. Direct double sum, parallel over zeta.
SpectralField apply_bilinear_symbol(const SymbolSpec& sigma, const SpectralField& f, const SpectralField& g);

}  // namespace kpforge
