#pragma once

#include <complex>
#include <span>

namespace kpforge::fft {

using cplx = std::complex<double>;

/// Unnormalized transforms over an n-dimensional N^n array (row-major).
///   forward:  out[m] = sum_k in[k] e^{-2 pi i m.k / N}
///   inverse:  out[k] = sum_m in[m] e^{+2 pi i m.k / N}
/// Plans are cached per (n, N, direction); execution is thread-safe.
void forward(std::span<const cplx> in, std::span<cplx> out, int n, int N);
void inverse(std::span<const cplx> in, std::span<cplx> out, int n, int N);

}  // namespace kpforge::fft
