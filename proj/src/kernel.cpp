#include "kpforge/kernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "kpforge/bump.hpp"
#include "kpforge/error.hpp"
#include "kpforge/parallel.hpp"

namespace kpforge {

namespace {

// Frequency step 1/128 keeps the transform period (128) well clear of the
// table range; 64 samples per unit resolves the band |xi| <= 2.
constexpr double kTableDxi = 1.0 / 128;
constexpr int kSamplesPerUnit = 64;

CubicTable tabulate(const std::function<double(double)>& h, double range) {
  const int M = kSamplesPerUnit * static_cast<int>(std::lround(1.0 / kTableDxi));
  if (range > 0.5 / kTableDxi * 0.75) throw ResolutionError("kernel table range exceeds the transform period");
  auto values = even_transform_1d(h, kTableDxi, M);
  const double dx = 1.0 / (M * kTableDxi);
  auto full = centered_table(values, dx);
  // Trim to the requested range (plus a margin for the interpolation stencil).
  const int keep = static_cast<int>(std::ceil(range / dx)) + 2;
  std::vector<double> trimmed(static_cast<std::size_t>(2 * keep + 1));
  for (int k = -keep; k <= keep; ++k) trimmed[static_cast<std::size_t>(k + keep)] = full(k * dx);
  return CubicTable(std::move(trimmed), -keep * dx, dx);
}

}  // namespace

K1Kernel::K1Kernel(double s, double r, int j_depth, int m_max, double range)
    : s_(s), r_(r), j_depth_(j_depth) {
  if (!(r >= 0.0 && s > r)) throw ParameterError("kernel requires s > r >= 0");
  if (j_depth < 0 || m_max < 0) throw ParameterError("kernel truncations must be >= 0");
  range_ = std::max(range, m_max / 16.0 + 1.0);
  const auto quad_N = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max(16 * m_max, 64))));
  coeffs_ = std::make_shared<const FourierCoefficients>(fourier_coeffs_phi_s(1, s, m_max, quad_N));
  psi_hat_ = tabulate([r](double xi) { return bump::psi_weighted(xi, -r); }, range_);
  phi_hat_ = tabulate([](double xi) { return bump::phi(xi); }, range_);
}

std::complex<double> K1Kernel::operator()(double y, double z) const {
  const int M = coeffs_->m_max;
  std::complex<double> acc{0.0, 0.0};
  for (int j = -j_depth_; j <= 0; ++j) {
    const double lam = std::ldexp(1.0, j);
    const double weight = std::pow(lam, s_ - r_) * lam * lam;
    std::complex<double> level{0.0, 0.0};
    for (int m = -M; m <= M; ++m) level += coeffs_->at(m) * psi_hat_(m / 16.0 + lam * y) * phi_hat_(m / 16.0 + lam * z);
    acc += weight * level;
  }
  return acc;
}

double K1Kernel::tail_bound() const {
  const double d = s_ - r_;
  return std::exp2(-j_depth_ * d) / (1.0 - std::exp2(-d)) * coeffs_->abs_sum() * psi_hat_.max_abs() * phi_hat_.max_abs();
}

double K1Kernel::magnitude_bound() const {
  const double d = s_ - r_;
  return 1.0 / (1.0 - std::exp2(-d)) * coeffs_->abs_sum() * psi_hat_.max_abs() * phi_hat_.max_abs();
}

std::complex<double> kernel_K1(double y, double z, double s, double r, int j_depth, int m_max) {
  const double need = std::max(std::abs(y), std::abs(z)) + m_max / 16.0 + 1.0;
  return K1Kernel(s, r, j_depth, m_max, need)(y, z);
}

SpectralField apply_pi1_kernel(const K1Kernel& kernel, const SpectralField& fr, const SpectralField& g) {
  require_same_grid(fr, g);
  const GridSpec& grid = fr.grid();
  if (grid.n != 1) throw ParameterError("kernel application is implemented for n = 1");
  if (kernel.range() < kernel.m_max() / 16.0 + 2.0 * grid.L)
    throw ResolutionError("kernel tables do not cover m_max/16 + 2L");

  const int N = grid.N;
  const double h = grid.spacing();
  auto F = fr.samples();
  auto G = g.samples();
  const auto& c = kernel.coefficients();
  const int M = c.m_max;

  // Each (j, m) term: out(x_a) += w c_m [sum_b A(x_a - x_b) F_b h] [sum_b B(x_a - x_b) G_b h].
  // Differences x_a - x_b = (a - b) h take 2N - 1 values.
  struct Term {
    int j;
    int m;
  };
  std::vector<Term> terms;
  for (int j = -kernel.j_depth(); j <= 0; ++j)
    for (int m = -M; m <= M; ++m)
      if (c.at(m) != std::complex<double>{0.0, 0.0}) terms.push_back({j, m});

  // A fixed chunking keeps the summation order independent of the thread count.
  const std::size_t chunks = std::min<std::size_t>(32, terms.size());
  std::vector<std::vector<std::complex<double>>> partial(chunks, std::vector<std::complex<double>>(N));
  const std::size_t chunk = chunks == 0 ? 0 : (terms.size() + chunks - 1) / chunks;
  parallel_for(chunks, [&](std::size_t wb, std::size_t we) {
    std::vector<double> A(2 * N - 1), B(2 * N - 1);
    for (std::size_t w = wb; w < we; ++w) {
      auto& out = partial[w];
      const std::size_t t_end = std::min(terms.size(), (w + 1) * chunk);
      for (std::size_t t = w * chunk; t < t_end; ++t) {
        const double lam = std::ldexp(1.0, terms[t].j);
        const double shift = terms[t].m / 16.0;
        for (int d = -(N - 1); d <= N - 1; ++d) {
          A[d + N - 1] = kernel.psi_hat()(shift + lam * d * h);
          B[d + N - 1] = kernel.phi_hat()(shift + lam * d * h);
        }
        const double weight = std::pow(lam, kernel.s() - kernel.r()) * lam * lam * h * h;
        const std::complex<double> cw = c.at(terms[t].m) * weight;
        for (int a = 0; a < N; ++a) {
          double sf = 0.0;
          double sg = 0.0;
          const double* Arow = &A[a + N - 1];
          const double* Brow = &B[a + N - 1];
          for (int b = 0; b < N; ++b) {
            sf += Arow[-b] * F[b];
            sg += Brow[-b] * G[b];
          }
          out[a] += cw * (sf * sg);
        }
      }
    }
  });

  std::vector<double> samples(static_cast<std::size_t>(N), 0.0);
  for (const auto& p : partial)
    for (int a = 0; a < N; ++a) samples[a] += p[a].real();
  return SpectralField::from_samples(grid, std::move(samples));
}

}  // namespace kpforge
