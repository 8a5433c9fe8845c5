#include "kpforge/norms.hpp"

#include <algorithm>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <sstream>

#include "kpforge/bump.hpp"
#include "kpforge/error.hpp"
#include "kpforge/multipliers.hpp"
#include "kpforge/parallel.hpp"
#include "kpforge/transforms.hpp"

namespace kpforge {

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::Lp: return "lp";
    case NormKind::Sup: return "sup";
    case NormKind::Besov: return "besov";
    case NormKind::Bmo: return "bmo";
    case NormKind::WeakL1: return "weakL1";
  }
  return "unknown";
}

namespace {

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

NormValue sup_norm(const SpectralField& f) { return {max_abs(f.samples()), NormKind::Sup, f.grid(), ""}; }

NormValue lp_norm(const SpectralField& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("lp_norm requires 1 <= p < inf");
  auto x = f.samples();
  // Scale by the maximum first so large p does not overflow.
  const double peak = max_abs(x);
  double value = 0.0;
  if (peak > 0.0) {
    double acc = 0.0;
    for (double v : x) acc += std::pow(std::abs(v) / peak, p);
    value = peak * std::pow(acc * f.grid().cell_volume(), 1.0 / p);
  }
  std::ostringstream os;
  os << "p=" << p;
  return {value, NormKind::Lp, f.grid(), os.str()};
}

NormValue besov_norm(const SpectralField& f) {
  const GridSpec& g = f.grid();
  double best = 0.0;
  for (int j = g.j_min(); j <= g.j_max(); ++j) best = std::max(best, max_abs(lp_block(f, j).samples()));
  std::ostringstream os;
  os << "j=[" << g.j_min() << "," << g.j_max() << "]";
  return {best, NormKind::Besov, g, os.str()};
}

NormValue bmo_norm(const SpectralField& f, int max_depth) {
  const GridSpec& g = f.grid();
  if (max_depth < 0) throw ParameterError("bmo depth must be >= 0");
  if ((1LL << max_depth) > g.N) throw ParameterError("bmo depth exceeds grid resolution");
  auto x = f.samples();
  const auto N = static_cast<std::size_t>(g.N);
  double best = 0.0;
  for (int k = 0; k <= max_depth; ++k) {
    const std::size_t cells = std::size_t{1} << k;
    const std::size_t side = N / cells;
    std::vector<std::size_t> members;
    for (std::size_t ca = 0; ca < cells; ++ca) {
      for (std::size_t cb = 0; cb < (g.n == 1 ? 1 : cells); ++cb) {
        members.clear();
        if (g.n == 1) {
          for (std::size_t i = 0; i < side; ++i) members.push_back(ca * side + i);
        } else {
          for (std::size_t a = 0; a < side; ++a)
            for (std::size_t b = 0; b < side; ++b) members.push_back((ca * side + a) * N + cb * side + b);
        }
        double mean = 0.0;
        for (auto i : members) mean += x[i];
        mean /= static_cast<double>(members.size());
        double osc = 0.0;
        for (auto i : members) osc += std::abs(x[i] - mean);
        best = std::max(best, osc / static_cast<double>(members.size()));
      }
    }
  }
  return {best, NormKind::Bmo, g, "depth=" + std::to_string(max_depth)};
}

NormValue weak_l1(const SpectralField& f) {
  auto x = f.samples();
  std::vector<double> a(x.size());
  std::transform(x.begin(), x.end(), a.begin(), [](double v) { return std::abs(v); });
  std::sort(a.begin(), a.end(), std::greater<>());
  const double cell = f.grid().cell_volume();
  double best = 0.0;
  // lambda just below a level counts every sample at or above it; after the
  // descending sort those are the ones up to the level's last occurrence.
  for (std::size_t i = 0; i < a.size();) {
    const double level = a[i];
    while (i < a.size() && a[i] == level) ++i;
    best = std::max(best, level * cell * static_cast<double>(i));
  }
  return {best, NormKind::WeakL1, f.grid(), "levels=samples"};
}

namespace {

double compute_psi_hat_l1(int n) {
  const auto psi = [](double r) { return bump::psi(r); };
  if (n == 1) {
    // dxi = 1/128 covers |x| < 64; M*dxi = 1024 gives x spacing 1/1024.
    const double dxi = 1.0 / 128;
    const int M = 1 << 17;
    auto t = even_transform_1d(psi, dxi, M);
    double acc = 0.0;
    for (double v : t) acc += std::abs(v);
    return acc / (M * dxi);
  }
  // Radial: Psi^(r) = 2 pi int Psi(rho) rho J0(2 pi rho r) drho by the
  // trapezoid rule in rho (Psi is smooth and compactly supported), then
  // |Psi^(r)| 2 pi r summed on a fine r grid over the disc r < 32.
  const double drho = 1.0 / 512;
  std::vector<double> rho, w;
  for (int k = 1; k * drho < 2.0; ++k) {
    const double p = k * drho;
    if (const double v = psi(p); v != 0.0) {
      rho.push_back(p);
      w.push_back(2 * std::numbers::pi * v * p * drho);
    }
  }
  const double dr = 1.0 / 512, R = 32.0;
  const auto count = static_cast<std::size_t>(R / dr);
  std::vector<double> dens(count + 1);
  parallel_for(count + 1, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double r = static_cast<double>(i) * dr;
      double v = 0.0;
      for (std::size_t q = 0; q < rho.size(); ++q)
        v += w[q] * boost::math::cyl_bessel_j(0, 2 * std::numbers::pi * rho[q] * r);
      dens[i] = std::abs(v) * 2 * std::numbers::pi * r;
    }
  });
  double acc = 0.5 * (dens.front() + dens.back());
  for (std::size_t i = 1; i < count; ++i) acc += dens[i];
  return acc * dr;
}

}  // namespace

double psi_hat_l1(int n) {
  if (n != 1 && n != 2) throw ParameterError("psi_hat_l1: n must be 1 or 2");
  static std::once_flag once[2];
  static double value[2];
  std::call_once(once[n - 1], [n] { value[n - 1] = compute_psi_hat_l1(n); });
  return value[n - 1];
}

}  // namespace kpforge
