#include "kpforge/bilinear.hpp"

#include "kpforge/parallel.hpp"

namespace kpforge {

namespace {

struct Entry {
  std::array<int, 2> m;
  Vec2 xi;
  cplx value;
};

}  // namespace

SpectralField apply_bilinear_symbol(const SymbolSpec& sigma, const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  const GridSpec& grid = f.grid();
  auto F = f.spectrum();
  auto G = g.spectrum();

  std::vector<Entry> support;
  for (std::size_t i = 0; i < F.size(); ++i)
    if (F[i] != cplx{0.0, 0.0}) support.push_back({grid.lattice(i), grid.frequency(i), F[i]});

  const int half = grid.N / 2;
  auto in_lattice = [half](int m) { return m >= -half && m < half; };
  auto flat_index = [&](int m0, int m1) -> std::size_t {
    if (grid.n == 1) return static_cast<std::size_t>(grid.fft_index(m0));
    return static_cast<std::size_t>(grid.fft_index(m0)) * static_cast<std::size_t>(grid.N) +
           static_cast<std::size_t>(grid.fft_index(m1));
  };

  std::vector<cplx> out(F.size());
  parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t z = begin; z < end; ++z) {
      const auto mz = grid.lattice(z);
      cplx acc{0.0, 0.0};
      for (const auto& e : support) {
        const int a = mz[0] - e.m[0];
        const int b = mz[1] - e.m[1];
        if (!in_lattice(a) || (grid.n == 2 && !in_lattice(b))) continue;
        const cplx gv = G[flat_index(a, b)];
        if (gv == cplx{0.0, 0.0}) continue;
        const Vec2 eta{a / grid.L, b / grid.L};
        acc += sigma(e.xi, eta) * e.value * gv;
      }
      out[z] = acc;
    }
  });
  return SpectralField::from_spectrum(grid, std::move(out));
}

}  // namespace kpforge
