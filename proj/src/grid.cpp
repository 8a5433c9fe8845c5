#include "kpforge/grid.hpp"

#include <cmath>
#include <sstream>

#include "kpforge/error.hpp"

namespace kpforge {

namespace {

// Largest j with 2^j <= x (x > 0), exact for powers of two.
int floor_log2(double x) {
  int e = 0;
  double m = std::frexp(x, &e);  // x = m * 2^e, m in [0.5, 1)
  (void)m;
  return e - 1;
}

// Smallest j with 2^j >= x (x > 0).
int ceil_log2(double x) {
  int j = floor_log2(x);
  return std::ldexp(1.0, j) == x ? j : j + 1;
}

}  // namespace

bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int d = 0; d < n; ++d) s *= static_cast<std::size_t>(N);
  return s;
}

double GridSpec::cell_volume() const { return std::pow(spacing(), n); }

double GridSpec::volume() const { return std::pow(L, n); }

std::array<int, 2> GridSpec::lattice(std::size_t flat) const {
  if (n == 1) return {lattice_index(static_cast<int>(flat)), 0};
  const auto N_ = static_cast<std::size_t>(N);
  return {lattice_index(static_cast<int>(flat / N_)), lattice_index(static_cast<int>(flat % N_))};
}

std::array<double, 2> GridSpec::frequency(std::size_t flat) const {
  auto m = lattice(flat);
  return {m[0] / L, m[1] / L};
}

double GridSpec::frequency_norm(std::size_t flat) const {
  auto xi = frequency(flat);
  return std::hypot(xi[0], xi[1]);
}

int GridSpec::j_min() const { return ceil_log2(1.0 / L) - 1; }

int GridSpec::j_max() const {
  // Largest lattice radius: Nyquist per axis, times sqrt(2) on the square.
  double radius = n == 1 ? nyquist() : std::sqrt(2.0) * nyquist();
  return floor_log2(radius) + 1;
}

std::string GridSpec::describe() const {
  std::ostringstream os;
  os << "n=" << n << " N=" << N << " L=" << L;
  return os.str();
}

GridSpec make_grid(int n, int N, double L) {
  if (n != 1 && n != 2) throw ParameterError("grid dimension must be 1 or 2");
  if (!is_power_of_two(N) || N < 16) throw ParameterError("N must be a power of two >= 16");
  if (!(L > 0.0) || !std::isfinite(L)) throw ParameterError("box length L must be positive");
  return GridSpec{n, N, L};
}

GridSpec refine(const GridSpec& grid) { return make_grid(grid.n, grid.N * 2, grid.L); }

}  // namespace kpforge
