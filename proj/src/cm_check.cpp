#include "kpforge/cm_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "json.hpp"
#include "kpforge/error.hpp"
#include "kpforge/parallel.hpp"

namespace kpforge {

namespace {

constexpr int kMaxHalfWidth = 5;
constexpr int kSide = 2 * kMaxHalfWidth + 1;

int half_width(int d) {
  if (d == 0) return 0;
  if (d <= 2) return 3;
  if (d <= 4) return 4;
  return 5;
}

// Fornberg's recursion for weights of the d-th derivative at 0 on the nodes x.
std::vector<double> fornberg(const std::vector<double>& x, int d) {
  const int np = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(np, std::vector<double>(d + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i < np; ++i) {
    const int mn = std::min(i, d);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(np);
  for (int i = 0; i < np; ++i) w[i] = c[i][d];
  return w;
}

struct MultiIndex {
  std::vector<int> alpha;
  std::vector<int> beta;
  std::vector<int> orders;  // per variable: xi components then eta components
  int total = 0;
};

std::vector<MultiIndex> multi_indices(int n, int max_order) {
  std::vector<MultiIndex> out;
  const int vars = 2 * n;
  std::vector<int> o(vars, 0);
  // Odometer over all order vectors with entries <= max_order, keeping |o| <= max_order.
  while (true) {
    int total = 0;
    for (int v : o) total += v;
    if (total <= max_order) {
      MultiIndex m;
      m.orders = o;
      m.total = total;
      m.alpha.assign(o.begin(), o.begin() + n);
      m.beta.assign(o.begin() + n, o.end());
      out.push_back(std::move(m));
    }
    int v = vars - 1;
    while (v >= 0 && o[v] == max_order) o[v--] = 0;
    if (v < 0) break;
    ++o[v];
  }
  std::stable_sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) { return a.total < b.total; });
  return out;
}

// Lazily filled symbol values on the offset lattice {-5..5}^{2n} around one point.
class StencilCache {
 public:
  StencilCache(int n) : n_(n), values_(static_cast<std::size_t>(std::pow(kSide, 2 * n))) {}

  void reset(const SymbolSpec* sigma, const Vec2& xi, const Vec2& eta, double h) {
    sigma_ = sigma;
    xi_ = xi;
    eta_ = eta;
    h_ = h;
    std::fill(values_.begin(), values_.end(), std::numeric_limits<double>::quiet_NaN());
    max_abs_ = 0.0;
  }

  double at(const int* offsets) {
    std::size_t idx = 0;
    for (int v = 0; v < 2 * n_; ++v) idx = idx * kSide + static_cast<std::size_t>(offsets[v] + kMaxHalfWidth);
    double& slot = values_[idx];
    if (std::isnan(slot)) {
      Vec2 x = xi_;
      Vec2 y = eta_;
      for (int d = 0; d < n_; ++d) {
        x[d] += offsets[d] * h_;
        y[d] += offsets[n_ + d] * h_;
      }
      const auto v = (*sigma_)(x, y);
      max_abs_ = std::max(max_abs_, std::abs(v));
      slot = v.real();
    }
    return slot;
  }

  double max_abs() const { return max_abs_; }

 private:
  int n_;
  std::vector<double> values_;
  const SymbolSpec* sigma_ = nullptr;
  Vec2 xi_{}, eta_{};
  double h_ = 0.0;
  double max_abs_ = 0.0;
};

struct Weights {
  std::vector<std::vector<double>> by_order;  // index d -> 2K+1 weights
  std::vector<double> abs_sum;
};

Weights make_weights(int max_order) {
  Weights w;
  for (int d = 0; d <= max_order; ++d) {
    w.by_order.push_back(central_difference_weights(d));
    double acc = 0.0;
    for (double v : w.by_order.back()) acc += std::abs(v);
    w.abs_sum.push_back(acc);
  }
  return w;
}

// Derivative estimate for one multi-index from the cached values.
double derivative(StencilCache& cache, const MultiIndex& mi, const Weights& w, double h) {
  const int vars = static_cast<int>(mi.orders.size());
  std::vector<int> off(vars, 0);
  std::vector<int> lo(vars), hi(vars);
  for (int v = 0; v < vars; ++v) {
    lo[v] = -half_width(mi.orders[v]);
    hi[v] = half_width(mi.orders[v]);
    off[v] = lo[v];
  }
  double acc = 0.0;
  while (true) {
    double weight = 1.0;
    for (int v = 0; v < vars && weight != 0.0; ++v) {
      const auto& wv = w.by_order[mi.orders[v]];
      weight *= wv[static_cast<std::size_t>(off[v] + static_cast<int>(wv.size() / 2))];
    }
    if (weight != 0.0) acc += weight * cache.at(off.data());
    int v = vars - 1;
    while (v >= 0 && off[v] == hi[v]) {
      off[v] = lo[v];
      --v;
    }
    if (v < 0) break;
    ++off[v];
  }
  return acc / std::pow(h, mi.total);
}

double roundoff_floor(const MultiIndex& mi, const Weights& w, double max_abs, double h) {
  double s = 1.0;
  for (int o : mi.orders) s *= w.abs_sum[o];
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(max_abs, 1e-300) * s / std::pow(h, mi.total);
}

}  // namespace

std::vector<double> central_difference_weights(int d) {
  if (d < 0 || d > 5) throw ParameterError("derivative order must be in [0, 5]");
  const int K = half_width(d);
  std::vector<double> x;
  for (int k = -K; k <= K; ++k) x.push_back(k);
  auto w = fornberg(x, d);
  for (auto& v : w)
    if (std::abs(v) < 1e-14) v = 0.0;
  return w;
}

CMSampleSpec CMSampleSpec::doubled() const {
  CMSampleSpec d = *this;
  d.radii *= 2;
  d.directions *= 2;
  return d;
}

std::vector<std::pair<Vec2, Vec2>> CMSampleSpec::points() const {
  if (n != 1 && n != 2) throw ParameterError("CM sampling supports n = 1 or 2");
  if (radii < 1 || directions < 1 || !(radius_min > 0.0) || !(radius_max >= radius_min))
    throw ParameterError("invalid CM sampling parameters");
  std::vector<std::pair<Vec2, Vec2>> pts;
  pts.reserve(static_cast<std::size_t>(radii) * directions);
  const double pi = std::numbers::pi;
  // R2 low-discrepancy sequence for the two phases on S^3.
  const double g = 1.32471795724474602596;
  const double a1 = 1.0 / g;
  const double a2 = 1.0 / (g * g);
  for (int k = 0; k < radii; ++k) {
    const double rho = radius_min * std::pow(radius_max / radius_min, (k + 0.5) / radii);
    for (int i = 0; i < directions; ++i) {
      if (n == 1) {
        const double th = pi * (i + 0.5) / directions;
        pts.push_back({{rho * std::cos(th), 0.0}, {rho * std::sin(th), 0.0}});
      } else {
        const double u = (i + 0.5) / directions;
        const double p1 = 2.0 * pi * std::fmod(0.5 + a1 * (i + 1), 1.0);
        const double p2 = 2.0 * pi * std::fmod(0.5 + a2 * (i + 1), 1.0);
        const double a = rho * std::sqrt(u);
        const double b = rho * std::sqrt(1.0 - u);
        pts.push_back({{a * std::cos(p1), a * std::sin(p1)}, {b * std::cos(p2), b * std::sin(p2)}});
      }
    }
  }
  return pts;
}

const CMEntry* CMReport::find(const std::vector<int>& alpha, const std::vector<int>& beta) const {
  for (const auto& e : entries)
    if (e.alpha == alpha && e.beta == beta) return &e;
  return nullptr;
}

std::string CMReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json a = n == 1 ? nlohmann::json(e.alpha[0]) : nlohmann::json(e.alpha);
    nlohmann::json b = n == 1 ? nlohmann::json(e.beta[0]) : nlohmann::json(e.beta);
    arr.push_back({{"alpha", a}, {"beta", b}, {"constant", e.constant}, {"stable", e.stable}, {"flagged", e.flagged}});
  }
  return arr.dump(2);
}

CMReport cm_check(const SymbolSpec& sigma, int max_order, const CMSampleSpec& sampling) {
  const int n = sampling.n;
  if (max_order < 0 || max_order > 2 * n + 1) throw ParameterError("CM check requires max_order <= 2n+1");
  if (!(sampling.rel_step > 0.0)) throw ParameterError("CM relative step must be positive");
  const auto pts = sampling.points();
  const auto indices = multi_indices(n, max_order);
  const auto weights = make_weights(max_order);
  const std::size_t E = indices.size();

  // Per sample and index: scaled estimates at h and h/2 and the scaled roundoff floor.
  std::vector<double> coarse(pts.size() * E), fine(pts.size() * E), floor(pts.size() * E);
  parallel_for(pts.size(), [&](std::size_t begin, std::size_t end) {
    StencilCache cache_h(n), cache_h2(n);
    for (std::size_t p = begin; p < end; ++p) {
      const auto& [xi, eta] = pts[p];
      const double scale = norm(xi) + norm(eta);
      const double h = sampling.rel_step * scale;
      cache_h.reset(&sigma, xi, eta, h);
      cache_h2.reset(&sigma, xi, eta, h / 2);
      for (std::size_t e = 0; e < E; ++e) {
        const auto& mi = indices[e];
        const double weight = std::pow(scale, mi.total);
        const double d1 = derivative(cache_h, mi, weights, h);
        const double d2 = derivative(cache_h2, mi, weights, h / 2);
        coarse[p * E + e] = std::abs(d1) * weight;
        fine[p * E + e] = std::abs(d2) * weight;
        floor[p * E + e] = roundoff_floor(mi, weights, cache_h2.max_abs(), h / 2) * weight;
      }
    }
  });

  CMReport report;
  report.symbol = sigma.label;
  report.n = n;
  report.max_order = max_order;
  report.sampling = sampling;
  for (std::size_t e = 0; e < E; ++e) {
    CMEntry entry;
    entry.alpha = indices[e].alpha;
    entry.beta = indices[e].beta;
    double worst_floor = 0.0;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const double c = coarse[p * E + e];
      const double f = fine[p * E + e];
      const double fl = floor[p * E + e];
      entry.constant = std::max(entry.constant, f);
      entry.constant_coarse = std::max(entry.constant_coarse, c);
      worst_floor = std::max(worst_floor, fl);
      if (std::abs(f - c) > 0.1 * f + fl) ++entry.flagged;
    }
    entry.stable = std::isfinite(entry.constant) &&
                   std::abs(entry.constant - entry.constant_coarse) <= 0.1 * entry.constant + worst_floor;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace kpforge
