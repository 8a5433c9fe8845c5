// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "kpforge/bilinear.hpp"
#include "kpforge/cm_check.hpp"
#include "kpforge/error.hpp"
#include "kpforge/fourier_coeffs.hpp"
#include "kpforge/inequalities.hpp"
#include "kpforge/kernel.hpp"
#include "kpforge/multipliers.hpp"
#include "kpforge/norms.hpp"
#include "kpforge/paraproduct.hpp"
#include "kpforge/search.hpp"
#include "kpforge/symbols.hpp"
#include "kpforge/test_function.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kpforge;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<std::pair<SpectralField, SpectralField>> sampled_pairs(const Corpus& c) {
  std::vector<std::pair<SpectralField, SpectralField>> out;
  for (const auto& p : c.pairs) out.emplace_back(p.f.sample(c.grid), p.g.sample(c.grid));
  return out;
}

Outcome littlewood_paley_reconstruction() {
  const auto corpus = default_corpus();
  const auto pairs = sampled_pairs(corpus);
  std::vector<SpectralField> fields;
  for (const auto& [f, g] : pairs) {
    fields.push_back(f);
    fields.push_back(g);
  }
  const auto& grid = corpus.grid;
  int j_min = 0, j_max = 0;
  while (block_in_range(grid, j_min - 1)) --j_min;
  while (block_in_range(grid, j_max + 1)) ++j_max;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const auto& h : fields) {
    auto acc = lowpass(h, j_min);
    for (int j = j_min + 1; j <= j_max; ++j) acc = acc + lp_block(h, j);
    worst = std::max(worst, sup_distance(acc, h));
  }
  const double elapsed = seconds_since(t0);
  return {worst < 1e-12 && elapsed < 1.0, std::to_string(fields.size()) + " fields, j in [" + std::to_string(j_min) +
                                              "," + std::to_string(j_max) + "], max error " + fmt("%.2e", worst) +
                                              ", " + fmt("%.3f", elapsed) + " s"};
}

Outcome dyadic_scaling() {
  const auto grid = make_grid(1, 2048, 16.0);
  const TestFunctionSpec gauss{1, {Packet{1.0, {0.0, 0.0}, 1.0, {0.0, 0.0}, 0.0}}};
  const auto f = dilate(gauss.sample(grid), 2);
  double worst = 0.0;
  for (double s : {0.5, 1.0, 2.0}) {
    const double base = besov_norm(fractional_derivative(f, s)).value;
    for (int j0 = -2; j0 <= 2; ++j0) {
      const double lhs = besov_norm(fractional_derivative(dilate(f, j0), s)).value;
      const double rhs = std::pow(2.0, j0 * s) * base;
      worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
  }
  return {worst <= 1e-10, "max relative deviation " + fmt("%.2e", worst)};
}

Outcome besov_sup_bound() {
  const double oracle = testing::psi_hat_l1_oracle(1);
  const auto corpus = default_corpus();
  int violations = 0, checked = 0;
  double worst = 0.0;
  for (const auto& [f, g] : sampled_pairs(corpus)) {
    for (const auto* h : {&f, &g}) {
      const double b = besov_norm(*h).value;
      const double bound = oracle * sup_norm(*h).value;
      worst = std::max(worst, b / bound);
      if (b > bound) ++violations;
      ++checked;
    }
  }
  return {violations == 0, std::to_string(checked) + " fields, C=" + fmt("%.10f", oracle) + " (library " +
                               fmt("%.10f", psi_hat_l1(1)) + "), max besov/(C sup) " + fmt("%.4f", worst) + ", " +
                               std::to_string(violations) + " violations"};
}

Outcome coefficient_decay() {
  struct Case {
    int n;
    double s;
    int m_max;
    int quad;
  };
  bool ok = true;
  std::string detail;
  for (const Case c : {Case{1, 1.0, 256, 4096}, Case{1, 2.0, 256, 4096}, Case{2, 1.0, 128, 1024}}) {
    const auto a = coeff_decay_fit(fourier_coeffs_phi_s_single(c.n, c.s, c.m_max, c.quad));
    const auto b = coeff_decay_fit(fourier_coeffs_phi_s_single(c.n, c.s, c.m_max, 2 * c.quad));
    const double target = -(c.n + c.s);
    const double shift = std::abs(a.slope - b.slope);
    const bool here = std::abs(b.slope - target) <= 0.5 && shift < 0.05;
    ok = ok && here;
    std::ostringstream os;
    os << (detail.empty() ? "" : "; ") << "(n=" << c.n << ",s=" << c.s << ") slope " << fmt("%.4f", b.slope)
       << " vs " << target << ", shift " << fmt("%.1e", shift) << (here ? "" : " [out]");
    detail += os.str();
  }
  return {ok, detail};
}

Outcome paraproduct_splits() {
  const auto corpus = default_corpus();
  double split = 0.0, reweight = 0.0;
  for (const auto& [f, g] : sampled_pairs(corpus)) {
    split = std::max(split, pi_split(f, g, 2.0).relative_residual);
    reweight = std::max(reweight, pi1_pi2(f, g, 0.5, 2.0, 3.0).relative_residual);
  }
  return {split < 1e-10 && reweight < 1e-10, std::to_string(corpus.pairs.size()) + " pairs, pi split " +
                                                 fmt("%.2e", split) + ", pi1+pi2 " + fmt("%.2e", reweight)};
}

Outcome three_term_decomposition() {
  const auto g = make_grid(1, 64, 1.0);
  const auto f = testing::trig(g, 1, 0.0);
  const auto d256 = decompose_Ds(f, f, 2.0, 256);
  const auto d512 = decompose_Ds(f, f, 2.0, 512);
  // Below this the residual is FFT rounding, and doubling m_max cannot lower it.
  const double floor = 1e-12;
  const bool converging = d512.relative_residual < d256.relative_residual ||
                          (d256.relative_residual < floor && d512.relative_residual < floor);

  const auto corpus = default_corpus();
  const auto pairs = sampled_pairs(corpus);
  double shift = 0.0;
  for (const auto& [a, b] : pairs) shift = std::max(shift, t1_shift_identity_check(a, b, 3.5, 0.5).relative);
  const double corpus_residual = decompose_Ds(pairs[1].first, pairs[1].second, 2.0, 64).relative_residual;

  const bool ok = d256.relative_residual < 1e-3 && converging && shift < 1e-10;
  return {ok, "sin*sin residual " + fmt("%.2e", d256.relative_residual) + " (m 256), " +
                  fmt("%.2e", d512.relative_residual) + " (m 512); shift identity " + fmt("%.2e", shift) +
                  " over 24 pairs; info: " + corpus.pairs[1].id + " residual " + fmt("%.2e", corpus_residual) +
                  " at m 64"};
}

Outcome kernel_matches_symbol() {
  const auto t0 = Clock::now();
  const auto grid = make_grid(1, 256, 16.0);
  const double s = 2.0, r = 0.5;
  const int m_max = 64;
  const K1Kernel kernel(s, r, 20, m_max, m_max / 16.0 + 2 * grid.L);
  int used = 0;
  double worst = 0.0;
  for (const auto& p : default_corpus().pairs) {
    try {
      p.f.validate(grid);
      p.g.validate(grid);
      const auto f = p.f.sample(grid), g = p.g.sample(grid);
      require_product_safe(f, g);
      const auto fr = fractional_derivative(f, r);
      worst = std::max(worst, relative_sup_error(apply_pi1_kernel(kernel, fr, g), pi1(fr, g, r, s)));
      ++used;
    } catch (const ParameterError&) {
    } catch (const AliasingError&) {
    }
  }
  const double elapsed = seconds_since(t0);
  return {used > 0 && worst < 1e-2 && elapsed < 300.0, std::to_string(used) + " pairs valid at N=256, max error " +
                                                           fmt("%.2e", worst) + ", " + fmt("%.1f", elapsed) + " s"};
}

Outcome coifman_meyer() {
  bool ok = true;
  std::string detail;
  CMSampleSpec spec;
  spec.radii = 256;
  spec.directions = 256;
  for (double s : {0.5, 1.0, 2.0, 3.5}) {
    const auto a = cm_check(sigma1(s), 3, spec);
    const auto b = cm_check(sigma1(s), 3, spec.doubled());
    double drift = 0.0;
    bool here = true;
    for (const auto& e : a.entries) {
      const auto* o = b.find(e.alpha, e.beta);
      here = here && o && std::isfinite(e.constant) && e.stable && o->stable;
      if (o && e.constant > 0) drift = std::max(drift, std::abs(o->constant - e.constant) / e.constant);
    }
    here = here && drift <= 0.1;
    ok = ok && here;
    detail += (detail.empty() ? "" : "; ") + std::string("sigma1 s=") + fmt("%g", s) + " drift " + fmt("%.1e", drift) +
              (here ? "" : " [out]");
  }
  spec.radii = 128;
  spec.directions = 128;
  const auto lo = cm_check(sigma3_series(1, 3.5, 256), 3, spec);
  const auto hi = cm_check(sigma3_series(1, 3.5, 512), 3, spec);
  double drift = 0.0;
  bool here = true;
  for (const auto& e : lo.entries) {
    const auto* o = hi.find(e.alpha, e.beta);
    here = here && o && std::isfinite(e.constant) && e.stable && o->stable;
    if (o && e.constant > 0) drift = std::max(drift, std::abs(o->constant - e.constant) / e.constant);
  }
  here = here && drift <= 0.1;
  ok = ok && here;
  detail += "; sigma3 s=3.5 m 256 vs 512 drift " + fmt("%.1e", drift) + (here ? "" : " [out]");
  return {ok, detail};
}

Outcome corpus_inequalities() {
  const auto corpus = default_corpus();
  struct Run {
    std::vector<Inequality> ids;
    InequalityParams params;
  };
  InequalityParams low;
  low.s = 1.0;
  low.r = 0.0;
  low.t = 2.0;
  InequalityParams mid;
  mid.s = 3.0;
  InequalityParams high;
  high.s = 3.5;
  high.eps = 0.5;
  high.p1 = high.p2 = 8.0;
  const std::vector<Run> runs{
      {{Inequality::KpEndpoint, Inequality::BgnBesov, Inequality::BgnLinf, Inequality::LinearGn}, low},
      {{Inequality::KpEndpoint}, mid},
      {{Inequality::Thm13, Inequality::Bmo, Inequality::WeakL1}, high},
  };
  bool ok = true;
  std::string detail;
  for (const auto& run : runs) {
    const auto result = run_corpus(corpus, run.ids, run.params, true);
    for (const auto& row : result.summary) {
      const double delta = row.refinement_delta.value_or(std::numeric_limits<double>::infinity());
      const bool here = std::isfinite(row.max_ratio) && delta < 0.05 && row.errors == 0;
      ok = ok && here;
      detail += (detail.empty() ? "" : "; ") + row.inequality + " s=" + fmt("%g", run.params.s) + " max " +
                fmt("%.4g", row.max_ratio) + " delta " + fmt("%.1e", delta) +
                (row.errors ? " errors " + std::to_string(row.errors) : "") + (here ? "" : " [out]");
    }
  }
  const auto g = make_grid(1, 64, 1.0);
  const auto f = testing::trig(g, 1, 0.0);
  const double r2 = eval_kp_endpoint(f, f, 2.0).ratio;
  const double r3 = eval_kp_endpoint(f, f, 3.0).ratio;
  const bool exact = std::abs(r2 - 1.0) < 1e-10 && std::abs(r3 - 2.0) < 1e-10;
  ok = ok && exact;
  detail += "; sin*sin ratio " + fmt("%.12f", r2) + " (s=2), " + fmt("%.12f", r3) + " (s=3)";
  return {ok, detail};
}

Outcome search_determinism() {
  const SearchConfig config;
  const char* old = std::getenv("KPFORGE_THREADS");
  const std::string saved = old ? old : "";
  const auto first = run_search(config);
  const auto second = run_search(config);
  setenv("KPFORGE_THREADS", "1", 1);
  const auto one = run_search(config).to_json();
  setenv("KPFORGE_THREADS", "3", 1);
  const auto three = run_search(config).to_json();
  if (old)
    setenv("KPFORGE_THREADS", saved.c_str(), 1);
  else
    unsetenv("KPFORGE_THREADS");
  const auto json = first.to_json();
  const bool identical = json == second.to_json() && json == one && json == three;
  const bool ok = first.best_ratio >= 1.95 && identical && first.refinement_change <= 0.1;
  return {ok, "best " + fmt("%.6f", first.best_ratio) + ", refined " + fmt("%.6f", first.refined_ratio) +
                  ", change " + fmt("%.2e", first.refinement_change) +
                  (identical ? ", identical across runs and thread counts" : ", runs differ")};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{
      littlewood_paley_reconstruction, dyadic_scaling,   besov_sup_bound,     coefficient_decay,
      paraproduct_splits,              three_term_decomposition, kernel_matches_symbol, coifman_meyer,
      corpus_inequalities,             search_determinism,
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu: %s  %s  [%.1f s]\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
