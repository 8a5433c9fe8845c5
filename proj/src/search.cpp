#include "kpforge/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "json.hpp"
#include "kpforge/error.hpp"
#include "kpforge/inequalities.hpp"
#include "kpforge/parallel.hpp"
#include "kpforge/rng.hpp"

namespace kpforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxAmplitude = 4.0;

struct Layout {
  int n;
  int per;
  int a() const { return 0; }
  int c(int d) const { return 1 + d; }
  int w() const { return 1 + n; }
  int k(int d) const { return 2 + n + d; }
  int phi() const { return 2 + 2 * n; }
};

// Noise scale per slot, relative to the box and the frequency bound.
std::vector<double> noise_scales(const GridSpec& grid, int packets, double k_fraction) {
  const Layout lay{grid.n, params_per_packet(grid.n)};
  std::vector<double> per(static_cast<std::size_t>(lay.per));
  per[lay.a()] = 1.0;
  for (int d = 0; d < grid.n; ++d) {
    per[lay.c(d)] = grid.L / 4;
    per[lay.k(d)] = grid.nyquist() * k_fraction / 2;
  }
  per[lay.w()] = grid.L / 8;
  per[lay.phi()] = std::numbers::pi;
  std::vector<double> out;
  for (int p = 0; p < 2 * packets; ++p) out.insert(out.end(), per.begin(), per.end());
  return out;
}

std::vector<double> random_candidate(SplitMix64& rng, const GridSpec& grid, int packets, double k_fraction) {
  const Layout lay{grid.n, params_per_packet(grid.n)};
  const double kmax = grid.nyquist() * k_fraction;
  std::vector<double> v(static_cast<std::size_t>(2 * packets * lay.per));
  for (int p = 0; p < 2 * packets; ++p) {
    double* q = v.data() + p * lay.per;
    q[lay.a()] = rng.uniform(-1.5, 1.5);
    for (int d = 0; d < grid.n; ++d) q[lay.c(d)] = rng.uniform(-grid.L / 4, grid.L / 4);
    q[lay.w()] = rng.uniform(grid.L / 64, grid.L / 4);
    for (int d = 0; d < grid.n; ++d) q[lay.k(d)] = rng.uniform(-kmax, kmax);
    q[lay.phi()] = rng.uniform(0.0, kTwoPi);
  }
  clamp_params(v, grid, packets, k_fraction);
  return v;
}

nlohmann::ordered_json spec_json(const TestFunctionSpec& spec) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& p : spec.packets) {
    nlohmann::ordered_json c = spec.n == 1 ? nlohmann::ordered_json(p.center[0]) : nlohmann::ordered_json(p.center);
    nlohmann::ordered_json k = spec.n == 1 ? nlohmann::ordered_json(p.k[0]) : nlohmann::ordered_json(p.k);
    arr.push_back({{"a", p.amplitude}, {"c", c}, {"w", p.width}, {"k", k}, {"phi", p.phase}});
  }
  return {{"packets", arr}, {"hash", spec.hash()}};
}

nlohmann::ordered_json log_json(const IterationLog& h) {
  return {{"iter", h.iter}, {"best_ratio", h.best_ratio}, {"mean_ratio", h.mean_ratio}, {"step", h.step}};
}

}  // namespace

void SearchConfig::validate() const {
  if (population < 4) throw ParameterError("search requires population >= 4");
  if (iterations < 1) throw ParameterError("search requires iterations >= 1");
  if (packets < 1 || packets > 16) throw ParameterError("search requires 1 <= packets <= 16");
  if (!(s > 0.0)) throw ParameterError("requires s > 0");
  if (!(initial_step > 0.0)) throw ParameterError("search requires a positive initial step");
  if (!(decay > 0.0 && decay <= 1.0)) throw ParameterError("search requires 0 < decay <= 1");
  if (!(elite_fraction > 0.0 && elite_fraction < 1.0)) throw ParameterError("search requires 0 < elite fraction < 1");
  if (!(k_fraction > 0.0 && k_fraction <= 0.25)) throw ParameterError("search requires 0 < k_fraction <= 1/4");
  make_grid(grid.n, grid.N, grid.L);
}

int params_per_packet(int n) { return 3 + 2 * n; }

std::vector<double> encode(const TestFunctionSpec& f, const TestFunctionSpec& g) {
  if (f.n != g.n || f.packets.size() != g.packets.size()) throw ParameterError("encode needs matching f and g shapes");
  const Layout lay{f.n, params_per_packet(f.n)};
  std::vector<double> v;
  for (const auto* spec : {&f, &g}) {
    for (const auto& p : spec->packets) {
      std::vector<double> q(static_cast<std::size_t>(lay.per));
      q[lay.a()] = p.amplitude;
      for (int d = 0; d < f.n; ++d) {
        q[lay.c(d)] = p.center[d];
        q[lay.k(d)] = p.k[d];
      }
      q[lay.w()] = p.width;
      q[lay.phi()] = p.phase;
      v.insert(v.end(), q.begin(), q.end());
    }
  }
  return v;
}

std::pair<TestFunctionSpec, TestFunctionSpec> decode(const std::vector<double>& params, int n, int packets) {
  const Layout lay{n, params_per_packet(n)};
  if (static_cast<int>(params.size()) != 2 * packets * lay.per) throw ParameterError("parameter vector has the wrong length");
  TestFunctionSpec f{n, {}}, g{n, {}};
  for (int p = 0; p < 2 * packets; ++p) {
    const double* q = params.data() + p * lay.per;
    Packet pk;
    pk.amplitude = q[lay.a()];
    for (int d = 0; d < n; ++d) {
      pk.center[d] = q[lay.c(d)];
      pk.k[d] = q[lay.k(d)];
    }
    pk.width = q[lay.w()];
    pk.phase = q[lay.phi()];
    (p < packets ? f : g).packets.push_back(pk);
  }
  return {f, g};
}

void clamp_params(std::vector<double>& params, const GridSpec& grid, int packets, double k_fraction) {
  const Layout lay{grid.n, params_per_packet(grid.n)};
  const double half = grid.L / 2;
  const double kmax = grid.nyquist() * std::min(k_fraction, 0.25);
  for (int p = 0; p < 2 * packets; ++p) {
    double* q = params.data() + p * lay.per;
    q[lay.a()] = std::clamp(q[lay.a()], -kMaxAmplitude, kMaxAmplitude);
    for (int d = 0; d < grid.n; ++d) q[lay.c(d)] = std::clamp(q[lay.c(d)], -half, std::nextafter(half, 0.0));
    q[lay.w()] = std::clamp(q[lay.w()], grid.L / 64, grid.L / 4);
    double k2 = 0.0;
    for (int d = 0; d < grid.n; ++d) k2 += q[lay.k(d)] * q[lay.k(d)];
    if (k2 > kmax * kmax) {
      const double shrink = kmax / std::sqrt(k2) * (1 - 1e-15);
      for (int d = 0; d < grid.n; ++d) q[lay.k(d)] *= shrink;
    }
    double phi = std::fmod(q[lay.phi()], kTwoPi);
    if (phi < 0) phi += kTwoPi;
    q[lay.phi()] = phi < kTwoPi ? phi : 0.0;
  }
}

ObjectiveValue objective(const std::vector<double>& params, const GridSpec& grid, int packets, double s) {
  ObjectiveValue out;
  try {
    const auto [f, g] = decode(params, grid.n, packets);
    auto silent = [](const TestFunctionSpec& spec) {
      return std::all_of(spec.packets.begin(), spec.packets.end(), [](const Packet& p) { return p.amplitude == 0.0; });
    };
    if (silent(f) || silent(g)) {
      out.flagged = true;
      out.reason = "zero amplitude";
      return out;
    }
    const auto rep = eval_kp_endpoint(f.sample(grid), g.sample(grid), s);
    if (rep.flagged || !std::isfinite(rep.ratio)) {
      out.flagged = true;
      out.reason = rep.flagged ? rep.reason : "non-finite ratio";
      return out;
    }
    out.ratio = rep.ratio;
  } catch (const std::exception& e) {
    out = ObjectiveValue{0.0, true, e.what()};
  }
  return out;
}

SearchResult run_search(const SearchConfig& config) {
  config.validate();
  const GridSpec& grid = config.grid;
  const int P = config.population;
  const int E = std::clamp(static_cast<int>(std::lround(config.elite_fraction * P)), 1, P - 1);
  const auto scales = noise_scales(grid, config.packets, config.k_fraction);
  SplitMix64 rng(config.seed);

  SearchResult result;
  result.config = config;

  struct Member {
    std::vector<double> params;
    double ratio = 0.0;
  };

  auto evaluate_all = [&](std::vector<Member>& batch) {
    parallel_for(batch.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        batch[i].ratio = objective(batch[i].params, grid, config.packets, config.s).ratio;
    });
  };
  auto mean_ratio = [](const std::vector<Member>& batch) {
    double acc = 0.0;
    for (const auto& m : batch) acc += m.ratio;
    return acc / static_cast<double>(batch.size());
  };
  // Survivors first, then newcomers, so the stable sort breaks ties by index.
  auto select = [E](std::vector<Member> pool) {
    std::stable_sort(pool.begin(), pool.end(), [](const Member& a, const Member& b) { return a.ratio > b.ratio; });
    pool.resize(static_cast<std::size_t>(E));
    return pool;
  };

  std::vector<Member> batch(static_cast<std::size_t>(P));
  for (auto& m : batch) m.params = random_candidate(rng, grid, config.packets, config.k_fraction);
  evaluate_all(batch);
  std::vector<Member> elites = select(batch);
  result.history.push_back({0, elites.front().ratio, mean_ratio(batch), config.initial_step});

  for (int it = 1; it < config.iterations; ++it) {
    const double step = config.initial_step * std::pow(config.decay, it);
    std::vector<Member> children(static_cast<std::size_t>(P - E));
    for (std::size_t c = 0; c < children.size(); ++c) {
      auto params = elites[c % elites.size()].params;
      for (std::size_t q = 0; q < params.size(); ++q) params[q] += step * scales[q] * rng.normal();
      clamp_params(params, grid, config.packets, config.k_fraction);
      children[c].params = std::move(params);
    }
    evaluate_all(children);
    std::vector<Member> pool = elites;
    pool.insert(pool.end(), children.begin(), children.end());
    elites = select(std::move(pool));
    result.history.push_back({it, elites.front().ratio, mean_ratio(children), step});
  }

  const auto& best = elites.front();
  result.best_ratio = best.ratio;
  std::tie(result.best_f, result.best_g) = decode(best.params, grid.n, config.packets);
  result.refined_ratio = objective(best.params, refine(grid), config.packets, config.s).ratio;
  result.refinement_change =
      best.ratio > 0.0 ? std::abs(result.refined_ratio - best.ratio) / best.ratio : 0.0;
  result.discretization_artifact = result.refinement_change > 0.1;
  return result;
}

std::vector<SearchResult> run_search_sweep(const SearchConfig& config, const std::vector<double>& orders) {
  std::vector<SearchResult> out;
  for (double s : orders) {
    SearchConfig c = config;
    c.s = s;
    out.push_back(run_search(c));
  }
  return out;
}

std::string SearchResult::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = config.seed;
  j["s"] = config.s;
  j["population"] = config.population;
  j["iterations"] = config.iterations;
  j["packets"] = config.packets;
  j["grid"] = {{"n", config.grid.n}, {"N", config.grid.N}, {"L", config.grid.L}};
  j["initial_step"] = config.initial_step;
  j["decay"] = config.decay;
  j["elite_fraction"] = config.elite_fraction;
  j["k_fraction"] = config.k_fraction;
  j["best_ratio"] = best_ratio;
  j["refined_ratio"] = refined_ratio;
  j["refinement_change"] = refinement_change;
  j["discretization_artifact"] = discretization_artifact;
  j["best_f"] = spec_json(best_f);
  j["best_g"] = spec_json(best_g);
  nlohmann::ordered_json hist = nlohmann::ordered_json::array();
  for (const auto& h : history) hist.push_back(log_json(h));
  j["history"] = hist;
  return j.dump(2);
}

std::string SearchResult::log_jsonl() const {
  std::string out;
  for (const auto& h : history) out += log_json(h).dump() + "\n";
  return out;
}

Corpus SearchResult::best_as_corpus() const {
  Corpus c;
  c.grid = config.grid;
  c.pairs.push_back({"search-best", "search", best_f, best_g});
  return c;
}

}  // namespace kpforge
