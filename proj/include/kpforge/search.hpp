#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kpforge/test_function.hpp"

namespace kpforge {

struct SearchConfig {
  std::uint64_t seed = 42;
  double s = 3.0;
  int population = 32;
  int iterations = 200;
  int packets = 1;  // per function
  GridSpec grid{1, 512, 16.0};
  /// Gaussian noise is step * scale per parameter, step = initial_step * decay^iter.
  double initial_step = 0.25;
  double decay = 0.98;
  double elite_fraction = 0.25;
  /// Search box for |k| as a fraction of the nyquist frequency. At 1/4 (the
  /// TestFunctionSpec bound) the product peaks at nyquist/2, four samples
  /// per period, and grid maxima stop tracking the continuous sup.
  double k_fraction = 1.0 / 16;

  /// Throws ParameterError on population < 4, iterations < 1, packets outside 1..16, ...
  void validate() const;
};

/// Flat parameter layout, f packets then g packets, each packet
///   a, c_1..c_n, w, k_1..k_n, phi
/// so 3 + 2n entries per packet.
int params_per_packet(int n);
std::vector<double> encode(const TestFunctionSpec& f, const TestFunctionSpec& g);
/// Inverse of encode after clamping (see clamp_params).
std::pair<TestFunctionSpec, TestFunctionSpec> decode(const std::vector<double>& params, int n, int packets);

/// Clamps into the search box: |a| <= 4, centers in the box, widths in
/// [L/64, L/4], |k| <= k_fraction * nyquist (k_fraction <= 1/4); phases
/// wrap into [0, 2 pi).
void clamp_params(std::vector<double>& params, const GridSpec& grid, int packets, double k_fraction = 0.25);

struct ObjectiveValue {
  double ratio = 0.0;
  bool flagged = false;
  std::string reason;
};

/// kpinfty ratio of the decoded pair on `grid`. Zero amplitudes, invalid
/// decodes and evaluator errors give ratio 0 with a flag.
ObjectiveValue objective(const std::vector<double>& params, const GridSpec& grid, int packets, double s);

struct IterationLog {
  int iter = 0;
  double best_ratio = 0.0;
  double mean_ratio = 0.0;
  double step = 0.0;
};

struct SearchResult {
  SearchConfig config;
  double best_ratio = 0.0;
  TestFunctionSpec best_f;
  TestFunctionSpec best_g;
  std::vector<IterationLog> history;
  /// Best pair re-evaluated at 2N.
  double refined_ratio = 0.0;
  double refinement_change = 0.0;
  /// refinement_change > 10%: the best ratio is not trusted.
  bool discretization_artifact = false;

  std::string to_json() const;
  /// One {iter, best_ratio, mean_ratio, step} object per line.
  std::string log_jsonl() const;
  /// Best pair as a one-pair corpus on the search grid.
  Corpus best_as_corpus() const;
};

/// Elitist population random search. Iteration 0 draws the population
/// uniformly within bounds; every later iteration keeps the elites and
/// refills the population with noisy copies of them. Candidates are drawn
/// serially from one SplitMix64 stream, evaluated in parallel, and ranked
/// by (ratio desc, candidate index asc), so results do not depend on the
/// thread count.
SearchResult run_search(const SearchConfig& config);

/// run_search at each s in `orders` with otherwise identical config.
std::vector<SearchResult> run_search_sweep(const SearchConfig& config, const std::vector<double>& orders);

}  // namespace kpforge
