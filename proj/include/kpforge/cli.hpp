#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace kpforge {

/// Everything a command reads. Precedence: defaults < --config file < flags.
struct RunConfig {
  std::string command;

  int n = 1;
  int N = 1024;
  double L = 16.0;
  bool grid_given = false;  // any of --n/--N/--L set by a flag or the config file

  double s = 1.0;
  double r = 0.0;
  double t = 2.0;
  double eps = 0.5;
  double p1 = 8.0;
  double p2 = 8.0;
  std::string ineq = "kpinfty";  // id, comma list or "all"

  std::string corpus = "default";
  std::string pair;  // corpus pair id; empty selects the first
  std::string which = "f";
  std::string spec;  // packets "a=.. c=.. w=.. k=.. phi=..; ..."
  std::string out;
  std::string summary;
  std::string log;
  std::string export_path;
  std::string dump;
  std::string load;

  std::uint64_t seed = 42;
  int population = 32;
  int iterations = 200;
  int packets = 1;
  double step = 0.25;
  double decay = 0.98;
  double elite = 0.25;
  double k_fraction = 1.0 / 16;
  bool sweep = false;

  int m_max = 128;
  int quad_N = 0;  // 0: next power of two >= 16 m_max
  int j_depth = 20;
  int max_depth = 8;  // BMO cube depth
  bool refine = false;

  std::string symbol = "sigma1";
  int order = -1;  // -1: 2n+1
  int radii = 256;
  int directions = 256;
  double rel_step = 2e-4;
};

/// Exit codes: 0 success, 1 I/O failure, 2 parameter error, 3 numerical
/// failure (a convergence check did not pass).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kpforge
