#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kpforge/spectral_field.hpp"
#include "kpforge/test_function.hpp"

namespace kpforge {

enum class Inequality { KpEndpoint, BgnBesov, BgnLinf, LinearGn, Thm13, Bmo, WeakL1 };

/// Command-line ids: kpinfty, bgn-besov, bgn-linf, linear-gn, thm13, bmo, weak-l1.
std::string to_string(Inequality id);
Inequality parse_inequality(const std::string& id);
const std::vector<Inequality>& all_inequalities();

struct InequalityParams {
  double s = 1.0;
  double r = 0.0;
  double t = 2.0;
  double eps = 0.5;
  double p1 = 8.0;
  double p2 = 8.0;
  /// Finest dyadic cube level for the BMO estimate (side L / 2^depth).
  int bmo_depth = 8;
};

/// Throws ParameterError naming the violated window, e.g. "requires r < s < t".
void validate_params(Inequality id, const InequalityParams& p, int n);

struct InequalityReport {
  std::string inequality;
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool flagged = false;
  std::string reason;
  GridSpec grid;
  /// |ratio(2N) - ratio(N)| / ratio(N); absent without refinement.
  std::optional<double> refinement_ratio_change;
  std::string pair_id;
  std::string f_hash;
  std::string g_hash;
  /// Evaluator-specific side values (exponents, individual norms).
  std::map<std::string, double> extras;
  /// Set when the evaluator threw; lhs/rhs/ratio are then meaningless.
  std::string error;

  /// One JSON object on a single line.
  std::string to_json_line() const;
};

/// sup|D^s(fg)| against sup|D^s f| sup|g| + sup|f| sup|D^s g|.
InequalityReport eval_kp_endpoint(const SpectralField& f, const SpectralField& g, double s);

/// Besov-interpolated right side with alpha = (t-s)/(t-r), beta = (s-r)/(t-r).
InequalityReport eval_bgn_besov(const SpectralField& f, const SpectralField& g, double r, double s, double t);
/// Same with sup norms in place of Besov norms.
InequalityReport eval_bgn_linf(const SpectralField& f, const SpectralField& g, double r, double s, double t);

/// sup|D^s f| against sup|D^r f|^alpha sup|D^t f|^beta.
InequalityReport eval_linear_gn(const SpectralField& f, double r, double s, double t);

/// Requires s > 2n+1 and n(1/p1 + 1/p2) < eps < 1; the interpolation
/// exponents are 1 - a and a with a = n(1/p1 + 1/p2)/eps.
InequalityReport eval_thm13(const SpectralField& f, const SpectralField& g, double s, double eps, double p1,
                            double p2);

/// Dyadic BMO of D^s(fg) against the sup-norm right side; requires s > 2n+1.
InequalityReport eval_bmo_endpoint(const SpectralField& f, const SpectralField& g, double s, int bmo_depth = 8);
/// Weak-L1 of D^s(fg) against sup|D^s f| |g|_1 + |f|_1 sup|D^s g|; requires s > 2n+1.
InequalityReport eval_weak_l1_endpoint(const SpectralField& f, const SpectralField& g, double s);

/// Dispatches on id; eval_linear_gn ignores g.
InequalityReport evaluate(Inequality id, const SpectralField& f, const SpectralField& g, const InequalityParams& p);

struct LambdaMin {
  double lambda = 0.0;
  double value = 0.0;
};

/// Minimizes lambda^{r-s} A + lambda^{t-s} B over lambda > 0.
LambdaMin lambda_minimize(double A, double B, double r, double s, double t);

struct SummaryRow {
  std::string inequality;
  double max_ratio = 0.0;
  std::string argmax_pair;
  /// Relative change of max_ratio under N-doubling; absent without refinement.
  std::optional<double> refinement_delta;
  int errors = 0;
};

struct CorpusRun {
  std::vector<InequalityReport> reports;  // corpus order, then inequality order
  std::vector<SummaryRow> summary;        // one row per inequality

  std::string to_jsonl() const;
  /// Header "inequality,max_ratio,argmax_pair,refinement_delta,errors".
  std::string summary_csv() const;
};

/// Evaluates every (pair, inequality). Pairs run in parallel; a throwing
/// evaluator marks its report with `error` and the sweep continues. With
/// refinement the pair is resampled at 2N and the ratio change recorded.
CorpusRun run_corpus(const Corpus& corpus, const std::vector<Inequality>& ids, const InequalityParams& params,
                     bool refinement);

}  // namespace kpforge
