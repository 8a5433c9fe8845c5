#include "kpforge/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "kpforge/error.hpp"
#include "kpforge/multipliers.hpp"
#include "kpforge/norms.hpp"
#include "kpforge/parallel.hpp"
#include "kpforge/paraproduct.hpp"

namespace kpforge {

namespace {

const std::vector<std::pair<Inequality, const char*>>& names() {
  static const std::vector<std::pair<Inequality, const char*>> table = {
      {Inequality::KpEndpoint, "kpinfty"}, {Inequality::BgnBesov, "bgn-besov"}, {Inequality::BgnLinf, "bgn-linf"},
      {Inequality::LinearGn, "linear-gn"}, {Inequality::Thm13, "thm13"},        {Inequality::Bmo, "bmo"},
      {Inequality::WeakL1, "weak-l1"},
  };
  return table;
}

void require_order(double r, double s, double t) {
  if (!(r >= 0.0)) throw ParameterError("requires r >= 0");
  if (!(r < s && s < t)) throw ParameterError("requires r < s < t");
}

void require_high_s(double s, int n) {
  if (!(s > 2 * n + 1)) throw ParameterError("requires s > 2n+1");
}

double dual_sum(double p1, double p2) { return 1.0 / p1 + 1.0 / p2; }

void finish(InequalityReport& rep) {
  if (rep.rhs > 0.0) {
    rep.ratio = rep.lhs / rep.rhs;
  } else {
    rep.ratio = 0.0;
    rep.flagged = true;
    rep.reason = "rhs is zero";
  }
}

InequalityReport start(const char* id, const GridSpec& grid, std::map<std::string, double> params) {
  InequalityReport rep;
  rep.inequality = id;
  rep.grid = grid;
  rep.params = std::move(params);
  return rep;
}

SpectralField ds_product(const SpectralField& f, const SpectralField& g, double s) {
  require_product_safe(f, g);
  return fractional_derivative(pointwise_product(f, g), s);
}

InequalityReport bgn(const char* id, const SpectralField& f, const SpectralField& g, double r, double s, double t,
                     bool besov) {
  require_order(r, s, t);
  auto rep = start(id, f.grid(), {{"r", r}, {"s", s}, {"t", t}});
  const double alpha = (t - s) / (t - r);
  const double beta = (s - r) / (t - r);
  auto outer = [besov](const SpectralField& h) { return besov ? besov_norm(h).value : sup_norm(h).value; };
  const double fr = outer(fractional_derivative(f, r));
  const double ft = outer(fractional_derivative(f, t));
  const double gr = outer(fractional_derivative(g, r));
  const double gt = outer(fractional_derivative(g, t));
  const double sf = sup_norm(f);
  const double sg = sup_norm(g);
  rep.lhs = sup_norm(ds_product(f, g, s));
  rep.rhs = std::pow(fr, alpha) * std::pow(ft, beta) * sg + sf * std::pow(gr, alpha) * std::pow(gt, beta);
  rep.extras = {{"alpha", alpha}, {"beta", beta}, {"f_r", fr}, {"f_t", ft}, {"g_r", gr}, {"g_t", gt}};
  finish(rep);
  return rep;
}

}  // namespace

std::string to_string(Inequality id) {
  for (const auto& [k, v] : names())
    if (k == id) return v;
  return "unknown";
}

Inequality parse_inequality(const std::string& id) {
  for (const auto& [k, v] : names())
    if (id == v) return k;
  throw ParameterError("unknown inequality '" + id + "'");
}

const std::vector<Inequality>& all_inequalities() {
  static const std::vector<Inequality> all = [] {
    std::vector<Inequality> v;
    for (const auto& entry : names()) v.push_back(entry.first);
    return v;
  }();
  return all;
}

void validate_params(Inequality id, const InequalityParams& p, int n) {
  switch (id) {
    case Inequality::KpEndpoint:
      if (!(p.s > 0.0)) throw ParameterError("requires s > 0");
      break;
    case Inequality::BgnBesov:
    case Inequality::BgnLinf:
    case Inequality::LinearGn:
      require_order(p.r, p.s, p.t);
      break;
    case Inequality::Thm13:
      require_high_s(p.s, n);
      if (!(p.p1 > 1.0 && p.p2 > 1.0) || !std::isfinite(p.p1) || !std::isfinite(p.p2))
        throw ParameterError("requires 1 < p1, p2 < inf");
      if (!(n * dual_sum(p.p1, p.p2) < p.eps && p.eps < 1.0)) throw ParameterError("requires n/p < eps < 1");
      break;
    case Inequality::Bmo:
      require_high_s(p.s, n);
      if (p.bmo_depth < 0) throw ParameterError("requires bmo_depth >= 0");
      break;
    case Inequality::WeakL1:
      require_high_s(p.s, n);
      break;
  }
}

InequalityReport eval_kp_endpoint(const SpectralField& f, const SpectralField& g, double s) {
  validate_params(Inequality::KpEndpoint, InequalityParams{.s = s}, f.grid().n);
  auto rep = start("kpinfty", f.grid(), {{"s", s}});
  const double dsf = sup_norm(fractional_derivative(f, s));
  const double dsg = sup_norm(fractional_derivative(g, s));
  const double sf = sup_norm(f);
  const double sg = sup_norm(g);
  rep.lhs = sup_norm(ds_product(f, g, s));
  rep.rhs = dsf * sg + sf * dsg;
  rep.extras = {{"sup_Dsf", dsf}, {"sup_Dsg", dsg}, {"sup_f", sf}, {"sup_g", sg}};
  finish(rep);
  return rep;
}

InequalityReport eval_bgn_besov(const SpectralField& f, const SpectralField& g, double r, double s, double t) {
  return bgn("bgn-besov", f, g, r, s, t, true);
}

InequalityReport eval_bgn_linf(const SpectralField& f, const SpectralField& g, double r, double s, double t) {
  return bgn("bgn-linf", f, g, r, s, t, false);
}

InequalityReport eval_linear_gn(const SpectralField& f, double r, double s, double t) {
  require_order(r, s, t);
  auto rep = start("linear-gn", f.grid(), {{"r", r}, {"s", s}, {"t", t}});
  const double alpha = (t - s) / (t - r);
  const double beta = (s - r) / (t - r);
  const double fr = sup_norm(fractional_derivative(f, r));
  const double ft = sup_norm(fractional_derivative(f, t));
  rep.lhs = sup_norm(fractional_derivative(f, s));
  rep.rhs = std::pow(fr, alpha) * std::pow(ft, beta);
  rep.extras = {{"alpha", alpha}, {"beta", beta}, {"f_r", fr}, {"f_t", ft}};
  finish(rep);
  return rep;
}

InequalityReport eval_thm13(const SpectralField& f, const SpectralField& g, double s, double eps, double p1,
                            double p2) {
  const int n = f.grid().n;
  validate_params(Inequality::Thm13, InequalityParams{.s = s, .eps = eps, .p1 = p1, .p2 = p2}, n);
  auto rep = start("thm13", f.grid(), {{"s", s}, {"eps", eps}, {"p1", p1}, {"p2", p2}});
  const double a = n * dual_sum(p1, p2) / eps;
  const auto dsf = fractional_derivative(f, s);
  const auto dsg = fractional_derivative(g, s);
  const auto dsef = fractional_derivative(f, s + eps);
  const auto dseg = fractional_derivative(g, s + eps);
  const double term_f = std::pow(lp_norm(dsf, p1).value, 1.0 - a) * std::pow(lp_norm(dsef, p1).value, a) *
                        lp_norm(g, p2).value;
  const double term_g = lp_norm(f, p1).value * std::pow(lp_norm(dsg, p2).value, 1.0 - a) *
                        std::pow(lp_norm(dseg, p2).value, a);
  const double sup_terms = sup_norm(dsf) * sup_norm(g) + sup_norm(f) * sup_norm(dsg);
  rep.lhs = sup_norm(ds_product(f, g, s));
  rep.rhs = term_f + term_g + sup_terms;
  rep.extras = {{"exponent_low", 1.0 - a}, {"exponent_high", a}, {"lp_terms", term_f + term_g},
                {"sup_terms", sup_terms}};
  finish(rep);
  return rep;
}

InequalityReport eval_bmo_endpoint(const SpectralField& f, const SpectralField& g, double s, int bmo_depth) {
  validate_params(Inequality::Bmo, InequalityParams{.s = s, .bmo_depth = bmo_depth}, f.grid().n);
  auto rep = start("bmo", f.grid(), {{"s", s}, {"bmo_depth", bmo_depth}});
  const auto prod = ds_product(f, g, s);
  rep.lhs = bmo_norm(prod, bmo_depth);
  rep.rhs = sup_norm(fractional_derivative(f, s)) * sup_norm(g) + sup_norm(f) * sup_norm(fractional_derivative(g, s));
  rep.extras = {{"sup_lhs", sup_norm(prod)}};
  finish(rep);
  return rep;
}

InequalityReport eval_weak_l1_endpoint(const SpectralField& f, const SpectralField& g, double s) {
  validate_params(Inequality::WeakL1, InequalityParams{.s = s}, f.grid().n);
  auto rep = start("weak-l1", f.grid(), {{"s", s}});
  const auto prod = ds_product(f, g, s);
  rep.lhs = weak_l1(prod);
  rep.rhs = sup_norm(fractional_derivative(f, s)) * lp_norm(g, 1) + lp_norm(f, 1) * sup_norm(fractional_derivative(g, s));
  rep.extras = {{"l1_lhs", lp_norm(prod, 1)}};
  finish(rep);
  return rep;
}

InequalityReport evaluate(Inequality id, const SpectralField& f, const SpectralField& g, const InequalityParams& p) {
  switch (id) {
    case Inequality::KpEndpoint: return eval_kp_endpoint(f, g, p.s);
    case Inequality::BgnBesov: return eval_bgn_besov(f, g, p.r, p.s, p.t);
    case Inequality::BgnLinf: return eval_bgn_linf(f, g, p.r, p.s, p.t);
    case Inequality::LinearGn: return eval_linear_gn(f, p.r, p.s, p.t);
    case Inequality::Thm13: return eval_thm13(f, g, p.s, p.eps, p.p1, p.p2);
    case Inequality::Bmo: return eval_bmo_endpoint(f, g, p.s, p.bmo_depth);
    case Inequality::WeakL1: return eval_weak_l1_endpoint(f, g, p.s);
  }
  throw ParameterError("unknown inequality");
}

LambdaMin lambda_minimize(double A, double B, double r, double s, double t) {
  if (!(A > 0.0) || !(B > 0.0)) throw ParameterError("requires A > 0 and B > 0");
  if (!(r < s && s < t)) throw ParameterError("requires r < s < t");
  LambdaMin out;
  out.lambda = std::pow((s - r) * A / ((t - s) * B), 1.0 / (t - r));
  out.value = std::pow(out.lambda, r - s) * A + std::pow(out.lambda, t - s) * B;
  return out;
}

std::string InequalityReport::to_json_line() const {
  nlohmann::ordered_json j;
  j["inequality"] = inequality;
  j["pair"] = pair_id;
  j["params"] = params;
  j["grid"] = {{"n", grid.n}, {"N", grid.N}, {"L", grid.L}};
  if (!error.empty()) {
    j["error"] = error;
  } else {
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["ratio"] = ratio;
    j["flagged"] = flagged;
    if (flagged) j["reason"] = reason;
    j["refinement_ratio_change"] = refinement_ratio_change ? nlohmann::ordered_json(*refinement_ratio_change) : nullptr;
    j["extras"] = extras;
  }
  j["f_hash"] = f_hash;
  j["g_hash"] = g_hash;
  return j.dump();
}

std::string CorpusRun::to_jsonl() const {
  std::string out;
  for (const auto& r : reports) out += r.to_json_line() + "\n";
  return out;
}

std::string CorpusRun::summary_csv() const {
  std::string out = "inequality,max_ratio,argmax_pair,refinement_delta,errors\n";
  char buf[64];
  for (const auto& row : summary) {
    out += row.inequality + ",";
    std::snprintf(buf, sizeof buf, "%.17g", row.max_ratio);
    out += std::string(buf) + "," + row.argmax_pair + ",";
    if (row.refinement_delta) {
      std::snprintf(buf, sizeof buf, "%.17g", *row.refinement_delta);
      out += buf;
    }
    out += "," + std::to_string(row.errors) + "\n";
  }
  return out;
}

CorpusRun run_corpus(const Corpus& corpus, const std::vector<Inequality>& ids, const InequalityParams& params,
                     bool refinement) {
  if (corpus.pairs.empty()) throw ParameterError("corpus is empty");
  CorpusRun run;
  if (ids.empty()) return run;
  const std::size_t P = corpus.pairs.size();
  const std::size_t I = ids.size();
  std::vector<InequalityReport> reports(P * I);
  std::vector<double> refined_ratio(P * I, 0.0);
  const GridSpec fine = refinement ? refine(corpus.grid) : corpus.grid;

  parallel_for(P, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const auto& pair = corpus.pairs[p];
      SpectralField f, g, f2, g2;
      std::string sample_error;
      try {
        f = pair.f.sample(corpus.grid);
        g = pair.g.sample(corpus.grid);
        if (refinement) {
          f2 = pair.f.sample(fine);
          g2 = pair.g.sample(fine);
        }
      } catch (const std::exception& e) {
        sample_error = e.what();
      }
      for (std::size_t i = 0; i < I; ++i) {
        auto& rep = reports[p * I + i];
        try {
          if (!sample_error.empty()) throw ParameterError(sample_error);
          rep = evaluate(ids[i], f, g, params);
          if (refinement) {
            const auto rep2 = evaluate(ids[i], f2, g2, params);
            refined_ratio[p * I + i] = rep2.ratio;
            if (rep.ratio > 0.0) rep.refinement_ratio_change = std::abs(rep2.ratio - rep.ratio) / rep.ratio;
          }
        } catch (const std::exception& e) {
          rep = InequalityReport{};
          rep.inequality = to_string(ids[i]);
          rep.grid = corpus.grid;
          rep.error = e.what();
        }
        rep.pair_id = pair.id;
        rep.f_hash = pair.f.hash();
        rep.g_hash = pair.g.hash();
      }
    }
  });

  for (std::size_t i = 0; i < I; ++i) {
    SummaryRow row;
    row.inequality = to_string(ids[i]);
    double fine_max = 0.0;
    bool any = false;
    for (std::size_t p = 0; p < P; ++p) {
      const auto& rep = reports[p * I + i];
      if (!rep.error.empty()) {
        ++row.errors;
        continue;
      }
      if (rep.flagged) continue;
      if (!any || rep.ratio > row.max_ratio) {
        row.max_ratio = rep.ratio;
        row.argmax_pair = rep.pair_id;
      }
      any = true;
      fine_max = std::max(fine_max, refined_ratio[p * I + i]);
    }
    if (refinement && any && row.max_ratio > 0.0) row.refinement_delta = std::abs(fine_max - row.max_ratio) / row.max_ratio;
    run.summary.push_back(row);
  }
  run.reports = std::move(reports);
  return run;
}

}  // namespace kpforge
