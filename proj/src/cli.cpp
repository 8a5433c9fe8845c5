#include "kpforge/cli.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kpforge/cm_check.hpp"
#include "kpforge/error.hpp"
#include "kpforge/field_io.hpp"
#include "kpforge/fourier_coeffs.hpp"
#include "kpforge/inequalities.hpp"
#include "kpforge/kernel.hpp"
#include "kpforge/multipliers.hpp"
#include "kpforge/norms.hpp"
#include "kpforge/paraproduct.hpp"
#include "kpforge/search.hpp"
#include "kpforge/symbols.hpp"
#include "kpforge/test_function.hpp"

namespace kpforge {

namespace {

using ojson = nlohmann::ordered_json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  os << text;
  if (!os) throw IoError("write failed for " + path);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ojson grid_json(const GridSpec& g) { return {{"n", g.n}, {"N", g.N}, {"L", g.L}}; }

std::vector<Inequality> parse_ids(const std::string& list) {
  if (list == "all") return all_inequalities();
  std::vector<Inequality> ids;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) ids.push_back(parse_inequality(item));
  if (ids.empty()) throw ParameterError("no inequality selected");
  return ids;
}

const CorpusPair& find_pair(const Corpus& corpus, const std::string& id) {
  if (corpus.pairs.empty()) throw ParameterError("corpus is empty");
  if (id.empty()) return corpus.pairs.front();
  for (const auto& p : corpus.pairs)
    if (p.id == id) return p;
  throw ParameterError("no pair '" + id + "' in the corpus");
}

class Driver {
 public:
  Driver(const RunConfig& cfg, std::ostream& out, std::function<bool(const char*)> given)
      : c_(cfg), out_(out), given_(std::move(given)) {}

  int dispatch() {
    const auto& cmd = c_.command;
    if (cmd == "verify") return verify();
    if (cmd == "coeffs") return coeffs();
    if (cmd == "cm-check") return cm();
    if (cmd == "decompose") return decompose();
    if (cmd == "search") return search();
    if (cmd == "field") return field();
    if (cmd == "corpus") return corpus();
    throw ParameterError("unknown command '" + cmd + "'");
  }

 private:
  // Flag values override the corpus grid one component at a time.
  GridSpec grid_or(const GridSpec& base) const {
    if (!c_.grid_given) return base;
    return make_grid(given_("--n") ? c_.n : base.n, given_("--N") ? c_.N : base.N, given_("--L") ? c_.L : base.L);
  }

  Corpus load() const {
    Corpus corpus = load_corpus(c_.corpus);
    corpus.grid = grid_or(corpus.grid);
    return corpus;
  }

  int verify() {
    const auto ids = parse_ids(c_.ineq);
    InequalityParams p;
    p.s = c_.s;
    p.r = c_.r;
    p.t = c_.t;
    p.eps = c_.eps;
    p.p1 = c_.p1;
    p.p2 = c_.p2;
    p.bmo_depth = c_.max_depth;
    const GridSpec flag_grid = make_grid(c_.n, c_.N, c_.L);
    for (auto id : ids) validate_params(id, p, c_.grid_given ? flag_grid.n : 1);
    const Corpus corpus = load();
    for (auto id : ids) validate_params(id, p, corpus.grid.n);

    const auto run = run_corpus(corpus, ids, p, c_.refine);
    const std::string out = c_.out.empty() ? "report.jsonl" : c_.out;
    std::string summary = c_.summary;
    if (summary.empty()) {
      summary = out;
      if (summary.size() > 6 && summary.ends_with(".jsonl")) summary.resize(summary.size() - 6);
      summary += ".summary.csv";
    }
    write_text(out, run.to_jsonl());
    std::ostringstream head;
    head << "# corpus=" << c_.corpus << " n=" << corpus.grid.n << " N=" << corpus.grid.N << " L=" << fmt(corpus.grid.L)
         << " s=" << fmt(p.s) << " r=" << fmt(p.r) << " t=" << fmt(p.t) << " eps=" << fmt(p.eps) << " p1=" << fmt(p.p1)
         << " p2=" << fmt(p.p2) << " bmo_depth=" << p.bmo_depth << " refine=" << (c_.refine ? 1 : 0) << "\n";
    write_text(summary, head.str() + run.summary_csv());
    out_ << run.summary_csv();
    out_ << run.reports.size() << " reports written to " << out << ", summary in " << summary << "\n";
    return 0;
  }

  int coeffs() {
    const int m_max = c_.m_max;
    if (m_max < 1) throw ParameterError("requires mmax >= 1");
    const int quad =
        c_.quad_N > 0 ? c_.quad_N : static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max(16 * m_max, 64))));
    const auto co = fourier_coeffs_phi_s(c_.n, c_.s, m_max, quad);
    std::ostringstream os;
    os << "# n=" << c_.n << " s=" << fmt(c_.s) << " m_max=" << m_max << " quad_N=" << quad
       << " doubling_change=" << fmt(co.doubling_change) << "\n";
    std::string fit_line;
    if (m_max >= 64) {
      const auto fit = coeff_decay_fit(co);
      fit_line = "# fit slope=" + fmt(fit.slope) + " intercept=" + fmt(fit.intercept) + " bins=" +
                 std::to_string(fit.bins) + " expected=" + fmt(-(c_.n + c_.s)) + "\n";
      os << fit_line;
    }
    os << (c_.n == 1 ? "m" : "m1,m2") << ",real,imag,abs\n";
    for (int a = -m_max; a <= m_max; ++a) {
      for (int b = (c_.n == 1 ? 0 : -m_max); b <= (c_.n == 1 ? 0 : m_max); ++b) {
        const auto v = co.at(a, b);
        os << a;
        if (c_.n == 2) os << "," << b;
        os << "," << fmt(v.real()) << "," << fmt(v.imag()) << "," << fmt(std::abs(v)) << "\n";
      }
    }
    write_text(c_.out.empty() ? "coeffs.csv" : c_.out, os.str());
    out_ << (fit_line.empty() ? "no fit (mmax < 64)\n" : fit_line.substr(2));
    return 0;
  }

  SymbolSpec make_symbol() const {
    const auto& name = c_.symbol;
    if (name == "sigma1") return sigma1(c_.s);
    if (name == "sigma2") return sigma2(c_.s);
    if (name == "sigma3-series") return sigma3_series(c_.n, c_.s, c_.m_max);
    if (name == "sigma3-closed") return sigma3_closed(c_.s);
    if (name == "sigma3-complement") return sigma3_complement(c_.s);
    if (name == "pi") return pi_symbol(c_.s);
    if (name == "pi-tilde") return pi_tilde_symbol(c_.s);
    throw ParameterError("unknown symbol '" + name +
                         "' (sigma1, sigma2, sigma3-series, sigma3-closed, sigma3-complement, pi, pi-tilde)");
  }

  int cm() {
    CMSampleSpec spec;
    spec.n = c_.n;
    spec.radii = c_.radii;
    spec.directions = c_.directions;
    spec.rel_step = c_.rel_step;
    const int order = c_.order < 0 ? 2 * c_.n + 1 : c_.order;
    const auto report = cm_check(make_symbol(), order, spec);
    ojson j;
    j["symbol"] = c_.symbol;
    j["n"] = c_.n;
    j["s"] = c_.s;
    if (c_.symbol == "sigma3-series") j["m_max"] = c_.m_max;
    j["max_order"] = order;
    j["sampling"] = {{"radii", spec.radii}, {"directions", spec.directions}, {"radius_min", spec.radius_min},
                     {"radius_max", spec.radius_max}, {"rel_step", spec.rel_step}};
    j["entries"] = ojson::parse(report.to_json());
    write_text(c_.out.empty() ? "cm.json" : c_.out, j.dump(2) + "\n");
    const auto stable = std::count_if(report.entries.begin(), report.entries.end(), [](const CMEntry& e) { return e.stable; });
    out_ << report.entries.size() << " derivative constants, " << stable << " stable\n";
    return 0;
  }

  int decompose() {
    const Corpus corpus = load();
    const auto& pair = find_pair(corpus, c_.pair);
    const auto f = pair.f.sample(corpus.grid);
    const auto g = pair.g.sample(corpus.grid);
    const int m_max = given_("--mmax") ? c_.m_max : 256;
    const auto d = decompose_Ds(f, g, c_.s, m_max);
    const auto split = pi_split(f, g, c_.s);
    const auto shift = t1_shift_identity_check(f, g, c_.s, c_.eps);
    ojson j;
    j["pair"] = pair.id;
    j["grid"] = grid_json(corpus.grid);
    j["s"] = c_.s;
    j["m_max"] = m_max;
    j["relative_residual"] = d.relative_residual;
    j["complement_relative_residual"] = d.complement_relative_residual;
    j["pi_split_relative_residual"] = split.relative_residual;
    j["shift_identity"] = {{"eps", c_.eps}, {"absolute", shift.absolute}, {"relative", shift.relative}};
    if (given_("--r") && corpus.grid.n == 1) {
      const double range = m_max / 16.0 + 2 * corpus.grid.L;
      const K1Kernel kernel(c_.s, c_.r, c_.j_depth, std::min(m_max, 64), range);
      const auto fr = fractional_derivative(f, c_.r);
      const auto via_kernel = apply_pi1_kernel(kernel, fr, g);
      const auto via_symbol = pi1(fr, g, c_.r, c_.s);
      j["kernel"] = {{"r", c_.r},
                     {"j_depth", c_.j_depth},
                     {"m_max", kernel.m_max()},
                     {"relative_sup_error", relative_sup_error(via_kernel, via_symbol)},
                     {"tail_bound", kernel.tail_bound()}};
    }
    write_text(c_.out.empty() ? "decompose.json" : c_.out, j.dump(2) + "\n");
    out_ << "decomposition residual " << fmt(d.relative_residual) << ", complement residual "
         << fmt(d.complement_relative_residual) << ", pi split residual " << fmt(split.relative_residual) << "\n";
    return 0;
  }

  int search() {
    SearchConfig cfg;
    cfg.seed = c_.seed;
    cfg.s = c_.s;
    cfg.population = c_.population;
    cfg.iterations = c_.iterations;
    cfg.packets = c_.packets;
    cfg.grid = grid_or(cfg.grid);
    cfg.initial_step = c_.step;
    cfg.decay = c_.decay;
    cfg.elite_fraction = c_.elite;
    cfg.k_fraction = c_.k_fraction;
    if (!given_("--s") && !c_.sweep) cfg.s = 3.0;
    cfg.validate();
    const std::string out = c_.out.empty() ? "search.json" : c_.out;
    if (c_.sweep) {
      const auto results = run_search_sweep(cfg, {0.5, 1, 2, 3, 4});
      ojson arr = ojson::array();
      std::string log;
      for (const auto& r : results) {
        arr.push_back(ojson::parse(r.to_json()));
        for (const auto& h : r.history)
          log += ojson{{"s", r.config.s}, {"iter", h.iter}, {"best_ratio", h.best_ratio}, {"mean_ratio", h.mean_ratio},
                       {"step", h.step}}.dump() + "\n";
        out_ << "s=" << fmt(r.config.s) << " best ratio " << fmt(r.best_ratio) << " (2N: " << fmt(r.refined_ratio)
             << (r.discretization_artifact ? ", discretization artifact" : "") << ")\n";
      }
      write_text(out, arr.dump(2) + "\n");
      if (!c_.log.empty()) write_text(c_.log, log);
      return 0;
    }
    const auto r = run_search(cfg);
    write_text(out, r.to_json() + "\n");
    if (!c_.log.empty()) write_text(c_.log, r.log_jsonl());
    if (!c_.export_path.empty()) write_text(c_.export_path, write_manifest(r.best_as_corpus()));
    out_ << "best ratio " << fmt(r.best_ratio) << " (2N: " << fmt(r.refined_ratio)
         << (r.discretization_artifact ? ", discretization artifact" : "") << ")\n";
    out_ << "empirical lower bound for the constant at s=" << fmt(cfg.s) << ", not a counterexample\n";
    return 0;
  }

  int field() {
    if (c_.dump.empty() == c_.load.empty()) throw ParameterError("field needs exactly one of --dump or --load");
    if (!c_.dump.empty()) {
      SpectralField f;
      if (!c_.spec.empty()) {
        const GridSpec grid = make_grid(c_.n, c_.N, c_.L);
        f = parse_spec(c_.spec, grid.n).sample(grid);
      } else {
        const Corpus corpus = load();
        const auto& pair = find_pair(corpus, c_.pair);
        if (c_.which != "f" && c_.which != "g") throw ParameterError("--which must be f or g");
        f = (c_.which == "f" ? pair.f : pair.g).sample(corpus.grid);
      }
      write_kpf(c_.dump, f);
      out_ << "wrote " << c_.dump << " (" << f.grid().describe() << ")\n";
      return 0;
    }
    const auto bytes = read_bytes(c_.load);
    const auto f = decode_kpf(bytes);
    const auto again = encode_kpf(f);
    if (again != bytes) throw IoError("re-encoded field differs from " + c_.load);
    if (!c_.out.empty()) write_kpf(c_.out, f);
    out_ << "loaded " << c_.load << " (" << f.grid().describe() << "), sup " << fmt(sup_norm(f)) << ", L2 "
         << fmt(lp_norm(f, 2)) << ", round trip byte-identical\n";
    return 0;
  }

  int corpus() {
    const Corpus corpus = load();
    const auto text = write_manifest(corpus);
    if (!c_.out.empty()) write_text(c_.out, text);
    else out_ << text;
    return 0;
  }

  const RunConfig& c_;
  std::ostream& out_;
  std::function<bool(const char*)> given_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"kpforge: numerical laboratory for fractional Leibniz estimates"};
  app.set_config("--config", "", "key=value file, '#' comments; flags override it");
  app.require_subcommand(1, 1);

  auto grid = "Grid";
  app.add_option("--n", cfg.n, "dimension (1 or 2)")->group(grid);
  app.add_option("--N", cfg.N, "samples per axis (power of two)")->group(grid);
  app.add_option("--L", cfg.L, "box side")->group(grid);

  auto ineq = "Orders and exponents";
  app.add_option("--s", cfg.s, "order s")->group(ineq);
  app.add_option("--r", cfg.r, "lower order r")->group(ineq);
  app.add_option("--t", cfg.t, "upper order t")->group(ineq);
  app.add_option("--eps", cfg.eps, "epsilon")->group(ineq);
  app.add_option("--p1", cfg.p1, "Lebesgue exponent for f")->group(ineq);
  app.add_option("--p2", cfg.p2, "Lebesgue exponent for g")->group(ineq);
  app.add_option("--ineq", cfg.ineq, "kpinfty, bgn-besov, bgn-linf, linear-gn, thm13, bmo, weak-l1, a comma list or all")
      ->group(ineq);

  auto io = "Inputs and outputs";
  app.add_option("--corpus", cfg.corpus, "'default' or a manifest path")->group(io);
  app.add_option("--pair", cfg.pair, "corpus pair id")->group(io);
  app.add_option("--which", cfg.which, "f or g")->group(io);
  app.add_option("--spec", cfg.spec, "packets 'a=1 c=0 w=2 k=1 phi=0; ...'")->group(io);
  app.add_option("--out", cfg.out, "output file")->group(io);
  app.add_option("--summary", cfg.summary, "summary CSV (verify)")->group(io);
  app.add_option("--log", cfg.log, "per-iteration JSON lines (search)")->group(io);
  app.add_option("--export", cfg.export_path, "best pair as a corpus manifest (search)")->group(io);
  app.add_option("--dump", cfg.dump, "write a KPF1 field")->group(io);
  app.add_option("--load", cfg.load, "read a KPF1 field and check the round trip")->group(io);

  auto srch = "Search";
  app.add_option("--seed", cfg.seed, "random seed")->group(srch);
  app.add_option("--pop", cfg.population, "population")->group(srch);
  app.add_option("--iters", cfg.iterations, "iterations")->group(srch);
  app.add_option("--packets", cfg.packets, "packets per function")->group(srch);
  app.add_option("--step", cfg.step, "initial relative step")->group(srch);
  app.add_option("--decay", cfg.decay, "step decay per iteration")->group(srch);
  app.add_option("--elite", cfg.elite, "elite fraction")->group(srch);
  app.add_option("--k-fraction", cfg.k_fraction, "frequency box as a fraction of nyquist")->group(srch);
  app.add_flag("--sweep", cfg.sweep, "run at s = 0.5, 1, 2, 3, 4")->group(srch);

  auto num = "Truncation and sampling";
  app.add_option("--mmax", cfg.m_max, "Fourier coefficient cutoff")->group(num);
  app.add_option("--quad", cfg.quad_N, "quadrature points (0: automatic)")->group(num);
  app.add_option("--j-depth", cfg.j_depth, "kernel scale depth")->group(num);
  app.add_option("--max-depth", cfg.max_depth, "BMO cube depth")->group(num);
  app.add_flag("--refine", cfg.refine, "re-evaluate at 2N")->group(num);
  app.add_option("--symbol", cfg.symbol, "symbol for cm-check")->group(num);
  app.add_option("--order", cfg.order, "derivative order for cm-check (default 2n+1)")->group(num);
  app.add_option("--radii", cfg.radii, "cm-check radial shells")->group(num);
  app.add_option("--directions", cfg.directions, "cm-check directions per shell")->group(num);
  app.add_option("--rel-step", cfg.rel_step, "cm-check finite-difference step")->group(num);

  for (const char* name : {"verify", "coeffs", "cm-check", "decompose", "search", "field", "corpus"}) {
    app.add_subcommand(name)->fallthrough();
  }
  app.get_subcommand("verify")->description("evaluate inequalities over a corpus");
  app.get_subcommand("coeffs")->description("Fourier coefficients and decay fit");
  app.get_subcommand("cm-check")->description("Coifman-Meyer derivative audit of a symbol");
  app.get_subcommand("decompose")->description("three-term decomposition residuals for a corpus pair");
  app.get_subcommand("search")->description("seeded search for large kpinfty ratios");
  app.get_subcommand("field")->description("dump or load KPF1 fields");
  app.get_subcommand("corpus")->description("print or write a corpus manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return e.get_exit_code() == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  auto given = [&app](const char* name) { return app.get_option(name)->count() > 0; };
  cfg.grid_given = given("--n") || given("--N") || given("--L");
  if (cfg.command == "search" && !cfg.grid_given) {
    const SearchConfig defaults;
    cfg.n = defaults.grid.n;
    cfg.N = defaults.grid.N;
    cfg.L = defaults.grid.L;
  }

  try {
    return Driver(cfg, out, given).dispatch();
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const GridMismatch& e) {
    err << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const AliasingError& e) {
    err << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return 1;
  } catch (const ResolutionError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace kpforge
