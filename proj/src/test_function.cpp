#include "kpforge/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kpforge/error.hpp"
#include "kpforge/rng.hpp"

namespace kpforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_vec(const Vec2& v, int n) { return n == 1 ? fmt(v[0]) : fmt(v[0]) + "," + fmt(v[1]); }

// Gaussian envelope along one axis, summed over translates by L.
std::vector<double> periodized_envelope(const GridSpec& grid, double center, double width) {
  const int images = 1 + static_cast<int>(std::ceil(9.0 * width / grid.L));
  std::vector<double> env(static_cast<std::size_t>(grid.N), 0.0);
  for (int k = 0; k < grid.N; ++k) {
    const double x = grid.coordinate(k);
    double acc = 0.0;
    for (int p = -images; p <= images; ++p) {
      const double d = (x - center - p * grid.L) / width;
      acc += std::exp(-0.5 * d * d);
    }
    env[k] = acc;
  }
  return env;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Vec2 lattice_frequency(const Vec2& k, const GridSpec& grid) {
  return {std::round(k[0] * grid.L) / grid.L, std::round(k[1] * grid.L) / grid.L};
}

void TestFunctionSpec::validate(const GridSpec& grid) const {
  if (n != grid.n) throw ParameterError("test function dimension differs from the grid");
  if (packets.empty() || packets.size() > 16) throw ParameterError("a test function needs 1 to 16 packets");
  for (const auto& p : packets) {
    if (!std::isfinite(p.amplitude) || !std::isfinite(p.phase)) throw ParameterError("packet parameters must be finite");
    if (!(p.width >= grid.L / 64 * (1 - 1e-12) && p.width <= grid.L / 4 * (1 + 1e-12)))
      throw ParameterError("packet width must lie in [L/64, L/4]");
    for (int d = 0; d < n; ++d)
      if (!(p.center[d] >= -grid.L / 2 && p.center[d] < grid.L / 2))
        throw ParameterError("packet center must lie inside the box");
    if (norm(p.k) > grid.nyquist() / 4 * (1 + 1e-12)) throw ParameterError("packet frequency must satisfy |k| <= nyquist/4");
  }
}

SpectralField TestFunctionSpec::sample(const GridSpec& grid) const {
  validate(grid);
  const auto N = static_cast<std::size_t>(grid.N);
  std::vector<double> out(grid.size(), 0.0);
  for (const auto& p : packets) {
    const Vec2 k = lattice_frequency(p.k, grid);
    const auto e0 = periodized_envelope(grid, p.center[0], p.width);
    if (n == 1) {
      for (std::size_t i = 0; i < N; ++i)
        out[i] += p.amplitude * e0[i] * std::cos(kTwoPi * k[0] * grid.coordinate(static_cast<int>(i)) + p.phase);
    } else {
      const auto e1 = periodized_envelope(grid, p.center[1], p.width);
      for (std::size_t a = 0; a < N; ++a) {
        const double x0 = grid.coordinate(static_cast<int>(a));
        for (std::size_t b = 0; b < N; ++b) {
          const double x1 = grid.coordinate(static_cast<int>(b));
          out[a * N + b] += p.amplitude * e0[a] * e1[b] * std::cos(kTwoPi * (k[0] * x0 + k[1] * x1) + p.phase);
        }
      }
    }
  }
  return SpectralField::from_samples(grid, std::move(out));
}

std::string TestFunctionSpec::canonical() const {
  std::string s = "n=" + std::to_string(n);
  for (const auto& p : packets) {
    s += ";a=" + fmt(p.amplitude) + ",c=" + fmt_vec(p.center, n) + ",w=" + fmt(p.width) + ",k=" + fmt_vec(p.k, n) +
         ",phi=" + fmt(p.phase);
  }
  return s;
}

std::string TestFunctionSpec::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical())));
  return buf;
}

Corpus default_corpus() {
  Corpus corpus;
  corpus.grid = make_grid(1, 1024, 16.0);
  SplitMix64 rng(0x6B70666F72676531ULL);
  const double dk = 1.0 / corpus.grid.L;
  auto on_lattice = [dk](double k) { return std::round(k / dk) * dk; };
  auto signed_amp = [&rng] { return (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 1.5); };
  auto packet = [&](double k, double wlo, double whi, double cspread) {
    Packet p;
    p.amplitude = signed_amp();
    p.center = {rng.uniform(-cspread, cspread), 0.0};
    p.width = rng.uniform(wlo, whi);
    p.k = {on_lattice(k), 0.0};
    p.phase = rng.uniform(0.0, kTwoPi);
    return p;
  };
  auto single = [](Packet p) { return TestFunctionSpec{1, {p}}; };
  char id[16];

  for (int i = 0; i < 6; ++i) {
    const double k = 0.5 + 0.4 * i;
    std::snprintf(id, sizeof id, "single-%02d", i);
    corpus.pairs.push_back({id, "single-frequency", single(packet(k, 1.5, 4.0, 1.0)), single(packet(k, 1.5, 4.0, 1.0))});
  }
  for (int i = 0; i < 6; ++i) {
    std::snprintf(id, sizeof id, "separated-%02d", i);
    const double kf = rng.uniform(2.0, 2.5);
    const double kg = rng.uniform(0.0, 0.25);
    corpus.pairs.push_back(
        {id, "separated-frequency", single(packet(kf, 1.0, 3.0, 2.0)), single(packet(kg, 1.0, 3.0, 2.0))});
  }
  for (int i = 0; i < 6; ++i) {
    std::snprintf(id, sizeof id, "nested-%02d", i);
    TestFunctionSpec f{1, {}}, g{1, {}};
    for (auto* spec : {&f, &g}) {
      const int count = 2 + static_cast<int>(rng.uniform() * 2.0);  // 2 or 3 packets
      const double center = rng.uniform(-2.0, 2.0);
      const double widths[3] = {0.5, 1.5, 3.0};
      for (int q = 0; q < count; ++q) {
        Packet p = packet(rng.uniform(0.5, 2.0), widths[q], widths[q], 0.0);
        p.center = {center, 0.0};
        spec->packets.push_back(p);
      }
    }
    corpus.pairs.push_back({id, "nested-packet", f, g});
  }
  for (int i = 0; i < 6; ++i) {
    std::snprintf(id, sizeof id, "resonant-%02d", i);
    const double k = rng.uniform(1.0, 2.0);
    const double delta = (1 + i % 3) * dk;
    corpus.pairs.push_back(
        {id, "near-resonant", single(packet(k, 1.0, 3.0, 1.0)), single(packet(k + delta, 1.0, 3.0, 1.0))});
  }
  return corpus;
}

std::string write_manifest(const Corpus& corpus) {
  std::ostringstream os;
  os << "# kpforge corpus manifest\n";
  os << "grid n=" << corpus.grid.n << " N=" << corpus.grid.N << " L=" << fmt(corpus.grid.L) << "\n";
  for (const auto& pair : corpus.pairs) {
    os << "pair " << pair.id << " " << pair.category << "\n";
    for (const auto* spec : {&pair.f, &pair.g}) {
      for (const auto& p : spec->packets) {
        os << (spec == &pair.f ? "f" : "g") << " a=" << fmt(p.amplitude) << " c=" << fmt_vec(p.center, spec->n)
           << " w=" << fmt(p.width) << " k=" << fmt_vec(p.k, spec->n) << " phi=" << fmt(p.phase) << "\n";
      }
    }
    os << "end\n";
  }
  return os.str();
}

namespace {

[[noreturn]] void bad_manifest(int line, const std::string& why) {
  throw IoError("manifest line " + std::to_string(line) + ": " + why);
}

double parse_number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ParameterError("bad number '" + s + "'");
}

Vec2 parse_vec(const std::string& s, int n) {
  const auto comma = s.find(',');
  if (n == 1) {
    if (comma != std::string::npos) throw ParameterError("expected a scalar for n=1");
    return {parse_number(s), 0.0};
  }
  if (comma == std::string::npos) throw ParameterError("expected two components for n=2");
  return {parse_number(s.substr(0, comma)), parse_number(s.substr(comma + 1))};
}

}  // namespace

Packet parse_packet(const std::string& fields, int n) {
  Packet pk;
  std::istringstream ls(fields);
  std::string tok;
  bool seen[5] = {};
  static const char* keys[5] = {"a", "c", "w", "k", "phi"};
  while (ls >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParameterError("expected key=value, got '" + tok + "'");
    const auto key = tok.substr(0, eq);
    const auto val = tok.substr(eq + 1);
    int which = -1;
    for (int i = 0; i < 5; ++i)
      if (key == keys[i]) which = i;
    if (which < 0) throw ParameterError("unknown packet key '" + key + "'");
    if (seen[which]) throw ParameterError("repeated packet key '" + key + "'");
    seen[which] = true;
    switch (which) {
      case 0: pk.amplitude = parse_number(val); break;
      case 1: pk.center = parse_vec(val, n); break;
      case 2: pk.width = parse_number(val); break;
      case 3: pk.k = parse_vec(val, n); break;
      default: pk.phase = parse_number(val); break;
    }
  }
  for (int i = 0; i < 5; ++i)
    if (!seen[i]) throw ParameterError(std::string("packet is missing '") + keys[i] + "'");
  return pk;
}

TestFunctionSpec parse_spec(const std::string& text, int n) {
  TestFunctionSpec spec{n, {}};
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto semi = std::min(text.find(';', start), text.size());
    const auto piece = text.substr(start, semi - start);
    if (piece.find_first_not_of(" \t") != std::string::npos) spec.packets.push_back(parse_packet(piece, n));
    start = semi + 1;
  }
  if (spec.packets.empty()) throw ParameterError("empty test function");
  return spec;
}

Corpus parse_manifest(const std::string& text) {
  Corpus corpus;
  bool have_grid = false;
  CorpusPair* open = nullptr;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "grid") {
      int n = 0, N = 0;
      double L = 0;
      std::string tok;
      while (ls >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) bad_manifest(line, "expected key=value");
        const auto key = tok.substr(0, eq);
        const auto val = tok.substr(eq + 1);
        try {
          if (key == "n") n = static_cast<int>(parse_number(val));
          else if (key == "N") N = static_cast<int>(parse_number(val));
          else if (key == "L") L = parse_number(val);
          else bad_manifest(line, "unknown grid key '" + key + "'");
        } catch (const ParameterError& e) {
          bad_manifest(line, e.what());
        }
      }
      try {
        corpus.grid = make_grid(n, N, L);
      } catch (const ParameterError& e) {
        bad_manifest(line, e.what());
      }
      have_grid = true;
    } else if (head == "pair") {
      if (!have_grid) bad_manifest(line, "pair before grid");
      if (open) bad_manifest(line, "pair without end");
      CorpusPair p;
      if (!(ls >> p.id)) bad_manifest(line, "pair needs an id");
      ls >> p.category;
      p.f.n = p.g.n = corpus.grid.n;
      corpus.pairs.push_back(p);
      open = &corpus.pairs.back();
    } else if (head == "f" || head == "g") {
      if (!open) bad_manifest(line, "packet outside a pair");
      std::string rest;
      std::getline(ls, rest);
      Packet pk;
      try {
        pk = parse_packet(rest, corpus.grid.n);
      } catch (const ParameterError& e) {
        bad_manifest(line, e.what());
      }
      (head == "f" ? open->f : open->g).packets.push_back(pk);
    } else if (head == "end") {
      if (!open) bad_manifest(line, "end without pair");
      if (open->f.packets.empty() || open->g.packets.empty()) bad_manifest(line, "pair needs f and g packets");
      open = nullptr;
    } else {
      bad_manifest(line, "unknown directive '" + head + "'");
    }
  }
  if (open) bad_manifest(line, "missing end");
  if (!have_grid) bad_manifest(line, "missing grid line");
  return corpus;
}

Corpus load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read corpus manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

Corpus load_corpus(const std::string& name_or_path) {
  if (name_or_path == "default") return default_corpus();
  return load_manifest(name_or_path);
}

}  // namespace kpforge
