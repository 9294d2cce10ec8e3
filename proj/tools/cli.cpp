#include "cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdenum.hpp"

namespace sdenum::cli {
namespace {

/// Input the user got wrong; maps to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModeFlags {
  bool row_wise = false;
  bool no_self = false;
  bool reachable = false;
  bool sorted = false;
  bool dedup = false;
  std::optional<std::uint64_t> source;

  OutputMode mode() const { return {row_wise, no_self, reachable, sorted}; }

  void add_to(CLI::App* app) {
    app->add_flag("--row-wise", row_wise, "group output by source vertex");
    app->add_flag("--no-self", no_self, "omit (v, v, 0)");
    app->add_flag("--reachable", reachable, "omit infinite distances");
    app->add_flag("--sorted", sorted, "globally non-decreasing distances");
    app->add_flag("--dedup", dedup, "one triple per unordered pair (undirected graphs)");
    app->add_option("--source", source, "single-source mode from this vertex");
  }

  void check() const {
    if (!mode().valid()) throw UsageError("--row-wise and --sorted cannot be combined");
    if (dedup && source) throw UsageError("--dedup applies to all-pairs output only");
  }
};

std::unique_ptr<Enumerator> build(const Graph& g, const ModeFlags& f) {
  f.check();
  std::optional<Vertex> src;
  if (f.source) {
    if (*f.source >= g.n()) throw UsageError("source " + std::to_string(*f.source) + " out of range");
    src = static_cast<Vertex>(*f.source);
  }
  auto e = make_enumerator(g, f.mode(), src);
  if (f.dedup) e = dedup_undirected(std::move(e));
  return e;
}

/// Mode the validator should enforce for a stream built from `f`.
OutputMode validation_mode(const ModeFlags& f) {
  OutputMode m = f.mode();
  if (f.source) m.sorted = true;
  return m;
}

std::string read_all(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Graph load_graph(const std::string& path, std::istream& in) { return parse_graph(read_all(path, in)); }

BoolMatrix load_matrix(const std::string& path, std::istream& in) { return parse_bool_matrix(read_all(path, in)); }

template <class Fn>
void write_to(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  fn(f);
  if (!f) throw UsageError("write failed for " + path);
}

BoolMatrix random_matrix(std::uint32_t d, double density, std::mt19937_64& rng) {
  BoolMatrix m(d);
  std::bernoulli_distribution bit(density);
  for (auto& c : m.cells) c = bit(rng) ? 1 : 0;
  return m;
}

std::vector<Weight> random_weights(std::uint32_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Weight> w(n > 0 ? n - 1 : 0);
  const Weight cap = weight_cap(n);
  for (auto& x : w) x = rng() % (cap + 1);
  return w;
}

struct GenerateArgs {
  std::string family;
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  std::uint32_t d = 0;
  std::uint64_t seed = 1;
  std::vector<Weight> weights;
  std::string a_path;
  std::string b_path;
  double density = 0.5;
  bool directed = false;
  Weight max_weight = 0;
  std::string out = "-";
};

Graph make_family(const GenerateArgs& a, std::istream& in) {
  if (a.family == "clique-path") return gen_clique_path(a.k);
  if (a.family == "star") {
    if (!a.weights.empty()) return gen_star(a.n, a.weights);
    return gen_star(a.n, random_weights(a.n, a.seed));
  }
  if (a.family == "bmm") {
    if (!a.a_path.empty() || !a.b_path.empty()) {
      if (a.a_path.empty() || a.b_path.empty()) throw UsageError("bmm needs both --a and --b");
      return gen_bmm_graph(load_matrix(a.a_path, in), load_matrix(a.b_path, in));
    }
    std::mt19937_64 rng(a.seed);
    const BoolMatrix x = random_matrix(a.d, a.density, rng);
    const BoolMatrix y = random_matrix(a.d, a.density, rng);
    return gen_bmm_graph(x, y);
  }
  if (a.family == "isolated-edge") return gen_isolated_plus_edge(a.n);
  if (a.family == "random") return gen_random(a.n, a.m, a.directed, a.max_weight, a.seed);
  throw UsageError("unknown family '" + a.family + "'");
}

const std::vector<std::string> kFamilies{"clique-path", "star", "bmm", "isolated-edge", "random"};

int cmd_generate(const GenerateArgs& a, std::istream& in, std::ostream& out) {
  const Graph g = make_family(a, in);
  write_to(a.out, out, [&](std::ostream& os) { write_graph(os, g); });
  return kExitOk;
}

struct EnumerateArgs {
  std::string graph;
  ModeFlags flags;
  bool report = false;
  bool report_json = false;
};

int cmd_enumerate(const EnumerateArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  a.flags.check();
  const Graph g = load_graph(a.graph, in);
  auto e = build(g, a.flags);
  auto [triples, report] = run_metered(*e);
  std::string buf;
  buf.reserve(triples.size() * 12);
  for (const DistanceTriple& t : triples) {
    buf += std::to_string(t.source);
    buf += ' ';
    buf += std::to_string(t.target);
    buf += ' ';
    buf += distance_to_string(t.distance);
    buf += '\n';
  }
  out << buf;
  if (a.report) write_key_value(err, report);
  if (a.report_json) err << to_json(report).dump() << '\n';
  return kExitOk;
}

struct VerifyArgs {
  std::string graph;
  ModeFlags flags;
  std::string corrupt;
};

void corrupt_stream(std::vector<DistanceTriple>& t, const std::string& how) {
  if (how.empty()) return;
  if (t.empty()) return;
  if (how == "drop") {
    t.pop_back();
  } else if (how == "duplicate") {
    t.push_back(t.front());
  } else if (how == "swap") {
    // Swap the first pair with different distances, which breaks sorted order.
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (t[i].distance != t[0].distance) {
        std::swap(t[0], t[i]);
        return;
      }
    }
    t.pop_back();
  } else if (how == "distance") {
    t.front().distance = t.front().distance == 0 ? 1 : t.front().distance - 1;
  } else {
    throw UsageError("unknown corruption '" + how + "'");
  }
}

int cmd_verify(const VerifyArgs& a, std::istream& in, std::ostream& out) {
  a.flags.check();
  const Graph g = load_graph(a.graph, in);
  auto e = build(g, a.flags);
  auto [triples, report] = run_metered(*e);
  corrupt_stream(triples, a.corrupt);
  const DistanceMatrix dm = brute_force_matrix(g);
  std::optional<Vertex> src;
  if (a.flags.source) src = static_cast<Vertex>(*a.flags.source);
  if (auto v = validate(triples, dm, validation_mode(a.flags), a.flags.dedup, src)) {
    out << v->to_string() << '\n';
    return kExitValidation;
  }
  if (report.bound_violations > 0) {
    out << "violation(delay) " << report.bound_violations << " pulls exceeded the declared bound\n";
    return kExitValidation;
  }
  out << "ok " << e->name() << ' ' << (a.flags.source ? "sssd " : "") << a.flags.mode().to_string()
      << (a.flags.dedup ? "+dedup" : "") << " triples=" << triples.size() << '\n';
  return kExitOk;
}

struct BenchArgs {
  std::string family;
  std::vector<std::uint32_t> sizes;
  ModeFlags flags;
  std::uint32_t repeats = 1;
  std::uint64_t seed = 1;
  std::uint64_t m_factor = 4;
  bool directed = false;
  bool weighted = false;
  bool validate = false;
  bool json = false;
};

Graph bench_graph(const BenchArgs& a, std::uint32_t size) {
  GenerateArgs g;
  g.family = a.family;
  g.seed = a.seed;
  g.k = size;
  g.n = size;
  g.d = size;
  g.m = a.m_factor * size;
  g.directed = a.directed;
  g.max_weight = a.weighted ? weight_cap(size) : 0;
  std::istringstream none;
  return make_family(g, none);
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  a.flags.check();
  if (a.sizes.empty()) throw UsageError("--sizes needs at least one value");
  if (a.repeats == 0) throw UsageError("--repeats must be positive");
  if (!a.json) {
    out << std::left << std::setw(10) << "size" << std::setw(8) << "n" << std::setw(9) << "m" << std::setw(7)
        << "Delta" << std::setw(9) << "avg_deg" << std::setw(11) << "max_delay" << std::setw(10) << "base"
        << std::setw(10) << "fitted" << std::setw(12) << "peak_queue" << std::setw(12) << "lazy_cells"
        << std::setw(10) << "wall_ms";
    if (a.validate) out << "check";
    out << '\n';
  }
  int rc = kExitOk;
  for (const std::uint32_t size : a.sizes) {
    const Graph g = bench_graph(a, size);
    const DegreeStats ds = g.degree_stats();
    std::optional<DelayReport> first;
    std::vector<DistanceTriple> triples;
    double wall_ms = 0;
    for (std::uint32_t r = 0; r < a.repeats; ++r) {
      auto e = build(g, a.flags);
      const auto t0 = std::chrono::steady_clock::now();
      auto [tr, rep] = run_metered(*e);
      wall_ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      if (first && !(*first == rep)) {
        err << "size " << size << ": repeat " << r << " produced a different report\n";
        rc = kExitValidation;
      }
      if (!first) {
        first = rep;
        triples = std::move(tr);
      }
    }
    wall_ms /= a.repeats;
    std::string check;
    if (a.validate) {
      std::optional<Vertex> src;
      if (a.flags.source) src = static_cast<Vertex>(*a.flags.source);
      const auto v = validate(triples, brute_force_matrix(g), validation_mode(a.flags), a.flags.dedup, src);
      check = v ? v->to_string() : "ok";
      if (v) rc = kExitValidation;
    }
    const DelayReport& rep = *first;
    if (rep.bound_violations > 0) rc = kExitValidation;
    if (a.json) {
      nlohmann::json row = to_json(rep);
      row["size"] = size;
      row["n"] = g.n();
      row["m"] = g.m();
      row["max_degree"] = ds.max_degree;
      row["avg_degree"] = ds.avg_degree().to_double();
      row["wall_ms"] = wall_ms;
      if (a.validate) row["check"] = check;
      out << row.dump() << '\n';
      continue;
    }
    std::ostringstream avg, base, fit, wall;
    avg << std::fixed << std::setprecision(2) << ds.avg_degree().to_double();
    base << std::fixed << std::setprecision(2) << rep.bound_base.to_double();
    fit << std::fixed << std::setprecision(3) << rep.fitted_constant.to_double();
    wall << std::fixed << std::setprecision(2) << wall_ms;
    out << std::left << std::setw(10) << size << std::setw(8) << g.n() << std::setw(9) << g.m() << std::setw(7)
        << ds.max_degree << std::setw(9) << avg.str() << std::setw(11) << rep.max_delay << std::setw(10)
        << base.str() << std::setw(10) << fit.str() << std::setw(12) << rep.peak_queue << std::setw(12)
        << rep.lazy_cells_allocated << std::setw(10) << wall.str();
    if (a.validate) out << check;
    out << '\n';
  }
  return rc;
}

struct BmmArgs {
  std::string a_path;
  std::string b_path;
  std::string out = "-";
  bool check = false;
};

int cmd_bmm(const BmmArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  const BoolMatrix x = load_matrix(a.a_path, in);
  const BoolMatrix y = load_matrix(a.b_path, in);
  if (x.d != y.d) throw UsageError("matrix dimensions differ");
  const BoolMatrix c = bmm_multiply(x, y);
  write_to(a.out, out, [&](std::ostream& os) { write_bool_matrix(os, c); });
  if (a.check && !(c == direct_product(x, y))) {
    err << "reduction result differs from the direct product\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance enumeration with bounded delay"};
  app.name("sdenum");
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write a graph from a generator family");
  generate->add_option("family", gen.family, "clique-path | star | bmm | isolated-edge | random")
      ->required()
      ->check(CLI::IsMember(kFamilies));
  generate->add_option("--k", gen.k, "clique size (clique-path)");
  generate->add_option("--n", gen.n, "vertex count (star, isolated-edge, random)");
  generate->add_option("--m", gen.m, "edge count (random)");
  generate->add_option("--d", gen.d, "matrix dimension for random bmm instances");
  generate->add_option("--density", gen.density, "fill ratio for random bmm matrices")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--seed", gen.seed, "RNG seed");
  generate->add_option("--weights", gen.weights, "comma-separated spike weights (star)")->delimiter(',');
  generate->add_option("--a", gen.a_path, "left matrix file (bmm)");
  generate->add_option("--b", gen.b_path, "right matrix file (bmm)");
  generate->add_flag("--directed", gen.directed, "directed edges (random)");
  generate->add_option("--max-weight", gen.max_weight, "weights in [0, W]; 0 means unweighted (random)");
  generate->add_option("-o,--out", gen.out, "output path, '-' for stdout");

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "stream distance triples");
  enumerate->add_option("graph", en.graph, "graph file, '-' for stdin")->required();
  en.flags.add_to(enumerate);
  enumerate->add_flag("--report", en.report, "delay report (key=value) on stderr");
  enumerate->add_flag("--report-json", en.report_json, "delay report (JSON) on stderr");

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "check a stream against the brute-force oracle");
  verify->add_option("graph", ve.graph, "graph file, '-' for stdin")->required();
  ve.flags.add_to(verify);
  verify->add_option("--corrupt", ve.corrupt, "test hook: drop | duplicate | swap | distance")->group("");

  BenchArgs be;
  auto* bench = app.add_subcommand("bench", "per-size delay measurements on a generator family");
  bench->add_option("family", be.family, "clique-path | star | bmm | isolated-edge | random")
      ->required()
      ->check(CLI::IsMember(kFamilies));
  bench->add_option("--sizes", be.sizes, "comma-separated sizes (k, n or d)")->delimiter(',')->required();
  be.flags.add_to(bench);
  bench->add_option("--repeats", be.repeats, "runs per size; reports must agree");
  bench->add_option("--seed", be.seed, "RNG seed");
  bench->add_option("--m-factor", be.m_factor, "edges per vertex (random)");
  bench->add_flag("--directed", be.directed, "directed edges (random)");
  bench->add_flag("--weighted", be.weighted, "weights in [0, n^3] (random)");
  bench->add_flag("--validate", be.validate, "check every stream against the oracle");
  bench->add_flag("--json", be.json, "one JSON record per size");

  BmmArgs bm;
  auto* bmm = app.add_subcommand("bmm", "boolean matrix product through the distance-2 reduction");
  bmm->add_option("a", bm.a_path, "left matrix file")->required();
  bmm->add_option("b", bm.b_path, "right matrix file")->required();
  bmm->add_option("-o,--out", bm.out, "output path, '-' for stdout");
  bmm->add_flag("--check", bm.check, "compare with the direct product");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sdenum: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen, in, out);
    if (*enumerate) return cmd_enumerate(en, in, out, err);
    if (*verify) return cmd_verify(ve, in, out);
    if (*bench) return cmd_bench(be, out, err);
    if (*bmm) return cmd_bmm(bm, in, out, err);
  } catch (const UsageError& e) {
    err << "sdenum: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GraphError& e) {
    err << "sdenum: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ScheduleUnderflow& e) {
    err << "sdenum: internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    err << "sdenum: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "sdenum: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace sdenum::cli
