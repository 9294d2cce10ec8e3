// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sdenum.hpp"
#include "test_util.hpp"

namespace {

using namespace sdenum;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr int kSweepGraphs = 200;
constexpr std::uint32_t kSweepMaxN = 60;
constexpr double kSweepSeconds = 120.0;
constexpr double kFitSpread = 2.0;           // max/min fitted constant across sizes
constexpr double kLowerBoundSpread = 3.0;    // max/min of SSSD max_delay / k
constexpr double kLowerBoundFloor = 1.0;     // SSSD max_delay / k must stay above this
constexpr double kSeparation = 0.5;          // unconstrained / row-wise max_delay on clique-path(32)
constexpr double kQueuePerVertex = 5.0;      // C_q
constexpr double kLazyPerVertex = 3.0;       // C_m
constexpr double kSortedLazyPerSquare = 2.0;  // C for n^2 lazy cells
constexpr int kBmmPairs = 100;
constexpr double kBmmSeconds = 60.0;
constexpr int kStarVectors = 50;
constexpr std::uint32_t kStarMaxN = 1000;
constexpr int kLazyOps = 10'000;
constexpr double kNoSelfPrepPerVertex = 4.0;       // C * n
constexpr double kSortedNoSelfPrepPerSize = 20.0;  // C * (m + n)
constexpr int kDedupGraphs = 50;
constexpr std::uint64_t kDedupSlack = 64;  // additive constant in 2x + c

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int prec = 2) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << x;
  return os.str();
}

struct Counters {
  std::uint64_t runs = 0;
  std::uint64_t underflows = 0;
  std::uint64_t bound_violations = 0;
  std::string first_problem;

  void note(const std::string& what) {
    if (first_problem.empty()) first_problem = what;
  }
};

/// Runs every mode (plus dedup when undirected, plus a few single sources)
/// on `g`; optionally validates. Feeds criterion 2.
void exercise(const Graph& g, const std::string& label, bool check, Counters& c, Outcome* oracle) {
  std::optional<DistanceMatrix> dm;
  if (check) dm = brute_force_matrix(g);
  for (const OutputMode& m : testing_util::all_modes()) {
    for (bool dedup : {false, true}) {
      if (dedup && g.directed()) continue;
      ++c.runs;
      try {
        auto e = make_enumerator(g, m);
        if (dedup) e = dedup_undirected(std::move(e));
        auto [out, rep] = run_metered(*e);
        if (rep.bound_violations > 0) {
          c.bound_violations += rep.bound_violations;
          c.note(label + " " + m.to_string() + " exceeded its declared bound");
        }
        if (check) {
          if (auto v = validate(out, *dm, m, dedup)) {
            oracle->pass = false;
            if (oracle->detail.empty()) {
              oracle->detail = label + " " + m.to_string() + (dedup ? "+dedup: " : ": ") + v->to_string();
            }
          }
        }
      } catch (const ScheduleUnderflow& ex) {
        ++c.underflows;
        c.note(ex.what());
      }
    }
  }
  for (Vertex s : {Vertex{0}, g.n() / 2, g.n() - 1}) {
    if (g.n() == 0) break;
    for (int bits = 0; bits < 4; ++bits) {
      const OutputMode m{.no_self = (bits & 1) != 0, .reachable_only = (bits & 2) != 0};
      ++c.runs;
      try {
        auto [out, rep] = run_metered(*make_enumerator(g, m, s));
        c.bound_violations += rep.bound_violations;
        if (check) {
          OutputMode vm = m;
          vm.sorted = true;
          if (auto v = validate(out, *dm, vm, false, s)) {
            oracle->pass = false;
            if (oracle->detail.empty()) oracle->detail = label + " sssd: " + v->to_string();
          }
        }
      } catch (const ScheduleUnderflow& ex) {
        ++c.underflows;
        c.note(ex.what());
      }
    }
  }
}

Counters g_counters;

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uint64_t before = g_counters.runs;
  for (int i = 0; i < kSweepGraphs; ++i) {
    const auto n = static_cast<std::uint32_t>(1 + rng() % kSweepMaxN);
    const bool directed = i % 2 == 0;
    const bool weighted = (i / 2) % 2 == 0;
    const std::uint64_t pairs = directed ? std::uint64_t{n} * (n - 1) : std::uint64_t{n} * (n - 1) / 2;
    const std::uint64_t m = pairs == 0 ? 0 : rng() % (std::min<std::uint64_t>(pairs, 5ull * n) + 1);
    const Graph g = gen_random(n, m, directed, weighted ? weight_cap(n) : 0, rng());
    exercise(g, "random#" + std::to_string(i), true, g_counters, &o);
  }
  const double secs = seconds_since(t0);
  if (secs > kSweepSeconds) o.pass = false;
  if (o.pass) {
    o.detail = std::to_string(kSweepGraphs) + " graphs, " + std::to_string(g_counters.runs - before) +
               " validated runs, " + fmt(secs, 1) + " s (limit " + fmt(kSweepSeconds, 0) + " s)";
  } else if (o.detail.empty()) {
    o.detail = "took " + fmt(secs, 1) + " s";
  }
  return o;
}

Outcome criterion2() {
  std::mt19937_64 rng(7);
  std::vector<std::pair<std::string, Graph>> fams;
  for (std::uint32_t k : {3u, 4u, 8u, 16u, 32u}) fams.emplace_back("clique-path" + std::to_string(k), gen_clique_path(k));
  for (std::uint32_t n : {1u, 2u, 10u, 100u, 1000u}) {
    std::vector<Weight> w(n - 1);
    for (auto& x : w) x = rng() % (weight_cap(n) + 1);
    fams.emplace_back("star" + std::to_string(n), gen_star(n, w));
  }
  for (std::uint32_t d : {1u, 2u, 4u, 8u, 16u, 30u}) {
    BoolMatrix a(d), b(d);
    for (auto& c : a.cells) c = rng() % 2;
    for (auto& c : b.cells) c = rng() % 2;
    fams.emplace_back("bmm" + std::to_string(d), gen_bmm_graph(a, b));
  }
  for (std::uint32_t n : {2u, 3u, 10u, 100u, 2000u}) {
    fams.emplace_back("isolated-edge" + std::to_string(n), gen_isolated_plus_edge(n));
  }
  fams.emplace_back("random2000", gen_random(2000, 8000, false, 0, 11));
  fams.emplace_back("random-weighted1000", gen_random(1000, 4000, true, weight_cap(1000), 12));
  const std::uint64_t before = g_counters.runs;
  for (const auto& [label, g] : fams) exercise(g, label, false, g_counters, nullptr);
  Outcome o;
  o.pass = g_counters.underflows == 0 && g_counters.bound_violations == 0;
  o.detail = std::to_string(g_counters.runs) + " runs (" + std::to_string(g_counters.runs - before) + " on " +
             std::to_string(fams.size()) + " family instances), " + std::to_string(g_counters.underflows) +
             " underflows, " + std::to_string(g_counters.bound_violations) + " bound violations";
  if (!g_counters.first_problem.empty()) o.detail += "; first: " + g_counters.first_problem;
  return o;
}

using Factory = std::function<std::unique_ptr<Enumerator>(const Graph&)>;

Outcome criterion3() {
  Outcome o;
  const std::vector<std::pair<std::string, Factory>> unweighted{
      {"unconstrained", [](const Graph& g) { return apsd_unconstrained(g); }},
      {"no-self", [](const Graph& g) { return apsd_noself(g); }},
      {"row-wise", [](const Graph& g) { return apsd_rowwise(g); }},
      {"reachable", [](const Graph& g) { return apsd_reachable(g, false); }},
      {"reachable-no-self", [](const Graph& g) { return apsd_reachable(g, true); }},
      {"sorted", [](const Graph& g) { return apsd_sorted(g); }},
      {"sorted-no-self", [](const Graph& g) { return apsd_sorted_noself(g); }},
      {"sssd", [](const Graph& g) { return sssd_constrained(g, 0, {}); }},
  };
  std::vector<std::pair<std::string, std::vector<Graph>>> families;
  families.push_back({"clique-path", {gen_clique_path(8), gen_clique_path(16), gen_clique_path(32)}});
  for (bool directed : {false, true}) {
    for (bool weighted : {false, true}) {
      std::vector<Graph> gs;
      for (std::uint32_t n : {100u, 200u, 400u}) gs.push_back(gen_random(n, 4 * n, directed, weighted ? weight_cap(n) : 0, n));
      families.push_back({std::string("random-") + (directed ? "directed" : "undirected") + (weighted ? "-weighted" : ""),
                          std::move(gs)});
    }
  }
  double worst = 0;
  std::string worst_label;
  int checks = 0;
  for (const auto& [fam, graphs] : families) {
    for (const auto& [name, make] : unweighted) {
      std::vector<double> fits;
      for (const Graph& g : graphs) fits.push_back(run_metered(*make(g)).second.fitted_constant.to_double());
      const double spread = *std::ranges::max_element(fits) / *std::ranges::min_element(fits);
      ++checks;
      if (spread > worst) {
        worst = spread;
        worst_label = fam + "/" + name;
      }
      if (!(spread < kFitSpread)) {
        o.pass = false;
        o.detail += fam + "/" + name + " spread " + fmt(spread) + "; ";
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(checks) + " variant/family fits, worst spread " + fmt(worst, 3) + " (" + worst_label +
               ", limit " + fmt(kFitSpread) + ")";
  }
  return o;
}

Outcome criterion4() {
  std::vector<double> ratios;
  for (std::uint32_t k : {8u, 16u, 32u}) {
    const Graph g = gen_clique_path(k);
    const auto rep = run_metered(*sssd_unweighted(g, 0)).second;
    ratios.push_back(static_cast<double>(rep.max_delay) / k);
  }
  const double lo = *std::ranges::min_element(ratios);
  const double hi = *std::ranges::max_element(ratios);
  Outcome o;
  o.pass = lo >= kLowerBoundFloor && hi / lo <= kLowerBoundSpread;
  o.detail = "max_delay/k = " + fmt(ratios[0]) + ", " + fmt(ratios[1]) + ", " + fmt(ratios[2]) + " (floor " +
             fmt(kLowerBoundFloor) + ", spread " + fmt(hi / lo) + " <= " + fmt(kLowerBoundSpread) + ")";
  return o;
}

Outcome criterion5() {
  const Graph g = gen_clique_path(32);
  const auto u = run_metered(*apsd_unconstrained(g)).second.max_delay;
  const auto r = run_metered(*apsd_rowwise(g)).second.max_delay;
  Outcome o;
  o.pass = static_cast<double>(u) <= kSeparation * static_cast<double>(r);
  o.detail = "unconstrained " + std::to_string(u) + " vs row-wise " + std::to_string(r) + " steps (ratio " +
             fmt(static_cast<double>(u) / static_cast<double>(r), 3) + ", limit " + fmt(kSeparation) + ")";
  return o;
}

Outcome criterion6() {
  Outcome o;
  double worst_q = 0, worst_m = 0, worst_s = 0;
  for (bool weighted : {false, true}) {
    for (std::uint32_t n : {100u, 200u, 400u}) {
      const Graph g = gen_random(n, 4 * n, false, weighted ? weight_cap(n) : 0, 100 + n);
      for (const OutputMode& m : testing_util::all_modes()) {
        const auto rep = run_metered(*make_enumerator(g, m)).second;
        const double nn = n;
        if (m.sorted) {
          const double s = static_cast<double>(rep.lazy_cells_allocated) / (nn * nn);
          worst_s = std::max(worst_s, s);
          if (s > kSortedLazyPerSquare) o.pass = false;
        } else {
          const double q = static_cast<double>(rep.peak_queue) / nn;
          const double c = static_cast<double>(rep.lazy_cells_allocated) / nn;
          worst_q = std::max(worst_q, q);
          worst_m = std::max(worst_m, c);
          if (q > kQueuePerVertex || c > kLazyPerVertex) o.pass = false;
        }
      }
      for (Vertex s : {Vertex{0}, n - 1}) {
        const auto rep = run_metered(*make_enumerator(g, {}, s)).second;
        worst_q = std::max(worst_q, static_cast<double>(rep.peak_queue) / n);
        worst_m = std::max(worst_m, static_cast<double>(rep.lazy_cells_allocated) / n);
        if (rep.peak_queue > kQueuePerVertex * n || rep.lazy_cells_allocated > kLazyPerVertex * n) o.pass = false;
      }
    }
  }
  o.detail = "peak_queue/n <= " + fmt(worst_q) + " (C_q " + fmt(kQueuePerVertex) + "), lazy_cells/n <= " +
             fmt(worst_m) + " (C_m " + fmt(kLazyPerVertex) + "), sorted lazy_cells/n^2 <= " + fmt(worst_s) +
             " (C " + fmt(kSortedLazyPerSquare) + ")";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(55);
  int done = 0;
  for (std::uint32_t d : {1u, 2u, 4u, 8u, 16u, 32u}) {
    for (int i = 0; i < kBmmPairs; ++i) {
      const double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      std::bernoulli_distribution bit(density);
      BoolMatrix a(d), b(d);
      for (auto& c : a.cells) c = bit(rng);
      for (auto& c : b.cells) c = bit(rng);
      ++done;
      if (!(bmm_multiply(a, b) == direct_product(a, b))) {
        o.pass = false;
        if (o.detail.empty()) o.detail = "mismatch at d=" + std::to_string(d) + " pair " + std::to_string(i) + "; ";
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs > kBmmSeconds) o.pass = false;
  o.detail += std::to_string(done) + " products, " + fmt(secs, 1) + " s (limit " + fmt(kBmmSeconds, 0) + " s)";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  for (int i = 0; i < kStarVectors; ++i) {
    const auto n = static_cast<std::uint32_t>(1 + rng() % kStarMaxN);
    std::vector<Weight> w(n - 1);
    const Weight cap = rng() % 2 == 0 ? weight_cap(n) : 3;  // also exercise many ties
    for (auto& x : w) x = rng() % (cap + 1);
    const Graph g = gen_star(n, w);
    std::vector<Weight> spikes;
    for (const auto& t : testing_util::drain(*sssd_constrained(g, 0, {.sorted = true}))) {
      if (t.target != 0) spikes.push_back(t.distance);
    }
    std::ranges::sort(w);
    if (spikes != w) {
      o.pass = false;
      o.detail = "vector " + std::to_string(i) + " (n=" + std::to_string(n) + ") differs; ";
    }
  }
  if (o.pass) o.detail = std::to_string(kStarVectors) + " weight vectors, n <= " + std::to_string(kStarMaxN);
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto alloc_steps = [](std::size_t cap) {
    Meter m;
    LazyArray<std::uint64_t> a(cap, &m);
    return m.steps.total();
  };
  const auto small = alloc_steps(std::size_t{1} << 10);
  const auto large = alloc_steps(std::size_t{1} << 22);
  if (small != large) o.pass = false;

  std::uint64_t false_written = 0;
  for (int pattern = 0; pattern < 6; ++pattern) {
    const std::size_t cap = 4096;
    LazyArray<std::uint32_t> a(cap);
    auto idx = a.backing_index_for_testing();
    std::mt19937_64 rng(pattern);
    for (std::size_t x = 0; x < cap; ++x) {
      switch (pattern) {
        case 0: idx[x] = 0; break;
        case 1: idx[x] = static_cast<std::uint32_t>(x); break;
        case 2: idx[x] = static_cast<std::uint32_t>(cap - 1 - x); break;
        case 3: idx[x] = 0xFFFFFFFFu; break;
        case 4: idx[x] = static_cast<std::uint32_t>(rng() % 8); break;
        default: idx[x] = static_cast<std::uint32_t>(rng()); break;
      }
    }
    for (std::size_t x = 0; x < cap; x += 3) a.write(x, 1);
    for (std::size_t x = 0; x < cap; ++x) {
      if (a.is_written(x) != (x % 3 == 0)) ++false_written;
    }
  }
  if (false_written > 0) o.pass = false;

  std::uint64_t mismatches = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t cap = 1 + rng() % 1000;
    LazyArray<std::uint64_t> a(cap);
    std::map<std::size_t, std::uint64_t> oracle;
    for (int op = 0; op < kLazyOps; ++op) {
      const std::size_t x = rng() % cap;
      const auto r = rng() % 100;
      if (r < 2) {
        a.reset();
        oracle.clear();
      } else if (r < 50) {
        const auto v = rng();
        a.write(x, v);
        oracle[x] = v;
      } else {
        const auto got = a.read(x);
        const auto it = oracle.find(x);
        if (got.has_value() != (it != oracle.end()) || (got && *got != it->second)) ++mismatches;
      }
    }
  }
  if (mismatches > 0) o.pass = false;
  o.detail = "alloc steps " + std::to_string(small) + " vs " + std::to_string(large) + ", " +
             std::to_string(false_written) + " false reads over 6 garbage patterns, " + std::to_string(mismatches) +
             " mismatches in 10 x " + std::to_string(kLazyOps) + " ops";
  return o;
}

Outcome criterion10() {
  Outcome o;
  double worst_a = 0, worst_b = 0;
  for (bool directed : {false, true}) {
    for (std::uint32_t n : {100u, 200u, 400u}) {
      const Graph g = gen_random(n, 4 * n, directed, weight_cap(n), 3 * n + directed);
      const double a = static_cast<double>(apsd_noself(g)->preprocessing_steps()) / n;
      const double b = static_cast<double>(apsd_sorted_noself(g)->preprocessing_steps()) / (g.m() + n);
      worst_a = std::max(worst_a, a);
      worst_b = std::max(worst_b, b);
    }
  }
  o.pass = worst_a <= kNoSelfPrepPerVertex && worst_b <= kSortedNoSelfPrepPerSize;
  o.detail = "no-self weighted preprocessing/n <= " + fmt(worst_a) + " (C " + fmt(kNoSelfPrepPerVertex) +
             "), sorted-no-self weighted preprocessing/(m+n) <= " + fmt(worst_b) + " (C " +
             fmt(kSortedNoSelfPrepPerSize) + ")";
  return o;
}

Outcome criterion11() {
  Outcome o;
  std::mt19937_64 rng(11);
  std::uint64_t worst_excess = 0;
  int runs = 0;
  for (int i = 0; i < kDedupGraphs; ++i) {
    const auto n = static_cast<std::uint32_t>(2 + rng() % 59);
    const std::uint64_t pairs = std::uint64_t{n} * (n - 1) / 2;
    const Graph g = gen_random(n, rng() % (std::min<std::uint64_t>(pairs, 4ull * n) + 1), false,
                               i % 2 == 0 ? 0 : weight_cap(n), rng());
    for (const OutputMode& m : testing_util::all_modes()) {
      if (m.reachable_only) continue;
      const auto plain = run_metered(*make_enumerator(g, m)).second;
      auto [out, rep] = run_metered(*dedup_undirected(make_enumerator(g, m)));
      ++runs;
      std::uint64_t selfs = 0;
      for (const auto& t : out) selfs += t.source == t.target;
      const std::uint64_t expect_self = m.no_self ? 0 : n;
      if (out.size() - selfs != pairs || selfs != expect_self) {
        o.pass = false;
        o.detail = "graph " + std::to_string(i) + " " + m.to_string() + ": " + std::to_string(out.size() - selfs) +
                   " pairs, " + std::to_string(selfs) + " selfs; ";
      }
      if (rep.max_delay > 2 * plain.max_delay) worst_excess = std::max(worst_excess, rep.max_delay - 2 * plain.max_delay);
      if (rep.max_delay > 2 * plain.max_delay + kDedupSlack) {
        o.pass = false;
        o.detail += "graph " + std::to_string(i) + " " + m.to_string() + ": dedup delay " +
                    std::to_string(rep.max_delay) + " vs " + std::to_string(plain.max_delay) + "; ";
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(runs) + " deduplicated runs on " + std::to_string(kDedupGraphs) +
               " graphs, worst excess over 2x delay " + std::to_string(worst_excess) + " steps (limit " +
               std::to_string(kDedupSlack) + ")";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence sweep", criterion1},
      {"no schedule underflow", criterion2},
      {"delay upper bounds: stable fitted constants", criterion3},
      {"lower bound on clique-path family", criterion4},
      {"unconstrained vs row-wise separation", criterion5},
      {"space bounds", criterion6},
      {"boolean matrix product reduction", criterion7},
      {"sorting equivalence on stars", criterion8},
      {"lazy array contract", criterion9},
      {"preprocessing bounds", criterion10},
      {"undirected deduplication", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << std::setw(2) << (i + 1) << ": "
              << criteria[i].first << " -- " << o.detail << " [" << fmt(seconds_since(t0), 1) << " s]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
