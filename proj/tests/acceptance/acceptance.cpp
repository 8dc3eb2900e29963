// Acceptance suite: prints one PASS/FAIL line per criterion, exits non-zero on
// any failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "brute.hpp"
#include "ftp/dsl.hpp"
#include "ftp/reductions.hpp"
#include "ftp/relaxation.hpp"
#include "ftp/shortest_paths.hpp"
#include "ftp/solvers.hpp"

namespace {

using ftp::DslInstance;
using ftp::EdgeKind;
using ftp::EdgeSet;
using ftp::FtpInstance;
using ftp::Verdict;
using ftp::Weight;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failures (first few kept verbatim) and a transcript of every
// decided answer for the determinism comparison.
struct Check {
  int failures = 0;
  std::vector<std::string> first;
  std::vector<std::string>* transcript = nullptr;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (first.size() < 3) first.push_back(what);
  }
  void record(const std::string& line) {
    if (transcript) transcript->push_back(line);
  }
};

std::string describe(const Verdict& v) {
  std::ostringstream s;
  s << ftp::to_string(v.answer);
  if (v.cost) s << " " << *v.cost;
  if (v.witness) s << " [" << ftp::format_edge_set(*v.witness) << "]";
  return s.str();
}

struct Case {
  FtpInstance inst;
  ftp::OracleResult oracle;
  std::vector<EdgeSet> witnesses;  // every Yes witness any solver produced
};

// ---- 1: solver agreement ----

std::vector<Case> build_suite1(int graphs) {
  std::vector<Case> cases;
  for (int g = 0; g < graphs; ++g) {
    ftp::RandomSpec spec;
    spec.n = 3 + g % 5;
    spec.edges = std::min(12, spec.n + 2 + (g * 7) % 8);
    spec.min_weight = 1;
    spec.max_weight = 4;
    spec.k = g % 4;
    spec.directed = g % 3 == 0;
    spec.safe_fraction = 0.15 + 0.1 * (g % 4);
    spec.policy = ftp::LengthPolicy::kFixed;
    spec.seed = 1000003ULL * (g + 1);
    FtpInstance base = ftp::gen_random(spec);
    auto sweep = ftp::ell_sweep(base);
    if (sweep.empty()) sweep = {base.ell};
    for (Weight ell : sweep) {
      Case c;
      c.inst = base;
      c.inst.ell = ell;
      cases.push_back(std::move(c));
    }
  }
  return cases;
}

void expect_witness(Check& check, const FtpInstance& inst, const Verdict& v,
                    const std::string& who) {
  if (!v.yes()) {
    check.expect(!v.witness, who + ": No verdict carries a witness");
    return;
  }
  if (!v.witness || !v.cost) {
    check.expect(false, who + ": Yes verdict without witness");
    return;
  }
  const auto f = ftp::verify_solution(inst, *v.witness);
  check.expect(f.feasible, who + ": witness not fault tolerant\n" + ftp::serialize_instance(inst));
  check.expect(f.cost == *v.cost && f.cost <= inst.ell, who + ": witness cost mismatch");
}

void suite1(std::vector<Case>& cases, int threads, Check& check) {
  ftp::SolveOptions opts;
  opts.threads = threads;
  ftp::SolveOptions raw = opts;
  raw.preprocess = false;
  for (auto& c : cases) {
    c.oracle = ftp::ftp_oracle(c.inst);
    c.witnesses.clear();
    const bool want = c.oracle.yes;
    const auto brute_opt = brute::ftp_optimum(c.inst);
    check.expect(want == (brute_opt && *brute_opt <= c.inst.ell) && c.oracle.opt == brute_opt,
                 "oracle disagrees with the independent enumeration");
    const std::vector<std::pair<std::string, Verdict>> runs{
        {"q-guess", ftp::solve_vulnerable_guess(c.inst, ftp::GuessMode::kBySize, opts)},
        {"u-guess", ftp::solve_vulnerable_guess(c.inst, ftp::GuessMode::kBySubsets, opts)},
        {"q-guess/raw", ftp::solve_vulnerable_guess(c.inst, ftp::GuessMode::kBySize, raw)},
        {"s-guess", ftp::solve_safe_guess(c.inst, opts)},
        {"s-guess/raw", ftp::solve_safe_guess(c.inst, raw)},
        {"auto", ftp::solve_auto(c.inst, opts)},
    };
    std::string line = ftp::instance_digest(c.inst) + " oracle " + (want ? "yes" : "no");
    for (const auto& [who, v] : runs) {
      check.expect(v.yes() == want, who + " disagrees with oracle\n" + ftp::serialize_instance(c.inst));
      expect_witness(check, c.inst, v, who);
      if (v.witness) c.witnesses.push_back(*v.witness);
      line += " | " + who + " " + describe(v);
    }
    if (c.oracle.witness) c.witnesses.push_back(*c.oracle.witness);
    check.record(line);
  }
}

// ---- 2: DSL ----

DslInstance random_dsl(std::mt19937_64& rng) {
  DslInstance d;
  d.directed = rng() % 3 != 0;
  d.n = 2 + static_cast<int>(rng() % 5);
  const int m = static_cast<int>(rng() % 11);
  for (int i = 0; i < m; ++i) {
    const int u = static_cast<int>(rng() % d.n);
    int v = static_cast<int>(rng() % d.n);
    while (v == u) v = static_cast<int>(rng() % d.n);
    d.arcs.push_back({u, v, 1 + static_cast<Weight>(rng() % 4)});
  }
  const int pairs = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < pairs; ++i) {
    d.sources.push_back(static_cast<int>(rng() % d.n));
    d.targets.push_back(static_cast<int>(rng() % d.n));
  }
  d.budget = static_cast<Weight>(rng() % 12);
  return d;
}

DslInstance over_closure(const DslInstance& d, const ftp::MetricClosure& h) {
  DslInstance out = d;
  out.arcs.clear();
  for (int u = 0; u < d.n; ++u) {
    for (int v = d.directed ? 0 : u + 1; v < d.n; ++v) {
      if (u != v && h.weight(u, v) < ftp::kInfinity) out.arcs.push_back({u, v, h.weight(u, v)});
    }
  }
  return out;
}

int suite2(int count, Check& check) {
  std::mt19937_64 rng(20240601);
  int solvable = 0;
  for (int i = 0; i < count; ++i) {
    const DslInstance d = random_dsl(rng);
    const auto oracle = ftp::dsl_oracle(d);
    check.expect(oracle == brute::dsl_optimum(d), "dsl oracle disagrees with bijection search");
    check.expect(ftp::dsl_oracle(d, true) == oracle, "no forest-shaped optimum\n" + ftp::serialize_dsl(d));
    const auto h = ftp::metric_closure(d);
    const DslInstance hd = over_closure(d, h);
    std::string line = "dsl " + std::to_string(i);
    for (auto method : {ftp::DslMethod::kAuto, ftp::DslMethod::kPatterns, ftp::DslMethod::kSubsetDp}) {
      const auto sol = ftp::solve_dsl(d, h, {method});
      check.expect(sol.has_value() == oracle.has_value(), "solve_dsl feasibility mismatch\n" + ftp::serialize_dsl(d));
      if (!sol || !oracle) continue;
      check.expect(sol->cost == *oracle && sol->closure_cost == *oracle,
                   "solve_dsl optimum mismatch\n" + ftp::serialize_dsl(d));
      check.expect(ftp::check_linkage_feasible(d, sol->arcs), "solve_dsl arcs do not link");
      check.expect(sol->within_budget == (sol->cost <= d.budget), "budget flag wrong");
      line += " " + std::to_string(sol->cost);
    }
    // Optimum over H, by the solver and (when small) by the oracle.
    const auto on_h = ftp::solve_dsl(hd);
    check.expect(on_h.has_value() == oracle.has_value() && (!on_h || on_h->cost == *oracle),
                 "optimum over closure differs\n" + ftp::serialize_dsl(d));
    if (hd.arc_count() <= ftp::kDslOracleArcLimit) {
      check.expect(ftp::dsl_oracle(hd) == oracle, "closure oracle differs\n" + ftp::serialize_dsl(d));
    }
    solvable += oracle.has_value();
    check.record(line);
  }
  return solvable;
}

// ---- 3: path decomposition and verifier agreement ----

bool is_st_path(const FtpInstance& inst, const std::vector<int>& path) {
  int at = inst.s;
  std::vector<char> seen(inst.n, 0);
  seen[at] = 1;
  for (int id : path) {
    const auto& e = inst.edges[id];
    if (e.tail == at) {
      at = e.head;
    } else if (!inst.directed && e.head == at) {
      at = e.tail;
    } else {
      return false;
    }
    if (seen[at]) return false;
    seen[at] = 1;
  }
  return at == inst.t;
}

std::pair<int, int> suite3(const std::vector<Case>& cases, Check& check) {
  int decomposed = 0;
  int compared = 0;
  std::mt19937_64 rng(77);
  for (const auto& c : cases) {
    for (const auto& w : c.witnesses) {
      const auto d = ftp::decompose_witness(c.inst, w);
      ++decomposed;
      check.expect(static_cast<int>(d.paths.size()) == c.inst.k + 1, "wrong number of paths");
      std::vector<int> users(c.inst.edge_count(), 0);
      for (const auto& p : d.paths) {
        check.expect(is_st_path(c.inst, p), "decomposed path is not a simple s-t path");
        for (int id : p) {
          check.expect(w.contains(id), "path leaves the witness");
          ++users[id];
        }
      }
      for (int id = 0; id < c.inst.edge_count(); ++id) {
        check.expect(users[id] <= 1 || c.inst.edges[id].safe(), "two paths share a vulnerable edge");
      }
      // Witness and a few perturbations: flow check vs failure enumeration.
      std::vector<EdgeSet> probes{w};
      for (int r = 0; r < 3; ++r) {
        std::vector<int> ids;
        for (int id : w) {
          if (rng() % 4 != 0) ids.push_back(id);
        }
        for (int id = 0; id < c.inst.edge_count(); ++id) {
          if (!w.contains(id) && rng() % 5 == 0) ids.push_back(id);
        }
        probes.emplace_back(ids);
      }
      for (const auto& probe : probes) {
        int vulnerable = 0;
        for (int id : probe) vulnerable += c.inst.edges[id].vulnerable();
        if (vulnerable > 8) continue;
        ++compared;
        const bool flow = ftp::verify_solution(c.inst, probe).feasible;
        check.expect(flow == ftp::verify_by_enumeration(c.inst, probe),
                     "flow verify differs from enumeration");
        check.expect(flow == brute::ftp_feasible(c.inst, probe.ids()), "flow verify differs from brute");
      }
    }
  }
  return {decomposed, compared};
}

// ---- 4, 5: parameter bounds ----

int suite4(const std::vector<Case>& cases, Check& check) {
  int checked = 0;
  for (const auto& c : cases) {
    if (!c.oracle.yes) continue;
    const auto pre = ftp::preprocess(c.inst);
    if (!std::holds_alternative<ftp::Reduced>(pre)) continue;
    const Weight a = *std::get<ftp::Reduced>(pre).parameters.a;
    ++checked;
    check.expect(*c.oracle.q > c.inst.k && *c.oracle.q <= 2 * a,
                 "q outside (k, 2a]\n" + ftp::serialize_instance(c.inst));
  }
  return checked;
}

int suite5(const std::vector<Case>& cases, Check& check) {
  int with_c = 0;
  for (const auto& c : cases) {
    const Weight dist = ftp::st_distance(c.inst);
    const Weight cc = ftp::relaxation_cost(c.inst).cost;
    if (cc >= ftp::kInfinity) {
      check.expect(!c.oracle.opt, "oracle feasible while the relaxation is not");
      continue;
    }
    ++with_c;
    check.expect(cc >= (c.inst.k + 1) * dist, "C below (k+1) dist");
    if (c.inst.ell >= cc) check.expect(c.oracle.yes, "l >= C but oracle says No");
  }
  return with_c;
}

// ---- 6: reductions ----

struct Counts {
  int inputs = 0;
  int yes = 0;
};

// Random bipartite graph with no K_{2,2}: candidate edges in shuffled order,
// skipping any that would give two left vertices two common neighbours.
ftp::BicliqueInput random_biclique_free(int left, int right, int edges, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    std::vector<std::pair<int, int>> all;
    for (int a = 0; a < left; ++a) {
      for (int b = 0; b < right; ++b) all.emplace_back(a, b);
    }
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::vector<char>> adj(left, std::vector<char>(right, 0));
    ftp::BicliqueInput in;
    in.left = left;
    in.right = right;
    in.d = 2;
    for (const auto& [a, b] : all) {
      if (static_cast<int>(in.edges.size()) == edges) break;
      bool ok = true;
      for (int x = 0; x < left && ok; ++x) {
        if (x == a || !adj[x][b]) continue;
        for (int y = 0; y < right; ++y) {
          if (y != b && adj[x][y] && adj[a][y]) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      adj[a][b] = 1;
      in.edges.emplace_back(a, b);
    }
    if (static_cast<int>(in.edges.size()) == edges) {
      std::sort(in.edges.begin(), in.edges.end());
      return in;
    }
  }
}

Verdict solve_small(const FtpInstance& inst, int threads) {
  if (inst.edge_count() <= ftp::kOracleEdgeLimit) return ftp::oracle_verdict(inst);
  ftp::SolveOptions opts;
  opts.threads = threads;
  return ftp::solve_safe_guess(inst, opts);
}

std::vector<Counts> suite6(int each, int threads, Check& check) {
  std::vector<Counts> out(3);
  // Biclique: d = 2, |E| >= 12. Dense random graphs nearly always hold a
  // K_{2,2}, so every other input is sampled K_{2,2}-free instead.
  for (int i = 0; i < each; ++i) {
    ftp::BicliqueInput in;
    if (i % 2 == 0) {
      const int left = 3 + i % 3;
      const int right = 4 + (i / 3) % 2;
      const int edges = 12 + static_cast<int>((i * 5) % (left * right - 11));
      in = ftp::random_biclique(left, right, edges, 2, 500 + i);
    } else {
      in = random_biclique_free(5 + i % 2, 6, 12 + (i / 2) % 2, 700 + i);
    }
    const auto inst = ftp::from_biclique(in);
    const auto params = ftp::compute_parameters(inst);
    check.expect(params.b && *params.b <= 1, "biclique instance with b > 1");
    const Verdict v = solve_small(inst, threads);
    const bool want = brute::has_biclique(in);
    check.expect(v.yes() == want, "biclique answer mismatch\n" + ftp::serialize_biclique(in));
    if (v.yes()) {
      check.expect(ftp::is_biclique(in, ftp::extract_certificate(in, *v.witness)),
                   "biclique certificate invalid");
    }
    ++out[0].inputs;
    out[0].yes += want;
    check.record("bip " + std::to_string(i) + " " + describe(v));
  }
  // Steiner: n <= 6, |T| <= 3.
  for (int i = 0; i < each; ++i) {
    const int n = 3 + i % 4;
    const int max_m = n * (n - 1) / 2;
    const int m = std::min(max_m, n - 1 + i % 5);
    const int terms = 1 + i % 3;
    const auto in = ftp::random_steiner(n, m, std::min(terms, n), 1 + i % 4, 900 + i);
    const auto inst = ftp::from_steiner_tree(in);
    const Verdict v = solve_small(inst, threads);
    const bool want = brute::has_steiner_tree(in);
    check.expect(v.yes() == want, "steiner answer mismatch\n" + ftp::serialize_steiner(in));
    if (v.yes()) {
      check.expect(ftp::is_steiner_tree(in, ftp::extract_certificate(in, *v.witness)),
                   "steiner certificate invalid");
    }
    ++out[1].inputs;
    out[1].yes += want;
    check.record("st " + std::to_string(i) + " " + describe(v));
  }
  // Hitting set: |U| <= 5, |F| <= 4.
  for (int i = 0; i < each; ++i) {
    const auto in = ftp::random_hitting_set(1 + i % 5, 1 + (i / 5) % 4, i % 3, 1300 + i);
    const auto inst = ftp::from_hitting_set(in);
    const Verdict v = solve_small(inst, threads);
    const bool want = brute::has_hitting_set(in);
    check.expect(v.yes() == want, "hitting set answer mismatch\n" + ftp::serialize_hitting_set(in));
    if (v.yes()) {
      check.expect(ftp::is_hitting_set(in, ftp::extract_certificate(in, *v.witness)),
                   "hitting set certificate invalid");
    }
    ++out[2].inputs;
    out[2].yes += want;
    check.record("hs " + std::to_string(i) + " " + describe(v));
  }
  return out;
}

// ---- 7: scale ----

// s = 0, t = n-1. Safe edges stay among inner vertices so every s-t path
// needs vulnerable edges at both ends.
FtpInstance scale_instance(int n, int safe, int vulnerable, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> inner(1, n - 2);
  std::uniform_int_distribution<Weight> weight(1, 4);
  FtpInstance inst;
  inst.directed = false;
  inst.n = n;
  inst.s = 0;
  inst.t = n - 1;
  inst.k = k;
  auto pair = [&](int& u, int& v) {
    u = inner(rng);
    v = inner(rng);
    while (v == u) v = inner(rng);
  };
  // A safe backbone path through the inner vertices keeps things connected.
  for (int i = 0; i < safe; ++i) {
    int u;
    int v;
    if (i < n - 3 && i + 2 <= n - 2) {
      u = 1 + i;
      v = 2 + i;
    } else {
      pair(u, v);
    }
    inst.add_edge(u, v, weight(rng), EdgeKind::kSafe);
  }
  const int ends = std::min(vulnerable / 3, 2 * (k + 1));
  for (int i = 0; i < vulnerable; ++i) {
    int u;
    int v;
    if (i < ends) {
      u = 0;
      v = inner(rng);
    } else if (i < 2 * ends) {
      u = inner(rng);
      v = n - 1;
    } else {
      pair(u, v);
    }
    inst.add_edge(u, v, weight(rng), EdgeKind::kVulnerable);
  }
  const auto sweep = ftp::ell_sweep(inst);
  inst.ell = sweep.empty() ? 0 : sweep[2];
  inst.validate();
  return inst;
}

struct ScaleRun {
  std::string name;
  double seconds = 0;
};

std::vector<ScaleRun> suite7(int threads, Check& check) {
  std::vector<ScaleRun> runs;
  ftp::SolveOptions opts;
  opts.threads = threads;
  opts.preprocess = false;
  auto timed = [&](const std::string& name, const FtpInstance& inst,
                   const std::function<Verdict()>& solve) {
    const auto t0 = Clock::now();
    const Verdict v = solve();
    const double s = seconds_since(t0);
    runs.push_back({name + " l=" + std::to_string(inst.ell) + " " + ftp::to_string(v.answer), s});
    check.expect(s <= 60.0, name + " exceeded 60 s");
    expect_witness(check, inst, v, name);
    check.record(name + " " + ftp::instance_digest(inst) + " " + describe(v));
    return v;
  };
  // Whole sweep; l = C always admits the relaxation support.
  FtpInstance inst = scale_instance(40, 45, 15, 1, 4242);
  for (Weight ell : ftp::ell_sweep(inst)) {
    inst.ell = ell;
    const Verdict a = timed("u-guess |U|=15 n=40", inst, [&] {
      return ftp::solve_vulnerable_guess(inst, ftp::GuessMode::kBySubsets, opts);
    });
    const Verdict b = timed("q-guess |U|=15 n=40", inst, [&] {
      return ftp::solve_vulnerable_guess(inst, ftp::GuessMode::kBySize, opts);
    });
    check.expect(a.yes() == b.yes(), "scale u-guess and q-guess disagree");
  }
  inst = scale_instance(40, 15, 200, 2, 4343);
  for (Weight ell : ftp::ell_sweep(inst)) {
    inst.ell = ell;
    timed("s-guess |S|=15 |U|=200", inst, [&] { return ftp::solve_safe_guess(inst, opts); });
  }
  return runs;
}

// ---- driver ----

struct Line {
  int id = 0;
  bool pass = false;
  std::string text;
  double seconds = 0;
};

void print(const Line& l) {
  std::printf("[%s] %d %s (%.2f s)\n", l.pass ? "PASS" : "FAIL", l.id, l.text.c_str(), l.seconds);
  std::fflush(stdout);
}

std::string failure_text(const Check& c) {
  std::string s = ", " + std::to_string(c.failures) + " violations";
  for (const auto& f : c.first) s += "\n    " + f;
  return s;
}

struct Transcript {
  std::vector<std::string> lines;
};

// Runs suites 1-7 with the given thread count; when `report` is set the
// criteria lines are printed and collected.
Transcript run_all(int threads, std::vector<Line>* report) {
  Transcript tr;
  auto emit = [&](Line l) {
    if (!report) return;
    print(l);
    report->push_back(std::move(l));
  };

  auto t0 = Clock::now();
  std::vector<Case> cases = build_suite1(400);
  Check c1{0, {}, &tr.lines};
  suite1(cases, threads, c1);
  const double s1 = seconds_since(t0);
  emit({1, c1.failures == 0 && cases.size() >= 500 && s1 <= 300,
        "solver agreement on " + std::to_string(cases.size()) +
            " instances (oracle, u/q-guess, s-guess, auto)" +
            (c1.failures ? failure_text(c1) : ", all witnesses verified"),
        s1});

  t0 = Clock::now();
  Check c2{0, {}, &tr.lines};
  const int solvable = suite2(320, c2);
  const double s2 = seconds_since(t0);
  emit({2, c2.failures == 0 && s2 <= 120,
        "linkage optimum equals oracle and closure optimum on 320 instances (" +
            std::to_string(solvable) + " solvable)" + (c2.failures ? failure_text(c2) : ""),
        s2});

  t0 = Clock::now();
  Check c3;
  const auto [decomposed, compared] = suite3(cases, c3);
  emit({3, c3.failures == 0 && decomposed > 0,
        std::to_string(decomposed) + " witnesses split into k+1 paths sharing only safe edges; " +
            std::to_string(compared) + " flow/enumeration verifier comparisons" +
            (c3.failures ? failure_text(c3) : ""),
        seconds_since(t0)});

  t0 = Clock::now();
  Check c4;
  const int bounded = suite4(cases, c4);
  emit({4, c4.failures == 0 && bounded > 0,
        "k < q <= 2a on " + std::to_string(bounded) + " reduced yes-instances" +
            (c4.failures ? failure_text(c4) : ""),
        seconds_since(t0)});

  t0 = Clock::now();
  Check c5;
  const int with_c = suite5(cases, c5);
  emit({5, c5.failures == 0 && with_c > 0,
        "C >= (k+1) dist and l >= C => yes on " + std::to_string(with_c) + " instances" +
            (c5.failures ? failure_text(c5) : ""),
        seconds_since(t0)});

  t0 = Clock::now();
  Check c6{0, {}, &tr.lines};
  const auto counts = suite6(100, threads, c6);
  const double s6 = seconds_since(t0);
  std::string t6 = "reductions match brute force:";
  const char* names[] = {" biclique ", ", steiner ", ", hitting set "};
  for (int i = 0; i < 3; ++i) {
    t6 += names[i] + std::to_string(counts[i].inputs) + " (" + std::to_string(counts[i].yes) +
          " yes)";
  }
  emit({6, c6.failures == 0 && s6 <= 600, t6 + (c6.failures ? failure_text(c6) : ""), s6});

  t0 = Clock::now();
  Check c7{0, {}, &tr.lines};
  const auto runs = suite7(threads, c7);
  std::string t7 = "scale runs within 60 s each";
  for (const auto& r : runs) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "\n    %s: %.2f s", r.name.c_str(), r.seconds);
    t7 += buf;
  }
  emit({7, c7.failures == 0, t7 + (c7.failures ? failure_text(c7) : ""), seconds_since(t0)});
  return tr;
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 4;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--threads" && i + 1 < argc) {
      threads = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--threads N]\n");
      return 2;
    }
  }
  if (threads < 2) threads = 2;

  std::vector<Line> lines;
  const Transcript parallel = run_all(threads, &lines);

  const auto t0 = Clock::now();
  const Transcript serial = run_all(1, nullptr);
  std::size_t mismatch = 0;
  while (mismatch < serial.lines.size() && mismatch < parallel.lines.size() &&
         serial.lines[mismatch] == parallel.lines[mismatch]) {
    ++mismatch;
  }
  const bool same = serial.lines.size() == parallel.lines.size() && mismatch == serial.lines.size();
  std::string t8 = std::to_string(serial.lines.size()) + " recorded answers identical with 1 and " +
                   std::to_string(threads) + " threads";
  if (!same) {
    t8 = "first difference at record " + std::to_string(mismatch);
    if (mismatch < serial.lines.size()) t8 += "\n    1 thread:  " + serial.lines[mismatch];
    if (mismatch < parallel.lines.size()) t8 += "\n    N threads: " + parallel.lines[mismatch];
  }
  Line l8{8, same, t8, seconds_since(t0)};
  print(l8);
  lines.push_back(l8);

  const auto failed = std::count_if(lines.begin(), lines.end(), [](const Line& l) { return !l.pass; });
  std::printf("%zu/%zu criteria passed\n", lines.size() - failed, lines.size());
  return failed == 0 ? 0 : 1;
}
