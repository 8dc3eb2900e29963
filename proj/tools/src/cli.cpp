#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ftp/dsl.hpp"
#include "ftp/reductions.hpp"
#include "ftp/shortest_paths.hpp"
#include "ftp/solvers.hpp"

namespace ftp::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Bad paths, unreadable files and other caller mistakes.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

double elapsed_ms(Clock::time_point start) {
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return std::round(ms * 1000.0) / 1000.0;
}

Json weight_or_null(Weight w) { return w >= kInfinity ? Json(nullptr) : Json(w); }

template <class T>
Json optional_or_null(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json edge_ids_json(const EdgeSet& set) {
  Json ids = Json::array();
  for (int id : set) ids.push_back(id + 1);
  return ids;
}

std::string cost_text(const std::optional<Weight>& cost) {
  return cost ? std::to_string(*cost) : "-";
}

struct SolveConfig {
  std::string algo = "auto";
  int threads = 1;
  bool optimize = false;
  bool no_preprocess = false;
};

Verdict decide(const FtpInstance& inst, const SolveConfig& cfg) {
  SolveOptions opts;
  opts.threads = cfg.threads;
  opts.preprocess = !cfg.no_preprocess;
  if (cfg.algo == "auto") return solve_auto(inst, opts);
  if (cfg.algo == "u-guess") return solve_vulnerable_guess(inst, GuessMode::kBySubsets, opts);
  if (cfg.algo == "q-guess") return solve_vulnerable_guess(inst, GuessMode::kBySize, opts);
  if (cfg.algo == "s-guess") return solve_safe_guess(inst, opts);
  return oracle_verdict(inst);
}

// Fills verdict, witness, cost, provenance (and opt when optimizing).
void solve_into(const FtpInstance& inst, const SolveConfig& cfg, Json& report, Verdict& verdict) {
  if (!cfg.optimize) {
    verdict = decide(inst, cfg);
  } else {
    const Verdict best = minimize_cost(inst, [&](const FtpInstance& x) { return decide(x, cfg); });
    report["opt"] = optional_or_null(best.cost);
    if (best.yes() && *best.cost <= inst.ell) {
      verdict = best;
    } else {
      verdict = Verdict{Answer::kNo, std::nullopt, std::nullopt, best.provenance};
    }
  }
  report["verdict"] = to_string(verdict.answer);
  report["witness"] = verdict.witness ? edge_ids_json(*verdict.witness) : Json(nullptr);
  report["cost"] = optional_or_null(verdict.cost);
  report["provenance"] = verdict.provenance;
}

void emit(std::ostream& out, const Json& report) { out << report.dump() << '\n'; }

// ---- solve ----

struct SolveArgs {
  std::string file;
  std::string witness_path;
  SolveConfig cfg;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const FtpInstance inst = parse_instance(read_file(a.file));
  Json report;
  report["command"] = "solve";
  report["digest"] = instance_digest(inst);
  report["algo"] = a.cfg.algo;
  Verdict v;
  solve_into(inst, a.cfg, report, v);
  report["wall_ms"] = elapsed_ms(start);
  if (!a.witness_path.empty() && v.witness) {
    write_file(a.witness_path, format_edge_set(*v.witness) + "\n");
  }
  emit(out, report);
  err << "solve " << a.file << ": " << to_string(v.answer) << " cost " << cost_text(v.cost)
      << " [" << v.provenance << "] " << report["wall_ms"].get<double>() << " ms\n";
  return kExitOk;
}

// ---- verify ----

int cmd_verify(const std::string& file, const std::string& witness_file, std::ostream& out,
               std::ostream& err) {
  const auto start = Clock::now();
  const FtpInstance inst = parse_instance(read_file(file));
  const EdgeSet witness = parse_edge_set(read_file(witness_file), inst);
  const Feasibility f = verify_solution(inst, witness);
  const bool ok = f.feasible && f.cost <= inst.ell;
  Json report;
  report["command"] = "verify";
  report["digest"] = instance_digest(inst);
  report["verdict"] = ok ? "feasible" : "infeasible";
  report["fault_tolerant"] = f.feasible;
  report["cost"] = f.cost;
  report["ell"] = inst.ell;
  report["witness"] = edge_ids_json(witness);
  report["wall_ms"] = elapsed_ms(start);
  emit(out, report);
  err << "verify " << witness_file << ": " << (ok ? "feasible" : "infeasible") << " (cost "
      << f.cost << ", budget " << inst.ell << (f.feasible ? "" : ", not fault tolerant") << ")\n";
  return kExitOk;
}

// ---- params ----

int cmd_params(const std::string& file, bool use_oracle, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const FtpInstance inst = parse_instance(read_file(file));
  const Parameters p = compute_parameters(inst, use_oracle);
  Json report;
  report["command"] = "params";
  report["digest"] = instance_digest(inst);
  report["k"] = inst.k;
  report["ell"] = inst.ell;
  report["dist"] = weight_or_null(p.dist);
  report["C"] = weight_or_null(p.relaxation);
  report["a"] = optional_or_null(p.a);
  report["b"] = optional_or_null(p.b);
  if (use_oracle) {
    report["p"] = optional_or_null(p.p);
    report["q"] = optional_or_null(p.q);
    report["opt"] = optional_or_null(p.opt);
  }
  report["wall_ms"] = elapsed_ms(start);
  emit(out, report);
  err << "params " << file << ": dist " << report["dist"].dump() << " C " << report["C"].dump()
      << " a " << report["a"].dump() << " b " << report["b"].dump();
  if (use_oracle) {
    err << " p " << report["p"].dump() << " q " << report["q"].dump() << " opt "
        << report["opt"].dump();
  }
  err << '\n';
  return kExitOk;
}

// ---- gen ----

struct GenArgs {
  std::string source;  // random, biclique, steiner, hitting-set
  std::uint64_t seed = 1;
  std::string out_path;
  std::string source_out_path;
  std::string from;
  RandomSpec random;
  std::optional<Weight> ell;
  int left = 4;
  int right = 4;
  int n = 5;
  int bip_edges = 12;
  int st_edges = 7;
  int terminals = 3;
  int universe = 4;
  int sets = 3;
  int d = 2;
};

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  FtpInstance inst;
  std::string source_text;
  if (a.source == "random") {
    RandomSpec spec = a.random;
    spec.seed = a.seed;
    if (a.ell) {
      spec.policy = LengthPolicy::kFixed;
      spec.ell = *a.ell;
    }
    inst = gen_random(spec);
  } else if (a.source == "biclique") {
    const BicliqueInput in = a.from.empty() ? random_biclique(a.left, a.right, a.bip_edges, a.d, a.seed)
                                            : parse_biclique(read_file(a.from));
    inst = from_biclique(in);
    source_text = serialize_biclique(in);
  } else if (a.source == "steiner") {
    const SteinerInput in = a.from.empty() ? random_steiner(a.n, a.st_edges, a.terminals, a.d, a.seed)
                                           : parse_steiner(read_file(a.from));
    inst = from_steiner_tree(in);
    source_text = serialize_steiner(in);
  } else {
    const HittingSetInput in = a.from.empty() ? random_hitting_set(a.universe, a.sets, a.d, a.seed)
                                              : parse_hitting_set(read_file(a.from));
    inst = from_hitting_set(in);
    source_text = serialize_hitting_set(in);
  }
  const std::string text = serialize_instance(inst);
  if (!a.out_path.empty()) write_file(a.out_path, text);
  if (!a.source_out_path.empty() && !source_text.empty()) write_file(a.source_out_path, source_text);

  Json report;
  report["command"] = "gen";
  report["source"] = a.source;
  report["digest"] = instance_digest(inst);
  if (a.from.empty()) {
    report["seed"] = a.seed;
  } else {
    report["seed"] = nullptr;
  }
  report["n"] = inst.n;
  report["m"] = inst.edge_count();
  report["k"] = inst.k;
  report["ell"] = inst.ell;
  report["instance"] = text;
  if (!source_text.empty()) report["source_instance"] = source_text;
  report["wall_ms"] = elapsed_ms(start);
  emit(out, report);
  err << "gen " << a.source << ": n " << inst.n << " m " << inst.edge_count() << " k " << inst.k
      << " l " << inst.ell;
  if (!a.out_path.empty()) err << " -> " << a.out_path;
  err << '\n';
  return kExitOk;
}

// ---- bench ----

struct BenchRow {
  std::string file;
  Json report;
  Verdict verdict;
  std::string error;
};

int cmd_bench(const std::string& dir, const SolveConfig& cfg, int jobs, std::ostream& out,
              std::ostream& err) {
  const auto start = Clock::now();
  if (!fs::is_directory(dir)) throw UsageError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ftp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& x, const fs::path& y) { return x.filename() < y.filename(); });

  std::vector<BenchRow> rows(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      BenchRow& row = rows[i];
      row.file = files[i].filename().string();
      const auto t0 = Clock::now();
      row.report["file"] = row.file;
      try {
        const FtpInstance inst = parse_instance(read_file(files[i].string()));
        row.report["digest"] = instance_digest(inst);
        row.report["n"] = inst.n;
        row.report["m"] = inst.edge_count();
        row.report["k"] = inst.k;
        row.report["ell"] = inst.ell;
        solve_into(inst, cfg, row.report, row.verdict);
        row.report["status"] = "decided";
      } catch (const SizeGuardExceeded& e) {
        row.error = e.what();
        row.report["status"] = "size-guard";
      } catch (const std::exception& e) {
        row.error = e.what();
        row.report["status"] = "error";
      }
      if (!row.error.empty()) row.report["error"] = row.error;
      row.report["wall_ms"] = elapsed_ms(t0);
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  Json report;
  report["command"] = "bench";
  report["directory"] = fs::path(dir).filename().string();
  report["algo"] = cfg.algo;
  report["rows"] = Json::array();
  int decided = 0;
  for (const auto& row : rows) {
    report["rows"].push_back(row.report);
    decided += row.error.empty();
  }
  report["wall_ms"] = elapsed_ms(start);
  emit(out, report);

  err << std::left << std::setw(28) << "file" << std::setw(6) << "n" << std::setw(6) << "m"
      << std::setw(10) << "verdict" << std::setw(10) << "cost" << std::setw(18) << "by"
      << "ms\n";
  for (const auto& row : rows) {
    err << std::setw(28) << row.file;
    if (row.error.empty()) {
      err << std::setw(6) << row.report["n"].get<int>() << std::setw(6)
          << row.report["m"].get<int>() << std::setw(10) << to_string(row.verdict.answer)
          << std::setw(10) << cost_text(row.verdict.cost) << std::setw(18)
          << row.verdict.provenance;
    } else {
      err << std::setw(50) << row.report["status"].get<std::string>();
    }
    err << row.report["wall_ms"].get<double>() << '\n';
  }
  err << decided << "/" << rows.size() << " decided\n";
  return kExitOk;
}

// ---- dsl ----

int cmd_dsl(const std::string& file, const std::string& method, std::ostream& out,
            std::ostream& err) {
  const auto start = Clock::now();
  const DslInstance inst = parse_dsl(read_file(file));
  DslOptions opts;
  if (method == "patterns") opts.method = DslMethod::kPatterns;
  if (method == "subset-dp") opts.method = DslMethod::kSubsetDp;
  const auto sol = solve_dsl(inst, opts);
  Json report;
  report["command"] = "dsl";
  report["method"] = method;
  const bool yes = sol && sol->within_budget;
  report["verdict"] = yes ? "yes" : "no";
  report["opt"] = sol ? Json(sol->cost) : Json(nullptr);
  report["budget"] = inst.budget;
  if (sol) {
    Json arcs = Json::array();
    for (int a : sol->arcs) arcs.push_back(a + 1);
    Json pairs = Json::array();
    for (const auto& [i, j] : sol->pairing) {
      pairs.push_back(Json::array({inst.sources[i] + 1, inst.targets[j] + 1}));
    }
    report["arcs"] = arcs;
    report["pairing"] = pairs;
  } else {
    report["arcs"] = nullptr;
    report["pairing"] = nullptr;
  }
  report["wall_ms"] = elapsed_ms(start);
  emit(out, report);
  err << "dsl " << file << ": " << (yes ? "yes" : "no") << " opt "
      << (sol ? std::to_string(sol->cost) : std::string("none")) << " budget " << inst.budget
      << '\n';
  return kExitOk;
}

void add_solver_flags(CLI::App* app, SolveConfig& cfg) {
  app->add_option("--algo", cfg.algo, "Solver")
      ->check(CLI::IsMember({"auto", "u-guess", "q-guess", "s-guess", "oracle"}))
      ->capture_default_str();
  app->add_option("--threads", cfg.threads, "Worker threads, 0 for all cores")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_flag("--optimize", cfg.optimize, "Report the optimum cost via binary search on l");
  app->add_flag("--no-preprocess", cfg.no_preprocess, "Skip the preprocessing guards");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solvers for fault-tolerant s-t paths", "ftp"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Decide an FTP instance");
  solve_cmd->add_option("file", solve.file, "Instance file")->required();
  solve_cmd->add_option("--witness", solve.witness_path, "Write the witness edge ids here");
  add_solver_flags(solve_cmd, solve.cfg);

  std::string verify_file;
  std::string verify_witness;
  auto* verify_cmd = app.add_subcommand("verify", "Check a witness against an instance");
  verify_cmd->add_option("file", verify_file, "Instance file")->required();
  verify_cmd->add_option("witness", verify_witness, "Witness file")->required();

  std::string params_file;
  bool params_oracle = false;
  auto* params_cmd = app.add_subcommand("params", "Print dist, C, a, b (and p, q, opt)");
  params_cmd->add_option("file", params_file, "Instance file")->required();
  params_cmd->add_flag("--oracle", params_oracle, "Also run the brute-force oracle");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->require_subcommand(1);
  auto common = [&gen](CLI::App* sub) {
    sub->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    sub->add_option("-o,--out", gen.out_path, "Write the FTP instance here");
  };
  auto* g_random = gen_cmd->add_subcommand("random", "Random labelled graph");
  common(g_random);
  g_random->add_option("--n", gen.random.n, "Vertices")->capture_default_str();
  g_random->add_option("--edges", gen.random.edges, "Edges")->capture_default_str();
  g_random->add_option("--safe-fraction", gen.random.safe_fraction)->capture_default_str();
  g_random->add_option("--min-weight", gen.random.min_weight)->capture_default_str();
  g_random->add_option("--max-weight", gen.random.max_weight)->capture_default_str();
  g_random->add_option("--k", gen.random.k)->capture_default_str();
  g_random->add_flag("--directed", gen.random.directed);
  g_random->add_option("--ell", gen.ell, "Fixed length bound (default: sweep around C)");

  auto reduction = [&](const std::string& name, const std::string& help) {
    auto* sub = gen_cmd->add_subcommand(name, help);
    common(sub);
    sub->add_option("--from", gen.from, "Read the source instance instead of sampling one");
    sub->add_option("--source-out", gen.source_out_path, "Write the source instance here");
    sub->add_option("--d", gen.d)->capture_default_str();
    return sub;
  };
  auto* g_bip = reduction("biclique", "Reduction from balanced biclique");
  g_bip->add_option("--left", gen.left)->capture_default_str();
  g_bip->add_option("--right", gen.right)->capture_default_str();
  g_bip->add_option("--edges", gen.bip_edges)->capture_default_str();
  auto* g_st = reduction("steiner", "Reduction from Steiner tree");
  g_st->add_option("--n", gen.n)->capture_default_str();
  g_st->add_option("--edges", gen.st_edges)->capture_default_str();
  g_st->add_option("--terminals", gen.terminals)->capture_default_str();
  auto* g_hs = reduction("hitting-set", "Reduction from hitting set");
  g_hs->add_option("--universe", gen.universe)->capture_default_str();
  g_hs->add_option("--sets", gen.sets)->capture_default_str();

  std::string bench_dir;
  SolveConfig bench_cfg;
  int bench_jobs = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Solve every *.ftp file in a directory");
  bench_cmd->add_option("dir", bench_dir, "Directory")->required();
  add_solver_flags(bench_cmd, bench_cfg);
  bench_cmd->add_option("--jobs", bench_jobs, "Instances solved concurrently")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string dsl_file;
  std::string dsl_method = "auto";
  auto* dsl_cmd = app.add_subcommand("dsl", "Solve a Steiner linkage instance");
  dsl_cmd->add_option("file", dsl_file, "DSL file")->required();
  dsl_cmd->add_option("--method", dsl_method)
      ->check(CLI::IsMember({"auto", "patterns", "subset-dp"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ftp: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out, err);
    if (*verify_cmd) return cmd_verify(verify_file, verify_witness, out, err);
    if (*params_cmd) return cmd_params(params_file, params_oracle, out, err);
    if (*gen_cmd) {
      for (auto* sub : {g_random, g_bip, g_st, g_hs}) {
        if (*sub) gen.source = sub->get_name();
      }
      return cmd_gen(gen, out, err);
    }
    if (*bench_cmd) return cmd_bench(bench_dir, bench_cfg, bench_jobs, out, err);
    return cmd_dsl(dsl_file, dsl_method, out, err);
  } catch (const SizeGuardExceeded& e) {
    err << "ftp: size guard: " << e.what() << '\n';
    return kExitSizeGuard;
  } catch (const ParseError& e) {
    err << "ftp: parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInstance& e) {
    err << "ftp: invalid instance: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "ftp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ftp: error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace ftp::cli
