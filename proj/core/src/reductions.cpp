#include "ftp/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "ftp/relaxation.hpp"
#include "ftp/shortest_paths.hpp"
#include "search.hpp"
#include "text_reader.hpp"

namespace ftp {

namespace {

constexpr EdgeKind kSafe = EdgeKind::kSafe;
constexpr EdgeKind kVulnerable = EdgeKind::kVulnerable;

// Vertex layout of the biclique instance.
struct BicliqueLayout {
  int left;
  int right;
  int d;

  int a(int i) const { return i; }
  int b(int j) const { return left + j; }
  int s() const { return left + right; }
  int t() const { return left + right + 1; }
  int v() const { return left + right + 2; }
  int path_edges() const { return 2 * d * d - 2 * d - 1; }
  int first_extra() const { return left + right + 3; }
};

int find_root(std::vector<int>& root, int v) {
  while (root[v] != v) v = root[v] = root[root[v]];
  return v;
}

}  // namespace

void BicliqueInput::validate() const {
  if (left < 0 || right < 0) throw InvalidInstance("negative side size");
  if (d < 2) throw InvalidInstance("biclique size d must be at least 2");
  if (static_cast<long long>(edges.size()) < 3LL * d * d) {
    throw InvalidInstance("biclique input needs at least 3d^2 = " + std::to_string(3 * d * d) +
                          " edges, got " + std::to_string(edges.size()));
  }
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || a >= left || b < 0 || b >= right) throw InvalidInstance("biclique edge out of range");
    if (!seen.insert({a, b}).second) throw InvalidInstance("duplicate biclique edge");
  }
}

void SteinerInput::validate() const {
  if (n < 1) throw InvalidInstance("steiner graph needs a vertex");
  if (terminals.empty()) throw InvalidInstance("steiner terminal set is empty");
  if (d < 0) throw InvalidInstance("negative steiner bound");
  std::set<int> seen;
  for (int v : terminals) {
    if (v < 0 || v >= n) throw InvalidInstance("steiner terminal out of range");
    if (!seen.insert(v).second) throw InvalidInstance("duplicate steiner terminal");
  }
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw InvalidInstance("steiner edge out of range");
    if (u == v) throw InvalidInstance("steiner edge is a self-loop");
  }
}

void HittingSetInput::validate() const {
  if (universe < 0) throw InvalidInstance("negative universe size");
  if (d < 0) throw InvalidInstance("negative hitting set bound");
  if (family.empty()) throw InvalidInstance("hitting set family is empty");
  for (const auto& f : family) {
    if (f.empty()) throw InvalidInstance("hitting set family member is empty");
    std::set<int> seen;
    for (int x : f) {
      if (x < 0 || x >= universe) throw InvalidInstance("family element outside the universe");
      if (!seen.insert(x).second) throw InvalidInstance("duplicate element in family member");
    }
  }
}

FtpInstance from_biclique(const BicliqueInput& input) {
  input.validate();
  const BicliqueLayout lay{input.left, input.right, input.d};
  const int d2 = input.d * input.d;
  FtpInstance inst;
  inst.directed = false;
  inst.n = lay.first_extra() + (lay.path_edges() - 1) + 2 * d2;
  inst.s = lay.s();
  inst.t = lay.t();
  inst.k = d2 - 1;
  inst.ell = 3 * d2 - 1;

  for (auto [a, b] : input.edges) inst.add_edge(lay.a(a), lay.b(b), 1, kVulnerable);
  for (int i = 0; i < input.left; ++i) inst.add_edge(lay.v(), lay.a(i), 1, kSafe);
  for (int j = 0; j < input.right; ++j) inst.add_edge(lay.b(j), lay.t(), 1, kSafe);

  int next = lay.first_extra();
  int prev = lay.s();
  for (int i = 0; i + 1 < lay.path_edges(); ++i) {
    inst.add_edge(prev, next, 1, kSafe);
    prev = next++;
  }
  inst.add_edge(prev, lay.v(), 1, kSafe);

  for (int p = 0; p < d2; ++p) {
    const int x = next++;
    const int y = next++;
    inst.add_edge(lay.s(), x, 1, kVulnerable);
    inst.add_edge(x, y, 1, kVulnerable);
    inst.add_edge(y, lay.t(), 1, kVulnerable);
  }
  inst.validate();
  return inst;
}

FtpInstance from_steiner_tree(const SteinerInput& input) {
  input.validate();
  std::vector<int> terms = input.terminals;
  std::sort(terms.begin(), terms.end());
  FtpInstance inst;
  inst.directed = false;
  inst.n = input.n + 1;
  inst.s = input.n;
  inst.t = terms.front();
  inst.k = static_cast<int>(terms.size()) - 1;
  inst.ell = input.d + static_cast<Weight>(terms.size());
  for (auto [u, v] : input.edges) inst.add_edge(u, v, 1, kSafe);
  for (int x : terms) inst.add_edge(inst.s, x, 1, kVulnerable);
  inst.validate();
  return inst;
}

FtpInstance from_hitting_set(const HittingSetInput& input) {
  input.validate();
  const int sets = static_cast<int>(input.family.size());
  FtpInstance inst;
  inst.directed = false;
  inst.s = 0;
  inst.t = 1;
  inst.n = 2 + input.universe + sets;
  inst.k = sets - 1;
  inst.ell = 2 * static_cast<Weight>(sets) + input.d;
  auto u = [](int x) { return 2 + x; };
  auto v = [&](int j) { return 2 + input.universe + j; };
  for (int x = 0; x < input.universe; ++x) inst.add_edge(inst.s, u(x), 1, kSafe);
  for (int j = 0; j < sets; ++j) {
    std::vector<int> members = input.family[j];
    std::sort(members.begin(), members.end());
    for (int x : members) inst.add_edge(u(x), v(j), 1, kVulnerable);
  }
  for (int j = 0; j < sets; ++j) inst.add_edge(v(j), inst.t, 1, kVulnerable);
  inst.validate();
  return inst;
}

bool is_biclique(const BicliqueInput& input, const BicliqueCertificate& cert) {
  auto distinct = [](std::vector<int> xs, int limit) {
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) return false;
    return std::all_of(xs.begin(), xs.end(), [&](int x) { return x >= 0 && x < limit; });
  };
  if (static_cast<int>(cert.left.size()) != input.d || static_cast<int>(cert.right.size()) != input.d) {
    return false;
  }
  if (!distinct(cert.left, input.left) || !distinct(cert.right, input.right)) return false;
  const std::set<std::pair<int, int>> edges(input.edges.begin(), input.edges.end());
  for (int a : cert.left) {
    for (int b : cert.right) {
      if (!edges.count({a, b})) return false;
    }
  }
  return true;
}

bool is_steiner_tree(const SteinerInput& input, const SteinerCertificate& cert) {
  if (static_cast<int>(cert.edges.size()) > input.d) return false;
  std::vector<int> root(input.n);
  std::iota(root.begin(), root.end(), 0);
  std::set<int> used;
  for (int i : cert.edges) {
    if (i < 0 || i >= static_cast<int>(input.edges.size()) || !used.insert(i).second) return false;
    const int a = find_root(root, input.edges[i].first);
    const int b = find_root(root, input.edges[i].second);
    if (a == b) return false;
    root[a] = b;
  }
  const int r = find_root(root, input.terminals.front());
  for (int x : input.terminals) {
    if (find_root(root, x) != r) return false;
  }
  return true;
}

bool is_hitting_set(const HittingSetInput& input, const HittingSetCertificate& cert) {
  if (static_cast<int>(cert.elements.size()) > input.d) return false;
  const std::set<int> chosen(cert.elements.begin(), cert.elements.end());
  if (chosen.size() != cert.elements.size()) return false;
  for (int x : chosen) {
    if (x < 0 || x >= input.universe) return false;
  }
  return std::all_of(input.family.begin(), input.family.end(), [&](const std::vector<int>& f) {
    return std::any_of(f.begin(), f.end(), [&](int x) { return chosen.count(x) > 0; });
  });
}

BicliqueCertificate extract_certificate(const BicliqueInput& input, const EdgeSet& witness) {
  const FtpInstance inst = from_biclique(input);
  const BicliqueLayout lay{input.left, input.right, input.d};
  std::vector<int> xs;
  std::vector<int> ys;
  for (int id : witness) {
    const Edge& e = inst.edges.at(id);
    if (!e.safe()) continue;
    if (e.tail == lay.v() && e.head < input.left) xs.push_back(e.head);
    if (e.head == lay.t() && e.tail >= input.left && e.tail < input.left + input.right) {
      ys.push_back(e.tail - input.left);
    }
  }
  const int d = input.d;
  const int nx = static_cast<int>(xs.size());
  const int ny = static_cast<int>(ys.size());
  for (std::uint64_t rx = 0; rx < detail::binomial(nx, d); ++rx) {
    BicliqueCertificate cert;
    for (int i : detail::unrank_combination(nx, d, rx)) cert.left.push_back(xs[i]);
    for (std::uint64_t ry = 0; ry < detail::binomial(ny, d); ++ry) {
      cert.right.clear();
      for (int j : detail::unrank_combination(ny, d, ry)) cert.right.push_back(ys[j]);
      if (is_biclique(input, cert)) return cert;
    }
  }
  throw CertificateError("no K_{d,d} among " + std::to_string(nx) + " A-side and " +
                         std::to_string(ny) + " B-side vertices attached by safe witness edges");
}

SteinerCertificate extract_certificate(const SteinerInput& input, const EdgeSet& witness) {
  input.validate();
  const int m = static_cast<int>(input.edges.size());
  // Spanning forest of the witness's safe edges, which are exactly the
  // input edges it kept.
  std::vector<int> root(input.n);
  std::iota(root.begin(), root.end(), 0);
  std::vector<int> forest;
  for (int id : witness) {
    if (id >= m) continue;
    const int a = find_root(root, input.edges[id].first);
    const int b = find_root(root, input.edges[id].second);
    if (a == b) continue;
    root[a] = b;
    forest.push_back(id);
  }
  // Keep the terminals' component and strip non-terminal leaves.
  const int r = find_root(root, input.terminals.front());
  std::vector<char> terminal(input.n, 0);
  for (int x : input.terminals) terminal[x] = 1;
  std::vector<int> tree;
  for (int id : forest) {
    if (find_root(root, input.edges[id].first) == r) tree.push_back(id);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> degree(input.n, 0);
    for (int id : tree) {
      ++degree[input.edges[id].first];
      ++degree[input.edges[id].second];
    }
    std::vector<int> kept;
    for (int id : tree) {
      auto [u, v] = input.edges[id];
      if ((degree[u] == 1 && !terminal[u]) || (degree[v] == 1 && !terminal[v])) {
        changed = true;
      } else {
        kept.push_back(id);
      }
    }
    tree = std::move(kept);
  }
  SteinerCertificate cert{tree};
  if (!is_steiner_tree(input, cert)) {
    throw CertificateError("witness safe edges give a tree of " + std::to_string(tree.size()) +
                           " edges that does not span the terminals within the bound");
  }
  return cert;
}

HittingSetCertificate extract_certificate(const HittingSetInput& input, const EdgeSet& witness) {
  const FtpInstance inst = from_hitting_set(input);
  HittingSetCertificate direct;
  for (int id : witness) {
    const Edge& e = inst.edges.at(id);
    if (e.safe()) direct.elements.push_back(e.head - 2);
  }
  if (is_hitting_set(input, direct)) return direct;

  // Elements whose vertex the witness connects to s without passing t.
  std::vector<std::vector<int>> adj(inst.n);
  for (int id : witness) {
    const Edge& e = inst.edges[id];
    adj[e.tail].push_back(e.head);
    adj[e.head].push_back(e.tail);
  }
  std::vector<char> seen(inst.n, 0);
  std::vector<int> stack{inst.s};
  seen[inst.s] = 1;
  seen[inst.t] = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  HittingSetCertificate reach;
  for (int x = 0; x < input.universe; ++x) {
    if (seen[2 + x]) reach.elements.push_back(x);
  }
  if (is_hitting_set(input, reach)) return reach;
  throw CertificateError("neither the " + std::to_string(direct.elements.size()) +
                         " directly attached elements nor the " +
                         std::to_string(reach.elements.size()) +
                         " reachable elements form a hitting set within the bound");
}

FtpInstance gen_random(const RandomSpec& spec) {
  if (spec.n < 2) throw InvalidInstance("random instance needs n >= 2");
  if (spec.edges < 0) throw InvalidInstance("negative edge count");
  if (spec.safe_fraction < 0.0 || spec.safe_fraction > 1.0) {
    throw InvalidInstance("safe fraction must lie in [0, 1]");
  }
  if (spec.min_weight < 1 || spec.max_weight < spec.min_weight) {
    throw InvalidInstance("weight range must satisfy 1 <= min <= max");
  }
  if (spec.k < 0) throw InvalidInstance("k must be non-negative");
  if (spec.policy == LengthPolicy::kFixed && spec.ell < 0) {
    throw InvalidInstance("fixed budget must be non-negative");
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> vertex(0, spec.n - 1);
  std::uniform_int_distribution<Weight> weight(spec.min_weight, spec.max_weight);
  std::bernoulli_distribution safe(spec.safe_fraction);

  FtpInstance inst;
  inst.directed = spec.directed;
  inst.n = spec.n;
  inst.s = 0;
  inst.t = spec.n - 1;
  inst.k = spec.k;
  for (int i = 0; i < spec.edges; ++i) {
    int u = vertex(rng);
    int v = vertex(rng);
    while (v == u) v = vertex(rng);
    const Weight w = weight(rng);
    inst.add_edge(u, v, w, safe(rng) ? kSafe : kVulnerable);
  }
  if (spec.policy == LengthPolicy::kFixed) {
    inst.ell = spec.ell;
  } else {
    const auto sweep = ell_sweep(inst);
    if (sweep.empty()) {
      inst.ell = std::uniform_int_distribution<Weight>(0, spec.edges * spec.max_weight)(rng);
    } else {
      inst.ell = sweep[std::uniform_int_distribution<std::size_t>(0, sweep.size() - 1)(rng)];
    }
  }
  inst.validate();
  return inst;
}

std::vector<Weight> ell_sweep(const FtpInstance& instance) {
  const Weight dist = st_distance(instance);
  const Weight c = relaxation_cost(instance).cost;
  if (dist >= kInfinity || c >= kInfinity) return {};
  std::vector<Weight> out{dist - 1, dist, (dist + c + 1) / 2, c - 1, c};
  for (Weight& x : out) x = std::max<Weight>(x, 0);
  return out;
}

BicliqueInput random_biclique(int left, int right, int edges, int d, std::uint64_t seed) {
  if (left < 1 || right < 1 || edges < 0 || edges > left * right) {
    throw InvalidInstance("inconsistent biclique generator parameters");
  }
  std::vector<std::pair<int, int>> all;
  for (int a = 0; a < left; ++a) {
    for (int b = 0; b < right; ++b) all.emplace_back(a, b);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(edges);
  std::sort(all.begin(), all.end());
  BicliqueInput in{left, right, std::move(all), d};
  in.validate();
  return in;
}

SteinerInput random_steiner(int n, int edges, int terminals, int d, std::uint64_t seed) {
  if (n < 1 || terminals < 1 || terminals > n || edges < 0 || edges > n * (n - 1) / 2) {
    throw InvalidInstance("inconsistent steiner generator parameters");
  }
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(edges);
  std::sort(all.begin(), all.end());
  std::vector<int> vertices(n);
  std::iota(vertices.begin(), vertices.end(), 0);
  std::shuffle(vertices.begin(), vertices.end(), rng);
  vertices.resize(terminals);
  std::sort(vertices.begin(), vertices.end());
  SteinerInput in{n, std::move(all), std::move(vertices), d};
  in.validate();
  return in;
}

HittingSetInput random_hitting_set(int universe, int sets, int d, std::uint64_t seed) {
  if (universe < 1 || sets < 1 || d < 0) throw InvalidInstance("inconsistent hitting set parameters");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(1, universe);
  HittingSetInput in;
  in.universe = universe;
  in.d = d;
  std::vector<int> elements(universe);
  std::iota(elements.begin(), elements.end(), 0);
  for (int j = 0; j < sets; ++j) {
    std::shuffle(elements.begin(), elements.end(), rng);
    std::vector<int> f(elements.begin(), elements.begin() + size(rng));
    std::sort(f.begin(), f.end());
    in.family.push_back(std::move(f));
  }
  in.validate();
  return in;
}

namespace {

int one_based(detail::Line& line, const char* what, int limit) {
  const auto v = line.integer(what);
  if (v < 1 || v > limit) line.fail(std::string(what) + " out of range: " + std::to_string(v));
  return static_cast<int>(v - 1);
}

int count_field(detail::Line& line, const char* what) {
  const auto v = line.integer(what);
  if (v < 0) line.fail(std::string(what) + " must be non-negative");
  return static_cast<int>(v);
}

}  // namespace

BicliqueInput parse_biclique(std::string_view text) {
  std::istringstream in{std::string(text)};
  detail::TextReader reader(in);
  auto header = reader.next_line("header");
  header.expect_word("bip");
  BicliqueInput out;
  out.left = count_field(header, "|A|");
  out.right = count_field(header, "|B|");
  const int m = count_field(header, "|E|");
  out.d = count_field(header, "d");
  header.expect_end();
  for (int i = 0; i < m; ++i) {
    auto line = reader.next_line("edge line");
    line.expect_word("e");
    const int a = one_based(line, "A vertex", out.left);
    const int b = one_based(line, "B vertex", out.right);
    line.expect_end();
    out.edges.emplace_back(a, b);
  }
  reader.expect_eof();
  return out;
}

SteinerInput parse_steiner(std::string_view text) {
  std::istringstream in{std::string(text)};
  detail::TextReader reader(in);
  auto header = reader.next_line("header");
  header.expect_word("st");
  SteinerInput out;
  out.n = count_field(header, "vertex count");
  const int m = count_field(header, "edge count");
  out.d = count_field(header, "d");
  header.expect_end();
  auto terms = reader.next_line("terminal line");
  terms.expect_word("T");
  while (!terms.at_end()) out.terminals.push_back(one_based(terms, "terminal", out.n));
  for (int i = 0; i < m; ++i) {
    auto line = reader.next_line("edge line");
    line.expect_word("e");
    const int u = one_based(line, "vertex", out.n);
    const int v = one_based(line, "vertex", out.n);
    line.expect_end();
    if (u == v) line.fail("self-loop");
    out.edges.emplace_back(u, v);
  }
  reader.expect_eof();
  return out;
}

HittingSetInput parse_hitting_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  detail::TextReader reader(in);
  auto header = reader.next_line("header");
  header.expect_word("hs");
  HittingSetInput out;
  out.universe = count_field(header, "|U|");
  const int sets = count_field(header, "|F|");
  out.d = count_field(header, "d");
  header.expect_end();
  for (int j = 0; j < sets; ++j) {
    auto line = reader.next_line("set line");
    line.expect_word("f");
    std::vector<int> f;
    while (!line.at_end()) f.push_back(one_based(line, "element", out.universe));
    if (f.empty()) line.fail("empty set");
    out.family.push_back(std::move(f));
  }
  reader.expect_eof();
  return out;
}

std::string serialize_biclique(const BicliqueInput& input) {
  std::ostringstream out;
  out << "bip " << input.left << ' ' << input.right << ' ' << input.edges.size() << ' ' << input.d
      << '\n';
  for (auto [a, b] : input.edges) out << "e " << a + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

std::string serialize_steiner(const SteinerInput& input) {
  std::ostringstream out;
  out << "st " << input.n << ' ' << input.edges.size() << ' ' << input.d << "\nT";
  for (int x : input.terminals) out << ' ' << x + 1;
  out << '\n';
  for (auto [u, v] : input.edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

std::string serialize_hitting_set(const HittingSetInput& input) {
  std::ostringstream out;
  out << "hs " << input.universe << ' ' << input.family.size() << ' ' << input.d << '\n';
  for (const auto& f : input.family) {
    out << 'f';
    for (int x : f) out << ' ' << x + 1;
    out << '\n';
  }
  return out.str();
}

}  // namespace ftp
