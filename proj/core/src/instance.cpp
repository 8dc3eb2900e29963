#include "ftp/instance.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <sstream>

#include "text_reader.hpp"

namespace ftp {

EdgeSet::EdgeSet(std::vector<int> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

void EdgeSet::insert(int id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) ids_.insert(it, id);
}

bool EdgeSet::contains(int id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

EdgeSet EdgeSet::united(const EdgeSet& other) const {
  std::vector<int> merged;
  merged.reserve(ids_.size() + other.ids_.size());
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                 std::back_inserter(merged));
  EdgeSet out;
  out.ids_ = std::move(merged);
  return out;
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::vector<int> FtpInstance::edge_ids(EdgeKind kind) const {
  std::vector<int> out;
  for (const Edge& e : edges) {
    if (e.kind == kind) out.push_back(e.id);
  }
  return out;
}

Weight FtpInstance::cost(const EdgeSet& set) const { return cost(std::span<const int>(set.ids())); }

Weight FtpInstance::cost(std::span<const int> ids) const {
  Weight total = 0;
  for (int id : ids) total += edges[id].weight;
  return total;
}

int FtpInstance::add_edge(int tail, int head, Weight weight, EdgeKind kind) {
  const int id = edge_count();
  edges.push_back(Edge{id, tail, head, weight, kind});
  return id;
}

void FtpInstance::validate() const {
  if (n < 2) throw InvalidInstance("instance needs at least two vertices");
  auto in_range = [&](int v) { return v >= 0 && v < n; };
  if (!in_range(s) || !in_range(t)) throw InvalidInstance("terminal out of range");
  if (s == t) throw InvalidInstance("s and t must differ");
  if (k < 0) throw InvalidInstance("k must be non-negative");
  if (ell < 0) throw InvalidInstance("budget must be non-negative");
  for (int i = 0; i < edge_count(); ++i) {
    const Edge& e = edges[i];
    if (e.id != i) throw InvalidInstance("edge ids must be contiguous");
    if (!in_range(e.tail) || !in_range(e.head)) {
      throw InvalidInstance("edge " + std::to_string(i + 1) + " has an endpoint out of range");
    }
    if (e.tail == e.head) throw InvalidInstance("edge " + std::to_string(i + 1) + " is a self-loop");
    if (e.weight < 1) throw InvalidInstance("edge " + std::to_string(i + 1) + " has zero weight");
  }
}

FtpInstance parse_instance(std::istream& in) {
  detail::TextReader reader(in);
  FtpInstance inst;

  auto header = reader.next_line("header");
  header.expect_word("ftp");
  const std::string kind = header.word("graph kind");
  if (kind == "directed") {
    inst.directed = true;
  } else if (kind == "undirected") {
    inst.directed = false;
  } else {
    header.fail("expected 'directed' or 'undirected', got '" + kind + "'");
  }
  inst.n = static_cast<int>(header.integer("vertex count"));
  const auto m = header.integer("edge count");
  header.expect_end();
  if (inst.n < 2) header.fail("vertex count must be at least 2");
  if (m < 0) header.fail("edge count must be non-negative");

  auto vertex = [&](detail::Line& line, const char* what) {
    const auto v = line.integer(what);
    if (v < 1 || v > inst.n) line.fail(std::string(what) + " out of range: " + std::to_string(v));
    return static_cast<int>(v - 1);
  };

  auto terms = reader.next_line("terminal line");
  terms.expect_word("s");
  inst.s = vertex(terms, "s");
  terms.expect_word("t");
  inst.t = vertex(terms, "t");
  terms.expect_word("k");
  inst.k = static_cast<int>(terms.integer("k"));
  terms.expect_word("l");
  inst.ell = terms.integer("l");
  terms.expect_end();
  if (inst.s == inst.t) terms.fail("s and t must differ");
  if (inst.k < 0) terms.fail("k must be non-negative");
  if (inst.ell < 0) terms.fail("l must be non-negative");

  for (long long i = 0; i < m; ++i) {
    auto line = reader.next_line("edge line");
    line.expect_word("e");
    const int u = vertex(line, "tail");
    const int v = vertex(line, "head");
    const Weight w = line.integer("weight");
    const std::string tag = line.word("edge kind");
    line.expect_end();
    if (u == v) line.fail("self-loop");
    if (w == 0) line.fail("zero weight");
    if (w < 0) line.fail("negative weight");
    EdgeKind ek;
    if (tag == "S") {
      ek = EdgeKind::kSafe;
    } else if (tag == "V") {
      ek = EdgeKind::kVulnerable;
    } else {
      line.fail("edge kind must be S or V, got '" + tag + "'");
    }
    inst.add_edge(u, v, w, ek);
  }
  reader.expect_eof();
  return inst;
}

FtpInstance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

std::string serialize_instance(const FtpInstance& inst) {
  std::ostringstream out;
  out << "ftp " << (inst.directed ? "directed" : "undirected") << ' ' << inst.n << ' '
      << inst.edge_count() << '\n';
  out << "s " << inst.s + 1 << " t " << inst.t + 1 << " k " << inst.k << " l " << inst.ell << '\n';
  for (const Edge& e : inst.edges) {
    out << "e " << e.tail + 1 << ' ' << e.head + 1 << ' ' << e.weight << ' '
        << (e.safe() ? 'S' : 'V') << '\n';
  }
  return out.str();
}

EdgeSet parse_edge_set(std::istream& in, const FtpInstance& instance) {
  std::vector<int> ids;
  std::string token;
  int line = 1;
  while (in >> token) {
    if (token[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      ++line;
      continue;
    }
    long long id = 0;
    try {
      std::size_t used = 0;
      id = std::stoll(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError(line, "not an edge id: '" + token + "'");
    }
    if (id < 1 || id > instance.edge_count()) {
      throw ParseError(line, "edge id out of range: " + token);
    }
    ids.push_back(static_cast<int>(id - 1));
  }
  return EdgeSet(std::move(ids));
}

EdgeSet parse_edge_set(std::string_view text, const FtpInstance& instance) {
  std::istringstream in{std::string(text)};
  return parse_edge_set(in, instance);
}

std::string format_edge_set(const EdgeSet& set) {
  std::string out;
  for (int id : set) {
    if (!out.empty()) out += ' ';
    out += std::to_string(id + 1);
  }
  return out;
}

std::string instance_digest(const FtpInstance& instance) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_instance(instance)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace ftp
