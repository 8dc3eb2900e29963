#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ftp {

using Weight = std::int64_t;

// Sentinel for "unreachable" / "infeasible". Chosen so that a handful of
// additions never overflow.
inline constexpr Weight kInfinity = std::numeric_limits<Weight>::max() / 8;

inline Weight saturating_add(Weight a, Weight b) {
  if (a >= kInfinity || b >= kInfinity) return kInfinity;
  return a + b;
}

enum class EdgeKind : std::uint8_t { kSafe, kVulnerable };

// Vertices and edge ids are 0-based in memory and 1-based in every text
// format.
struct Edge {
  int id = 0;
  int tail = 0;
  int head = 0;
  Weight weight = 1;
  EdgeKind kind = EdgeKind::kSafe;

  bool safe() const { return kind == EdgeKind::kSafe; }
  bool vulnerable() const { return kind == EdgeKind::kVulnerable; }
  int other(int v) const { return v == tail ? head : tail; }
};

// Sorted, duplicate-free list of edge ids.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::vector<int> ids);

  void insert(int id);
  bool contains(int id) const;
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<int>& ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  EdgeSet united(const EdgeSet& other) const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
  friend auto operator<=>(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<int> ids_;
};

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SizeGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

struct FtpInstance {
  bool directed = true;
  int n = 0;
  std::vector<Edge> edges;
  int s = 0;
  int t = 0;
  int k = 0;
  Weight ell = 0;

  int edge_count() const { return static_cast<int>(edges.size()); }
  std::vector<int> edge_ids(EdgeKind kind) const;
  Weight cost(const EdgeSet& set) const;
  Weight cost(std::span<const int> ids) const;

  // Appends an edge and returns its id.
  int add_edge(int tail, int head, Weight weight, EdgeKind kind);

  // Throws InvalidInstance when an invariant is violated.
  void validate() const;
};

FtpInstance parse_instance(std::istream& in);
FtpInstance parse_instance(std::string_view text);
std::string serialize_instance(const FtpInstance& instance);

// Whitespace-separated 1-based edge ids.
EdgeSet parse_edge_set(std::istream& in, const FtpInstance& instance);
EdgeSet parse_edge_set(std::string_view text, const FtpInstance& instance);
std::string format_edge_set(const EdgeSet& set);

// Stable 64-bit FNV-1a digest of the canonical serialization.
std::string instance_digest(const FtpInstance& instance);

}  // namespace ftp
