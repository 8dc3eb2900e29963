#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftp/instance.hpp"

namespace ftp {

// Bipartite graph with sides A = [0, left) and B = [0, right).
struct BicliqueInput {
  int left = 0;
  int right = 0;
  std::vector<std::pair<int, int>> edges;  // (a, b)
  int d = 1;

  // Throws InvalidInstance. Requires d >= 2 and |E| >= 3d^2.
  void validate() const;
};

struct SteinerInput {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> terminals;
  int d = 0;

  void validate() const;
};

struct HittingSetInput {
  int universe = 0;
  std::vector<std::vector<int>> family;  // elements in [0, universe)
  int d = 0;

  void validate() const;
};

FtpInstance from_biclique(const BicliqueInput& input);
FtpInstance from_steiner_tree(const SteinerInput& input);
FtpInstance from_hitting_set(const HittingSetInput& input);

struct BicliqueCertificate {
  std::vector<int> left;   // d vertices of A
  std::vector<int> right;  // d vertices of B
};

struct SteinerCertificate {
  std::vector<int> edges;  // indices into SteinerInput::edges
};

struct HittingSetCertificate {
  std::vector<int> elements;
};

bool is_biclique(const BicliqueInput& input, const BicliqueCertificate& cert);
bool is_steiner_tree(const SteinerInput& input, const SteinerCertificate& cert);
bool is_hitting_set(const HittingSetInput& input, const HittingSetCertificate& cert);

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads a source-problem certificate off a feasible witness of the generated
// instance. Throws CertificateError when none can be read or the result fails
// its validator.
BicliqueCertificate extract_certificate(const BicliqueInput& input, const EdgeSet& witness);
SteinerCertificate extract_certificate(const SteinerInput& input, const EdgeSet& witness);
HittingSetCertificate extract_certificate(const HittingSetInput& input, const EdgeSet& witness);

enum class LengthPolicy {
  kFixed,          // ell = RandomSpec::ell
  kSweepAroundC,   // ell drawn from ell_sweep(instance)
};

struct RandomSpec {
  int n = 6;
  int edges = 10;
  double safe_fraction = 0.5;
  Weight min_weight = 1;
  Weight max_weight = 4;
  int k = 1;
  bool directed = false;
  LengthPolicy policy = LengthPolicy::kSweepAroundC;
  Weight ell = 0;
  std::uint64_t seed = 1;
};

// s = vertex 0, t = vertex n-1; no self-loops. Throws InvalidInstance on
// inconsistent parameters.
FtpInstance gen_random(const RandomSpec& spec);

// dist-1, dist, ceil((dist+C)/2), C-1, C; empty when dist or C is infinite.
std::vector<Weight> ell_sweep(const FtpInstance& instance);

BicliqueInput random_biclique(int left, int right, int edges, int d, std::uint64_t seed);
SteinerInput random_steiner(int n, int edges, int terminals, int d, std::uint64_t seed);
HittingSetInput random_hitting_set(int universe, int sets, int d, std::uint64_t seed);

BicliqueInput parse_biclique(std::string_view text);
SteinerInput parse_steiner(std::string_view text);
HittingSetInput parse_hitting_set(std::string_view text);
std::string serialize_biclique(const BicliqueInput& input);
std::string serialize_steiner(const SteinerInput& input);
std::string serialize_hitting_set(const HittingSetInput& input);

}  // namespace ftp
