// Copyright 2026 The negcurve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Search for large families of caps satisfying (ii) and (iii) pairwise. Every
// such family is a clique of the compatibility graph on a candidate set, and
// its size is a lower bound for the hyperbolic kissing number at angle pi/2.
//
// Candidates carry their generating angles exactly where possible (rational
// multiples of pi) so that boundary pairs, such as perpendicular feet with
// t = pi/2, certify with margin exactly zero at high precision.

#ifndef NEGCURVE_SEARCH_HPP_
#define NEGCURVE_SEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "negcurve/conditions.hpp"
#include "negcurve/json_io.hpp"

namespace negcurve {

// num / den * pi.
struct PiFraction {
  Integer num = 0;
  Integer den = 1;
  double value() const;
};

using AngleValue = std::variant<double, PiFraction>;
double to_double(const AngleValue& angle);

// Hyperspherical angles (phi_1, ..., phi_{n-1}) of z together with t:
// z_1 = cos phi_1, z_2 = sin phi_1 cos phi_2, ...,
// z_n = sin phi_1 ... sin phi_{n-1}.
struct CapSpec {
  std::vector<AngleValue> direction;
  AngleValue theta;

  int dim() const { return static_cast<int>(direction.size()) + 1; }
  CapRep rep() const;
};

std::vector<double> direction_from_angles(std::span<const double> angles);
std::vector<double> angles_from_direction(std::span<const double> z);

// Margins below this (at 50 significant digits) fail certification.
inline constexpr double kCertificateFloor = -1e-30;

struct PairCertificate {
  std::size_t first = 0;
  std::size_t second = 0;
  double ii = 0.0;   // cos t_i cos t_j - cos d_ij
  double iii = 0.0;  // t_i + t_j - d_ij
};

struct Certificate {
  bool valid = true;
  std::vector<PairCertificate> pairs;
  std::optional<double> min_margin;
  // Set when invalid: the first failing pair and condition ("ii" or "iii").
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  std::string condition;
};

// Recomputes every pairwise margin from the exact generating data at 50
// significant digits.
Certificate certify(std::span<const CapSpec> caps);
PairCertificate certify_pair(const CapSpec& a, const CapSpec& b);

struct Configuration {
  int n = 0;
  std::vector<CapSpec> caps;
  Certificate certificate;

  ModelFamily family() const;
};

// check_ii and check_iii in double precision with the boundary band; false
// for coincident feet.
bool compatible(const CapRep& a, const CapRep& b,
                double tol = kBoundaryTolerance);

struct SearchParams {
  int n = 2;
  std::uint64_t seed = 1;
  int restarts = 8;
  int grid_divisions = 0;  // pi / grid_divisions resolution; 0 picks by n
  std::size_t random_candidates = 256;
  std::size_t max_clique_cutoff = 64;
  int threads = 0;
};

// Throws DomainError for n < 2, restarts < 1, or a negative grid.
void validate(const SearchParams& params);

// Largest even divisor of 180 whose grid has at most ~20000 points.
int default_grid_divisions(int n);

// Exact grid over the hyperspherical angles in steps of pi / divisions, with
// duplicate points at the coordinate poles removed, every radius pi / 2.
std::vector<CapSpec> grid_candidates(int n, int divisions);

// Cranley-Patterson shifted Halton points pushed through the Gaussian
// quantile; radius pi / 2 with probability 1/2, else uniform on (0, pi/2].
std::vector<CapSpec> random_candidates(int n, std::size_t count,
                                       std::uint64_t seed);

enum class Method { kGreedy, kExact };

struct SearchResult {
  Configuration best;
  std::size_t size = 0;
  Method method = Method::kGreedy;
  double elapsed_seconds = 0.0;
  int restarts = 0;
  std::size_t candidates = 0;
  std::uint64_t seed = 0;
};

// Greedy clique per restart (descending t, ties by lexicographic z), repaired
// until certified; the best restart wins by size, then by certificate digest.
SearchResult greedy_max(const SearchParams& params);

// Maximum clique over `candidates` of the graph built from certify_pair.
// Throws DomainError if the set is larger than params.max_clique_cutoff.
SearchResult exact_max(const SearchParams& params,
                       std::span<const CapSpec> candidates);

// Branch and bound with greedy-colouring bounds. Returns vertex indices in
// increasing order.
std::vector<std::size_t> maximum_clique(
    const std::vector<std::vector<bool>>& adjacency);

std::string configuration_digest(const Configuration& config);

Json to_json(const CapSpec& cap);
Json to_json(const Certificate& cert);
Json to_json(const SearchResult& result, bool include_timing = false);

}  // namespace negcurve

#endif  // NEGCURVE_SEARCH_HPP_
