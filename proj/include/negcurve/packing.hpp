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

// Reduction of a model family to a system of Euclidean balls and the counting
// argument that bounds its size by an exponential in n:
//
//   1. Keep the larger of the two hemispheres {t <= pi/2}, {t > pi/2}, mapping
//      the latter through x0 -> -x0 (t -> pi - t), losing at most half.
//   2. Replace each cap (z, t) by a ball centred at z in R^n.
//   3. Rescale so the minimum centre distance is 1 and split the balls by the
//      distance of their centre from a pivot centre: near (< 2) and far (>= 2).
//   4. Near balls number fewer than 2^{n+1}; far centres are pairwise
//      separated by the cone angle 2 atan(sqrt(15)/7) seen from the pivot,
//      and a cap-packing count bounds them.

#ifndef NEGCURVE_PACKING_HPP_
#define NEGCURVE_PACKING_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "negcurve/conditions.hpp"
#include "negcurve/json_io.hpp"

namespace negcurve {

using BigInt = boost::multiprecision::cpp_int;

struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};

struct BallViolation {
  std::size_t first = 0;
  std::size_t second = 0;
  std::string condition;  // "center_outside" or "intersect"
  double margin = 0.0;
};

struct BallSystem {
  int dim = 0;
  std::vector<Ball> balls;
  double scale = 1.0;  // product of all rescalings applied so far

  double distance(std::size_t i, std::size_t j) const;
  double min_distance() const;

  // First pair breaking z_i not in B_j (d_ij >= r_j) or closed B_i, B_j
  // meeting (d_ij <= r_i + r_j), each with the band `tol` relative to the
  // current scale.
  std::optional<BallViolation> first_violation(
      double tol = kBoundaryTolerance) const;
  bool valid(double tol = kBoundaryTolerance) const {
    return !first_violation(tol).has_value();
  }
};

struct HemisphereSelection {
  ModelFamily family;
  std::vector<std::size_t> kept;  // indices into the input family
  bool reflected = false;         // caps were mapped t -> pi - t
};

// Ties go to the t <= pi/2 side; t = pi/2 (within the band) counts there.
HemisphereSelection hemisphere_filter(const ModelFamily& family);

struct OrderedPairVerdict {
  std::size_t first = 0;   // i, with the radius t_i under test
  std::size_t second = 0;  // j
  Verdict verdict;         // margin = d_ij - t_i
};

// t_i < d_ij (+ band) over all ordered pairs. Throws DomainError if some cap
// has t > pi/2.
std::vector<OrderedPairVerdict> reduce_ii_star(const ModelFamily& family);

// Centres z_i on the unit sphere of R^n; radii are the chord lengths
// 2 sin(t_i / 2). Throws InvalidFamilyError naming the pair on failure of
// (ii*) or (iii), DomainError if the family is not hemisphere-filtered.
BallSystem to_ball_system(const ModelFamily& family);

// Index pair realising the minimum centre distance, lowest pair on ties.
std::pair<std::size_t, std::size_t> pivot_pair(const BallSystem& system);

BallSystem normalize_scale(const BallSystem& system);

struct PartitionResult {
  std::size_t pivot = 0;
  std::size_t partner = 0;
  std::vector<std::size_t> near;
  std::vector<std::size_t> far;
  BallSystem system;
};

// Pivot centre z0 = centre of the lower pivot index; near iff |z - z0| < 2.
// Throws DomainError for an unnormalised system.
PartitionResult partition(const BallSystem& system);

BigInt near_bound(int n);
double far_cone_angle();

// Normalised surface measure of a cap of angular radius alpha on S^{n-1}.
double cap_fraction(int n, double alpha);

// ceil(1 / cap_fraction(n, far_cone_angle() / 2)).
BigInt far_bound(int n);

struct BoundFit {
  double u = 0.0;
  double v = 0.0;
  int horizon = 0;
};

// v = max(2, far_bound(H) / far_bound(H - 1)), u = the smallest value with
// u v^{n+1} >= total(n) for 1 <= n <= H (nudged up by one part in 10^12).
BoundFit fit_exponential_bound(int horizon = 64);

struct BoundReport {
  int n = 0;
  int rho = 0;
  BigInt near_bound;
  BigInt far_bound;
  int hemisphere_factor = 2;
  BigInt total;
  double u = 0.0;
  double v = 0.0;
  int horizon = 0;
  // Side diagnostics, not part of the bound: 5^n from a volume count of the
  // near region, and the far count for caps of half the radius.
  BigInt near_volume_bound;
  BigInt far_bound_half_radius;
};

BoundReport total_bound(int n);

struct ConeSeparationReport {
  bool passed = true;
  double threshold = 0.0;
  std::size_t pairs_checked = 0;
  std::optional<double> min_angle;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

// Angle at the pivot centre between every pair of far centres, compared to
// `threshold` - tol. Throws DomainError when the far set is empty.
ConeSeparationReport verify_cone_separation(const PartitionResult& part,
                                            double threshold, double tol = 1e-6);
ConeSeparationReport verify_cone_separation(const PartitionResult& part);

struct PipelineReport {
  HemisphereSelection selection;
  std::vector<OrderedPairVerdict> star;
  BallSystem system;
  std::optional<PartitionResult> partition;
  std::optional<ConeSeparationReport> cone;
  bool passed = false;
};

// hemisphere_filter -> reduce_ii_star -> to_ball_system -> normalize_scale ->
// partition -> verify_cone_separation on an actual family.
PipelineReport bound_pipeline(const ModelFamily& family);

Json big_to_json(const BigInt& value);
Json to_json(const BoundReport& report);
Json to_json(const PipelineReport& report);

}  // namespace negcurve

#endif  // NEGCURVE_PACKING_HPP_
