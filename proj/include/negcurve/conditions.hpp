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

// The two condition systems on a family of curve classes.
//
// Lattice level, for classes C_i, C_j of an integral lattice:
//   (I)   C_i^2 < 0
//   (II)  C_i . C_j >= 0
//   (III) (a C_i + b C_j)^2 <= 0 for all a, b > 0
// Model level, for the cap representations (z_i, t_i) of their images:
//   (i)   c_i lies on the cylinder
//   (ii)  cos d_ij <= cos t_i cos t_j
//   (iii) t_i + t_j >= d_ij
// where d_ij is the angular distance between the feet z_i and z_j.
//
// Lattice checks run in exact integer arithmetic. (III) is evaluated over
// real a, b > 0, which is the stronger statement; an integer grid search is
// kept alongside it as an independent check.

#ifndef NEGCURVE_CONDITIONS_HPP_
#define NEGCURVE_CONDITIONS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "negcurve/json_io.hpp"
#include "negcurve/klein.hpp"
#include "negcurve/lorentz.hpp"

namespace negcurve {

// Symmetric band for the model-level inequalities. A value inside the band
// counts as satisfying the (non-strict) condition.
inline constexpr double kBoundaryTolerance = 1e-9;

// margin >= 0 means the condition holds with room to spare; for lattice
// checks the sign of the margin decides `holds` exactly.
struct Verdict {
  bool holds = false;
  double margin = 0.0;
};

Verdict check_I(const QuadraticLattice& lattice, std::span<const Integer> c);
Verdict check_II(const QuadraticLattice& lattice, std::span<const Integer> c1,
                 std::span<const Integer> c2);
// Throws DomainError unless both classes have negative square.
Verdict check_III(const QuadraticLattice& lattice, std::span<const Integer> c1,
                  std::span<const Integer> c2);

// (III) from the intersection numbers alone: with A = C1^2 < 0, B = C2^2 < 0
// and p = C1.C2, sup_{t>0} (A t^2 + 2 p t + B) <= 0  iff  p <= 0 or p^2 <= AB.
// margin = AB - max(p, 0)^2.
Verdict check_III_numbers(Integer self1, Integer self2, Integer product);

struct Combination {
  Integer a = 0;
  Integer b = 0;
  Int128 square = 0;
};

// Smallest-lexicographic (a, b) in [1, max_coeff]^2 with (aC1 + bC2)^2 > 0.
std::optional<Combination> find_positive_combination(Integer self1,
                                                     Integer self2,
                                                     Integer product,
                                                     Integer max_coeff);

// When p > 0 and p^2 > AB, (a, b) = (p, -A) has square -A (p^2 - AB) > 0.
std::optional<Combination> maximizer_witness(Integer self1, Integer self2,
                                             Integer product);

bool check_i(const KleinPoint& point);
// Both throw DegeneratePairError when the feet coincide.
Verdict check_ii(const CapRep& c1, const CapRep& c2,
                 double tol = kBoundaryTolerance);
Verdict check_iii(const CapRep& c1, const CapRep& c2,
                  double tol = kBoundaryTolerance);

// Closed caps {w : angle(w, z) <= t} meet. Decided by walking the geodesic
// from z1 towards z2, independently of check_iii.
bool caps_intersect(const CapRep& c1, const CapRep& c2,
                    double tol = kBoundaryTolerance);

// With c_i = (0, 1, 0, ..., 0) and c_j = (cos t, cos d, sin d, 0, ..., 0):
// |a c_i + c_j|_H^2 = cos^2 t - (a + cos d)^2 - sin^2 d, maximised at
// a* = -cos d with value cos^2 t - sin^2 d. For d <= pi/2, a* <= 0 and the
// supremum over a > 0 is approached as a -> 0+.
struct RayMaximum {
  double a_star = 0.0;
  double value = 0.0;          // at a_star
  bool interior = false;       // a_star > 0
  double positive_sup = 0.0;   // sup over a > 0
};

RayMaximum max_norm_on_ray(double theta_j, double delta);

struct CurveFamily {
  QuadraticLattice lattice;
  std::vector<IntVector> classes;
  std::vector<std::string> labels;
};

struct ModelFamily {
  std::vector<CapRep> caps;
};

enum class Level { kLattice, kModel };

struct ElementVerdict {
  std::size_t index = 0;
  Verdict verdict;  // (I) or (i)
  std::optional<Region> region;
};

struct PairVerdict {
  std::size_t first = 0;
  std::size_t second = 0;
  std::optional<Verdict> second_condition;  // (II) or (ii)
  std::optional<Verdict> third_condition;   // (III) or (iii)
  bool degenerate = false;
};

struct Failure {
  std::size_t first = 0;
  std::size_t second = 0;  // == first for element conditions
  std::string condition;   // "I", "II", "III", "i", "ii", "iii", "degenerate"
  double margin = 0.0;
};

struct ValidationReport {
  Level level = Level::kLattice;
  std::vector<ElementVerdict> elements;
  std::vector<PairVerdict> pairs;
  bool overall = false;

  std::vector<Failure> failures() const;
};

// Throws InvalidInput for an empty family.
ValidationReport validate_family(const CurveFamily& family);
ValidationReport validate_family(const ModelFamily& family);
// Model-level validation of the images of the classes.
ValidationReport validate_model(const CurveFamily& family);

// Images of the classes in the model (standardize, embed, project).
std::vector<KleinPoint> map_to_model(const CurveFamily& family);
// Cap representations; throws InvalidFamilyError (condition "i") if some
// class does not land on the cylinder.
ModelFamily model_family(const CurveFamily& family);

Json to_json(const ValidationReport& report);

struct ConditionTally {
  std::uint64_t agree = 0;
  std::uint64_t boundary = 0;      // disagreements inside the band
  std::uint64_t lattice_only = 0;  // lattice true, model false, off the band
  std::uint64_t model_only = 0;    // model true, lattice false, off the band

  std::uint64_t non_boundary() const { return lattice_only + model_only; }
  ConditionTally& operator+=(const ConditionTally& o);
};

struct ProbeReport {
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t draws = 0;  // vectors drawn, including rejected ones
  ConditionTally first;     // I vs i, over every draw
  ConditionTally second;    // II vs ii
  ConditionTally third;     // III vs iii
  ConditionTally combined;  // (II and III) vs (ii and iii)
  // III vs iii disagreements off the band whose angular radii sum to <= pi.
  std::uint64_t third_non_boundary_theta_sum_le_pi = 0;
  // Pairs whose radii sum exceeds pi, where (iii) is weaker than (III).
  std::uint64_t theta_sum_gt_pi = 0;

  bool equivalent() const {
    return first.non_boundary() == 0 && second.non_boundary() == 0 &&
           third.non_boundary() == 0;
  }
};

// Draws `samples` pairs of Gaussian space-like vectors in R^{1,n} and compares
// the verdicts of both systems. Deterministic in (n, samples, seed) for any
// thread count.
ProbeReport equivalence_probe(int n, std::uint64_t samples, std::uint64_t seed,
                              int threads = 0);

Json to_json(const ProbeReport& report);

}  // namespace negcurve

#endif  // NEGCURVE_CONDITIONS_HPP_
