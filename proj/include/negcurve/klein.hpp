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

// The extended Klein model: a section of (R^{1,n} - {0}) / R^+ made of the two
// discs {+-1} x D^n (time-like rays), the cylinder (-1, 1) x S^{n-1}
// (space-like rays) and their common boundary {+-1} x S^{n-1} (null rays).
//
// A cylinder point c = (cos t, z) is alternatively described by the pair
// (z, t): the foot z on the unit sphere and the angular radius t of the cap
// that the H-orthogonal complement of c cuts out of the upper boundary sphere.

#ifndef NEGCURVE_KLEIN_HPP_
#define NEGCURVE_KLEIN_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "negcurve/lorentz.hpp"

namespace negcurve {

enum class Region { kDiscPlus, kDiscMinus, kCylinder, kBoundary };

std::string_view to_string(Region region);

// Coordinates must sit on their region to within this tolerance.
inline constexpr double kRegionTolerance = 1e-9;

class KleinPoint {
 public:
  // Throws InvalidInput when the coordinates do not lie on `region`.
  KleinPoint(Region region, std::vector<double> coords);

  Region region() const { return region_; }
  const LorentzVector& vector() const { return vector_; }
  std::span<const double> coords() const { return vector_.coords(); }
  int dim() const { return vector_.dim(); }

 private:
  Region region_;
  LorentzVector vector_;
};

// Central projection along positive rays. The region follows sign_class(v).
KleinPoint project(const LorentzVector& v, double tol = kSignTolerance);

// Foot z (unit vector of R^n) and angular radius theta in (0, pi).
class CapRep {
 public:
  CapRep(std::vector<double> z, double theta);

  const std::vector<double>& z() const { return z_; }
  double theta() const { return theta_; }
  int dim() const { return static_cast<int>(z_.size()); }

 private:
  std::vector<double> z_;
  double theta_;
};

CapRep cap_of(const KleinPoint& c);
KleinPoint point_of(const CapRep& rep);

// The component of c^perp inside the upper disc: a flat (n-1)-disc centred at
// y = (1, cos t * z) with Euclidean radius sin t and boundary on the cap circle.
struct OrthDisc {
  LorentzVector center;
  double radius;
  LorentzVector foot;
  std::vector<double> z;
  double theta;

  // y + radius * w, where w is `offset` with its z-component removed.
  // Throws DomainError when |w| > 1.
  LorentzVector point(std::span<const double> offset) const;
};

OrthDisc orth_disc(const KleinPoint& c);

// Angle in [0, pi] between two unit vectors of R^n.
double angular_distance(std::span<const double> z1, std::span<const double> z2);

// Plain-text point streams for the n = 2 model: boundary circles, cylinder
// generators, and for every cylinder point its cap arc and orthogonal chord.
// Blocks start with a "# name" line and are separated by blank lines.
void write_figure_data(std::ostream& out, std::span<const KleinPoint> points,
                       std::span<const std::string> labels,
                       int samples_per_curve = 96);

}  // namespace negcurve

#endif  // NEGCURVE_KLEIN_HPP_
