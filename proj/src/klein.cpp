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

#include "negcurve/klein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "negcurve/error.hpp"
#include "negcurve/json_io.hpp"

namespace negcurve {

namespace {

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void check_unit(std::span<const double> z, double tol, const char* who) {
  if (std::abs(norm(z) - 1.0) > tol) {
    throw DomainError(std::string(who) + ": expected a unit vector");
  }
}

}  // namespace

std::string_view to_string(Region region) {
  switch (region) {
    case Region::kDiscPlus:
      return "disc_plus";
    case Region::kDiscMinus:
      return "disc_minus";
    case Region::kCylinder:
      return "cylinder";
    case Region::kBoundary:
      return "boundary";
  }
  return "unknown";
}

KleinPoint::KleinPoint(Region region, std::vector<double> coords)
    : region_(region), vector_(std::move(coords)) {
  const double x0 = vector_.time();
  const double r = vector_.spatial_norm();
  const double tol = kRegionTolerance;
  bool ok = false;
  switch (region_) {
    case Region::kDiscPlus:
      ok = std::abs(x0 - 1.0) <= tol && r < 1.0;
      break;
    case Region::kDiscMinus:
      ok = std::abs(x0 + 1.0) <= tol && r < 1.0;
      break;
    case Region::kCylinder:
      ok = std::abs(r - 1.0) <= tol && x0 > -1.0 && x0 < 1.0;
      break;
    case Region::kBoundary:
      ok = std::abs(r - 1.0) <= tol && std::abs(std::abs(x0) - 1.0) <= tol;
      break;
  }
  if (!ok) {
    throw InvalidInput("coordinates do not lie on region " +
                       std::string(to_string(region_)));
  }
}

KleinPoint project(const LorentzVector& v, double tol) {
  const SignClass sign = sign_class(v, tol);
  const double x0 = v.time();
  const double r = v.spatial_norm();
  std::vector<double> out(v.coords().begin(), v.coords().end());
  switch (sign) {
    case SignClass::kPositive: {
      if (x0 == 0.0) throw NumericError("time-like vector with x0 = 0");
      const double s = 1.0 / std::abs(x0);
      for (double& x : out) x *= s;
      out[0] = x0 > 0 ? 1.0 : -1.0;
      return KleinPoint(x0 > 0 ? Region::kDiscPlus : Region::kDiscMinus,
                        std::move(out));
    }
    case SignClass::kNegative: {
      for (std::size_t i = 1; i < out.size(); ++i) out[i] /= r;
      out[0] = x0 / r;
      return KleinPoint(Region::kCylinder, std::move(out));
    }
    case SignClass::kNull: {
      // Inside the guard band |x0| and r agree to ~tol; snap x0 onto +-1.
      for (std::size_t i = 1; i < out.size(); ++i) out[i] /= r;
      out[0] = x0 >= 0 ? 1.0 : -1.0;
      return KleinPoint(Region::kBoundary, std::move(out));
    }
  }
  throw NumericError("project: unreachable sign class");
}

CapRep::CapRep(std::vector<double> z, double theta)
    : z_(std::move(z)), theta_(theta) {
  if (z_.empty()) throw InvalidInput("CapRep: empty foot vector");
  check_unit(z_, 1e-12, "CapRep");
  if (!(theta_ > 0.0 && theta_ < std::numbers::pi)) {
    throw DomainError("CapRep: theta must lie in (0, pi)");
  }
}

CapRep cap_of(const KleinPoint& c) {
  if (c.region() != Region::kCylinder) {
    throw DomainError("cap_of: point is on " +
                      std::string(to_string(c.region())) + ", not the cylinder");
  }
  const auto s = c.vector().spatial();
  return CapRep(std::vector<double>(s.begin(), s.end()),
                std::acos(std::clamp(c.vector().time(), -1.0, 1.0)));
}

KleinPoint point_of(const CapRep& rep) {
  std::vector<double> coords;
  coords.reserve(rep.z().size() + 1);
  coords.push_back(std::cos(rep.theta()));
  coords.insert(coords.end(), rep.z().begin(), rep.z().end());
  return KleinPoint(Region::kCylinder, std::move(coords));
}

LorentzVector OrthDisc::point(std::span<const double> offset) const {
  if (offset.size() != z.size()) {
    throw InvalidInput("OrthDisc::point: offset has the wrong dimension");
  }
  double along = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) along += offset[i] * z[i];
  std::vector<double> w(offset.begin(), offset.end());
  for (std::size_t i = 0; i < z.size(); ++i) w[i] -= along * z[i];
  if (norm(w) > 1.0 + 1e-12) {
    throw DomainError("OrthDisc::point: offset outside the unit disc");
  }
  std::vector<double> p(center.coords().begin(), center.coords().end());
  for (std::size_t i = 0; i < w.size(); ++i) p[i + 1] += radius * w[i];
  return LorentzVector(std::move(p));
}

OrthDisc orth_disc(const KleinPoint& c) {
  const CapRep rep = cap_of(c);
  const double ct = std::cos(rep.theta());
  std::vector<double> y{1.0};
  std::vector<double> f{1.0};
  for (double zi : rep.z()) {
    y.push_back(ct * zi);
    f.push_back(zi);
  }
  return OrthDisc{LorentzVector(std::move(y)), std::sin(rep.theta()),
                  LorentzVector(std::move(f)), rep.z(), rep.theta()};
}

double angular_distance(std::span<const double> z1,
                        std::span<const double> z2) {
  if (z1.size() != z2.size()) {
    throw InvalidInput("angular_distance: dimension mismatch");
  }
  check_unit(z1, 1e-9, "angular_distance");
  check_unit(z2, 1e-9, "angular_distance");
  // 2 atan2(|a - b|, |a + b|) stays accurate near 0 and pi.
  double d2 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < z1.size(); ++i) {
    d2 += (z1[i] - z2[i]) * (z1[i] - z2[i]);
    s2 += (z1[i] + z2[i]) * (z1[i] + z2[i]);
  }
  return 2.0 * std::atan2(std::sqrt(d2), std::sqrt(s2));
}

namespace {

void write_point(std::ostream& out, double a, double b, double c) {
  out << format_double(a) << ' ' << format_double(b) << ' ' << format_double(c)
      << '\n';
}

void write_circle(std::ostream& out, const std::string& name, double x0,
                  int samples) {
  out << "# " << name << '\n';
  for (int k = 0; k <= samples; ++k) {
    const double a = 2.0 * std::numbers::pi * k / samples;
    write_point(out, x0, std::cos(a), std::sin(a));
  }
  out << '\n';
}

}  // namespace

void write_figure_data(std::ostream& out, std::span<const KleinPoint> points,
                       std::span<const std::string> labels,
                       int samples_per_curve) {
  write_circle(out, "boundary_plus", 1.0, samples_per_curve);
  write_circle(out, "boundary_minus", -1.0, samples_per_curve);
  constexpr int kGenerators = 12;
  for (int g = 0; g < kGenerators; ++g) {
    const double a = 2.0 * std::numbers::pi * g / kGenerators;
    out << "# cylinder_generator " << g << '\n';
    write_point(out, -1.0, std::cos(a), std::sin(a));
    write_point(out, 1.0, std::cos(a), std::sin(a));
    out << '\n';
  }
  for (std::size_t k = 0; k < points.size(); ++k) {
    const KleinPoint& p = points[k];
    if (p.dim() != 2) {
      throw DomainError("figure data is only defined for n = 2");
    }
    const std::string tag =
        std::to_string(k) + (k < labels.size() ? " " + labels[k] : "");
    out << "# point " << tag << " " << to_string(p.region()) << '\n';
    write_point(out, p.coords()[0], p.coords()[1], p.coords()[2]);
    out << '\n';
    if (p.region() != Region::kCylinder) continue;

    const OrthDisc disc = orth_disc(p);
    const double base = std::atan2(disc.z[1], disc.z[0]);
    out << "# cap " << tag << '\n';
    for (int s = 0; s <= samples_per_curve; ++s) {
      const double a = base - disc.theta + 2.0 * disc.theta * s / samples_per_curve;
      write_point(out, 1.0, std::cos(a), std::sin(a));
    }
    out << '\n';
    const std::vector<double> w{-disc.z[1], disc.z[0]};
    const std::vector<double> minus_w{disc.z[1], -disc.z[0]};
    const LorentzVector a = disc.point(w);
    const LorentzVector b = disc.point(minus_w);
    out << "# orth_disc " << tag << '\n';
    write_point(out, a[0], a[1], a[2]);
    write_point(out, b[0], b[1], b[2]);
    out << '\n';
    out << "# disc_center " << tag << '\n';
    write_point(out, disc.center[0], disc.center[1], disc.center[2]);
    out << '\n';
  }
}

}  // namespace negcurve
