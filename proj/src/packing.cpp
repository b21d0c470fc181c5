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

#include "negcurve/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "negcurve/error.hpp"

namespace negcurve {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double euclid(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

void require_hemisphere(const ModelFamily& family, const char* who) {
  for (const CapRep& c : family.caps) {
    if (c.theta() > kHalfPi + kBoundaryTolerance) {
      throw DomainError(std::string(who) +
                        ": family is not hemisphere-filtered (theta > pi/2)");
    }
  }
}

}  // namespace

double BallSystem::distance(std::size_t i, std::size_t j) const {
  return euclid(balls[i].center, balls[j].center);
}

double BallSystem::min_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j)
      best = std::min(best, distance(i, j));
  return best;
}

std::optional<BallViolation> BallSystem::first_violation(double tol) const {
  const double band = tol * scale;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      const double d = distance(i, j);
      const double ri = balls[i].radius, rj = balls[j].radius;
      if (d - rj < -band) return BallViolation{i, j, "center_outside", d - rj};
      if (d - ri < -band) return BallViolation{j, i, "center_outside", d - ri};
      if (ri + rj - d < -band) {
        return BallViolation{i, j, "intersect", ri + rj - d};
      }
    }
  }
  return std::nullopt;
}

HemisphereSelection hemisphere_filter(const ModelFamily& family) {
  if (family.caps.empty()) throw InvalidInput("hemisphere_filter: empty family");
  std::vector<std::size_t> low, high;
  for (std::size_t i = 0; i < family.caps.size(); ++i) {
    (family.caps[i].theta() <= kHalfPi + kBoundaryTolerance ? low : high)
        .push_back(i);
  }
  HemisphereSelection out;
  out.reflected = high.size() > low.size();
  out.kept = out.reflected ? high : low;
  for (std::size_t i : out.kept) {
    const CapRep& c = family.caps[i];
    out.family.caps.push_back(
        out.reflected ? CapRep(c.z(), std::numbers::pi - c.theta()) : c);
  }
  return out;
}

std::vector<OrderedPairVerdict> reduce_ii_star(const ModelFamily& family) {
  require_hemisphere(family, "reduce_ii_star");
  std::vector<OrderedPairVerdict> out;
  const auto& caps = family.caps;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    for (std::size_t j = 0; j < caps.size(); ++j) {
      if (i == j) continue;
      const double margin = angular_distance(caps[i].z(), caps[j].z()) -
                            caps[i].theta();
      out.push_back({i, j, {margin > -kBoundaryTolerance, margin}});
    }
  }
  return out;
}

BallSystem to_ball_system(const ModelFamily& family) {
  require_hemisphere(family, "to_ball_system");
  const auto& caps = family.caps;
  BallSystem sys;
  sys.dim = caps.empty() ? 0 : caps.front().dim();
  for (std::size_t i = 0; i < caps.size(); ++i) {
    for (std::size_t j = i + 1; j < caps.size(); ++j) {
      const double delta = angular_distance(caps[i].z(), caps[j].z());
      const double worst_star =
          std::min(delta - caps[i].theta(), delta - caps[j].theta());
      if (worst_star <= -kBoundaryTolerance) {
        throw InvalidFamilyError(i, j, "ii*",
                                 "caps " + std::to_string(i) + " and " +
                                     std::to_string(j) + " violate t < d");
      }
      if (caps[i].theta() + caps[j].theta() - delta < -kBoundaryTolerance) {
        throw InvalidFamilyError(i, j, "iii",
                                 "caps " + std::to_string(i) + " and " +
                                     std::to_string(j) + " violate t_i + t_j >= d");
      }
    }
  }
  for (const CapRep& c : caps) {
    sys.balls.push_back(Ball{c.z(), 2.0 * std::sin(c.theta() / 2.0)});
  }
  return sys;
}

std::pair<std::size_t, std::size_t> pivot_pair(const BallSystem& system) {
  if (system.balls.size() < 2) {
    throw DomainError("pivot_pair: need at least two balls");
  }
  std::pair<std::size_t, std::size_t> best{0, 1};
  double best_d = system.distance(0, 1);
  for (std::size_t i = 0; i < system.balls.size(); ++i) {
    for (std::size_t j = i + 1; j < system.balls.size(); ++j) {
      const double d = system.distance(i, j);
      if (d < best_d * (1.0 - 1e-12)) {
        best_d = d;
        best = {i, j};
      }
    }
  }
  return best;
}

BallSystem normalize_scale(const BallSystem& system) {
  if (system.balls.size() < 2) {
    throw DomainError("normalize_scale: need at least two balls");
  }
  const auto [i, j] = pivot_pair(system);
  const double d = system.distance(i, j);
  if (!(d > 1e-12 * system.scale)) {
    throw DomainError("normalize_scale: coincident centres");
  }
  const double factor = 1.0 / d;
  BallSystem out = system;
  out.scale *= factor;
  for (Ball& b : out.balls) {
    for (double& x : b.center) x *= factor;
    b.radius *= factor;
  }
  return out;
}

PartitionResult partition(const BallSystem& system) {
  if (system.balls.size() < 2 ||
      std::abs(system.min_distance() - 1.0) > 1e-12) {
    throw DomainError("partition: system is not normalized");
  }
  PartitionResult out;
  std::tie(out.pivot, out.partner) = pivot_pair(system);
  out.system = system;
  for (std::size_t k = 0; k < system.balls.size(); ++k) {
    (system.distance(k, out.pivot) < 2.0 ? out.near : out.far).push_back(k);
  }
  return out;
}

BigInt near_bound(int n) {
  if (n < 1) throw DomainError("near_bound: n must be at least 1");
  return BigInt(1) << (n + 1);
}

double far_cone_angle() { return 2.0 * std::atan(std::sqrt(15.0) / 7.0); }

double cap_fraction(int n, double alpha) {
  if (n < 1) throw DomainError("cap_fraction: n must be at least 1");
  if (!(alpha >= 0.0 && alpha <= std::numbers::pi)) {
    throw DomainError("cap_fraction: alpha must lie in [0, pi]");
  }
  if (n == 1) {
    // S^0: a cap of radius < pi holds one of the two points.
    return alpha < std::numbers::pi ? 0.5 : 1.0;
  }
  const double power = n - 2;
  const auto f = [power](double t) { return std::pow(std::sin(t), power); };
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double part = Quad::integrate(f, 0.0, alpha, 12, 1e-13);
  const double whole = 2.0 * Quad::integrate(f, 0.0, kHalfPi, 12, 1e-13);
  return part / whole;
}

namespace {

// ceiling of 1 / fraction; ratios that are integers up to quadrature error
// are not pushed to the next integer.
BigInt packing_count(double fraction) {
  const double x = 1.0 / fraction;
  const double r = std::round(x);
  const double c = std::abs(x - r) <= 1e-9 * x ? r : std::ceil(x);
  return BigInt(c);
}

double as_double(const BigInt& v) { return v.convert_to<double>(); }

}  // namespace

BigInt far_bound(int n) {
  if (n < 1) throw DomainError("far_bound: n must be at least 1");
  return packing_count(cap_fraction(n, far_cone_angle() / 2.0));
}

BoundFit fit_exponential_bound(int horizon) {
  if (horizon < 2) throw DomainError("fit_exponential_bound: horizon < 2");
  std::vector<double> totals(horizon + 1, 0.0);
  for (int n = 1; n <= horizon; ++n) {
    totals[n] = 2.0 * (as_double(near_bound(n)) + as_double(far_bound(n)));
  }
  BoundFit fit;
  fit.horizon = horizon;
  fit.v = std::max(2.0, as_double(far_bound(horizon)) /
                            as_double(far_bound(horizon - 1)));
  for (int n = 1; n <= horizon; ++n) {
    fit.u = std::max(fit.u, totals[n] / std::pow(fit.v, n + 1));
  }
  fit.u *= 1.0 + 1e-12;
  for (int n = 1; n <= horizon; ++n) {
    if (fit.u * std::pow(fit.v, n + 1) < totals[n]) {
      throw NumericError("fit_exponential_bound: fitted constants fail at n = " +
                         std::to_string(n));
    }
  }
  return fit;
}

BoundReport total_bound(int n) {
  if (n < 1) throw DomainError("total_bound: n must be at least 1");
  static const BoundFit fit = fit_exponential_bound(64);
  BoundReport r;
  r.n = n;
  r.rho = n + 1;
  r.near_bound = near_bound(n);
  r.far_bound = far_bound(n);
  r.hemisphere_factor = 2;
  r.total = r.hemisphere_factor * (r.near_bound + r.far_bound);
  r.u = fit.u;
  r.v = fit.v;
  r.horizon = fit.horizon;
  r.near_volume_bound = boost::multiprecision::pow(BigInt(5), n);
  r.far_bound_half_radius =
      packing_count(cap_fraction(n, far_cone_angle() / 4.0));
  return r;
}

namespace {

double angle_at(std::span<const double> apex, std::span<const double> a,
                std::span<const double> b) {
  std::vector<double> u(a.begin(), a.end()), w(b.begin(), b.end());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] -= apex[i];
    w[i] -= apex[i];
  }
  double nu = 0.0, nw = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    nu += u[i] * u[i];
    nw += w[i] * w[i];
  }
  nu = std::sqrt(nu);
  nw = std::sqrt(nw);
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] /= nu;
    w[i] /= nw;
  }
  return angular_distance(u, w);
}

}  // namespace

ConeSeparationReport verify_cone_separation(const PartitionResult& part,
                                            double threshold, double tol) {
  if (part.far.empty()) {
    throw DomainError("verify_cone_separation: far set is empty");
  }
  ConeSeparationReport out;
  out.threshold = threshold;
  const auto& balls = part.system.balls;
  const auto& apex = balls[part.pivot].center;
  for (std::size_t a = 0; a < part.far.size(); ++a) {
    for (std::size_t b = a + 1; b < part.far.size(); ++b) {
      const std::size_t i = part.far[a], j = part.far[b];
      const double ang = angle_at(apex, balls[i].center, balls[j].center);
      ++out.pairs_checked;
      if (!out.min_angle || ang < *out.min_angle) {
        out.min_angle = ang;
        out.witness = {i, j};
      }
    }
  }
  out.passed = !out.min_angle || *out.min_angle >= threshold - tol;
  return out;
}

ConeSeparationReport verify_cone_separation(const PartitionResult& part) {
  return verify_cone_separation(part, far_cone_angle());
}

PipelineReport bound_pipeline(const ModelFamily& family) {
  PipelineReport r;
  r.selection = hemisphere_filter(family);
  r.star = reduce_ii_star(r.selection.family);
  r.system = to_ball_system(r.selection.family);
  bool ok = r.system.valid();
  for (const auto& s : r.star) ok = ok && s.verdict.holds;
  if (r.system.balls.size() >= 2) {
    r.partition = partition(normalize_scale(r.system));
    if (!r.partition->far.empty()) {
      r.cone = verify_cone_separation(*r.partition);
      ok = ok && r.cone->passed;
    }
  }
  r.passed = ok;
  return r;
}

Json big_to_json(const BigInt& value) {
  if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max()) {
    return Json(value.convert_to<std::uint64_t>());
  }
  return Json(value.str());
}

Json to_json(const BoundReport& r) {
  Json out;
  out["n"] = r.n;
  out["rho"] = r.rho;
  out["near_bound"] = big_to_json(r.near_bound);
  out["far_bound"] = big_to_json(r.far_bound);
  out["hemisphere_factor"] = r.hemisphere_factor;
  out["total"] = big_to_json(r.total);
  out["u"] = r.u;
  out["v"] = r.v;
  out["exponential"] = r.u * std::pow(r.v, r.rho);
  out["horizon"] = r.horizon;
  out["far_cone_angle"] = far_cone_angle();
  out["diagnostics"] = Json{
      {"near_volume_bound", big_to_json(r.near_volume_bound)},
      {"far_bound_half_radius", big_to_json(r.far_bound_half_radius)}};
  return out;
}

Json to_json(const PipelineReport& r) {
  Json out;
  Json hemi;
  hemi["kept"] = r.selection.kept;
  hemi["reflected"] = r.selection.reflected;
  out["hemisphere"] = std::move(hemi);

  Json star;
  std::size_t held = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : r.star) {
    held += s.verdict.holds ? 1 : 0;
    min_margin = std::min(min_margin, s.verdict.margin);
  }
  star["ordered_pairs"] = r.star.size();
  star["holding"] = held;
  if (!r.star.empty()) star["min_margin"] = min_margin;
  out["ii_star"] = std::move(star);

  Json sys;
  sys["dim"] = r.system.dim;
  sys["balls"] = r.system.balls.size();
  sys["valid"] = r.system.valid();
  out["ball_system"] = std::move(sys);

  if (r.partition) {
    Json part;
    part["scale"] = r.partition->system.scale;
    part["pivot"] = Json::array({r.partition->pivot, r.partition->partner});
    part["near"] = r.partition->near;
    part["far"] = r.partition->far;
    out["partition"] = std::move(part);
  }
  if (r.cone) {
    Json cone;
    cone["passed"] = r.cone->passed;
    cone["threshold"] = r.cone->threshold;
    cone["pairs_checked"] = r.cone->pairs_checked;
    if (r.cone->min_angle) cone["min_angle"] = *r.cone->min_angle;
    if (r.cone->witness) {
      cone["witness"] = Json::array({r.cone->witness->first, r.cone->witness->second});
    }
    out["cone_separation"] = std::move(cone);
  }
  out["passed"] = r.passed;
  return out;
}

}  // namespace negcurve
