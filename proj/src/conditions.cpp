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

#include "negcurve/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "negcurve/error.hpp"
#include "negcurve/random.hpp"

namespace negcurve {

namespace {

bool is_zero_class(std::span<const Integer> c) {
  return std::all_of(c.begin(), c.end(), [](Integer x) { return x == 0; });
}

void require_nonzero(std::span<const Integer> c, const char* who) {
  if (is_zero_class(c)) throw InvalidInput(std::string(who) + ": zero class");
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double pair_distance(const CapRep& c1, const CapRep& c2) {
  if (c1.dim() != c2.dim()) {
    throw InvalidInput("cap pair: dimension mismatch");
  }
  const double delta = angular_distance(c1.z(), c2.z());
  if (delta <= 1e-12) {
    throw DegeneratePairError(0, 1, "caps with coincident feet");
  }
  return delta;
}

Int128 combination_square(Integer a, Integer b, Integer self1, Integer self2,
                            Integer product) {
  const Int128 A = a, B = b;
  return A * A * self1 + 2 * A * B * product + B * B * self2;
}

}  // namespace

Verdict check_I(const QuadraticLattice& lattice, std::span<const Integer> c) {
  require_nonzero(c, "check_I");
  const Integer n = lattice.norm(c);
  return {n < 0, -static_cast<double>(n)};
}

Verdict check_II(const QuadraticLattice& lattice, std::span<const Integer> c1,
                 std::span<const Integer> c2) {
  require_nonzero(c1, "check_II");
  require_nonzero(c2, "check_II");
  const Integer p = lattice.pairing(c1, c2);
  return {p >= 0, static_cast<double>(p)};
}

Verdict check_III(const QuadraticLattice& lattice, std::span<const Integer> c1,
                  std::span<const Integer> c2) {
  require_nonzero(c1, "check_III");
  require_nonzero(c2, "check_III");
  const Integer n1 = lattice.norm(c1);
  const Integer n2 = lattice.norm(c2);
  if (n1 >= 0 || n2 >= 0) {
    throw DomainError("check_III: both classes must have negative square");
  }
  return check_III_numbers(n1, n2, lattice.pairing(c1, c2));
}

Verdict check_III_numbers(Integer self1, Integer self2, Integer product) {
  if (self1 >= 0 || self2 >= 0) {
    throw DomainError("check_III: both classes must have negative square");
  }
  const Int128 ab = static_cast<Int128>(self1) * self2;
  const Int128 p = std::max<Integer>(product, 0);
  const Int128 margin = ab - p * p;
  return {margin >= 0, static_cast<double>(margin)};
}

std::optional<Combination> find_positive_combination(Integer self1,
                                                     Integer self2,
                                                     Integer product,
                                                     Integer max_coeff) {
  for (Integer a = 1; a <= max_coeff; ++a) {
    for (Integer b = 1; b <= max_coeff; ++b) {
      const Int128 sq = combination_square(a, b, self1, self2, product);
      if (sq > 0) return Combination{a, b, sq};
    }
  }
  return std::nullopt;
}

std::optional<Combination> maximizer_witness(Integer self1, Integer self2,
                                             Integer product) {
  if (self1 >= 0 || self2 >= 0) {
    throw DomainError("maximizer_witness: both squares must be negative");
  }
  if (product <= 0) return std::nullopt;
  const Int128 p = product;
  if (p * p <= static_cast<Int128>(self1) * self2) return std::nullopt;
  // a^2 A + 2abp + b^2 B at (a, b) = (p, -A) is -A (p^2 - AB); guard overflow.
  const Int128 excess = p * p - static_cast<Int128>(self1) * self2;
  Int128 sq;
  if (__builtin_mul_overflow(static_cast<Int128>(-self1), excess, &sq)) {
    throw NumericError("maximizer_witness: square overflows 128 bits");
  }
  return Combination{product, -self1, sq};
}

bool check_i(const KleinPoint& point) {
  return point.region() == Region::kCylinder;
}

Verdict check_ii(const CapRep& c1, const CapRep& c2, double tol) {
  pair_distance(c1, c2);
  const double margin =
      std::cos(c1.theta()) * std::cos(c2.theta()) - dot(c1.z(), c2.z());
  return {margin >= -tol, margin};
}

Verdict check_iii(const CapRep& c1, const CapRep& c2, double tol) {
  const double delta = pair_distance(c1, c2);
  const double margin = c1.theta() + c2.theta() - delta;
  return {margin >= -tol, margin};
}

bool caps_intersect(const CapRep& c1, const CapRep& c2, double tol) {
  const std::vector<double>& z1 = c1.z();
  const std::vector<double>& z2 = c2.z();
  const std::size_t n = z1.size();
  const double delta = angular_distance(z1, z2);
  // Unit tangent at z1 pointing along the geodesic to z2.
  std::vector<double> u(z2);
  const double c = dot(z1, z2);
  for (std::size_t i = 0; i < n; ++i) u[i] -= c * z1[i];
  double un = std::sqrt(dot(u, u));
  if (un < 1e-12) {
    // Antipodal (or coincident) feet: every tangent direction is a geodesic.
    std::size_t k = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(z1[i]) < std::abs(z1[k])) k = i;
    std::fill(u.begin(), u.end(), 0.0);
    u[k] = 1.0;
    const double ck = z1[k];
    for (std::size_t i = 0; i < n; ++i) u[i] -= ck * z1[i];
    un = std::sqrt(dot(u, u));
  }
  for (double& x : u) x /= un;
  const double step = std::min(c1.theta(), delta);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::cos(step) * z1[i] + std::sin(step) * u[i];
  }
  const double wn = std::sqrt(dot(w, w));
  for (double& x : w) x /= wn;
  return angular_distance(w, z1) <= c1.theta() + tol &&
         angular_distance(w, z2) <= c2.theta() + tol;
}

RayMaximum max_norm_on_ray(double theta_j, double delta) {
  if (!(theta_j > 0.0 && theta_j < std::numbers::pi)) {
    throw DomainError("max_norm_on_ray: theta must lie in (0, pi)");
  }
  if (!(delta > 0.0 && delta <= std::numbers::pi)) {
    throw DomainError("max_norm_on_ray: delta must lie in (0, pi]");
  }
  const double ct = std::cos(theta_j);
  const double sd = std::sin(delta);
  RayMaximum out;
  out.a_star = -std::cos(delta);
  out.value = ct * ct - sd * sd;
  out.interior = out.a_star > 0.0;
  out.positive_sup = out.interior ? out.value : ct * ct - 1.0;
  return out;
}

std::vector<Failure> ValidationReport::failures() const {
  const bool lattice = level == Level::kLattice;
  std::vector<Failure> out;
  for (const auto& e : elements) {
    if (!e.verdict.holds) {
      out.push_back({e.index, e.index, lattice ? "I" : "i", e.verdict.margin});
    }
  }
  for (const auto& p : pairs) {
    if (p.degenerate) {
      out.push_back({p.first, p.second, "degenerate", 0.0});
      continue;
    }
    if (p.second_condition && !p.second_condition->holds) {
      out.push_back({p.first, p.second, lattice ? "II" : "ii",
                     p.second_condition->margin});
    }
    if (p.third_condition && !p.third_condition->holds) {
      out.push_back({p.first, p.second, lattice ? "III" : "iii",
                     p.third_condition->margin});
    }
  }
  return out;
}

namespace {

bool conjunction(const ValidationReport& r) {
  for (const auto& e : r.elements)
    if (!e.verdict.holds) return false;
  for (const auto& p : r.pairs) {
    if (p.degenerate) return false;
    if (!p.second_condition || !p.second_condition->holds) return false;
    if (!p.third_condition || !p.third_condition->holds) return false;
  }
  return true;
}

PairVerdict model_pair(std::size_t i, std::size_t j, const CapRep& a,
                       const CapRep& b) {
  PairVerdict pv;
  pv.first = i;
  pv.second = j;
  try {
    pv.second_condition = check_ii(a, b);
    pv.third_condition = check_iii(a, b);
  } catch (const DegeneratePairError&) {
    pv.degenerate = true;
    pv.second_condition.reset();
    pv.third_condition.reset();
  }
  return pv;
}

}  // namespace

ValidationReport validate_family(const CurveFamily& family) {
  if (family.classes.empty()) throw InvalidInput("validate_family: empty family");
  const QuadraticLattice& lat = family.lattice;
  ValidationReport report;
  report.level = Level::kLattice;

  std::vector<Integer> norms;
  norms.reserve(family.classes.size());
  std::vector<std::vector<Int128>> images;
  images.reserve(family.classes.size());
  for (std::size_t i = 0; i < family.classes.size(); ++i) {
    const IntVector& c = family.classes[i];
    report.elements.push_back({i, check_I(lat, c), std::nullopt});
    norms.push_back(lat.norm(c));
    images.push_back(lat.apply(c));
  }
  for (std::size_t i = 0; i < family.classes.size(); ++i) {
    for (std::size_t j = i + 1; j < family.classes.size(); ++j) {
      // C_i^T (G C_j), reusing the cached image.
      Int128 s = 0;
      const IntVector& ci = family.classes[i];
      for (int k = 0; k < lat.rank(); ++k) {
        if (ci[k] == 0 || images[j][k] == 0) continue;
        Int128 term;
        if (__builtin_mul_overflow(static_cast<Int128>(ci[k]), images[j][k],
                                   &term) ||
            __builtin_add_overflow(s, term, &s)) {
          throw NumericError("integer overflow in lattice pairing");
        }
      }
      if (s > std::numeric_limits<Integer>::max() ||
          s < std::numeric_limits<Integer>::min()) {
        throw NumericError("intersection number does not fit in 64 bits");
      }
      const Integer p = static_cast<Integer>(s);
      PairVerdict pv;
      pv.first = i;
      pv.second = j;
      pv.second_condition = Verdict{p >= 0, static_cast<double>(p)};
      if (norms[i] < 0 && norms[j] < 0) {
        pv.third_condition = check_III_numbers(norms[i], norms[j], p);
      }
      report.pairs.push_back(pv);
    }
  }
  report.overall = conjunction(report);
  return report;
}

ValidationReport validate_family(const ModelFamily& family) {
  if (family.caps.empty()) throw InvalidInput("validate_family: empty family");
  ValidationReport report;
  report.level = Level::kModel;
  for (std::size_t i = 0; i < family.caps.size(); ++i) {
    const double s = std::sin(family.caps[i].theta());
    report.elements.push_back({i, {true, s * s}, Region::kCylinder});
  }
  for (std::size_t i = 0; i < family.caps.size(); ++i)
    for (std::size_t j = i + 1; j < family.caps.size(); ++j)
      report.pairs.push_back(model_pair(i, j, family.caps[i], family.caps[j]));
  report.overall = conjunction(report);
  return report;
}

std::vector<KleinPoint> map_to_model(const CurveFamily& family) {
  const StandardizingMap map = standardize(family.lattice);
  std::vector<KleinPoint> out;
  out.reserve(family.classes.size());
  for (const IntVector& c : family.classes) {
    out.push_back(project(embed_class(map, c)));
  }
  return out;
}

ModelFamily model_family(const CurveFamily& family) {
  const std::vector<KleinPoint> points = map_to_model(family);
  ModelFamily out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!check_i(points[i])) {
      throw InvalidFamilyError(
          i, i, "i",
          "class " + std::to_string(i) + " projects to " +
              std::string(to_string(points[i].region())) +
              ", not the cylinder");
    }
    out.caps.push_back(cap_of(points[i]));
  }
  return out;
}

ValidationReport validate_model(const CurveFamily& family) {
  if (family.classes.empty()) throw InvalidInput("validate_model: empty family");
  const StandardizingMap map = standardize(family.lattice);
  ValidationReport report;
  report.level = Level::kModel;
  std::vector<std::optional<CapRep>> caps;
  for (std::size_t i = 0; i < family.classes.size(); ++i) {
    const LorentzVector v = embed_class(map, family.classes[i]);
    const KleinPoint p = project(v);
    const double margin = -inner(v, v) / v.euclidean_norm2();
    report.elements.push_back({i, {check_i(p), margin}, p.region()});
    caps.push_back(check_i(p) ? std::optional<CapRep>(cap_of(p)) : std::nullopt);
  }
  for (std::size_t i = 0; i < caps.size(); ++i) {
    for (std::size_t j = i + 1; j < caps.size(); ++j) {
      if (caps[i] && caps[j]) {
        report.pairs.push_back(model_pair(i, j, *caps[i], *caps[j]));
      } else {
        PairVerdict pv;
        pv.first = i;
        pv.second = j;
        report.pairs.push_back(pv);
      }
    }
  }
  report.overall = conjunction(report);
  return report;
}

namespace {

Json verdict_json(const Verdict& v) {
  return Json{{"holds", v.holds}, {"margin", v.margin}};
}

}  // namespace

Json to_json(const ValidationReport& report) {
  const bool lattice = report.level == Level::kLattice;
  Json out;
  out["level"] = lattice ? "lattice" : "model";
  out["overall"] = report.overall;
  Json elements = Json::array();
  for (const auto& e : report.elements) {
    Json j{{"index", e.index}, {"condition", lattice ? "I" : "i"}};
    j["holds"] = e.verdict.holds;
    j["margin"] = e.verdict.margin;
    if (e.region) j["region"] = std::string(to_string(*e.region));
    elements.push_back(std::move(j));
  }
  out["elements"] = std::move(elements);
  Json pairs = Json::array();
  for (const auto& p : report.pairs) {
    Json j{{"first", p.first}, {"second", p.second}};
    if (p.degenerate) j["degenerate"] = true;
    if (p.second_condition)
      j[lattice ? "II" : "ii"] = verdict_json(*p.second_condition);
    if (p.third_condition)
      j[lattice ? "III" : "iii"] = verdict_json(*p.third_condition);
    pairs.push_back(std::move(j));
  }
  out["pairs"] = std::move(pairs);
  Json failures = Json::array();
  for (const auto& f : report.failures()) {
    failures.push_back(Json{{"first", f.first},
                            {"second", f.second},
                            {"condition", f.condition},
                            {"margin", f.margin}});
  }
  out["failures"] = std::move(failures);
  return out;
}

ConditionTally& ConditionTally::operator+=(const ConditionTally& o) {
  agree += o.agree;
  boundary += o.boundary;
  lattice_only += o.lattice_only;
  model_only += o.model_only;
  return *this;
}

namespace {

void record(ConditionTally& t, bool lattice, bool model, bool near_boundary) {
  if (lattice == model) {
    ++t.agree;
  } else if (near_boundary) {
    ++t.boundary;
  } else if (lattice) {
    ++t.lattice_only;
  } else {
    ++t.model_only;
  }
}

constexpr std::uint64_t kProbeChunk = 2048;

struct ProbeChunk {
  std::uint64_t draws = 0;
  ConditionTally first, second, third, combined;
  std::uint64_t third_le_pi = 0;
  std::uint64_t sum_gt_pi = 0;
};

ProbeChunk run_probe_chunk(int n, std::uint64_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ProbeChunk out;
  const double tol = kBoundaryTolerance;

  const auto draw_spacelike = [&]() {
    for (;;) {
      std::vector<double> g(static_cast<std::size_t>(n) + 1);
      for (double& x : g) x = gauss(rng);
      LorentzVector v(std::move(g));
      ++out.draws;
      const double h = inner(v, v) / v.euclidean_norm2();
      const KleinPoint p = project(v);
      record(out.first, h < 0.0, check_i(p), std::abs(h) <= tol);
      if (h < -tol) return p;
    }
  };

  for (std::uint64_t s = 0; s < count; ++s) {
    const KleinPoint pu = draw_spacelike();
    const KleinPoint pv = draw_spacelike();
    const CapRep cu = cap_of(pu);
    const CapRep cv = cap_of(pv);

    // Lattice side: inner products of the (positively rescaled) vectors.
    const double a = inner(pu.vector(), pu.vector());
    const double b = inner(pv.vector(), pv.vector());
    const double p = inner(pu.vector(), pv.vector());
    const bool lat_ii = p >= 0.0;
    const double lat_iii_margin = a * b - std::max(p, 0.0) * std::max(p, 0.0);
    const bool lat_iii = p <= 0.0 || p * p <= a * b;

    Verdict mod_ii, mod_iii;
    try {
      mod_ii = check_ii(cu, cv);
      mod_iii = check_iii(cu, cv);
    } catch (const DegeneratePairError&) {
      record(out.second, lat_ii, !lat_ii, true);
      record(out.third, lat_iii, !lat_iii, true);
      record(out.combined, true, false, true);
      continue;
    }
    const bool band_ii = std::abs(p) <= tol || std::abs(mod_ii.margin) <= tol;
    const bool band_iii =
        std::abs(lat_iii_margin) <= tol || std::abs(mod_iii.margin) <= tol;
    record(out.second, lat_ii, mod_ii.holds, band_ii);
    record(out.third, lat_iii, mod_iii.holds, band_iii);
    record(out.combined, lat_ii && lat_iii, mod_ii.holds && mod_iii.holds,
           band_ii || band_iii);

    const bool sum_gt_pi = cu.theta() + cv.theta() > std::numbers::pi;
    if (sum_gt_pi) ++out.sum_gt_pi;
    if (!sum_gt_pi && lat_iii != mod_iii.holds && !band_iii) ++out.third_le_pi;
  }
  return out;
}

Json tally_json(const ConditionTally& t) {
  return Json{{"agree", t.agree},
              {"boundary", t.boundary},
              {"lattice_only", t.lattice_only},
              {"model_only", t.model_only},
              {"non_boundary", t.non_boundary()}};
}

}  // namespace

ProbeReport equivalence_probe(int n, std::uint64_t samples, std::uint64_t seed,
                              int threads) {
  if (n < 1) throw DomainError("equivalence_probe: n must be at least 1");
  if (samples < 1) throw DomainError("equivalence_probe: samples must be >= 1");
  const std::uint64_t chunks = (samples + kProbeChunk - 1) / kProbeChunk;
  std::vector<ProbeChunk> results(chunks);
  parallel_for(chunks, worker_count(threads), [&](std::size_t k) {
    const std::uint64_t begin = k * kProbeChunk;
    const std::uint64_t count = std::min(kProbeChunk, samples - begin);
    results[k] = run_probe_chunk(n, count, derive_seed(seed, k));
  });
  ProbeReport report;
  report.n = n;
  report.samples = samples;
  report.seed = seed;
  for (const ProbeChunk& c : results) {
    report.draws += c.draws;
    report.first += c.first;
    report.second += c.second;
    report.third += c.third;
    report.combined += c.combined;
    report.third_non_boundary_theta_sum_le_pi += c.third_le_pi;
    report.theta_sum_gt_pi += c.sum_gt_pi;
  }
  return report;
}

Json to_json(const ProbeReport& report) {
  Json out;
  out["n"] = report.n;
  out["samples"] = report.samples;
  out["seed"] = report.seed;
  out["draws"] = report.draws;
  out["tolerance"] = kBoundaryTolerance;
  out["I_vs_i"] = tally_json(report.first);
  out["II_vs_ii"] = tally_json(report.second);
  out["III_vs_iii"] = tally_json(report.third);
  out["conjunction"] = tally_json(report.combined);
  out["III_vs_iii_non_boundary_theta_sum_le_pi"] =
      report.third_non_boundary_theta_sum_le_pi;
  out["pairs_theta_sum_gt_pi"] = report.theta_sum_gt_pi;
  out["equivalent"] = report.equivalent();
  return out;
}

}  // namespace negcurve
