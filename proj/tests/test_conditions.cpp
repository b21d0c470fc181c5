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

#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "negcurve/error.hpp"
#include "negcurve/conditions.hpp"
#include "oracles.hpp"

using namespace negcurve;
using oracle::kPi;

namespace {

const QuadraticLattice kDiag2({{1, 0}, {0, -1}});
const QuadraticLattice kDiag3({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
const QuadraticLattice kDiag4({{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}});

CapRep cap2(double phi, double theta) {
  return CapRep({std::cos(phi), std::sin(phi)}, theta);
}

}  // namespace

TEST_CASE("check_I") {
  CHECK(check_I(kDiag2, IntVector{0, 1}).holds);
  CHECK(check_I(kDiag2, IntVector{0, 1}).margin == 1.0);
  CHECK_FALSE(check_I(kDiag2, IntVector{1, 0}).holds);
  CHECK(check_I(kDiag3, IntVector{1, -1, -1}).holds);
  CHECK_THROWS_AS(check_I(kDiag3, IntVector{0, 0, 0}), InvalidInput);
}

TEST_CASE("check_II") {
  const Verdict a = check_II(kDiag3, IntVector{0, 1, 0}, IntVector{0, 0, 1});
  CHECK(a.holds);
  CHECK(a.margin == 0.0);
  const Verdict b = check_II(kDiag3, IntVector{0, 1, 0}, IntVector{0, 1, 0});
  CHECK_FALSE(b.holds);
  CHECK(b.margin == -1.0);
  const Verdict c = check_II(kDiag3, IntVector{1, -1, 0}, IntVector{1, 0, -1});
  CHECK(c.holds);
  CHECK(c.margin == 1.0);
}

TEST_CASE("check_III examples") {
  CHECK(check_III_numbers(-1, -1, 0).holds);
  const Verdict two = check_III_numbers(-1, -1, 2);
  CHECK_FALSE(two.holds);
  CHECK(oracle::grid_has_positive(-1, -1, 2, 10));
  const auto w = maximizer_witness(-1, -1, 2);
  REQUIRE(w);
  CHECK(w->square > 0);
  // (C1 + C2)^2 = -1 + 4 - 1
  const auto first = find_positive_combination(-1, -1, 2, 10);
  REQUIRE(first);
  CHECK(first->a == 1);
  CHECK(first->b == 1);
  CHECK(first->square == 2);

  const Verdict boundary = check_III_numbers(-2, -2, 2);
  CHECK(boundary.holds);
  CHECK(boundary.margin == 0.0);
  CHECK_FALSE(oracle::grid_has_positive(-2, -2, 2, 50));
  CHECK_FALSE(maximizer_witness(-2, -2, 2));

  // Negative intersection: every combination has negative square.
  CHECK(check_III_numbers(-1, -1, -5).holds);
  CHECK_FALSE(oracle::grid_has_positive(-1, -1, -5, 50));

  CHECK(check_III(kDiag3, IntVector{0, 1, 0}, IntVector{0, 0, 1}).holds);
  CHECK_THROWS_AS(check_III(kDiag3, IntVector{1, 0, 0}, IntVector{0, 0, 1}), DomainError);
}

TEST_CASE("check_III closed form against the integer grid") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<Integer> self(-30, -1), prod(-40, 40);
  for (int trial = 0; trial < 3000; ++trial) {
    const Integer A = self(rng), B = self(rng), p = prod(rng);
    const Verdict v = check_III_numbers(A, B, p);
    const bool grid = oracle::grid_has_positive(A, B, p, 50);
    if (v.holds) {
      CHECK_FALSE(grid);
    } else {
      const auto w = maximizer_witness(A, B, p);
      REQUIRE(w);
      const Int128 direct = static_cast<Int128>(w->a) * w->a * A +
                            static_cast<Int128>(2) * w->a * w->b * p +
                            static_cast<Int128>(w->b) * w->b * B;
      CHECK(direct == w->square);
      CHECK(direct > 0);
      CHECK(w->a > 0);
      CHECK(w->b > 0);
    }
    CHECK(find_positive_combination(A, B, p, 50).has_value() == grid);
  }
}

TEST_CASE("check_i") {
  CHECK(check_i(project(LorentzVector({0, 1, 0}))));
  CHECK_FALSE(check_i(project(LorentzVector({2, 0, 0}))));
  CHECK(check_i(project(embed_class(kDiag3, IntVector{0, 1, 0}))));
}

TEST_CASE("check_ii and check_iii examples") {
  CHECK(check_ii(cap2(0, kPi / 2), cap2(kPi / 2, kPi / 2)).holds);
  CHECK_FALSE(check_ii(cap2(0, kPi / 2), cap2(kPi / 4, kPi / 2)).holds);
  CHECK(check_ii(cap2(0, kPi / 3), cap2(2 * kPi / 3, kPi / 3)).holds);
  CHECK(check_ii(cap2(0, kPi / 3), cap2(2 * kPi / 3, kPi / 3)).margin ==
        doctest::Approx(0.25 + 0.5));

  CHECK(check_iii(cap2(0, kPi / 2), cap2(kPi, kPi / 2)).holds);
  CHECK(check_iii(cap2(0, kPi / 4), cap2(kPi / 2, kPi / 4)).holds);
  CHECK_FALSE(check_iii(cap2(0, kPi / 6), cap2(kPi / 2, kPi / 6)).holds);
  CHECK_FALSE(caps_intersect(cap2(0, kPi / 6), cap2(kPi / 2, kPi / 6)));
  CHECK(caps_intersect(cap2(0, kPi / 4), cap2(kPi / 2, kPi / 4)));

  CHECK_THROWS_AS(check_ii(cap2(0.3, 1.0), cap2(0.3, 0.5)), DegeneratePairError);
  CHECK_THROWS_AS(check_iii(cap2(0.3, 1.0), cap2(0.3, 0.5)), DegeneratePairError);
}

TEST_CASE("caps_intersect agrees with check_iii and a sampling oracle") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> t(0.05, kPi - 0.05);
  std::vector<std::vector<double>> sphere;
  for (int s = 0; s < 20000; ++s) sphere.push_back(oracle::random_unit(rng, 3));
  int witnessed = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const CapRep a(oracle::random_unit(rng, 3), t(rng));
    const CapRep b(oracle::random_unit(rng, 3), t(rng));
    const Verdict v = check_iii(a, b);
    CHECK(caps_intersect(a, b) == v.holds);
    if (std::abs(v.margin) < 0.05) continue;
    bool common = false;
    for (const auto& w : sphere) {
      const double da = std::acos(std::clamp(oracle::dot(w, a.z()), -1.0, 1.0));
      const double db = std::acos(std::clamp(oracle::dot(w, b.z()), -1.0, 1.0));
      if (da <= a.theta() && db <= b.theta()) {
        common = true;
        break;
      }
    }
    CHECK(common == v.holds);
    witnessed += common;
  }
  CHECK(witnessed > 50);
}

TEST_CASE("max_norm_on_ray") {
  const RayMaximum a = max_norm_on_ray(kPi / 2, kPi / 2);
  CHECK(std::abs(a.a_star) < 1e-15);
  CHECK(a.value == doctest::Approx(-1.0));
  const RayMaximum b = max_norm_on_ray(kPi / 3, 3 * kPi / 4);
  CHECK(b.a_star == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(b.value == doctest::Approx(-0.25));
  CHECK(b.interior);
  const RayMaximum c = max_norm_on_ray(kPi / 4, kPi / 2);
  CHECK(c.positive_sup == doctest::Approx(0.5 - 1.0));
  CHECK_FALSE(c.interior);
  {
    const std::vector<double> ci{0, 1, 0};
    const std::vector<double> cj{std::cos(kPi / 4), std::cos(kPi / 2), std::sin(kPi / 2)};
    CHECK(oracle::dense_ray_max(ci, cj, 100.0, 100000) < 0.0);
  }
  CHECK_THROWS_AS(max_norm_on_ray(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(max_norm_on_ray(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(max_norm_on_ray(1.0, 4.0), DomainError);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> th(0.01, kPi - 0.01), dl(kPi / 2 + 1e-3, kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const double t = th(rng), d = dl(rng);
    const std::vector<double> ci{0, 1, 0};
    const std::vector<double> cj{std::cos(t), std::cos(d), std::sin(d)};
    const double grid = oracle::dense_ray_max(ci, cj, 1.0, 20000);
    CHECK(std::abs(max_norm_on_ray(t, d).value - grid) < 1e-9);
  }
}

TEST_CASE("validate_family on worked families") {
  const CurveFamily bl3{kDiag4, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, {}};
  CHECK(validate_family(bl3).overall);
  CHECK(validate_model(bl3).overall);

  const CurveFamily line{kDiag4, {{0, 1, 0, 0}, {1, -1, -1, 0}}, {}};
  const ValidationReport r = validate_family(line);
  CHECK(r.overall);
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].second_condition->margin == 1.0);
  CHECK(r.pairs[0].third_condition->holds);
  CHECK(validate_model(line).overall);

  const CurveFamily dup{kDiag4, {{0, 1, 0, 0}, {0, 1, 0, 0}}, {}};
  const ValidationReport d = validate_family(dup);
  CHECK_FALSE(d.overall);
  const auto failures = d.failures();
  REQUIRE(!failures.empty());
  CHECK(failures[0].first == 0);
  CHECK(failures[0].second == 1);
  CHECK(failures[0].condition == "II");
  CHECK(failures[0].margin == -1.0);

  const CurveFamily ample{kDiag3, {{1, 0, 0}}, {}};
  const ValidationReport ar = validate_family(ample);
  CHECK_FALSE(ar.overall);
  CHECK(ar.failures()[0].condition == "I");
  CHECK_THROWS_AS(model_family(ample), InvalidFamilyError);

  CHECK_THROWS_AS(validate_family(CurveFamily{kDiag3, {}, {}}), InvalidInput);

  const Json j = to_json(d);
  CHECK(j["overall"] == false);
  CHECK(j["pairs"][0]["II"]["margin"] == -1.0);
}

TEST_CASE("verdicts are invariant under positive scaling and permutation") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<Integer> coef(-3, 3), scale(1, 7);
  for (int trial = 0; trial < 300; ++trial) {
    CurveFamily fam{kDiag4, {}, {}};
    for (int k = 0; k < 4; ++k) {
      IntVector c(4);
      do {
        for (Integer& x : c) x = coef(rng);
      } while (std::all_of(c.begin(), c.end(), [](Integer x) { return x == 0; }));
      fam.classes.push_back(c);
    }
    const bool base = validate_family(fam).overall;
    CurveFamily scaled = fam;
    for (IntVector& c : scaled.classes) {
      const Integer s = scale(rng);
      for (Integer& x : c) x *= s;
    }
    const ValidationReport a = validate_family(fam), b = validate_family(scaled);
    CHECK(b.overall == base);
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
      CHECK(a.pairs[i].second_condition->holds == b.pairs[i].second_condition->holds);
      CHECK(a.pairs[i].third_condition.has_value() == b.pairs[i].third_condition.has_value());
      if (a.pairs[i].third_condition)
        CHECK(a.pairs[i].third_condition->holds == b.pairs[i].third_condition->holds);
    }
    CurveFamily perm = fam;
    std::shuffle(perm.classes.begin(), perm.classes.end(), rng);
    CHECK(validate_family(perm).overall == base);
  }
}

TEST_CASE("verdicts are invariant under H-isometries") {
  // The lattice numbers are H-invariant by definition; (i) and (ii) are
  // invariant on the model side too. (iii) is compared where both radii stay
  // at most pi/2 before and after the map.
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  int third_compared = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 3;
    const Eigen::MatrixXd iso = oracle::random_isometry(rng, n);
    std::vector<double> u(n + 1), v(n + 1);
    for (int i = 0; i <= n; ++i) {
      u[i] = g(rng);
      v[i] = g(rng);
    }
    auto apply = [&](const std::vector<double>& x) {
      Eigen::VectorXd e(n + 1);
      for (int i = 0; i <= n; ++i) e(i) = x[i];
      const Eigen::VectorXd y = iso * e;
      return std::vector<double>(y.data(), y.data() + n + 1);
    };
    const std::vector<double> u2 = apply(u), v2 = apply(v);
    const KleinPoint pu = project(LorentzVector(u)), pv = project(LorentzVector(v));
    const KleinPoint qu = project(LorentzVector(u2)), qv = project(LorentzVector(v2));
    CHECK(check_i(pu) == check_i(qu));
    if (!check_i(pu) || !check_i(pv) || !check_i(qu) || !check_i(qv)) continue;
    const CapRep a = cap_of(pu), b = cap_of(pv), a2 = cap_of(qu), b2 = cap_of(qv);
    const Verdict ii = check_ii(a, b), ii2 = check_ii(a2, b2);
    if (std::abs(ii.margin) > 1e-6) CHECK(ii.holds == ii2.holds);
    if (std::max({a.theta(), b.theta(), a2.theta(), b2.theta()}) <= kPi / 2) {
      const Verdict iii = check_iii(a, b), iii2 = check_iii(a2, b2);
      if (std::abs(iii.margin) > 1e-6 && std::abs(iii2.margin) > 1e-6) {
        CHECK(iii.holds == iii2.holds);
        ++third_compared;
      }
    }
  }
  CHECK(third_compared > 100);
}

TEST_CASE("II and ii agree in canonical position") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> t(0.01, kPi - 0.01), d(0.01, kPi);
  for (int trial = 0; trial < 2000; ++trial) {
    const double ti = t(rng), tj = t(rng), dl = d(rng);
    const std::vector<double> ci{std::cos(ti), 1, 0};
    const std::vector<double> cj{std::cos(tj), std::cos(dl), std::sin(dl)};
    const double h = oracle::minkowski(ci, cj);
    if (std::abs(h) < 1e-9) continue;
    const Verdict ii = check_ii(CapRep({1, 0}, ti), CapRep({std::cos(dl), std::sin(dl)}, tj));
    CHECK(ii.holds == (h >= 0));
    // (III) evaluated on the same vectors with the real closed form.
    const double A = oracle::minkowski(ci, ci), B = oracle::minkowski(cj, cj);
    const bool third = h <= 0 || h * h <= A * B;
    const Verdict iii = check_iii(CapRep({1, 0}, ti), CapRep({std::cos(dl), std::sin(dl)}, tj));
    if (ti + tj <= kPi && std::abs(iii.margin) > 1e-9 && std::abs(h * h - A * B) > 1e-9) {
      CHECK(iii.holds == third);
    }
    if (third) CHECK(iii.holds);  // (III) implies (iii) everywhere
  }
}

TEST_CASE("equivalence probe") {
  const ProbeReport a = equivalence_probe(3, 20000, 5, 1);
  const ProbeReport b = equivalence_probe(3, 20000, 5, 3);
  CHECK(dump_json(to_json(a)) == dump_json(to_json(b)));
  CHECK(a.samples == 20000);
  CHECK(a.first.non_boundary() == 0);
  CHECK(a.second.non_boundary() == 0);
  CHECK(a.third.lattice_only == 0);
  CHECK(a.third_non_boundary_theta_sum_le_pi == 0);
  const ProbeReport c = equivalence_probe(3, 20000, 6, 1);
  CHECK(dump_json(to_json(a)) != dump_json(to_json(c)));
  const ProbeReport one = equivalence_probe(2, 1, 1, 1);
  CHECK(one.samples == 1);
  CHECK(one.second.agree + one.second.boundary + one.second.non_boundary() == 1);
  CHECK_THROWS_AS(equivalence_probe(2, 0, 1), DomainError);
}
