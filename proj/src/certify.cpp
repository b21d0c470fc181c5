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
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "negcurve/error.hpp"
#include "negcurve/search.hpp"

namespace negcurve {

namespace {

using High = boost::multiprecision::cpp_bin_float_50;

High angle_high(const AngleValue& angle) {
  if (const auto* f = std::get_if<PiFraction>(&angle)) {
    return High(f->num) / High(f->den) * boost::math::constants::pi<High>();
  }
  return High(std::get<double>(angle));
}

std::vector<High> direction_high(const CapSpec& cap) {
  const std::size_t n = cap.direction.size() + 1;
  std::vector<High> z(n);
  High sines = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const High phi = angle_high(cap.direction[k]);
    z[k] = sines * cos(phi);
    sines *= sin(phi);
  }
  z[n - 1] = sines;
  High norm2 = 0;
  for (const High& x : z) norm2 += x * x;
  const High norm = sqrt(norm2);
  for (High& x : z) x /= norm;
  return z;
}

}  // namespace

PairCertificate certify_pair(const CapSpec& a, const CapSpec& b) {
  if (a.dim() != b.dim()) throw InvalidInput("certify_pair: dimension mismatch");
  const std::vector<High> za = direction_high(a);
  const std::vector<High> zb = direction_high(b);
  High dot = 0, diff2 = 0, sum2 = 0;
  for (std::size_t i = 0; i < za.size(); ++i) {
    dot += za[i] * zb[i];
    diff2 += (za[i] - zb[i]) * (za[i] - zb[i]);
    sum2 += (za[i] + zb[i]) * (za[i] + zb[i]);
  }
  const High delta = 2 * atan2(sqrt(diff2), sqrt(sum2));
  const High ta = angle_high(a.theta);
  const High tb = angle_high(b.theta);
  PairCertificate out;
  out.ii = static_cast<double>(cos(ta) * cos(tb) - dot);
  out.iii = static_cast<double>(ta + tb - delta);
  return out;
}

Certificate certify(std::span<const CapSpec> caps) {
  Certificate cert;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    for (std::size_t j = i + 1; j < caps.size(); ++j) {
      PairCertificate pc = certify_pair(caps[i], caps[j]);
      pc.first = i;
      pc.second = j;
      const double m = std::min(pc.ii, pc.iii);
      if (!cert.min_margin || m < *cert.min_margin) cert.min_margin = m;
      if (cert.valid && m < kCertificateFloor) {
        cert.valid = false;
        cert.violation = {i, j};
        cert.condition = pc.ii < kCertificateFloor ? "ii" : "iii";
      }
      cert.pairs.push_back(pc);
    }
  }
  return cert;
}

}  // namespace negcurve
