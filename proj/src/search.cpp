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

#include "negcurve/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <boost/math/distributions/normal.hpp>

#include "negcurve/error.hpp"
#include "negcurve/packing.hpp"
#include "negcurve/random.hpp"

namespace negcurve {

double PiFraction::value() const {
  return static_cast<double>(num) / static_cast<double>(den) * std::numbers::pi;
}

double to_double(const AngleValue& angle) {
  if (const auto* f = std::get_if<PiFraction>(&angle)) return f->value();
  return std::get<double>(angle);
}

std::vector<double> direction_from_angles(std::span<const double> angles) {
  const std::size_t n = angles.size() + 1;
  std::vector<double> z(n);
  double sines = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    z[k] = sines * std::cos(angles[k]);
    sines *= std::sin(angles[k]);
  }
  z[n - 1] = sines;
  return z;
}

std::vector<double> angles_from_direction(std::span<const double> z) {
  const std::size_t n = z.size();
  if (n < 2) throw InvalidInput("angles_from_direction: need n >= 2");
  std::vector<double> angles(n - 1);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) tail += z[i] * z[i];
    angles[k] = std::atan2(std::sqrt(tail), z[k]);
  }
  double last = std::atan2(z[n - 1], z[n - 2]);
  if (last < 0.0) last += 2.0 * std::numbers::pi;
  angles[n - 2] = last;
  return angles;
}

CapRep CapSpec::rep() const {
  std::vector<double> angles;
  angles.reserve(direction.size());
  for (const AngleValue& a : direction) angles.push_back(to_double(a));
  std::vector<double> z = direction_from_angles(angles);
  double norm = 0.0;
  for (double x : z) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : z) x /= norm;
  return CapRep(std::move(z), to_double(theta));
}

ModelFamily Configuration::family() const {
  ModelFamily out;
  for (const CapSpec& c : caps) out.caps.push_back(c.rep());
  return out;
}

bool compatible(const CapRep& a, const CapRep& b, double tol) {
  try {
    return check_ii(a, b, tol).holds && check_iii(a, b, tol).holds;
  } catch (const DegeneratePairError&) {
    return false;
  }
}

void validate(const SearchParams& params) {
  if (params.n < 2) throw DomainError("search: n must be at least 2");
  if (params.restarts < 1) throw DomainError("search: restarts must be >= 1");
  if (params.grid_divisions < 0) {
    throw DomainError("search: grid divisions must be positive");
  }
}

namespace {

// Grid size for 2 <= n: C(2) = 2m and C(n) = 2 + (m - 1) C(n - 1).
double grid_size(int n, int m) {
  double c = 2.0 * m;
  for (int k = 3; k <= n; ++k) c = 2.0 + (m - 1) * c;
  return c;
}

PiFraction reduced(Integer num, Integer den) {
  const Integer g = std::gcd(num, den);
  return g == 0 ? PiFraction{0, 1} : PiFraction{num / g, den / g};
}

void grid_recurse(int n, int m, std::vector<AngleValue>& prefix,
                  std::vector<CapSpec>& out) {
  const int level = static_cast<int>(prefix.size());
  if (level == n - 2) {
    for (int j = 0; j < 2 * m; ++j) {
      prefix.push_back(reduced(j, m));
      out.push_back(CapSpec{prefix, PiFraction{1, 2}});
      prefix.pop_back();
    }
    return;
  }
  for (int j = 0; j <= m; ++j) {
    prefix.push_back(reduced(j, m));
    if (j == 0 || j == m) {
      // Pole of this coordinate: the remaining angles do not matter.
      std::vector<AngleValue> full = prefix;
      while (static_cast<int>(full.size()) < n - 1) full.emplace_back(PiFraction{0, 1});
      out.push_back(CapSpec{std::move(full), PiFraction{1, 2}});
    } else {
      grid_recurse(n, m, prefix, out);
    }
    prefix.pop_back();
  }
}

std::vector<int> first_primes(std::size_t count) {
  std::vector<int> primes;
  for (int c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base, f = inv, out = 0.0;
  while (index > 0) {
    out += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return out;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Candidate {
  const CapSpec* spec;
  CapRep rep;
};

std::vector<const Candidate*> greedy_order(const std::vector<Candidate>& cands) {
  std::vector<const Candidate*> order;
  order.reserve(cands.size());
  for (const Candidate& c : cands) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(),
                   [](const Candidate* a, const Candidate* b) {
                     if (a->rep.theta() != b->rep.theta()) {
                       return a->rep.theta() > b->rep.theta();
                     }
                     return lex_less(a->rep.z(), b->rep.z());
                   });
  return order;
}

// Drops caps until the high-precision certificate passes; the cap involved in
// the most failing pairs goes first, the later one on ties.
Configuration repaired(int n, std::vector<CapSpec> caps) {
  Configuration config;
  config.n = n;
  for (;;) {
    config.certificate = certify(caps);
    if (config.certificate.valid) break;
    std::vector<int> bad(caps.size(), 0);
    for (const PairCertificate& pc : config.certificate.pairs) {
      if (std::min(pc.ii, pc.iii) < kCertificateFloor) {
        ++bad[pc.first];
        ++bad[pc.second];
      }
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < bad.size(); ++i)
      if (bad[i] >= bad[worst]) worst = i;
    caps.erase(caps.begin() + static_cast<std::ptrdiff_t>(worst));
  }
  config.caps = std::move(caps);
  return config;
}

bool better(const Configuration& a, const std::string& digest_a,
            const Configuration& b, const std::string& digest_b) {
  if (a.caps.size() != b.caps.size()) return a.caps.size() > b.caps.size();
  return digest_a < digest_b;
}

}  // namespace

int default_grid_divisions(int n) {
  if (n < 2) throw DomainError("default_grid_divisions: n must be >= 2");
  for (int m : {180, 90, 60, 36, 30, 18, 12, 6, 4}) {
    if (grid_size(n, m) <= 20000.0) return m;
  }
  return 2;
}

std::vector<CapSpec> grid_candidates(int n, int divisions) {
  if (n < 2) throw DomainError("grid_candidates: n must be >= 2");
  if (divisions < 1) throw DomainError("grid_candidates: divisions must be >= 1");
  std::vector<CapSpec> out;
  std::vector<AngleValue> prefix;
  grid_recurse(n, divisions, prefix, out);
  return out;
}

std::vector<CapSpec> random_candidates(int n, std::size_t count,
                                       std::uint64_t seed) {
  if (n < 2) throw DomainError("random_candidates: n must be >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<int> bases = first_primes(static_cast<std::size_t>(n));
  std::vector<double> shift(n);
  for (double& s : shift) s = unit(rng);
  const boost::math::normal gauss;

  std::vector<CapSpec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> g(n);
    double norm = 0.0;
    for (int k = 0; k < n; ++k) {
      double p = radical_inverse(i + 1, bases[k]) + shift[k];
      p -= std::floor(p);
      p = std::clamp(p, 1e-12, 1.0 - 1e-12);
      g[k] = boost::math::quantile(gauss, p);
      norm += g[k] * g[k];
    }
    norm = std::sqrt(norm);
    for (double& x : g) x /= norm;
    CapSpec spec;
    for (double a : angles_from_direction(g)) spec.direction.emplace_back(a);
    if (unit(rng) < 0.5) {
      spec.theta = PiFraction{1, 2};
    } else {
      spec.theta = (1.0 - unit(rng)) * (std::numbers::pi / 2.0);
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::string configuration_digest(const Configuration& config) {
  Json caps = Json::array();
  for (const CapSpec& c : config.caps) caps.push_back(to_json(c));
  return digest_hex(dump_json(caps, -1));
}

SearchResult greedy_max(const SearchParams& params) {
  validate(params);
  const auto start = std::chrono::steady_clock::now();
  const int m = params.grid_divisions > 0 ? params.grid_divisions
                                          : default_grid_divisions(params.n);
  const std::vector<CapSpec> grid = grid_candidates(params.n, m);

  std::vector<Configuration> results(params.restarts);
  parallel_for(static_cast<std::size_t>(params.restarts),
               worker_count(params.threads), [&](std::size_t r) {
                 const std::vector<CapSpec> extra = random_candidates(
                     params.n, params.random_candidates,
                     derive_seed(params.seed, r));
                 std::vector<Candidate> cands;
                 cands.reserve(grid.size() + extra.size());
                 for (const CapSpec& s : grid) cands.push_back({&s, s.rep()});
                 for (const CapSpec& s : extra) cands.push_back({&s, s.rep()});
                 std::vector<const Candidate*> chosen;
                 for (const Candidate* c : greedy_order(cands)) {
                   const bool ok = std::all_of(
                       chosen.begin(), chosen.end(), [&](const Candidate* d) {
                         return compatible(c->rep, d->rep);
                       });
                   if (ok) chosen.push_back(c);
                 }
                 std::vector<CapSpec> caps;
                 for (const Candidate* c : chosen) caps.push_back(*c->spec);
                 results[r] = repaired(params.n, std::move(caps));
               });

  std::size_t best = 0;
  std::string best_digest = configuration_digest(results[0]);
  for (std::size_t r = 1; r < results.size(); ++r) {
    const std::string d = configuration_digest(results[r]);
    if (better(results[r], d, results[best], best_digest)) {
      best = r;
      best_digest = d;
    }
  }
  SearchResult out;
  out.best = std::move(results[best]);
  out.size = out.best.caps.size();
  out.method = Method::kGreedy;
  out.restarts = params.restarts;
  out.candidates = grid.size() + params.random_candidates;
  out.seed = params.seed;
  out.elapsed_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return out;
}

namespace {

class CliqueSearch {
 public:
  explicit CliqueSearch(const std::vector<std::vector<bool>>& adj) : adj_(adj) {}

  std::vector<std::size_t> run() {
    std::vector<std::size_t> all(adj_.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::size_t> degree(adj_.size(), 0);
    for (std::size_t v = 0; v < adj_.size(); ++v)
      for (std::size_t w = 0; w < adj_.size(); ++w)
        if (v != w && adj_[v][w]) ++degree[v];
    std::stable_sort(all.begin(), all.end(), [&](std::size_t a, std::size_t b) {
      return degree[a] > degree[b];
    });
    if (!all.empty()) expand(all);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  void expand(const std::vector<std::size_t>& candidates) {
    // Greedy colouring; vertices are then visited from the highest colour.
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t v : candidates) {
      std::size_t k = 0;
      for (; k < classes.size(); ++k) {
        const bool clash = std::any_of(classes[k].begin(), classes[k].end(),
                                       [&](std::size_t w) { return adj_[v][w]; });
        if (!clash) break;
      }
      if (k == classes.size()) classes.emplace_back();
      classes[k].push_back(v);
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> colour;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      for (std::size_t v : classes[k]) {
        order.push_back(v);
        colour.push_back(k + 1);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current_.size() + colour[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current_.push_back(v);
      std::vector<std::size_t> next;
      for (std::size_t k = 0; k < i; ++k)
        if (adj_[v][order[k]]) next.push_back(order[k]);
      if (next.empty()) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(next);
      }
      current_.pop_back();
    }
  }

  const std::vector<std::vector<bool>>& adj_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
};

}  // namespace

std::vector<std::size_t> maximum_clique(
    const std::vector<std::vector<bool>>& adjacency) {
  for (const auto& row : adjacency) {
    if (row.size() != adjacency.size()) {
      throw InvalidInput("maximum_clique: adjacency matrix is not square");
    }
  }
  return CliqueSearch(adjacency).run();
}

SearchResult exact_max(const SearchParams& params,
                       std::span<const CapSpec> candidates) {
  validate(params);
  if (candidates.size() > params.max_clique_cutoff) {
    throw DomainError("exact_max: " + std::to_string(candidates.size()) +
                      " candidates exceed the cutoff of " +
                      std::to_string(params.max_clique_cutoff) +
                      "; use greedy_max instead");
  }
  const auto start = std::chrono::steady_clock::now();
  for (const CapSpec& c : candidates) {
    if (c.dim() != params.n) throw InvalidInput("exact_max: candidate dimension");
  }
  const std::size_t m = candidates.size();
  std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const PairCertificate pc = certify_pair(candidates[i], candidates[j]);
      adj[i][j] = adj[j][i] =
          pc.ii >= kCertificateFloor && pc.iii >= kCertificateFloor;
    }
  }
  std::vector<CapSpec> caps;
  for (std::size_t v : maximum_clique(adj)) caps.push_back(candidates[v]);

  SearchResult out;
  out.best.n = params.n;
  out.best.caps = std::move(caps);
  out.best.certificate = certify(out.best.caps);
  out.size = out.best.caps.size();
  out.method = Method::kExact;
  out.restarts = 0;
  out.candidates = m;
  out.seed = params.seed;
  out.elapsed_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return out;
}

namespace {

Json angle_json(const AngleValue& a) {
  if (const auto* f = std::get_if<PiFraction>(&a)) {
    return Json{{"pi", Json::array({f->num, f->den})}};
  }
  return Json(std::get<double>(a));
}

}  // namespace

Json to_json(const CapSpec& cap) {
  const CapRep rep = cap.rep();
  Json out;
  out["z"] = rep.z();
  out["theta"] = rep.theta();
  Json dir = Json::array();
  for (const AngleValue& a : cap.direction) dir.push_back(angle_json(a));
  out["direction_angles"] = std::move(dir);
  out["theta_angle"] = angle_json(cap.theta);
  return out;
}

Json to_json(const Certificate& cert) {
  Json out;
  out["valid"] = cert.valid;
  out["floor"] = kCertificateFloor;
  out["precision_digits"] = 50;
  if (cert.min_margin) out["min_margin"] = *cert.min_margin;
  if (cert.violation) {
    out["violation"] = Json{{"first", cert.violation->first},
                            {"second", cert.violation->second},
                            {"condition", cert.condition}};
  }
  Json pairs = Json::array();
  for (const PairCertificate& p : cert.pairs) {
    pairs.push_back(Json{{"first", p.first},
                         {"second", p.second},
                         {"ii", p.ii},
                         {"iii", p.iii}});
  }
  out["pairs"] = std::move(pairs);
  return out;
}

Json to_json(const SearchResult& result, bool include_timing) {
  Json out;
  out["n"] = result.best.n;
  out["size"] = result.size;
  out["lower_bound"] = result.size;
  out["method"] = result.method == Method::kGreedy ? "greedy" : "exact";
  out["restarts"] = result.restarts;
  out["candidates"] = result.candidates;
  out["seed"] = result.seed;
  const BoundReport bound = total_bound(result.best.n);
  out["total_bound"] = big_to_json(bound.total);
  out["within_total_bound"] = BigInt(result.size) <= bound.total;
  out["digest"] = configuration_digest(result.best);
  Json caps = Json::array();
  for (const CapSpec& c : result.best.caps) caps.push_back(to_json(c));
  out["caps"] = std::move(caps);
  out["certificate"] = to_json(result.best.certificate);
  if (include_timing) out["elapsed_seconds"] = result.elapsed_seconds;
  return out;
}

}  // namespace negcurve
