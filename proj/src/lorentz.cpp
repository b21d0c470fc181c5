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

#include "negcurve/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "negcurve/error.hpp"

namespace negcurve {

namespace {

Int128 checked_mul(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw NumericError("integer overflow in lattice pairing");
  }
  return out;
}

Int128 checked_add(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw NumericError("integer overflow in lattice pairing");
  }
  return out;
}

}  // namespace

LorentzVector::LorentzVector(std::vector<double> coords)
    : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw InvalidInput("LorentzVector needs at least two coordinates (n >= 1)");
  }
}

bool LorentzVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](double x) { return x == 0.0; });
}

double LorentzVector::euclidean_norm2() const {
  double s = 0.0;
  for (double x : coords_) s += x * x;
  return s;
}

double LorentzVector::spatial_norm() const {
  double s = 0.0;
  for (double x : spatial()) s += x * x;
  return std::sqrt(s);
}

LorentzVector LorentzVector::scaled(double factor) const {
  std::vector<double> out(coords_);
  for (double& x : out) x *= factor;
  return LorentzVector(std::move(out));
}

double inner(const LorentzVector& u, const LorentzVector& v) {
  if (u.dim() != v.dim()) {
    throw InvalidInput("inner: dimension mismatch (" + std::to_string(u.dim()) +
                       " vs " + std::to_string(v.dim()) + ")");
  }
  double s = u[0] * v[0];
  for (std::size_t i = 1; i < u.coords().size(); ++i) s -= u[i] * v[i];
  return s;
}

SignClass sign_class(const LorentzVector& u, double tol) {
  if (u.is_zero()) throw InvalidInput("sign_class: zero vector");
  const double rel = inner(u, u) / u.euclidean_norm2();
  if (rel > tol) return SignClass::kPositive;
  if (rel < -tol) return SignClass::kNegative;
  return SignClass::kNull;
}

QuadraticLattice::QuadraticLattice(std::vector<IntVector> gram)
    : rows_(std::move(gram)) {
  rank_ = static_cast<int>(rows_.size());
  if (rank_ < 2) throw InvalidInput("lattice rank must be at least 2");
  gram_.reserve(rank_ * rank_);
  for (const auto& row : rows_) {
    if (static_cast<int>(row.size()) != rank_) {
      throw InvalidInput("Gram matrix is not square");
    }
    gram_.insert(gram_.end(), row.begin(), row.end());
  }
  for (int i = 0; i < rank_; ++i) {
    for (int j = i + 1; j < rank_; ++j) {
      if (entry(i, j) != entry(j, i)) {
        throw InvalidInput("Gram matrix is not symmetric at (" +
                           std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram_real(),
                                                        Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& eig = solver.eigenvalues();
  const double scale = std::max(1.0, eig.cwiseAbs().maxCoeff());
  int positive = 0, negative = 0, zero = 0;
  std::ostringstream signs;
  for (int i = rank_ - 1; i >= 0; --i) {
    if (eig[i] > 1e-9 * scale) {
      ++positive;
      signs << '+';
    } else if (eig[i] < -1e-9 * scale) {
      ++negative;
      signs << '-';
    } else {
      ++zero;
      signs << '0';
    }
  }
  if (positive != 1 || negative != rank_ - 1) {
    std::ostringstream msg;
    msg << "signature (" << positive << ", " << negative << ")";
    if (zero > 0) msg << " with " << zero << " zero eigenvalue(s)";
    msg << ", expected (1, " << rank_ - 1 << "); eigenvalue signs ["
        << signs.str() << "]";
    throw SignatureError(msg.str());
  }
}

Eigen::MatrixXd QuadraticLattice::gram_real() const {
  Eigen::MatrixXd g(rank_, rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) g(i, j) = static_cast<double>(entry(i, j));
  return g;
}

std::vector<Int128> QuadraticLattice::apply(
    std::span<const Integer> a) const {
  if (static_cast<int>(a.size()) != rank_) {
    throw InvalidInput("class length " + std::to_string(a.size()) +
                       " does not match lattice rank " + std::to_string(rank_));
  }
  std::vector<Int128> out(rank_, 0);
  for (int i = 0; i < rank_; ++i) {
    for (int j = 0; j < rank_; ++j) {
      const Integer g = entry(i, j);
      if (g == 0 || a[j] == 0) continue;
      out[i] = checked_add(out[i], checked_mul(g, a[j]));
    }
  }
  return out;
}

Integer QuadraticLattice::pairing(std::span<const Integer> a,
                                  std::span<const Integer> b) const {
  if (static_cast<int>(a.size()) != rank_ ||
      static_cast<int>(b.size()) != rank_) {
    throw InvalidInput("pairing: class length does not match lattice rank " +
                       std::to_string(rank_));
  }
  const std::vector<Int128> gb = apply(b);
  Int128 s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0 || gb[i] == 0) continue;
    s = checked_add(s, checked_mul(a[i], gb[i]));
  }
  if (s > std::numeric_limits<Integer>::max() ||
      s < std::numeric_limits<Integer>::min()) {
    throw NumericError("intersection number does not fit in 64 bits");
  }
  return static_cast<Integer>(s);
}

double StandardizingMap::residual(const QuadraticLattice& lattice) const {
  const Eigen::MatrixXd form = matrix.transpose() * lattice.gram_real() * matrix;
  double worst = 0.0;
  for (int i = 0; i < form.rows(); ++i) {
    for (int j = 0; j < form.cols(); ++j) {
      const double target = (i != j) ? 0.0 : (i == 0 ? 1.0 : -1.0);
      worst = std::max(worst, std::abs(form(i, j) - target));
    }
  }
  return worst;
}

StandardizingMap standardize(const QuadraticLattice& lattice) {
  const int r = lattice.rank();
  const Eigen::MatrixXd g = lattice.gram_real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigendecomposition of the Gram matrix failed");
  }
  // Eigen sorts ascending: the single positive eigenvalue is the last one.
  std::vector<int> order;
  order.push_back(r - 1);
  for (int i = 0; i < r - 1; ++i) order.push_back(i);

  Eigen::MatrixXd m(r, r);
  for (int k = 0; k < r; ++k) {
    const int src = order[k];
    Eigen::VectorXd col = solver.eigenvectors().col(src);
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 1; i < col.size(); ++i) {
      if (std::abs(col[i]) > std::abs(col[pivot]) + 1e-12) pivot = i;
    }
    if (col[pivot] < 0) col = -col;
    m.col(k) = col / std::sqrt(std::abs(solver.eigenvalues()[src]));
  }

  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(r, r);
  for (int i = 1; i < r; ++i) j(i, i) = -1.0;
  StandardizingMap out{m, j * m.transpose() * g};
  return out;
}

LorentzVector embed_class(const StandardizingMap& map,
                          std::span<const Integer> coeffs) {
  const auto r = map.inverse.cols();
  if (static_cast<Eigen::Index>(coeffs.size()) != r) {
    throw InvalidInput("class length " + std::to_string(coeffs.size()) +
                       " does not match lattice rank " + std::to_string(r));
  }
  if (std::all_of(coeffs.begin(), coeffs.end(),
                  [](Integer c) { return c == 0; })) {
    throw InvalidInput("embed_class: zero class");
  }
  Eigen::VectorXd c(r);
  for (Eigen::Index i = 0; i < r; ++i) c[i] = static_cast<double>(coeffs[i]);
  const Eigen::VectorXd y = map.inverse * c;
  return LorentzVector(std::vector<double>(y.data(), y.data() + y.size()));
}

LorentzVector embed_class(const QuadraticLattice& lattice,
                          std::span<const Integer> coeffs) {
  return embed_class(standardize(lattice), coeffs);
}

}  // namespace negcurve
