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

// Linear algebra on R^{1,n}: the Minkowski pairing with signature (+, -, ..., -),
// integer lattices carrying an intersection form of signature (1, n), and the
// change of basis that takes such a lattice onto the standard form.

#ifndef NEGCURVE_LORENTZ_HPP_
#define NEGCURVE_LORENTZ_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace negcurve {

using Integer = std::int64_t;
__extension__ typedef __int128 Int128;
using IntVector = std::vector<Integer>;

// Relative guard band used by sign_class: |H(u,u)| <= kSignTolerance * |u|^2
// counts as null.
inline constexpr double kSignTolerance = 1e-9;

// A vector (x_0, ..., x_n) of R^{1,n}, n >= 1.
class LorentzVector {
 public:
  explicit LorentzVector(std::vector<double> coords);

  // Number of spatial coordinates.
  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  double time() const { return coords_[0]; }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  std::span<const double> spatial() const {
    return std::span<const double>(coords_).subspan(1);
  }

  bool is_zero() const;
  double euclidean_norm2() const;
  double spatial_norm() const;

  LorentzVector scaled(double factor) const;

 private:
  std::vector<double> coords_;
};

// H(u, v) = u_0 v_0 - sum_{i >= 1} u_i v_i. Throws InvalidInput on a
// dimension mismatch.
double inner(const LorentzVector& u, const LorentzVector& v);

enum class SignClass : int { kNegative = -1, kNull = 0, kPositive = 1 };

// Sign of H(u, u) with a guard band relative to the Euclidean norm of u.
// Throws InvalidInput for the zero vector.
SignClass sign_class(const LorentzVector& u, double tol = kSignTolerance);

// Integer symmetric Gram matrix of signature (1, rank - 1), rank >= 2.
class QuadraticLattice {
 public:
  // Validates symmetry and the real signature; throws SignatureError with the
  // eigenvalue signs when the signature is wrong.
  explicit QuadraticLattice(std::vector<IntVector> gram);

  int rank() const { return rank_; }
  Integer entry(int row, int col) const { return gram_[row * rank_ + col]; }
  const std::vector<IntVector>& rows() const { return rows_; }
  Eigen::MatrixXd gram_real() const;

  // a^T G b in exact arithmetic. Throws NumericError if the result does not
  // fit in 64 bits, InvalidInput on a length mismatch.
  Integer pairing(std::span<const Integer> a, std::span<const Integer> b) const;
  Integer norm(std::span<const Integer> a) const { return pairing(a, a); }

  // G a, accumulated without overflow where the result allows it.
  std::vector<Int128> apply(std::span<const Integer> a) const;

 private:
  int rank_ = 0;
  std::vector<Integer> gram_;
  std::vector<IntVector> rows_;
};

// M with M^T G M = diag(1, -1, ..., -1), together with its inverse
// M^{-1} = J M^T G, which maps lattice coordinates to standard coordinates.
struct StandardizingMap {
  Eigen::MatrixXd matrix;
  Eigen::MatrixXd inverse;

  // Largest entrywise deviation of M^T G M from J.
  double residual(const QuadraticLattice& lattice) const;
};

// Eigendecomposition of the Gram matrix, columns ordered positive eigenvalue
// first and scaled by 1/sqrt|lambda|. Each column's sign is fixed so that its
// largest-magnitude entry (first one on ties) is positive.
StandardizingMap standardize(const QuadraticLattice& lattice);

// Image of an integer class in standard coordinates. Throws InvalidInput for
// the zero class or a length mismatch.
LorentzVector embed_class(const StandardizingMap& map,
                          std::span<const Integer> coeffs);
LorentzVector embed_class(const QuadraticLattice& lattice,
                          std::span<const Integer> coeffs);

}  // namespace negcurve

#endif  // NEGCURVE_LORENTZ_HPP_
