// Copyright 2026 The stokes-data Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Stokes data of exponential type as a pair of block-triangular matrices.
//
// Storage convention. L1 = (+)_i G_{c_i,1} and L2 = (+)_i G_{c_i,2} carry
// coordinates grouped by factor, in the theta0-numbering c_1 < ... < c_n.
// The matrix of a map has block (target j, source i). With this convention
//
//   sigma        (the map S at theta0)  has block (j, i) = 0 for i > j,
//   sigma_prime  (the map S' at theta0 + pi) has block (j, i) = 0 for i < j,
//
// and all diagonal blocks are invertible.
//
// Normal form of the monodromy presentation: a1 = Id, a2 = sigma^{-1},
// a1' = sigma_prime, a2' = Id, so that the monodromy is
// T1 = sigma^{-1} sigma_prime and can = sigma_prime^{-1} - sigma^{-1}.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stokes/halfplane.hpp"
#include "stokes/linalg.hpp"
#include "stokes/matrix.hpp"

namespace stokes {

/// Factor set, base direction and block sizes, in the theta0-numbering.
///
/// The zero object is represented as the single factor 0 with dimension 0;
/// otherwise every dimension is positive.
template <class R>
struct StokesType {
  std::vector<Point<R>> factors;
  Direction<R> theta0;
  std::vector<std::size_t> dims;

  std::size_t size() const { return factors.size(); }
  std::size_t total() const;
  std::size_t offset(std::size_t i) const;
  bool is_zero() const { return total() == 0; }
  /// Index of a factor, or size() if absent.
  std::size_t find(const Point<R>& c) const;

  friend bool operator==(const StokesType&, const StokesType&) = default;
};

template <class T>
struct StokesData {
  using Real = typename ScalarTraits<T>::Real;
  StokesType<Real> type;
  Matrix<T> sigma;
  Matrix<T> sigma_prime;

  friend bool operator==(const StokesData&, const StokesData&) = default;
};

template <class R>
StokesType<R> zero_type(const Direction<R>& theta0);

template <class T>
StokesData<T> zero_data(const Direction<typename ScalarTraits<T>::Real>& theta0);

/// Builds data from factors in arbitrary order. The block rows and columns of
/// sigma and sigma_prime follow the order in which the factors are given and
/// are permuted together with them into the theta0-numbering. Factors of
/// dimension 0 are dropped. Throws NotGeneric / EqualFactors / InvalidData
/// (shape); triangularity is checked by validate, not here.
template <class T>
StokesData<T> make_stokes_data(std::vector<PointOf<T>> factors, const Direction<typename ScalarTraits<T>::Real>& theta0,
                               std::vector<std::size_t> dims, const Matrix<T>& sigma, const Matrix<T>& sigma_prime,
                               const Tolerance& tol = {});

/// Rank-one data Sigma = Sigma' = (1) at a single factor.
template <class T>
StokesData<T> trivial_data(const PointOf<T>& c, const Direction<typename ScalarTraits<T>::Real>& theta0);

struct Violation {
  std::string clause;
  long block_row = -1;  // target block j, or -1
  long block_col = -1;  // source block i, or -1
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  bool has_clause(const std::string& clause) const;
};

// Clause names reported by validate.
inline constexpr const char* kClauseGeneric = "theta0 generic for C";
inline constexpr const char* kClauseOrder = "factors in theta0 order";
inline constexpr const char* kClauseDims = "dimensions positive";
inline constexpr const char* kClauseShape = "matrix shape";
inline constexpr const char* kClauseSigmaTriangular = "S_{ij} = 0 unless i <= j";
inline constexpr const char* kClauseSigmaPrimeTriangular = "S'_{ij} = 0 unless i >= j";
inline constexpr const char* kClauseSigmaDiagonal = "S_{ii} invertible";
inline constexpr const char* kClauseSigmaPrimeDiagonal = "S'_{ii} invertible";

/// Checks every invariant of the type and of the two matrices. Never throws.
template <class T>
ValidationReport validate(const StokesData<T>& d, const Tolerance& tol = {});

/// Throws Error(InvalidData) listing the violated clauses.
template <class T>
void require_valid(const StokesData<T>& d, const Tolerance& tol = {});

template <class T>
struct MonodromyReport {
  Matrix<T> T1;
  std::vector<Matrix<T>> graded;
  std::size_t eigenvalue_one_dim = 0;
};

template <class T>
MonodromyReport<T> monodromy(const StokesData<T>& d, const Tolerance& tol = {});

/// Pull-back by z -> -z: data of type (-C, theta0 + pi) with
/// (sigma, sigma_prime) -> (sigma^{-1}, sigma_prime^{-1}). Throws
/// ConventionViolation if the output is not valid data.
template <class T>
StokesData<T> iota(const StokesData<T>& d, const Tolerance& tol = {});

/// Dual local system: data of type (-C, theta0), numbered in reverse, with
/// sigma -> rho (sigma^{-1})^T rho and likewise for sigma_prime, rho being the
/// block-reversal permutation. Throws ConventionViolation on invalid output.
template <class T>
StokesData<T> dualize(const StokesData<T>& d, const Tolerance& tol = {});

/// A morphism D -> E: lambda1 : L1(D) -> L1(E) and lambda2 : L2(D) -> L2(E),
/// both block-diagonal with respect to the factors (blocks between different
/// factors vanish).
template <class T>
struct Morphism {
  Matrix<T> lambda1;
  Matrix<T> lambda2;
};

/// Basis of Hom(D, E). A factor present in only one of D, E is treated as a
/// factor of dimension 0 in the other. Throws TypeMismatch when the base
/// directions differ or the union of the factor sets is not generic.
template <class T>
std::vector<Morphism<T>> hom_space(const StokesData<T>& d, const StokesData<T>& e, const Tolerance& tol = {});

template <class T>
bool is_morphism(const StokesData<T>& d, const StokesData<T>& e, const Morphism<T>& m, const Tolerance& tol = {});

/// Kernel and cokernel of a morphism as Stokes data on the factors where they
/// are nonzero (the zero object if they vanish).
template <class T>
StokesData<T> kernel_object(const StokesData<T>& d, const StokesData<T>& e, const Morphism<T>& m,
                            const Tolerance& tol = {});
template <class T>
StokesData<T> cokernel_object(const StokesData<T>& d, const StokesData<T>& e, const Morphism<T>& m,
                              const Tolerance& tol = {});

/// Direct sum together with the coordinate embeddings of the two summands:
/// sum.sigma = embed_left sigma_D embed_left^T + embed_right sigma_E embed_right^T.
/// On a common factor the coordinates of the left summand come first.
template <class T>
struct DirectSum {
  StokesData<T> sum;
  Matrix<T> embed_left;
  Matrix<T> embed_right;
};

template <class T>
DirectSum<T> direct_sum_with_embeddings(const StokesData<T>& d, const StokesData<T>& e, const Tolerance& tol = {});

template <class T>
StokesData<T> direct_sum(const StokesData<T>& d, const StokesData<T>& e, const Tolerance& tol = {});

/// Conjugates the data by a change of coordinates on L1 and L2:
/// sigma -> p2^{-1} sigma p1. Used to compare data up to basis.
template <class T>
StokesData<T> change_basis(const StokesData<T>& d, const Matrix<T>& p1, const Matrix<T>& p2, const Tolerance& tol = {});

/// Block of rows of factor j and columns of factor i.
template <class T>
Matrix<T> factor_block(const StokesData<T>& d, const Matrix<T>& m, std::size_t j, std::size_t i);

}  // namespace stokes
