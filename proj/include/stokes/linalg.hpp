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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stokes/error.hpp"
#include "stokes/matrix.hpp"

namespace stokes {

/// Reduced row echelon form together with the pivot columns.
template <class T>
struct Echelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination. Exact domains pivot on the first nonzero entry;
/// the float domain uses partial pivoting and treats |x| <= rel_eps * max|M|
/// as zero.
template <class T>
Echelon<T> row_echelon(const Matrix<T>& m, const Tolerance& tol = {});

/// Basis of {v : Mv = 0}, one vector per column of the result.
///
/// Exact domains read the kernel off the reduced echelon form. The float
/// domain uses an SVD and counts a singular value as zero iff
/// sigma <= rel_eps * sigma_max.
template <class T>
Matrix<T> kernel_basis(const Matrix<T>& m, const Tolerance& tol = {});

template <class T>
std::size_t rank(const Matrix<T>& m, const Tolerance& tol = {});

/// Variants for matrices that may be pure rounding noise: in the float domain
/// a singular value counts as zero iff sigma <= rel_eps * max(sigma_max, scale),
/// where scale is the magnitude the matrix would have if it were nonzero.
template <class T>
std::size_t rank_scaled(const Matrix<T>& m, double scale, const Tolerance& tol = {});
template <class T>
Matrix<T> kernel_basis_scaled(const Matrix<T>& m, double scale, const Tolerance& tol = {});

/// Columns of M selected by a rank-revealing elimination, in increasing order.
template <class T>
std::vector<std::size_t> pivot_columns(const Matrix<T>& m, const Tolerance& tol = {});

/// Inverse of a square matrix; throws Error(Singular).
template <class T>
Matrix<T> inverse(const Matrix<T>& m, const Tolerance& tol = {});

/// Solves A X = B for X when the system is consistent and A has full column
/// rank; throws Error(Singular) otherwise.
template <class T>
Matrix<T> solve(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

/// True when the column spans of A and B coincide.
template <class T>
bool same_span(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

/// Approximate equality: exact equality in exact domains, otherwise
/// ||A - B||_F <= rel_eps * max(1, ||A||_F, ||B||_F).
template <class T>
bool approx_equal(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {});

template <class T>
T determinant(const Matrix<T>& m);

enum class Definiteness { PD, PSD, Indefinite, NSD, ND };

const char* to_string(Definiteness d);

template <class T>
struct HermitianReport {
  Definiteness cls = Definiteness::PD;
  std::size_t rank = 0;
  Matrix<T> kernel;
  /// Counts of positive / negative pivots (exact) or eigenvalues (float).
  std::size_t positive = 0;
  std::size_t negative = 0;
  /// Smallest eigenvalue in float mode; in exact mode the smallest pivot of
  /// the LDL* factorisation (both 0 for an empty matrix).
  double min_value = 0.0;
};

/// Sign classification of a Hermitian matrix.
///
/// Exact domains run a symmetric pivoted LDL* elimination with rational
/// pivots: a residual whose diagonal vanishes while some off-diagonal entry
/// does not certifies an indefinite matrix. The float domain classifies
/// eigenvalues, treating lambda >= -rel_eps * ||H||_2 as nonnegative.
/// Throws Error(NotHermitian) if ||H - H*|| > rel_eps * ||H|| (exact: H != H*).
template <class T>
HermitianReport<T> hermitian_classify(const Matrix<T>& h, const Tolerance& tol = {});

/// True iff the matrix is Hermitian (exactly, or to within rel_eps in float).
template <class T>
bool is_hermitian(const Matrix<T>& h, const Tolerance& tol = {});

}  // namespace stokes
