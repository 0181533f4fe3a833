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

// Partial indices of invertible matrix loops on the unit circle.
//
// A loop g factors as g = g_- diag(z^{k_1}, ..., z^{k_d}) g_+ with g_+
// holomorphic and invertible in |z| < 1 and g_- holomorphic and invertible in
// |z| > 1 (including infinity). For the Toeplitz operator T(f) = P f P on the
// Hardy space of nonnegative Fourier modes,
//
//   dim ker T(z^{-s} g) = sum_j max(0, s - k_j),
//
// so the second differences of s -> dim ker T(z^{-s} g) count the indices
// equal to s. The kernel dimensions are measured on finite sections with
// more output modes than input modes, which contain the exact kernel for
// Laurent-polynomial loops whose factors are polynomial.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "stokes/matrix.hpp"

namespace stokes {

/// Loop given by finitely many Fourier coefficients g(z) = sum_k G_k z^k.
class MatrixLoop {
 public:
  MatrixLoop() = default;
  MatrixLoop(std::size_t dim, std::map<int, Matrix<FloatComplex>> fourier);

  /// Samples at z_j = exp(2 pi i j / N), converted to Fourier coefficients
  /// by an FFT. Modes k >= N/2 are read as k - N. Coefficients below rel_eps
  /// times the largest one are dropped.
  static MatrixLoop from_samples(const std::vector<Matrix<FloatComplex>>& samples, double rel_eps = 1e-12);

  std::size_t dim() const { return dim_; }
  const std::map<int, Matrix<FloatComplex>>& fourier() const { return fourier_; }
  int min_degree() const;
  int max_degree() const;
  Matrix<FloatComplex> eval(FloatComplex z) const;

  /// z^k g
  MatrixLoop shifted(int k) const;
  friend MatrixLoop operator*(const MatrixLoop& a, const MatrixLoop& b);

 private:
  std::size_t dim_ = 0;
  std::map<int, Matrix<FloatComplex>> fourier_;
};

MatrixLoop make_constant(const Matrix<FloatComplex>& h);
MatrixLoop make_monomial(const std::vector<int>& exponents);
/// [[z, 1], [0, z^{-1}]]
MatrixLoop make_upper_example();
MatrixLoop make_product(const std::vector<MatrixLoop>& factors);

struct IndexResult {
  std::vector<int> indices;  // descending
  int det_winding = 0;
  std::size_t stabilized_at = 0;  // truncation size N (input modes)
  int window_lo = 0;
  int window_hi = 0;
  std::vector<std::size_t> kernel_dims;  // dim ker T(z^{-s} g), s = window_lo - 1 .. window_hi + 1
  double min_abs_det = 0.0;              // over the sample points
  double max_condition = 0.0;            // over the sample points
  double worst_zero_sigma = 0.0;         // largest singular value counted as zero, relative
  double smallest_kept_sigma = 1.0;      // smallest singular value counted as nonzero, relative
  bool consistent = false;               // sum(indices) == det_winding

  bool pure() const;  // all indices zero
};

struct IndexOptions {
  double rel_eps = 1e-9;
  std::size_t max_modes = 256;
  std::size_t sample_count = 0;  // 0: chosen from the degree range
};

/// Throws Error(SingularLoop) if det g vanishes (relative to rel_eps) at a
/// sample point and Error(NotStabilized) if the kernel dimensions keep
/// changing up to max_modes.
IndexResult partial_indices(const MatrixLoop& g, const IndexOptions& opts = {});

}  // namespace stokes
