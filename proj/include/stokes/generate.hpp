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

// Deterministic random instances.
//
// All sampling uses raw std::mt19937_64 outputs reduced to small integers, so
// a seed produces the same instance on every platform and in every scalar
// mode (the float instance is the exact one converted to double).

#pragma once

#include <cstdint>
#include <vector>

#include "stokes/stokes_data.hpp"

namespace stokes {

enum class LambdaSign { Random, Positive, Negative };

struct GeneratorOptions {
  std::size_t n_factors = 3;
  std::vector<std::size_t> dims;  // empty: all ones
  std::size_t rank = 0;           // rank of sigma + sigma^*
  std::uint64_t seed = 0;
  /// Make ker(sigma + sigma^*) a span of coordinate vectors, so that the
  /// spaces K_c are nonzero whenever the rank is deficient. In the rational
  /// domain the kernel coordinates come in pairs inside each block.
  bool aligned_kernel = false;
  LambdaSign lambda_sign = LambdaSign::Random;
};

/// Data in skew-Hermitian normal form with sigma + sigma^* = H positive
/// semi-definite of the requested rank. Base direction 0; factors have
/// increasing real parts. Throws BadParams or Unsatisfiable.
template <class T>
StokesData<T> generate_certified(const GeneratorOptions& opts);

/// Valid data with independent random sigma and sigma_prime (no pairing
/// structure). Only n_factors, dims and seed are used.
template <class T>
StokesData<T> generate_random_valid(const GeneratorOptions& opts);

}  // namespace stokes
