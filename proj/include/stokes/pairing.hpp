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

// Sesquilinear pairings on Stokes data and the positivity certificate.
//
// A pairing is given by the block-diagonal Gram matrix G of
// h12(x, conj(y)) = x^T G conj(y), x in L1, y in L2. All functions below
// except normalize_pairing assume the normalized gauge G = Id, in which
//
//   h^{theta0}(x, conj(y))  = x^T conj(sigma) conj(y),
//   h^{theta0'}(x, conj(y)) = x^T conj(sigma_prime) conj(y),
//
// and the pairing is skew-Hermitian iff sigma_prime = -sigma^*.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stokes/linalg.hpp"
#include "stokes/stokes_data.hpp"

namespace stokes {

/// sigma^{-T} G conj(sigma_prime) == sigma_prime^{-T} G conj(sigma).
template <class T>
bool compatibility_holds(const StokesData<T>& d, const Matrix<T>& gram12, const Tolerance& tol = {});

/// Moves to the gauge G = Id by the change of basis x -> G^{-T} x on L1.
/// Throws InvalidData if G is not block-diagonal with invertible blocks or
/// the compatibility identity fails.
template <class T>
StokesData<T> normalize_pairing(const StokesData<T>& d, const Matrix<T>& gram12, const Tolerance& tol = {});

struct SkewCheck {
  bool is_skew = false;
  double residual = 0.0;  // ||sigma_prime + sigma^*||_F
  bool compatible = false;
};

template <class T>
SkewCheck check_iota_skew(const StokesData<T>& d, const Tolerance& tol = {});

/// The Hermitian part H = sigma + sigma^*.
template <class T>
Matrix<T> hermitian_part(const StokesData<T>& d);

template <class T>
struct InducedForm {
  Matrix<T> can1;         // Id - T1 = sigma^{-1} (sigma - sigma_prime)
  Matrix<T> param_basis;  // X: standard vectors at the pivot columns of can1
  Matrix<T> f_basis;      // can1 X, a basis of F = Im can1
  Matrix<T> gram;         // X^T conj(sigma - sigma_prime) conj(X)
};

template <class T>
InducedForm<T> induced_form_on_F(const StokesData<T>& d, const Tolerance& tol = {});

template <class T>
struct KSpace {
  std::size_t index = 0;  // factor position in the theta0-numbering
  PointOf<T> c;
  Matrix<T> basis;  // n_tot x dim K_c, supported on the block of c
  Matrix<T> form;   // h_K = K^T conj(sigma) conj(K)
};

/// K_c = {v in G_{c,1} : sigma v = sigma_prime v, supported on the block of c}.
template <class T>
std::vector<KSpace<T>> k_spaces(const StokesData<T>& d, const Tolerance& tol = {});

template <class T>
struct TrivialSummand {
  std::size_t index = 0;
  PointOf<T> c;
  std::size_t rank = 0;
  Matrix<T> sigma_block;  // equals conj(h_K) in the chosen basis
  StokesData<T> data;
};

/// Orthogonal splitting into trivial summands and a minimal remainder.
/// With S = assembled.sigma (trivial summands first, then the remainder, as
/// produced by direct_sum), the input satisfies
///   sigma = p2 S p1^{-1},  sigma_prime = p2 S' p1^{-1}.
template <class T>
struct SplitResult {
  std::vector<TrivialSummand<T>> trivial_summands;
  StokesData<T> minimal_part;
  StokesData<T> assembled;
  Matrix<T> p1;
  Matrix<T> p2;
};

/// Throws DegenerateKForm when some h_K is singular and SplitFailure when the
/// adapted bases do not block-diagonalize the data (e.g. without the skew
/// normal form).
template <class T>
SplitResult<T> split_minimal(const StokesData<T>& d, const Tolerance& tol = {});

/// Re-assembles the summands and undoes the change of basis.
template <class T>
StokesData<T> reassemble(const SplitResult<T>& s, const Tolerance& tol = {});

enum class Verdict { CertifiedPurePolarized, Failed };
const char* to_string(Verdict v);

// Clause names of the certificate.
inline constexpr const char* kClauseSkew = "skew_hermitian_normal_form";
inline constexpr const char* kClausePsd = "hermitian_part_psd";
inline constexpr const char* kClauseKDefinite = "k_space_form_definite";

template <class T>
struct KEntry {
  std::size_t index = 0;
  PointOf<T> c;
  std::size_t dim = 0;
  Matrix<T> form;
  std::string verdict;  // "zero", "definite", "not_definite", "not_hermitian"
};

template <class T>
struct Certificate {
  using G = typename GaussianExtension<T>::type;
  SkewCheck skew;
  HermitianReport<T> hermitian;
  std::vector<KEntry<T>> k_entries;
  std::optional<SplitResult<T>> split;
  std::string split_error;
  std::optional<Matrix<T>> minimal_gram;  // induced form on F of the minimal part
  Verdict verdict = Verdict::Failed;
  std::string failed_clause;
  std::string reason;
};

template <class T>
Certificate<T> certify(const StokesData<T>& d, const Tolerance& tol = {});

}  // namespace stokes
