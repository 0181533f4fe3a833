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

// Cech cohomology on the two-interval cover of the circle.
//
// I1 and I2 are open arcs covering S^1 whose intersection has one component
// around theta0 and one around theta0' = theta0 + pi. Sections of L over I1
// carry L1-coordinates, sections over I2 carry L2-coordinates, germs at
// theta0 carry L1-coordinates and germs at theta0' carry L2-coordinates. The
// restriction maps are
//
//   I1 -> theta0: a1 = Id        I2 -> theta0: a2 = sigma^{-1}
//   I1 -> theta0': a1' = sigma'  I2 -> theta0': a2' = Id
//
// The subsheaf L_{<=c} is described by its stalks at the two components,
// read off from the order at theta0 and theta0'. Everything else (sections,
// Cech differentials, connecting maps, the cup-product pairing) is computed
// from these finite data rather than from closed formulas, so it provides an
// independent check of the matrix identities used elsewhere.

#pragma once

#include <cstddef>

#include "stokes/stokes_data.hpp"

namespace stokes {

/// dim L_{<=c, theta} in the graded local model. Throws OnStokesDirection if
/// theta is a Stokes direction of a pair in C u {c}.
template <class T>
std::size_t stalk_dims(const StokesData<T>& d, const Direction<typename ScalarTraits<T>::Real>& theta,
                       const PointOf<T>& c, const Tolerance& tol = {});

/// Throws NotAdmissible unless c is outside C and above every factor at theta0.
template <class T>
void require_admissible(const StokesData<T>& d, const PointOf<T>& c, const Tolerance& tol = {});

template <class T>
struct CohomologyReport {
  PointOf<T> c;
  std::size_t h0_L = 0, h1_L = 0;
  std::size_t h0_sub = 0, h1_sub = 0;    // L_{<=c}
  std::size_t h0_quot = 0, h1_quot = 0;  // L / L_{<=c}
  Matrix<T> can;                         // H^0(L/L_{<=c}) = L_{theta0'} -> H^1(L_{<=c}) = L_{theta0}
  std::size_t rank_can = 0;
  std::size_t dim_F = 0;
  /// Kernel and cokernel of H^1(S^1, L_{<=c}) -> H^1(S^1, L), i.e. the
  /// cohomology of the sheaf F_{<=c} in degrees 1 and 2.
  std::size_t h1_X = 0, h2_X = 0;
  std::size_t eigenvalue_one_dim = 0;  // dim ker(T1 - Id), from the monodromy
  bool consistent = false;             // every rank identity holds
};

template <class T>
CohomologyReport<T> cohomology_report(const StokesData<T>& d, const PointOf<T>& c, const Tolerance& tol = {});

/// The connecting map H^0(L/L_{<=c}) -> H^1(L_{<=c}) obtained by lifting a
/// global section of the quotient to the two charts and taking the Cech
/// coboundary, as a matrix L_{theta0'} -> L_{theta0}.
template <class T>
Matrix<T> can_via_cech(const StokesData<T>& d, const PointOf<T>& c, const Tolerance& tol = {});

/// How the degree-(0,1) cup product evaluates a global section against a
/// cocycle on an overlap component: averaging the two chart values, or
/// using a single chart.
enum class CupRule { Averaged, FirstChart, SecondChart };

/// Matrix of the pairing H^0(L/L_{<=c}) x conj H^1 -> H^1(S^1, k) = k in the
/// bases L_{theta0'} (rows) and L_{theta0} (columns). The pairing on the I2
/// chart is the one induced from h12 by gluing at theta0. Requires the
/// normalized pairing (gram12 = Id) to be compatible; throws InvalidData
/// otherwise.
template <class T>
Matrix<T> pairing_via_cech(const StokesData<T>& d, const PointOf<T>& c, CupRule rule = CupRule::Averaged,
                           const Tolerance& tol = {});

/// The induced form on F from the cohomological pairing: for x' = sigma' X
/// (X the parameter basis of induced_form_on_F), gram[a, b] =
/// x'_a^T P conj(can x'_b).
template <class T>
Matrix<T> induced_form_via_cech(const StokesData<T>& d, const PointOf<T>& c, const Matrix<T>& param_basis,
                                CupRule rule = CupRule::Averaged, const Tolerance& tol = {});

}  // namespace stokes
