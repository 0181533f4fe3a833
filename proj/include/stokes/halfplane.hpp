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

// The partial orders <=_theta on the complex plane.
//
// For a direction theta, c <_theta c' iff Re((c - c') e^{-i theta}) < 0, i.e.
// c lies strictly behind c' when looking along theta. Two distinct points are
// incomparable exactly on the two directions orthogonal to c - c'.
//
// A direction is stored as a nonzero vector (u, v) proportional to
// (cos theta, sin theta), so the comparison is the sign of
// u * Re(c - c') + v * Im(c - c') and is exact over the rationals.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stokes/error.hpp"
#include "stokes/scalar.hpp"

namespace stokes {

template <class R>
using Point = Gaussian<R>;

template <class R>
struct Direction {
  R u;
  R v;

  Direction opposite() const { return {-u, -v}; }
  double angle() const;  // in [0, 2 pi)
  friend bool operator==(const Direction& a, const Direction& b) { return a.u == b.u && a.v == b.v; }
};

Direction<double> direction_from_angle(double theta);
/// Exact direction approximating an angle: components that are zero in
/// double precision become exact zeros, the others are the exact binary
/// values of cos and sin.
Direction<Rational> rational_direction_from_angle(double theta);

/// Positive proportionality (tolerance-based in double precision).
template <class R>
bool same_direction(const Direction<R>& a, const Direction<R>& b, const Tolerance& tol = {});

enum class Comparison { LT, EQ, GT, Incomparable };
const char* to_string(Comparison c);

template <class R>
Comparison leq_theta(const Point<R>& c, const Point<R>& c_prime, const Direction<R>& theta,
                     const Tolerance& tol = {});

/// The two directions at which c and c' are incomparable, sorted by angle in
/// [0, 2 pi). Throws Error(EqualFactors) when c == c'.
template <class R>
std::pair<Direction<R>, Direction<R>> stokes_directions(const Point<R>& c, const Point<R>& c_prime);

/// Throws Error(NotGeneric) naming the first incomparable pair.
template <class R>
void require_generic(const std::vector<Point<R>>& factors, const Direction<R>& theta,
                     const Tolerance& tol = {});

template <class R>
bool is_generic(const std::vector<Point<R>>& factors, const Direction<R>& theta, const Tolerance& tol = {});

/// The unique numbering c_1 <_theta ... <_theta c_n of a factor set.
template <class R>
std::vector<Point<R>> order_factors(std::vector<Point<R>> factors, const Direction<R>& theta,
                                    const Tolerance& tol = {});

/// A point c outside C with c_i <_theta c for every factor, on the ray
/// through theta: c = t (u, v) with u Re c + v Im c = 1 + max_i (u Re c_i + v Im c_i).
template <class R>
Point<R> admissible_point(const std::vector<Point<R>>& factors, const Direction<R>& theta,
                          const Tolerance& tol = {});

template <class R>
std::string format_point(const Point<R>& p);

}  // namespace stokes
