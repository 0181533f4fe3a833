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

#include "stokes/halfplane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace stokes {

namespace {

template <class R>
int sign_of(const R& x, double threshold) {
  if constexpr (std::is_same_v<R, double>) {
    if (std::abs(x) <= threshold) return 0;
    return x < 0 ? -1 : 1;
  } else {
    return sgn(x);
  }
}

template <class R>
R projection(const Point<R>& p, const Direction<R>& theta) {
  return theta.u * p.re() + theta.v * p.im();
}

}  // namespace

template <class R>
double Direction<R>::angle() const {
  double a = std::atan2(to_double(v), to_double(u));
  if (a < 0) a += 2 * std::numbers::pi;
  return a;
}

Direction<double> direction_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

Direction<Rational> rational_direction_from_angle(double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  if (std::abs(c) < 1e-15) c = 0.0;
  if (std::abs(s) < 1e-15) s = 0.0;
  return {Rational(c), Rational(s)};
}

template <class R>
bool same_direction(const Direction<R>& a, const Direction<R>& b, const Tolerance& tol) {
  R cross = a.u * b.v - a.v * b.u;
  R dot = a.u * b.u + a.v * b.v;
  double scale = std::hypot(to_double(a.u), to_double(a.v)) * std::hypot(to_double(b.u), to_double(b.v));
  return sign_of(cross, tol.rel_eps * scale) == 0 && dot > 0;
}

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::LT: return "LT";
    case Comparison::EQ: return "EQ";
    case Comparison::GT: return "GT";
    case Comparison::Incomparable: return "INCOMPARABLE";
  }
  return "?";
}

template <class R>
Comparison leq_theta(const Point<R>& c, const Point<R>& c_prime, const Direction<R>& theta,
                     const Tolerance& tol) {
  if (c == c_prime) return Comparison::EQ;
  Point<R> d = c - c_prime;
  R x = projection(d, theta);
  double threshold = 0.0;
  if constexpr (std::is_same_v<R, double>)
    threshold = tol.rel_eps * std::hypot(d.re(), d.im()) * std::hypot(theta.u, theta.v);
  switch (sign_of(x, threshold)) {
    case -1: return Comparison::LT;
    case 1: return Comparison::GT;
    default: return Comparison::Incomparable;
  }
}

template <class R>
std::pair<Direction<R>, Direction<R>> stokes_directions(const Point<R>& c, const Point<R>& c_prime) {
  if (c == c_prime) throw Error(ErrorKind::EqualFactors, "a point is comparable to itself in every direction");
  Point<R> d = c - c_prime;
  // Rotations of c - c' by -pi/2 and +pi/2.
  Direction<R> a{d.im(), -d.re()};
  Direction<R> b{-d.im(), d.re()};
  if (b.angle() < a.angle()) std::swap(a, b);
  return {a, b};
}

template <class R>
void require_generic(const std::vector<Point<R>>& factors, const Direction<R>& theta, const Tolerance& tol) {
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      if (factors[i] == factors[j])
        throw Error(ErrorKind::EqualFactors, "repeated factor " + format_point(factors[i]));
      if (leq_theta(factors[i], factors[j], theta, tol) == Comparison::Incomparable)
        throw Error(ErrorKind::NotGeneric, "factors " + format_point(factors[i]) + " and " +
                                               format_point(factors[j]) + " are incomparable");
    }
}

template <class R>
bool is_generic(const std::vector<Point<R>>& factors, const Direction<R>& theta, const Tolerance& tol) {
  try {
    require_generic(factors, theta, tol);
  } catch (const Error&) {
    return false;
  }
  return true;
}

template <class R>
std::vector<Point<R>> order_factors(std::vector<Point<R>> factors, const Direction<R>& theta,
                                    const Tolerance& tol) {
  require_generic(factors, theta, tol);
  std::stable_sort(factors.begin(), factors.end(), [&](const Point<R>& a, const Point<R>& b) {
    return leq_theta(a, b, theta, tol) == Comparison::LT;
  });
  return factors;
}

template <class R>
Point<R> admissible_point(const std::vector<Point<R>>& factors, const Direction<R>& theta, const Tolerance& tol) {
  require_generic(factors, theta, tol);
  if (factors.empty()) throw Error(ErrorKind::BadParams, "empty factor set");
  R best = projection(factors.front(), theta);
  for (const auto& f : factors) best = std::max<R>(best, projection(f, theta));
  R t = (R(1) + best) / (theta.u * theta.u + theta.v * theta.v);
  Point<R> c{t * theta.u, t * theta.v};
  for (const auto& f : factors)
    if (leq_theta(f, c, theta, tol) != Comparison::LT)
      throw Error(ErrorKind::NotAdmissible, "constructed point is not above " + format_point(f));
  return c;
}

template <class R>
std::string format_point(const Point<R>& p) {
  std::ostringstream os;
  if constexpr (std::is_same_v<R, double>) {
    os << "(" << p.re() << ", " << p.im() << ")";
  } else {
    os << "(" << p.re().get_str() << ", " << p.im().get_str() << ")";
  }
  return os.str();
}

#define STOKES_INSTANTIATE_HALFPLANE(R)                                                                   \
  template struct Direction<R>;                                                                           \
  template bool same_direction(const Direction<R>&, const Direction<R>&, const Tolerance&);               \
  template Comparison leq_theta(const Point<R>&, const Point<R>&, const Direction<R>&, const Tolerance&); \
  template std::pair<Direction<R>, Direction<R>> stokes_directions(const Point<R>&, const Point<R>&);     \
  template void require_generic(const std::vector<Point<R>>&, const Direction<R>&, const Tolerance&);     \
  template bool is_generic(const std::vector<Point<R>>&, const Direction<R>&, const Tolerance&);          \
  template std::vector<Point<R>> order_factors(std::vector<Point<R>>, const Direction<R>&,                \
                                               const Tolerance&);                                         \
  template Point<R> admissible_point(const std::vector<Point<R>>&, const Direction<R>&, const Tolerance&); \
  template std::string format_point(const Point<R>&);

STOKES_INSTANTIATE_HALFPLANE(double)
STOKES_INSTANTIATE_HALFPLANE(Rational)

#undef STOKES_INSTANTIATE_HALFPLANE

}  // namespace stokes
