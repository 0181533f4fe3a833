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

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>
#include <string_view>

namespace stokes {

/// Relative zero threshold for floating-point rank and sign decisions.
/// Exact scalar domains ignore it.
struct Tolerance {
  double rel_eps = 1e-9;
};

/// Complex number with real and imaginary parts in an ordered field R.
/// Used for the exact Gaussian-rational scalar domain and for exponential
/// factors (points of the complex plane) in every mode.
template <class R>
class Gaussian {
 public:
  Gaussian() : re_(0), im_(0) {}
  Gaussian(R re) : re_(std::move(re)), im_(0) {}  // NOLINT: implicit lift
  Gaussian(R re, R im) : re_(std::move(re)), im_(std::move(im)) {}
  Gaussian(int re) : re_(re), im_(0) {}  // NOLINT

  const R& re() const { return re_; }
  const R& im() const { return im_; }

  Gaussian conj() const { return {re_, -im_}; }
  R norm2() const { return re_ * re_ + im_ * im_; }

  Gaussian operator-() const { return {-re_, -im_}; }
  Gaussian& operator+=(const Gaussian& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    R r = re_ * o.re_ - im_ * o.im_;
    R i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    R d = o.norm2();
    R r = (re_ * o.re_ + im_ * o.im_) / d;
    R i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

 private:
  R re_;
  R im_;
};

using FloatComplex = std::complex<double>;
using Rational = mpq_class;
using GaussianRational = Gaussian<Rational>;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// Per-domain operations. Every generic algorithm in the library goes through
/// these so that the three scalar domains share one code path.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<FloatComplex> {
  using Real = double;
  static constexpr bool exact = false;
  static constexpr bool has_imaginary_unit = true;
  static constexpr const char* name = "float";

  static FloatComplex zero() { return {0.0, 0.0}; }
  static FloatComplex one() { return {1.0, 0.0}; }
  static FloatComplex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static FloatComplex from_parts(const Real& re, const Real& im) { return {re, im}; }
  static FloatComplex imaginary_unit() { return {0.0, 1.0}; }
  static FloatComplex conj(const FloatComplex& x) { return std::conj(x); }
  static double real_part(const FloatComplex& x) { return x.real(); }
  static double imag_part(const FloatComplex& x) { return x.imag(); }
  static double magnitude(const FloatComplex& x) { return std::abs(x); }
  static FloatComplex half() { return {0.5, 0.0}; }
};

template <>
struct ScalarTraits<GaussianRational> {
  using Real = Rational;
  static constexpr bool exact = true;
  static constexpr bool has_imaginary_unit = true;
  static constexpr const char* name = "gaussian_rational";

  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return {Rational(1), Rational(0)}; }
  static GaussianRational from_int(long v) { return {Rational(v), Rational(0)}; }
  static GaussianRational from_parts(const Real& re, const Real& im) { return {re, im}; }
  static GaussianRational imaginary_unit() { return {Rational(0), Rational(1)}; }
  static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
  static Rational real_part(const GaussianRational& x) { return x.re(); }
  static Rational imag_part(const GaussianRational& x) { return x.im(); }
  static double magnitude(const GaussianRational& x) {
    return std::hypot(x.re().get_d(), x.im().get_d());
  }
  static GaussianRational half() { return {Rational(1, 2), Rational(0)}; }
};

template <>
struct ScalarTraits<Rational> {
  using Real = Rational;
  static constexpr bool exact = true;
  static constexpr bool has_imaginary_unit = false;
  static constexpr const char* name = "rational";

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long v) { return Rational(v); }
  // Only real values embed; callers check the imaginary part first.
  static Rational from_parts(const Real& re, const Real& /*im*/) { return re; }
  static Rational conj(const Rational& x) { return x; }
  static Rational real_part(const Rational& x) { return x; }
  static Rational imag_part(const Rational& /*x*/) { return Rational(0); }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static Rational half() { return Rational(1, 2); }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

/// Point of the complex plane used for exponential factors in a given mode.
template <class T>
using PointOf = Gaussian<typename ScalarTraits<T>::Real>;

/// The Gaussian extension of a scalar domain (itself for the complex domains).
template <class T>
struct GaussianExtension {
  using type = T;
};
template <>
struct GaussianExtension<Rational> {
  using type = GaussianRational;
};

inline GaussianRational to_gaussian(const Rational& x) { return {x, Rational(0)}; }
inline GaussianRational to_gaussian(const GaussianRational& x) { return x; }
inline FloatComplex to_gaussian(const FloatComplex& x) { return x; }

}  // namespace stokes
