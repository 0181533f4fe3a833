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

// JSON instance files, loops and report payloads.
//
// Complex values are [re, im] arrays. In the exact modes every real number is
// an integer or a "p/q" string; in rational mode a matrix entry may also be a
// bare real. Matrices are row-major nested arrays in the (target, source)
// block layout. Parse errors carry the JSON path of the offending value.

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "stokes/birkhoff.hpp"
#include "stokes/cech.hpp"
#include "stokes/generate.hpp"
#include "stokes/pairing.hpp"
#include "stokes/stokes_data.hpp"

namespace stokes {

using json = nlohmann::json;

/// Error attributed to one field of an input document.
class FieldError : public Error {
 public:
  FieldError(ErrorKind kind, std::string field, const std::string& what)
      : Error(kind, field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class ScalarMode { Float, GaussianRational, Rational };

/// "float", "gaussian_rational" or "rational"; throws BadParams otherwise.
ScalarMode parse_mode(std::string_view name);
const char* to_string(ScalarMode m);

template <class T>
constexpr ScalarMode mode_of();
template <>
constexpr ScalarMode mode_of<FloatComplex>() { return ScalarMode::Float; }
template <>
constexpr ScalarMode mode_of<GaussianRational>() { return ScalarMode::GaussianRational; }
template <>
constexpr ScalarMode mode_of<Rational>() { return ScalarMode::Rational; }

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// Runs f.template operator()<T>() with T the scalar type of the mode.
template <class F>
decltype(auto) dispatch_mode(ScalarMode m, F&& f) {
  switch (m) {
    case ScalarMode::Float:
      return f.template operator()<FloatComplex>();
    case ScalarMode::GaussianRational:
      return f.template operator()<GaussianRational>();
    case ScalarMode::Rational:
      break;
  }
  return f.template operator()<Rational>();
}

template <class R>
json real_to_json(const R& x);
template <class R>
R real_from_json(const json& j, const std::string& path);

template <class T>
json scalar_to_json(const T& x);
template <class T>
T scalar_from_json(const json& j, const std::string& path);

template <class T>
json matrix_to_json(const Matrix<T>& m);
template <class T>
Matrix<T> matrix_from_json(const json& j, const std::string& path);

template <class R>
json point_to_json(const Point<R>& p);
template <class R>
Point<R> point_from_json(const json& j, const std::string& path);

template <class R>
json direction_to_json(const Direction<R>& d);
/// A number (radians) or {"u": ..., "v": ...}.
template <class R>
Direction<R> direction_from_json(const json& j, const std::string& path);

/// Parses an instance file. Factors are put in theta0 order; sigma_prime
/// defaults to -sigma^*; a given gram12 is normalized away. With
/// keep_order, factors that cannot be ordered (theta0 not generic) are kept
/// in the given order so that validate can report the clause.
template <class T>
StokesData<T> load_instance(const json& j, const Tolerance& tol = {}, bool keep_order = false);

/// Inverse of load_instance on normalized data.
template <class T>
json save_instance(const StokesData<T>& d);

/// Either a "kind" constructor ({"kind": "constant", "matrix": ...},
/// {"kind": "monomial", "exponents": [...]}, {"kind": "upper_example"},
/// {"kind": "product", "factors": [...]}), Fourier coefficients
/// ({"dim": d, "fourier": {"k": matrix}}) or samples ({"samples": [...]}).
MatrixLoop load_loop(const json& j);
json loop_to_json(const MatrixLoop& g);

/// {"error": kind, "message": ..., "field": ... (FieldError only)}
json error_to_json(const Error& e);

// Report payloads.
json to_json(const ValidationReport& r);
template <class T>
json to_json(const MonodromyReport<T>& r);
template <class T>
json to_json(const HermitianReport<T>& r);
template <class T>
json to_json(const InducedForm<T>& f);
template <class T>
json to_json(const KSpace<T>& k);
template <class T>
json to_json(const SplitResult<T>& s);
template <class T>
json to_json(const Certificate<T>& c);
template <class T>
json to_json(const CohomologyReport<T>& r);
json to_json(const IndexResult& r);

/// Factors in theta0 order, pairwise Stokes directions and the comparison
/// table at theta0.
template <class T>
json order_report(const StokesData<T>& d, const Tolerance& tol = {});

/// Unit circle with the factors' Stokes directions, theta0 and the factors
/// themselves as a standalone SVG document.
template <class T>
std::string order_svg(const StokesData<T>& d);

}  // namespace stokes
