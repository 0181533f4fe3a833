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

#include "stokes/io.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <openssl/evp.h>

namespace stokes {

ScalarMode parse_mode(std::string_view name) {
  if (name == "float") return ScalarMode::Float;
  if (name == "gaussian_rational") return ScalarMode::GaussianRational;
  if (name == "rational") return ScalarMode::Rational;
  throw Error(ErrorKind::BadParams, "unknown scalar mode '" + std::string(name) + "'");
}

const char* to_string(ScalarMode m) {
  switch (m) {
    case ScalarMode::Float: return "float";
    case ScalarMode::GaussianRational: return "gaussian_rational";
    case ScalarMode::Rational: return "rational";
  }
  return "unknown";
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw FieldError(ErrorKind::ParseError, path, what);
}

const json& require_field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) parse_fail(name, "missing field");
  return *it;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

}  // namespace

template <>
json real_to_json(const double& x) {
  return x;
}

template <>
json real_to_json(const Rational& x) {
  return format_rational(x);
}

template <>
double real_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>()).get_d();
    } catch (const std::invalid_argument& e) {
      parse_fail(path, e.what());
    }
  }
  parse_fail(path, "expected a number");
}

template <>
Rational real_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Rational(mpz_class(std::to_string(j.get<unsigned long long>())))
                                                           : Rational(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      parse_fail(path, e.what());
    }
  }
  if (j.is_number()) parse_fail(path, "exact modes take integers or \"p/q\" strings, not floating-point numbers");
  parse_fail(path, "expected an integer or a \"p/q\" string");
}

template <>
json scalar_to_json(const FloatComplex& x) {
  return json::array({x.real(), x.imag()});
}

template <>
json scalar_to_json(const GaussianRational& x) {
  return json::array({format_rational(x.re()), format_rational(x.im())});
}

template <>
json scalar_to_json(const Rational& x) {
  return format_rational(x);
}

template <class T>
T scalar_from_json(const json& j, const std::string& path) {
  using R = typename ScalarTraits<T>::Real;
  if (j.is_array()) {
    if (j.size() != 2) parse_fail(path, "complex values are [re, im]");
    R re = real_from_json<R>(j[0], path + "[0]");
    R im = real_from_json<R>(j[1], path + "[1]");
    if constexpr (!ScalarTraits<T>::has_imaginary_unit) {
      if (im != 0) parse_fail(path, "nonzero imaginary part in rational mode");
    }
    return ScalarTraits<T>::from_parts(re, im);
  }
  return ScalarTraits<T>::from_parts(real_from_json<R>(j, path), R(0));
}

template <class T>
json matrix_to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
Matrix<T> matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected a nested array");
  std::size_t rows = j.size();
  std::size_t cols = rows ? (j[0].is_array() ? j[0].size() : 0) : 0;
  Matrix<T> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array()) parse_fail(at(path, r), "expected a row array");
    if (j[r].size() != cols) parse_fail(at(path, r), "row length differs from the first row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json<T>(j[r][c], at(at(path, r), c));
  }
  return m;
}

template <class R>
json point_to_json(const Point<R>& p) {
  return json::array({real_to_json(p.re()), real_to_json(p.im())});
}

template <class R>
Point<R> point_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) parse_fail(path, "points are [re, im]");
  return {real_from_json<R>(j[0], path + "[0]"), real_from_json<R>(j[1], path + "[1]")};
}

template <class R>
json direction_to_json(const Direction<R>& d) {
  return {{"u", real_to_json(d.u)}, {"v", real_to_json(d.v)}};
}

template <class R>
Direction<R> direction_from_json(const json& j, const std::string& path) {
  Direction<R> d;
  if (j.is_number()) {
    if constexpr (std::is_same_v<R, double>)
      d = direction_from_angle(j.get<double>());
    else
      d = rational_direction_from_angle(j.get<double>());
  } else if (j.is_object()) {
    if (!j.contains("u") || !j.contains("v")) parse_fail(path, "directions are a number or {\"u\", \"v\"}");
    d = {real_from_json<R>(j["u"], path + ".u"), real_from_json<R>(j["v"], path + ".v")};
  } else {
    parse_fail(path, "directions are a number or {\"u\", \"v\"}");
  }
  if (d.u == 0 && d.v == 0) parse_fail(path, "zero direction vector");
  return d;
}

template <class T>
StokesData<T> load_instance(const json& j, const Tolerance& tol, bool keep_order) {
  using R = typename ScalarTraits<T>::Real;
  if (!j.is_object()) parse_fail("$", "instance must be a JSON object");
  Direction<R> theta0 = j.contains("theta0") ? direction_from_json<R>(j["theta0"], "theta0") : Direction<R>{R(1), R(0)};

  const json& jf = require_field(j, "factors");
  if (!jf.is_array()) parse_fail("factors", "expected an array");
  std::vector<Point<R>> factors;
  for (std::size_t i = 0; i < jf.size(); ++i) factors.push_back(point_from_json<R>(jf[i], at("factors", i)));

  const json& jd = require_field(j, "dims");
  if (!jd.is_array()) parse_fail("dims", "expected an array");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < jd.size(); ++i) {
    if (!jd[i].is_number_integer() || jd[i].get<long long>() < 0)
      parse_fail(at("dims", i), "expected a nonnegative integer");
    dims.push_back(jd[i].get<std::size_t>());
  }
  if (dims.size() != factors.size()) parse_fail("dims", "length differs from factors");

  Matrix<T> sigma = matrix_from_json<T>(require_field(j, "sigma"), "sigma");
  Matrix<T> sigma_prime = j.contains("sigma_prime") ? matrix_from_json<T>(j["sigma_prime"], "sigma_prime")
                                                    : Matrix<T>(sigma.adjoint() * ScalarTraits<T>::from_int(-1));
  std::size_t total = 0;
  for (auto k : dims) total += k;
  if (sigma.rows() != total || sigma.cols() != total)
    parse_fail("sigma", "expected a " + std::to_string(total) + "x" + std::to_string(total) + " matrix");
  if (sigma_prime.rows() != total || sigma_prime.cols() != total)
    parse_fail("sigma_prime", "expected a " + std::to_string(total) + "x" + std::to_string(total) + " matrix");

  StokesData<T> d;
  try {
    d = make_stokes_data<T>(factors, theta0, dims, sigma, sigma_prime, tol);
  } catch (const Error& e) {
    bool unordered = e.kind() == ErrorKind::NotGeneric || e.kind() == ErrorKind::EqualFactors;
    if (!keep_order || !unordered) throw FieldError(e.kind(), "factors", e.what());
    d = {{factors, theta0, dims}, sigma, sigma_prime};
    return d;
  }

  if (j.contains("gram12")) {
    // The gram matrix is given in the file's factor order; permute it with
    // the same reordering by passing it through make_stokes_data.
    Matrix<T> g = matrix_from_json<T>(j["gram12"], "gram12");
    if (g.rows() != total || g.cols() != total)
      parse_fail("gram12", "expected a " + std::to_string(total) + "x" + std::to_string(total) + " matrix");
    Matrix<T> gs = make_stokes_data<T>(factors, theta0, dims, g, g, tol).sigma;
    try {
      d = normalize_pairing(d, gs, tol);
    } catch (const Error& e) {
      throw FieldError(e.kind(), "gram12", e.what());
    }
  }
  return d;
}

template <class T>
json save_instance(const StokesData<T>& d) {
  json f = json::array();
  for (const auto& c : d.type.factors) f.push_back(point_to_json(c));
  return {{"scalar_mode", to_string(mode_of<T>())},
          {"theta0", direction_to_json(d.type.theta0)},
          {"factors", f},
          {"dims", d.type.dims},
          {"sigma", matrix_to_json(d.sigma)},
          {"sigma_prime", matrix_to_json(d.sigma_prime)}};
}

MatrixLoop load_loop(const json& j) {
  if (!j.is_object()) parse_fail("$", "loop must be a JSON object");
  if (j.contains("kind")) {
    std::string kind = j["kind"].get<std::string>();
    if (kind == "constant") return make_constant(matrix_from_json<FloatComplex>(require_field(j, "matrix"), "matrix"));
    if (kind == "monomial") {
      const json& e = require_field(j, "exponents");
      if (!e.is_array() || e.empty()) parse_fail("exponents", "expected a nonempty integer array");
      std::vector<int> ks;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i].is_number_integer()) parse_fail(at("exponents", i), "expected an integer");
        ks.push_back(e[i].get<int>());
      }
      return make_monomial(ks);
    }
    if (kind == "upper_example") return make_upper_example();
    if (kind == "product") {
      const json& fs = require_field(j, "factors");
      if (!fs.is_array() || fs.empty()) parse_fail("factors", "expected a nonempty array of loops");
      std::vector<MatrixLoop> loops;
      for (const auto& f : fs) loops.push_back(load_loop(f));
      try {
        return make_product(loops);
      } catch (const Error& e) {
        throw FieldError(e.kind(), "factors", e.what());
      }
    }
    parse_fail("kind", "unknown loop kind '" + kind + "'");
  }
  if (j.contains("samples")) {
    const json& s = j["samples"];
    if (!s.is_array() || s.empty()) parse_fail("samples", "expected a nonempty array of matrices");
    std::vector<Matrix<FloatComplex>> mats;
    for (std::size_t i = 0; i < s.size(); ++i) mats.push_back(matrix_from_json<FloatComplex>(s[i], at("samples", i)));
    try {
      return MatrixLoop::from_samples(mats);
    } catch (const Error& e) {
      throw FieldError(e.kind(), "samples", e.what());
    }
  }
  const json& jd = require_field(j, "dim");
  if (!jd.is_number_integer() || jd.get<long long>() <= 0) parse_fail("dim", "expected a positive integer");
  std::size_t dim = jd.get<std::size_t>();
  const json& jf = require_field(j, "fourier");
  if (!jf.is_object()) parse_fail("fourier", "expected an object keyed by mode");
  std::map<int, Matrix<FloatComplex>> coef;
  for (const auto& [key, value] : jf.items()) {
    std::string path = "fourier." + key;
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      parse_fail(path, "mode keys are integers");
    }
    Matrix<FloatComplex> m = matrix_from_json<FloatComplex>(value, path);
    if (m.rows() != dim || m.cols() != dim) parse_fail(path, "expected a dim x dim matrix");
    coef.emplace(k, std::move(m));
  }
  return MatrixLoop(dim, std::move(coef));
}

json loop_to_json(const MatrixLoop& g) {
  json f = json::object();
  for (const auto& [k, m] : g.fourier()) f[std::to_string(k)] = matrix_to_json(m);
  return {{"dim", g.dim()}, {"fourier", f}};
}

json error_to_json(const Error& e) {
  json out = {{"error", to_string(e.kind())}, {"message", e.what()}};
  if (auto* fe = dynamic_cast<const FieldError*>(&e)) out["field"] = fe->field();
  return out;
}

json to_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back({{"clause", x.clause}, {"block_row", x.block_row}, {"block_col", x.block_col}, {"detail", x.detail}});
  return {{"valid", r.valid()}, {"violations", v}};
}

template <class T>
json to_json(const MonodromyReport<T>& r) {
  json g = json::array();
  for (const auto& m : r.graded) g.push_back(matrix_to_json(m));
  return {{"T1", matrix_to_json(r.T1)}, {"graded", g}, {"eigenvalue_one_dim", r.eigenvalue_one_dim}};
}

template <class T>
json to_json(const HermitianReport<T>& r) {
  return {{"class", to_string(r.cls)},         {"rank", r.rank},
          {"positive", r.positive},            {"negative", r.negative},
          {"min_value", r.min_value},          {"kernel", matrix_to_json(r.kernel)}};
}

template <class T>
json to_json(const InducedForm<T>& f) {
  return {{"dim_F", f.f_basis.cols()},
          {"can1", matrix_to_json(f.can1)},
          {"param_basis", matrix_to_json(f.param_basis)},
          {"f_basis", matrix_to_json(f.f_basis)},
          {"gram", matrix_to_json(f.gram)}};
}

template <class T>
json to_json(const KSpace<T>& k) {
  return {{"index", k.index},
          {"c", point_to_json(k.c)},
          {"dim", k.basis.cols()},
          {"basis", matrix_to_json(k.basis)},
          {"form", matrix_to_json(k.form)}};
}

template <class T>
json to_json(const SplitResult<T>& s) {
  json t = json::array();
  for (const auto& x : s.trivial_summands)
    t.push_back({{"index", x.index},
                 {"c", point_to_json(x.c)},
                 {"rank", x.rank},
                 {"sigma_block", matrix_to_json(x.sigma_block)}});
  return {{"trivial_summands", t},
          {"minimal_part", save_instance(s.minimal_part)},
          {"assembled", save_instance(s.assembled)},
          {"p1", matrix_to_json(s.p1)},
          {"p2", matrix_to_json(s.p2)}};
}

template <class T>
json to_json(const Certificate<T>& c) {
  json k = json::array();
  for (const auto& e : c.k_entries)
    k.push_back({{"index", e.index},
                 {"c", point_to_json(e.c)},
                 {"dim", e.dim},
                 {"form", matrix_to_json(e.form)},
                 {"verdict", e.verdict}});
  json out = {{"verdict", to_string(c.verdict)},
              {"failed_clause", c.failed_clause.empty() ? json(nullptr) : json(c.failed_clause)},
              {"reason", c.reason},
              {"skew", {{"is_skew", c.skew.is_skew}, {"residual", c.skew.residual}, {"compatible", c.skew.compatible}}},
              {"hermitian_part", to_json(c.hermitian)},
              {"k_spaces", k}};
  out["split"] = c.split ? to_json(*c.split) : json(nullptr);
  if (!c.split_error.empty()) out["split_error"] = c.split_error;
  out["minimal_gram"] = c.minimal_gram ? matrix_to_json(*c.minimal_gram) : json(nullptr);
  return out;
}

template <class T>
json to_json(const CohomologyReport<T>& r) {
  return {{"c", point_to_json(r.c)},
          {"h0_L", r.h0_L},
          {"h1_L", r.h1_L},
          {"h0_sub", r.h0_sub},
          {"h1_sub", r.h1_sub},
          {"h0_quot", r.h0_quot},
          {"h1_quot", r.h1_quot},
          {"can", matrix_to_json(r.can)},
          {"rank_can", r.rank_can},
          {"dim_F", r.dim_F},
          {"h1_X", r.h1_X},
          {"h2_X", r.h2_X},
          {"eigenvalue_one_dim", r.eigenvalue_one_dim},
          {"consistent", r.consistent}};
}

json to_json(const IndexResult& r) {
  return {{"indices", r.indices},
          {"det_winding", r.det_winding},
          {"pure", r.pure()},
          {"consistent", r.consistent},
          {"stabilized_at", r.stabilized_at},
          {"window", {r.window_lo, r.window_hi}},
          {"kernel_dims", r.kernel_dims},
          {"min_abs_det", r.min_abs_det},
          {"max_condition", r.max_condition},
          {"worst_zero_sigma", r.worst_zero_sigma},
          {"smallest_kept_sigma", r.smallest_kept_sigma}};
}

template <class T>
json order_report(const StokesData<T>& d, const Tolerance& tol) {
  const auto& f = d.type.factors;
  json factors = json::array();
  for (const auto& c : f) factors.push_back(point_to_json(c));
  json dirs = json::array();
  json table = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < f.size(); ++j) row.push_back(to_string(leq_theta(f[i], f[j], d.type.theta0, tol)));
    table.push_back(std::move(row));
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      auto [a, b] = stokes_directions(f[i], f[j]);
      dirs.push_back({{"pair", {i, j}}, {"angles", {a.angle(), b.angle()}}});
    }
  }
  return {{"theta0", direction_to_json(d.type.theta0)},
          {"theta0_angle", d.type.theta0.angle()},
          {"factors", factors},
          {"stokes_directions", dirs},
          {"comparison_at_theta0", table}};
}

template <class T>
std::string order_svg(const StokesData<T>& d) {
  constexpr double cx = 160, cy = 160, rad = 120;
  const auto& f = d.type.factors;
  std::ostringstream s;
  s << std::fixed << std::setprecision(2);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"320\" viewBox=\"0 0 640 320\">\n";
  s << "<rect width=\"640\" height=\"320\" fill=\"white\"/>\n";
  s << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << rad << "\" fill=\"none\" stroke=\"black\"/>\n";
  auto ray = [&](double a, const char* style) {
    s << "<line x1=\"" << cx << "\" y1=\"" << cy << "\" x2=\"" << cx + rad * std::cos(a) << "\" y2=\""
      << cy - rad * std::sin(a) << "\" " << style << "/>\n";
  };
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      auto [a, b] = stokes_directions(f[i], f[j]);
      ray(a.angle(), "stroke=\"gray\" stroke-dasharray=\"4 3\"");
      ray(b.angle(), "stroke=\"gray\" stroke-dasharray=\"4 3\"");
    }
  double t0 = d.type.theta0.angle();
  ray(t0, "stroke=\"red\" stroke-width=\"2\"");
  ray(t0 + std::numbers::pi, "stroke=\"red\" stroke-dasharray=\"8 4\"");
  s << "<text x=\"10\" y=\"20\" font-size=\"12\">theta0 = " << t0 << "</text>\n";

  // Factors in the right panel, scaled to fit.
  double span = 1.0;
  for (const auto& c : f) span = std::max({span, std::abs(to_double(c.re())), std::abs(to_double(c.im()))});
  const double px = 480, py = 160, scale = 120 / span;
  s << "<line x1=\"360\" y1=\"" << py << "\" x2=\"600\" y2=\"" << py << "\" stroke=\"lightgray\"/>\n";
  s << "<line x1=\"" << px << "\" y1=\"40\" x2=\"" << px << "\" y2=\"280\" stroke=\"lightgray\"/>\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    double x = px + scale * to_double(f[i].re()), y = py - scale * to_double(f[i].im());
    s << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"blue\"/>\n";
    s << "<text x=\"" << x + 5 << "\" y=\"" << y - 5 << "\" font-size=\"11\">" << i + 1 << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

#define STOKES_INSTANTIATE_IO_REAL(R)                                         \
  template json point_to_json(const Point<R>&);                              \
  template Point<R> point_from_json(const json&, const std::string&);        \
  template json direction_to_json(const Direction<R>&);                      \
  template Direction<R> direction_from_json(const json&, const std::string&);

STOKES_INSTANTIATE_IO_REAL(double)
STOKES_INSTANTIATE_IO_REAL(Rational)

#define STOKES_INSTANTIATE_IO(T)                                                        \
  template T scalar_from_json<T>(const json&, const std::string&);                      \
  template json matrix_to_json(const Matrix<T>&);                                       \
  template Matrix<T> matrix_from_json<T>(const json&, const std::string&);              \
  template StokesData<T> load_instance<T>(const json&, const Tolerance&, bool);         \
  template json save_instance(const StokesData<T>&);                                    \
  template json to_json(const MonodromyReport<T>&);                                     \
  template json to_json(const HermitianReport<T>&);                                     \
  template json to_json(const InducedForm<T>&);                                         \
  template json to_json(const KSpace<T>&);                                              \
  template json to_json(const SplitResult<T>&);                                         \
  template json to_json(const Certificate<T>&);                                         \
  template json to_json(const CohomologyReport<T>&);                                    \
  template json order_report(const StokesData<T>&, const Tolerance&);                   \
  template std::string order_svg(const StokesData<T>&);

STOKES_INSTANTIATE_IO(FloatComplex)
STOKES_INSTANTIATE_IO(GaussianRational)
STOKES_INSTANTIATE_IO(Rational)

}  // namespace stokes
