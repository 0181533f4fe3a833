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

#include "stokes/stokes_data.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace stokes {

namespace {

template <class T>
bool negligible(const Matrix<T>& block, double scale, const Tolerance& tol) {
  if constexpr (ScalarTraits<T>::exact) {
    return block.is_zero();
  } else {
    return block.max_abs() <= tol.rel_eps * std::max(1.0, scale);
  }
}

// Reorders the blocks of a square block matrix: block (a, b) of the result is
// block (order[a], order[b]) of m.
template <class T>
Matrix<T> permute_blocks(const Matrix<T>& m, const std::vector<std::size_t>& dims,
                         const std::vector<std::size_t>& order) {
  std::vector<std::size_t> offsets(dims.size(), 0);
  for (std::size_t i = 1; i < dims.size(); ++i) offsets[i] = offsets[i - 1] + dims[i - 1];
  std::vector<std::size_t> coords;
  for (std::size_t k : order)
    for (std::size_t a = 0; a < dims[k]; ++a) coords.push_back(offsets[k] + a);
  Matrix<T> out(coords.size(), coords.size());
  for (std::size_t r = 0; r < coords.size(); ++r)
    for (std::size_t c = 0; c < coords.size(); ++c) out(r, c) = m(coords[r], coords[c]);
  return out;
}

template <class T>
void require_same_direction(const StokesData<T>& d, const StokesData<T>& e, const Tolerance& tol) {
  if (!same_direction(d.type.theta0, e.type.theta0, tol))
    throw Error(ErrorKind::TypeMismatch, "base directions differ");
}

// Block-diagonal embedding whose k-th diagonal block is bases[k].
template <class T>
Matrix<T> assemble_block_diagonal(const std::vector<Matrix<T>>& bases, const std::vector<std::size_t>& rows) {
  std::size_t nr = std::accumulate(rows.begin(), rows.end(), std::size_t{0});
  std::size_t nc = 0;
  for (const auto& b : bases) nc += b.cols();
  Matrix<T> out(nr, nc);
  std::size_t r0 = 0, c0 = 0;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    if (bases[k].cols() > 0) out.set_block(r0, c0, bases[k]);
    r0 += rows[k];
    c0 += bases[k].cols();
  }
  return out;
}

}  // namespace

template <class R>
std::size_t StokesType<R>::total() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{0});
}

template <class R>
std::size_t StokesType<R>::offset(std::size_t i) const {
  return std::accumulate(dims.begin(), dims.begin() + static_cast<long>(i), std::size_t{0});
}

template <class R>
std::size_t StokesType<R>::find(const Point<R>& c) const {
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i] == c) return i;
  return factors.size();
}

template <class R>
StokesType<R> zero_type(const Direction<R>& theta0) {
  return {{Point<R>{}}, theta0, {0}};
}

template <class T>
StokesData<T> zero_data(const Direction<typename ScalarTraits<T>::Real>& theta0) {
  return {zero_type(theta0), Matrix<T>(0, 0), Matrix<T>(0, 0)};
}

template <class T>
StokesData<T> make_stokes_data(std::vector<PointOf<T>> factors, const Direction<typename ScalarTraits<T>::Real>& theta0,
                               std::vector<std::size_t> dims, const Matrix<T>& sigma, const Matrix<T>& sigma_prime,
                               const Tolerance& tol) {
  if (factors.size() != dims.size())
    throw Error(ErrorKind::InvalidData, "factors and dims have different lengths");
  std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
  if (sigma.rows() != total || sigma.cols() != total)
    throw Error(ErrorKind::InvalidData, "sigma must be square of size sum(dims)");
  if (sigma_prime.rows() != total || sigma_prime.cols() != total)
    throw Error(ErrorKind::InvalidData, "sigma_prime must be square of size sum(dims)");
  if (total == 0) return zero_data<T>(theta0);

  auto ordered = order_factors(factors, theta0, tol);
  std::vector<std::size_t> order;
  for (const auto& c : ordered) {
    std::size_t k = static_cast<std::size_t>(std::find(factors.begin(), factors.end(), c) - factors.begin());
    if (dims[k] > 0) order.push_back(k);
  }
  StokesData<T> out;
  out.type.theta0 = theta0;
  for (std::size_t k : order) {
    out.type.factors.push_back(factors[k]);
    out.type.dims.push_back(dims[k]);
  }
  out.sigma = permute_blocks(sigma, dims, order);
  out.sigma_prime = permute_blocks(sigma_prime, dims, order);
  return out;
}

template <class T>
StokesData<T> trivial_data(const PointOf<T>& c, const Direction<typename ScalarTraits<T>::Real>& theta0) {
  return {{{c}, theta0, {1}}, Matrix<T>::identity(1), Matrix<T>::identity(1)};
}

bool ValidationReport::has_clause(const std::string& clause) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.clause == clause; });
}

template <class T>
ValidationReport validate(const StokesData<T>& d, const Tolerance& tol) {
  ValidationReport rep;
  const auto& ty = d.type;
  auto add = [&](const char* clause, long j, long i, std::string detail) {
    rep.violations.push_back({clause, j, i, std::move(detail)});
  };

  if (ty.factors.size() != ty.dims.size() || ty.factors.empty()) {
    add(kClauseShape, -1, -1, "factors and dims must be nonempty lists of equal length");
    return rep;
  }
  if (ty.is_zero()) {
    if (ty.factors.size() != 1 || !(ty.factors[0] == Point<typename StokesData<T>::Real>{}))
      add(kClauseDims, -1, -1, "the zero object has the single factor 0");
    if (!d.sigma.empty() || !d.sigma_prime.empty()) add(kClauseShape, -1, -1, "zero object with nonempty matrices");
    return rep;
  }
  for (std::size_t i = 0; i < ty.dims.size(); ++i)
    if (ty.dims[i] == 0) add(kClauseDims, static_cast<long>(i), static_cast<long>(i), "zero-dimensional factor");
  try {
    require_generic(ty.factors, ty.theta0, tol);
  } catch (const Error& e) {
    add(kClauseGeneric, -1, -1, e.what());
    return rep;
  }
  for (std::size_t i = 0; i + 1 < ty.factors.size(); ++i)
    if (leq_theta(ty.factors[i], ty.factors[i + 1], ty.theta0, tol) != Comparison::LT)
      add(kClauseOrder, static_cast<long>(i), static_cast<long>(i + 1),
          format_point(ty.factors[i]) + " is not below " + format_point(ty.factors[i + 1]));

  std::size_t n = ty.total();
  if (d.sigma.rows() != n || d.sigma.cols() != n || d.sigma_prime.rows() != n || d.sigma_prime.cols() != n) {
    add(kClauseShape, -1, -1, "sigma and sigma_prime must be " + std::to_string(n) + "x" + std::to_string(n));
    return rep;
  }
  if (!rep.valid()) return rep;

  double scale_s = d.sigma.norm(), scale_sp = d.sigma_prime.norm();
  for (std::size_t j = 0; j < ty.size(); ++j)
    for (std::size_t i = 0; i < ty.size(); ++i) {
      Matrix<T> s = factor_block(d, d.sigma, j, i);
      Matrix<T> sp = factor_block(d, d.sigma_prime, j, i);
      long jj = static_cast<long>(j), ii = static_cast<long>(i);
      if (i > j && !negligible(s, scale_s, tol)) add(kClauseSigmaTriangular, jj, ii, "nonzero block of sigma");
      if (i < j && !negligible(sp, scale_sp, tol))
        add(kClauseSigmaPrimeTriangular, jj, ii, "nonzero block of sigma_prime");
      if (i == j) {
        if (rank(s, tol) < ty.dims[i]) add(kClauseSigmaDiagonal, jj, ii, "singular diagonal block of sigma");
        if (rank(sp, tol) < ty.dims[i])
          add(kClauseSigmaPrimeDiagonal, jj, ii, "singular diagonal block of sigma_prime");
      }
    }
  return rep;
}

template <class T>
void require_valid(const StokesData<T>& d, const Tolerance& tol) {
  auto rep = validate(d, tol);
  if (rep.valid()) return;
  std::ostringstream os;
  for (std::size_t k = 0; k < rep.violations.size(); ++k) {
    const auto& v = rep.violations[k];
    if (k) os << "; ";
    os << v.clause;
    if (v.block_row >= 0) os << " at block (" << v.block_row << ", " << v.block_col << ")";
  }
  throw Error(ErrorKind::InvalidData, os.str());
}

template <class T>
MonodromyReport<T> monodromy(const StokesData<T>& d, const Tolerance& tol) {
  require_valid(d, tol);
  MonodromyReport<T> rep;
  std::size_t n = d.type.total();
  rep.T1 = solve(d.sigma, d.sigma_prime, tol);
  if (d.type.is_zero()) return rep;
  for (std::size_t i = 0; i < d.type.size(); ++i)
    rep.graded.push_back(solve(factor_block(d, d.sigma, i, i), factor_block(d, d.sigma_prime, i, i), tol));
  rep.eigenvalue_one_dim =
      kernel_basis_scaled(Matrix<T>(rep.T1 - Matrix<T>::identity(n)), rep.T1.norm() + 1.0, tol).cols();
  return rep;
}

template <class T>
StokesData<T> iota(const StokesData<T>& d, const Tolerance& tol) {
  require_valid(d, tol);
  if (d.type.is_zero()) return zero_data<T>(d.type.theta0.opposite());
  StokesData<T> out;
  out.type.theta0 = d.type.theta0.opposite();
  for (const auto& c : d.type.factors) out.type.factors.push_back(-c);
  out.type.dims = d.type.dims;
  out.sigma = inverse(d.sigma, tol);
  out.sigma_prime = inverse(d.sigma_prime, tol);
  auto rep = validate(out, tol);
  if (!rep.valid())
    throw Error(ErrorKind::ConventionViolation, "pulled-back data violates '" + rep.violations.front().clause + "'");
  return out;
}

template <class T>
StokesData<T> dualize(const StokesData<T>& d, const Tolerance& tol) {
  require_valid(d, tol);
  if (d.type.is_zero()) return d;
  std::size_t n = d.type.size();
  std::vector<std::size_t> reversed(n);
  for (std::size_t k = 0; k < n; ++k) reversed[k] = n - 1 - k;
  StokesData<T> out;
  out.type.theta0 = d.type.theta0;
  for (std::size_t k : reversed) {
    out.type.factors.push_back(-d.type.factors[k]);
    out.type.dims.push_back(d.type.dims[k]);
  }
  out.sigma = permute_blocks(inverse(d.sigma, tol).transpose(), d.type.dims, reversed);
  out.sigma_prime = permute_blocks(inverse(d.sigma_prime, tol).transpose(), d.type.dims, reversed);
  auto rep = validate(out, tol);
  if (!rep.valid())
    throw Error(ErrorKind::ConventionViolation, "dual data violates '" + rep.violations.front().clause + "'");
  return out;
}

template <class T>
std::vector<Morphism<T>> hom_space(const StokesData<T>& d, const StokesData<T>& e, const Tolerance& tol) {
  require_valid(d, tol);
  require_valid(e, tol);
  require_same_direction(d, e, tol);
  auto merged = d.type.factors;
  for (const auto& c : e.type.factors)
    if (d.type.find(c) == d.type.size()) merged.push_back(c);
  if (!is_generic(merged, d.type.theta0, tol))
    throw Error(ErrorKind::TypeMismatch, "the union of the factor sets is not generic for theta0");

  std::size_t nd = d.type.total(), ne = e.type.total();
  // Unknowns: entries of the diagonal blocks of lambda1 and lambda2.
  struct Var {
    int which;  // 1 or 2
    std::size_t row, col;
  };
  std::vector<Var> vars;
  for (std::size_t i = 0; i < d.type.size(); ++i) {
    std::size_t j = e.type.find(d.type.factors[i]);
    if (j == e.type.size() || d.type.dims[i] == 0 || e.type.dims[j] == 0) continue;
    for (int which : {1, 2})
      for (std::size_t r = 0; r < e.type.dims[j]; ++r)
        for (std::size_t c = 0; c < d.type.dims[i]; ++c)
          vars.push_back({which, e.type.offset(j) + r, d.type.offset(i) + c});
  }
  if (vars.empty()) return {};

  // Rows: entries (r, s) of lambda2 sigma_D - sigma_E lambda1, then the same
  // for the primed matrices.
  Matrix<T> a(2 * ne * nd, vars.size());
  auto eq = [&](int block, std::size_t r, std::size_t s) { return block * ne * nd + r * nd + s; };
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const Var& x = vars[v];
    if (x.which == 2) {
      for (std::size_t s = 0; s < nd; ++s) {
        a(eq(0, x.row, s), v) += d.sigma(x.col, s);
        a(eq(1, x.row, s), v) += d.sigma_prime(x.col, s);
      }
    } else {
      for (std::size_t r = 0; r < ne; ++r) {
        a(eq(0, r, x.col), v) -= e.sigma(r, x.row);
        a(eq(1, r, x.col), v) -= e.sigma_prime(r, x.row);
      }
    }
  }
  Matrix<T> ker = kernel_basis(a, tol);
  std::vector<Morphism<T>> out;
  for (std::size_t k = 0; k < ker.cols(); ++k) {
    Morphism<T> m{Matrix<T>(ne, nd), Matrix<T>(ne, nd)};
    for (std::size_t v = 0; v < vars.size(); ++v)
      (vars[v].which == 1 ? m.lambda1 : m.lambda2)(vars[v].row, vars[v].col) = ker(v, k);
    out.push_back(std::move(m));
  }
  return out;
}

template <class T>
bool is_morphism(const StokesData<T>& d, const StokesData<T>& e, const Morphism<T>& m, const Tolerance& tol) {
  std::size_t nd = d.type.total(), ne = e.type.total();
  if (m.lambda1.rows() != ne || m.lambda1.cols() != nd || m.lambda2.rows() != ne || m.lambda2.cols() != nd)
    return false;
  for (std::size_t j = 0; j < e.type.size(); ++j)
    for (std::size_t i = 0; i < d.type.size(); ++i) {
      if (e.type.factors[j] == d.type.factors[i]) continue;
      for (const auto* lam : {&m.lambda1, &m.lambda2}) {
        Matrix<T> b = lam->block(e.type.offset(j), d.type.offset(i), e.type.dims[j], d.type.dims[i]);
        if (!negligible(b, lam->norm(), tol)) return false;
      }
    }
  return approx_equal(Matrix<T>(m.lambda2 * d.sigma), Matrix<T>(e.sigma * m.lambda1), tol) &&
         approx_equal(Matrix<T>(m.lambda2 * d.sigma_prime), Matrix<T>(e.sigma_prime * m.lambda1), tol);
}

template <class T>
StokesData<T> kernel_object(const StokesData<T>& d, const StokesData<T>& e, const Morphism<T>& m,
                            const Tolerance& tol) {
  if (!is_morphism(d, e, m, tol)) throw Error(ErrorKind::InvalidData, "not a morphism");
  std::size_t ne = e.type.total();
  std::vector<Matrix<T>> k1, k2;
  std::vector<std::size_t> kdims;
  for (std::size_t i = 0; i < d.type.size(); ++i) {
    std::size_t off = d.type.offset(i), di = d.type.dims[i];
    k1.push_back(kernel_basis(m.lambda1.block(0, off, ne, di), tol));
    k2.push_back(kernel_basis(m.lambda2.block(0, off, ne, di), tol));
    if (k1.back().cols() != k2.back().cols())
      throw Error(ErrorKind::InvalidData, "kernel dimensions of lambda1 and lambda2 differ at a factor");
    kdims.push_back(k1.back().cols());
  }
  Matrix<T> b1 = assemble_block_diagonal(k1, d.type.dims);
  Matrix<T> b2 = assemble_block_diagonal(k2, d.type.dims);
  Matrix<T> s = solve(b2, Matrix<T>(d.sigma * b1), tol);
  Matrix<T> sp = solve(b2, Matrix<T>(d.sigma_prime * b1), tol);
  return make_stokes_data(d.type.factors, d.type.theta0, kdims, s, sp, tol);
}

template <class T>
StokesData<T> cokernel_object(const StokesData<T>& d, const StokesData<T>& e, const Morphism<T>& m,
                              const Tolerance& tol) {
  if (!is_morphism(d, e, m, tol)) throw Error(ErrorKind::InvalidData, "not a morphism");
  std::size_t nd = d.type.total();
  // Rows y with y lambda = 0 coordinatize the quotient of each factor.
  std::vector<Matrix<T>> y1, y2;
  std::vector<std::size_t> qdims;
  for (std::size_t j = 0; j < e.type.size(); ++j) {
    std::size_t off = e.type.offset(j), dj = e.type.dims[j];
    y1.push_back(kernel_basis(m.lambda1.block(off, 0, dj, nd).transpose(), tol));
    y2.push_back(kernel_basis(m.lambda2.block(off, 0, dj, nd).transpose(), tol));
    if (y1.back().cols() != y2.back().cols())
      throw Error(ErrorKind::InvalidData, "cokernel dimensions of lambda1 and lambda2 differ at a factor");
    qdims.push_back(y1.back().cols());
  }
  Matrix<T> q1 = assemble_block_diagonal(y1, e.type.dims).transpose();
  Matrix<T> q2 = assemble_block_diagonal(y2, e.type.dims).transpose();
  // Right inverse of q1 supported on a set of pivot columns.
  auto piv = pivot_columns(q1, tol);
  Matrix<T> sel(q1.cols(), piv.size());
  Matrix<T> q1p(q1.rows(), piv.size());
  for (std::size_t k = 0; k < piv.size(); ++k) {
    sel(piv[k], k) = ScalarTraits<T>::one();
    for (std::size_t r = 0; r < q1.rows(); ++r) q1p(r, k) = q1(r, piv[k]);
  }
  Matrix<T> right_inv = sel * inverse(q1p, tol);
  Matrix<T> s = q2 * e.sigma * right_inv;
  Matrix<T> sp = q2 * e.sigma_prime * right_inv;
  return make_stokes_data(e.type.factors, e.type.theta0, qdims, s, sp, tol);
}

template <class T>
DirectSum<T> direct_sum_with_embeddings(const StokesData<T>& d, const StokesData<T>& e, const Tolerance& tol) {
  require_same_direction(d, e, tol);
  std::size_t nd = d.type.total(), ne = e.type.total();
  if (d.type.is_zero()) return {e, Matrix<T>(ne, 0), Matrix<T>::identity(ne)};
  if (e.type.is_zero()) return {d, Matrix<T>::identity(nd), Matrix<T>(nd, 0)};

  auto merged = d.type.factors;
  for (const auto& c : e.type.factors)
    if (d.type.find(c) == d.type.size()) merged.push_back(c);
  merged = order_factors(merged, d.type.theta0, tol);

  DirectSum<T> out;
  auto& ty = out.sum.type;
  ty.theta0 = d.type.theta0;
  ty.factors = merged;
  for (const auto& c : merged) {
    std::size_t i = d.type.find(c), j = e.type.find(c);
    ty.dims.push_back((i < d.type.size() ? d.type.dims[i] : 0) + (j < e.type.size() ? e.type.dims[j] : 0));
  }
  std::size_t n = ty.total();
  out.embed_left = Matrix<T>(n, nd);
  out.embed_right = Matrix<T>(n, ne);
  for (std::size_t k = 0; k < merged.size(); ++k) {
    std::size_t i = d.type.find(merged[k]), j = e.type.find(merged[k]);
    std::size_t base = ty.offset(k), left = 0;
    if (i < d.type.size()) {
      left = d.type.dims[i];
      for (std::size_t a = 0; a < left; ++a) out.embed_left(base + a, d.type.offset(i) + a) = ScalarTraits<T>::one();
    }
    if (j < e.type.size())
      for (std::size_t b = 0; b < e.type.dims[j]; ++b)
        out.embed_right(base + left + b, e.type.offset(j) + b) = ScalarTraits<T>::one();
  }
  Matrix<T> lt = out.embed_left.transpose(), rt = out.embed_right.transpose();
  out.sum.sigma = out.embed_left * d.sigma * lt + out.embed_right * e.sigma * rt;
  out.sum.sigma_prime = out.embed_left * d.sigma_prime * lt + out.embed_right * e.sigma_prime * rt;
  return out;
}

template <class T>
StokesData<T> direct_sum(const StokesData<T>& d, const StokesData<T>& e, const Tolerance& tol) {
  return direct_sum_with_embeddings(d, e, tol).sum;
}

template <class T>
StokesData<T> change_basis(const StokesData<T>& d, const Matrix<T>& p1, const Matrix<T>& p2, const Tolerance& tol) {
  Matrix<T> p2inv = inverse(p2, tol);
  return {d.type, p2inv * d.sigma * p1, p2inv * d.sigma_prime * p1};
}

template <class T>
Matrix<T> factor_block(const StokesData<T>& d, const Matrix<T>& m, std::size_t j, std::size_t i) {
  return m.block(d.type.offset(j), d.type.offset(i), d.type.dims[j], d.type.dims[i]);
}

template struct StokesType<double>;
template struct StokesType<Rational>;
template StokesType<double> zero_type(const Direction<double>&);
template StokesType<Rational> zero_type(const Direction<Rational>&);

#define STOKES_INSTANTIATE_DATA(T)                                                                                  \
  template StokesData<T> zero_data<T>(const Direction<ScalarTraits<T>::Real>&);                                    \
  template StokesData<T> make_stokes_data(std::vector<PointOf<T>>, const Direction<ScalarTraits<T>::Real>&,         \
                                          std::vector<std::size_t>, const Matrix<T>&, const Matrix<T>&,             \
                                          const Tolerance&);                                                        \
  template StokesData<T> trivial_data<T>(const PointOf<T>&, const Direction<ScalarTraits<T>::Real>&);              \
  template ValidationReport validate(const StokesData<T>&, const Tolerance&);                                       \
  template void require_valid(const StokesData<T>&, const Tolerance&);                                              \
  template MonodromyReport<T> monodromy(const StokesData<T>&, const Tolerance&);                                    \
  template StokesData<T> iota(const StokesData<T>&, const Tolerance&);                                              \
  template StokesData<T> dualize(const StokesData<T>&, const Tolerance&);                                           \
  template std::vector<Morphism<T>> hom_space(const StokesData<T>&, const StokesData<T>&, const Tolerance&);        \
  template bool is_morphism(const StokesData<T>&, const StokesData<T>&, const Morphism<T>&, const Tolerance&);      \
  template StokesData<T> kernel_object(const StokesData<T>&, const StokesData<T>&, const Morphism<T>&,              \
                                       const Tolerance&);                                                           \
  template StokesData<T> cokernel_object(const StokesData<T>&, const StokesData<T>&, const Morphism<T>&,            \
                                         const Tolerance&);                                                         \
  template DirectSum<T> direct_sum_with_embeddings(const StokesData<T>&, const StokesData<T>&, const Tolerance&);   \
  template StokesData<T> direct_sum(const StokesData<T>&, const StokesData<T>&, const Tolerance&);                  \
  template StokesData<T> change_basis(const StokesData<T>&, const Matrix<T>&, const Matrix<T>&, const Tolerance&);  \
  template Matrix<T> factor_block(const StokesData<T>&, const Matrix<T>&, std::size_t, std::size_t);

STOKES_INSTANTIATE_DATA(FloatComplex)
STOKES_INSTANTIATE_DATA(GaussianRational)
STOKES_INSTANTIATE_DATA(Rational)

#undef STOKES_INSTANTIATE_DATA

}  // namespace stokes
