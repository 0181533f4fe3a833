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

#include "stokes/linalg.hpp"

#include <algorithm>
#include <utility>

#include "eigen_bridge.hpp"

namespace stokes {

namespace {

template <class T>
bool is_zero_at(const T& x, double threshold) {
  if constexpr (ScalarTraits<T>::exact) {
    return x == ScalarTraits<T>::zero();
  } else {
    return ScalarTraits<T>::magnitude(x) <= threshold;
  }
}

template <class T>
double zero_threshold(const Matrix<T>& m, const Tolerance& tol) {
  if constexpr (ScalarTraits<T>::exact) {
    return 0.0;
  } else {
    return tol.rel_eps * m.max_abs();
  }
}

template <class T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

struct SvdSplit {
  std::size_t rank = 0;
  Eigen::MatrixXcd v;  // right singular vectors, full
};

SvdSplit svd_split(const Matrix<FloatComplex>& m, const Tolerance& tol, double scale = 0.0) {
  SvdSplit out;
  if (m.cols() == 0) return out;
  if (m.rows() == 0) {
    out.v = Eigen::MatrixXcd::Identity(m.cols(), m.cols());
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(m), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tol.rel_eps * std::max(smax, scale) && s(k) > 0.0) ++out.rank;
  out.v = svd.matrixV();
  return out;
}

}  // namespace

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PD: return "PD";
    case Definiteness::PSD: return "PSD";
    case Definiteness::Indefinite: return "INDEFINITE";
    case Definiteness::NSD: return "NSD";
    case Definiteness::ND: return "ND";
  }
  return "?";
}

template <class T>
Echelon<T> row_echelon(const Matrix<T>& m, const Tolerance& tol) {
  using Traits = ScalarTraits<T>;
  Echelon<T> out{m, {}};
  Matrix<T>& a = out.reduced;
  const double threshold = zero_threshold(m, tol);
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = a.rows();
    if constexpr (Traits::exact) {
      for (std::size_t r = row; r < a.rows(); ++r)
        if (!(a(r, col) == Traits::zero())) {
          p = r;
          break;
        }
    } else {
      double best = threshold;
      for (std::size_t r = row; r < a.rows(); ++r) {
        double mag = Traits::magnitude(a(r, col));
        if (mag > best) {
          best = mag;
          p = r;
        }
      }
    }
    if (p == a.rows()) continue;
    swap_rows(a, row, p);
    const T inv = Traits::one() / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || is_zero_at(a(r, col), 0.0)) continue;
      const T f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <class T>
Matrix<T> kernel_basis(const Matrix<T>& m, const Tolerance& tol) {
  return kernel_basis_scaled(m, 0.0, tol);
}

template <class T>
Matrix<T> kernel_basis_scaled(const Matrix<T>& m, double scale, const Tolerance& tol) {
  using Traits = ScalarTraits<T>;
  if constexpr (!Traits::exact) {
    SvdSplit s = svd_split(m, tol, scale);
    const std::size_t n = m.cols();
    Matrix<T> out(n, n - s.rank);
    for (std::size_t k = s.rank; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r) out(r, k - s.rank) = s.v(r, k);
    return out;
  } else {
    Echelon<T> e = row_echelon(m, tol);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    Matrix<T> out(n, n - e.pivots.size());
    std::size_t k = 0;
    for (std::size_t free = 0; free < n; ++free) {
      if (is_pivot[free]) continue;
      out(free, k) = Traits::one();
      for (std::size_t i = 0; i < e.pivots.size(); ++i) out(e.pivots[i], k) = -e.reduced(i, free);
      ++k;
    }
    return out;
  }
}

template <class T>
std::size_t rank(const Matrix<T>& m, const Tolerance& tol) {
  return rank_scaled(m, 0.0, tol);
}

template <class T>
std::size_t rank_scaled(const Matrix<T>& m, double scale, const Tolerance& tol) {
  if constexpr (!ScalarTraits<T>::exact) {
    return svd_split(m, tol, scale).rank;
  } else {
    return row_echelon(m, tol).pivots.size();
  }
}

template <class T>
std::vector<std::size_t> pivot_columns(const Matrix<T>& m, const Tolerance& tol) {
  return row_echelon(m, tol).pivots;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m, const Tolerance& tol) {
  if (!m.square()) throw Error(ErrorKind::Singular, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Echelon<T> e = row_echelon(hstack(m, Matrix<T>::identity(n)), tol);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
    throw Error(ErrorKind::Singular, "matrix is not invertible");
  return e.reduced.block(0, n, n, n);
}

template <class T>
Matrix<T> solve(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  const std::size_t k = a.cols();
  if (k == 0) {
    if (!approx_equal(b, Matrix<T>(b.rows(), b.cols()), tol))
      throw Error(ErrorKind::Singular, "inconsistent system");
    return Matrix<T>(0, b.cols());
  }
  Matrix<T> aug = hstack(a, b);
  if constexpr (!ScalarTraits<T>::exact) {
    // Scale the threshold on A alone so large right-hand sides do not hide
    // rank deficiency.
    Tolerance t = tol;
    double am = a.max_abs(), all = aug.max_abs();
    if (all > 0.0) t.rel_eps = tol.rel_eps * am / all;
    Echelon<T> e = row_echelon(aug, t);
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      if (e.pivots[i] != i) throw Error(ErrorKind::Singular, "system is singular or inconsistent");
    if (e.pivots.size() != k) throw Error(ErrorKind::Singular, "rank deficient system");
    Matrix<T> x = e.reduced.block(0, k, k, b.cols());
    if (!approx_equal(a * x, b, Tolerance{std::max(tol.rel_eps, 1e-8)}))
      throw Error(ErrorKind::Singular, "inconsistent system");
    return x;
  } else {
    Echelon<T> e = row_echelon(aug, tol);
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      if (e.pivots[i] != i) throw Error(ErrorKind::Singular, "system is singular or inconsistent");
    if (e.pivots.size() != k) throw Error(ErrorKind::Singular, "rank deficient system");
    return e.reduced.block(0, k, k, b.cols());
  }
}

template <class T>
bool same_span(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  const std::size_t ra = a.cols() ? rank(a, tol) : 0;
  const std::size_t rb = b.cols() ? rank(b, tol) : 0;
  if (ra != rb) return false;
  if (ra == 0) return true;
  return rank(hstack(a, b), tol) == ra;
}

template <class T>
bool approx_equal(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (ScalarTraits<T>::exact) {
    return a == b;
  } else {
    const double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() <= tol.rel_eps * scale;
  }
}

template <class T>
T determinant(const Matrix<T>& m) {
  using Traits = ScalarTraits<T>;
  if (!m.square()) throw std::invalid_argument("determinant: non-square matrix");
  Matrix<T> a = m;
  T det = Traits::one();
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = n;
    double best = 0.0;
    for (std::size_t r = col; r < n; ++r) {
      if constexpr (Traits::exact) {
        if (!(a(r, col) == Traits::zero())) {
          p = r;
          break;
        }
      } else {
        double mag = Traits::magnitude(a(r, col));
        if (mag > best) {
          best = mag;
          p = r;
        }
      }
    }
    if (p == n) return Traits::zero();
    if (p != col) {
      swap_rows(a, col, p);
      det = -det;
    }
    det *= a(col, col);
    const T inv = Traits::one() / a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = a(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

template <class T>
bool is_hermitian(const Matrix<T>& h, const Tolerance& tol) {
  if (!h.square()) return false;
  if constexpr (ScalarTraits<T>::exact) {
    return h == h.adjoint();
  } else {
    return (h - h.adjoint()).norm() <= tol.rel_eps * h.norm();
  }
}

template <class T>
HermitianReport<T> hermitian_classify(const Matrix<T>& h, const Tolerance& tol) {
  using Traits = ScalarTraits<T>;
  if (!h.square()) throw Error(ErrorKind::NotHermitian, "matrix is not square");
  if (!is_hermitian(h, tol)) throw Error(ErrorKind::NotHermitian, "H differs from its adjoint");
  const std::size_t n = h.rows();
  HermitianReport<T> rep;
  bool indefinite = false;

  if constexpr (!Traits::exact) {
    if (n == 0) {
      rep.kernel = Matrix<T>(0, 0);
      return rep;
    }
    // Symmetrise before the solver so that round-off in H - H* cannot leak in.
    Eigen::MatrixXcd e = detail::to_eigen(h);
    Eigen::MatrixXcd sym = 0.5 * (e + e.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    const auto& ev = solver.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    const double zero = tol.rel_eps * scale;
    std::vector<Eigen::Index> null_idx;
    rep.min_value = ev.minCoeff();
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (ev(k) > zero) {
        ++rep.positive;
      } else if (ev(k) < -zero) {
        ++rep.negative;
      } else {
        null_idx.push_back(k);
      }
    }
    rep.kernel = Matrix<T>(n, null_idx.size());
    for (std::size_t j = 0; j < null_idx.size(); ++j)
      for (std::size_t r = 0; r < n; ++r) rep.kernel(r, j) = solver.eigenvectors()(r, null_idx[j]);
    rep.rank = rep.positive + rep.negative;
  } else {
    Matrix<T> a = h;
    std::vector<bool> active(n, true);
    bool first_pivot = true;
    for (;;) {
      std::size_t p = n;
      for (std::size_t i = 0; i < n; ++i)
        if (active[i] && !(a(i, i) == Traits::zero())) {
          p = i;
          break;
        }
      if (p == n) {
        for (std::size_t i = 0; i < n && !indefinite; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (active[i] && active[j] && i != j && !(a(i, j) == Traits::zero())) {
              indefinite = true;
              break;
            }
        break;
      }
      // Diagonal entries of a Hermitian residual are real.
      const auto d = Traits::real_part(a(p, p));
      const double dd = to_double(d);
      if (first_pivot || dd < rep.min_value) rep.min_value = dd;
      first_pivot = false;
      if (d > 0) {
        ++rep.positive;
      } else {
        ++rep.negative;
      }
      active[p] = false;
      const T inv = Traits::one() / a(p, p);
      for (std::size_t i = 0; i < n; ++i) {
        if (!active[i] || a(i, p) == Traits::zero()) continue;
        const T f = a(i, p) * inv;
        for (std::size_t j = 0; j < n; ++j)
          if (active[j]) a(i, j) -= f * a(p, j);
      }
    }
    rep.kernel = kernel_basis(h, tol);
    rep.rank = n - rep.kernel.cols();
    if (indefinite) {
      rep.cls = Definiteness::Indefinite;
      return rep;
    }
  }

  if (rep.positive > 0 && rep.negative > 0) {
    rep.cls = Definiteness::Indefinite;
  } else if (rep.negative == 0) {
    rep.cls = rep.rank == n ? Definiteness::PD : Definiteness::PSD;
  } else {
    rep.cls = rep.rank == n ? Definiteness::ND : Definiteness::NSD;
  }
  return rep;
}

#define STOKES_INSTANTIATE_LINALG(T)                                                      \
  template Echelon<T> row_echelon(const Matrix<T>&, const Tolerance&);                    \
  template Matrix<T> kernel_basis(const Matrix<T>&, const Tolerance&);                    \
  template std::size_t rank(const Matrix<T>&, const Tolerance&);                          \
  template std::size_t rank_scaled(const Matrix<T>&, double, const Tolerance&);           \
  template Matrix<T> kernel_basis_scaled(const Matrix<T>&, double, const Tolerance&);     \
  template std::vector<std::size_t> pivot_columns(const Matrix<T>&, const Tolerance&);    \
  template Matrix<T> inverse(const Matrix<T>&, const Tolerance&);                         \
  template Matrix<T> solve(const Matrix<T>&, const Matrix<T>&, const Tolerance&);         \
  template bool same_span(const Matrix<T>&, const Matrix<T>&, const Tolerance&);          \
  template bool approx_equal(const Matrix<T>&, const Matrix<T>&, const Tolerance&);       \
  template T determinant(const Matrix<T>&);                                               \
  template bool is_hermitian(const Matrix<T>&, const Tolerance&);                         \
  template HermitianReport<T> hermitian_classify(const Matrix<T>&, const Tolerance&);

STOKES_INSTANTIATE_LINALG(FloatComplex)
STOKES_INSTANTIATE_LINALG(GaussianRational)
STOKES_INSTANTIATE_LINALG(Rational)

#undef STOKES_INSTANTIATE_LINALG

}  // namespace stokes
