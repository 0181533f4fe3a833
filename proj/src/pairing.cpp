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

#include "stokes/pairing.hpp"

#include <algorithm>

namespace stokes {

namespace {

template <class T>
bool negligible(const Matrix<T>& m, double scale, const Tolerance& tol) {
  if constexpr (ScalarTraits<T>::exact) {
    return m.is_zero();
  } else {
    return m.max_abs() <= tol.rel_eps * std::max(1.0, scale);
  }
}

// Columns of the identity of size n at the given positions.
template <class T>
Matrix<T> coordinate_vectors(std::size_t n, const std::vector<std::size_t>& positions) {
  Matrix<T> out(n, positions.size());
  for (std::size_t k = 0; k < positions.size(); ++k) out(positions[k], k) = ScalarTraits<T>::one();
  return out;
}

template <class T>
Matrix<typename GaussianExtension<T>::type> times_i(const Matrix<T>& m) {
  using G = typename GaussianExtension<T>::type;
  Matrix<G> out(to_gaussian(m));
  out *= ScalarTraits<G>::imaginary_unit();
  return out;
}

}  // namespace

template <class T>
bool compatibility_holds(const StokesData<T>& d, const Matrix<T>& gram12, const Tolerance& tol) {
  Matrix<T> lhs = inverse(d.sigma, tol).transpose() * gram12 * d.sigma_prime.conj();
  Matrix<T> rhs = inverse(d.sigma_prime, tol).transpose() * gram12 * d.sigma.conj();
  return approx_equal(lhs, rhs, tol);
}

template <class T>
StokesData<T> normalize_pairing(const StokesData<T>& d, const Matrix<T>& gram12, const Tolerance& tol) {
  require_valid(d, tol);
  std::size_t n = d.type.total();
  if (gram12.rows() != n || gram12.cols() != n) throw Error(ErrorKind::InvalidData, "gram12 has the wrong shape");
  for (std::size_t j = 0; j < d.type.size(); ++j)
    for (std::size_t i = 0; i < d.type.size(); ++i) {
      Matrix<T> b = factor_block(d, gram12, j, i);
      if (i != j && !negligible(b, gram12.norm(), tol))
        throw Error(ErrorKind::InvalidData, "gram12 is not block-diagonal");
      if (i == j && rank(b, tol) < d.type.dims[i])
        throw Error(ErrorKind::InvalidData, "gram12 has a singular diagonal block");
    }
  if (!compatibility_holds(d, gram12, tol))
    throw Error(ErrorKind::InvalidData, "the pairing is not compatible with the Stokes data");
  Matrix<T> q = inverse(gram12, tol).transpose();
  return {d.type, d.sigma * q, d.sigma_prime * q};
}

template <class T>
SkewCheck check_iota_skew(const StokesData<T>& d, const Tolerance& tol) {
  require_valid(d, tol);
  SkewCheck out;
  Matrix<T> r = d.sigma_prime + d.sigma.adjoint();
  out.residual = r.norm();
  out.is_skew = negligible(r, d.sigma.norm(), tol);
  out.compatible = compatibility_holds(d, Matrix<T>::identity(d.type.total()), tol);
  return out;
}

template <class T>
Matrix<T> hermitian_part(const StokesData<T>& d) {
  return d.sigma + d.sigma.adjoint();
}

template <class T>
InducedForm<T> induced_form_on_F(const StokesData<T>& d, const Tolerance& tol) {
  require_valid(d, tol);
  InducedForm<T> out;
  std::size_t n = d.type.total();
  Matrix<T> diff = d.sigma - d.sigma_prime;
  out.can1 = solve(d.sigma, diff, tol);
  out.param_basis = coordinate_vectors<T>(n, pivot_columns(out.can1, tol));
  out.f_basis = out.can1 * out.param_basis;
  out.gram = out.param_basis.transpose() * diff.conj() * out.param_basis.conj();
  return out;
}

template <class T>
std::vector<KSpace<T>> k_spaces(const StokesData<T>& d, const Tolerance& tol) {
  require_valid(d, tol);
  std::vector<KSpace<T>> out;
  if (d.type.is_zero()) return out;
  std::size_t n = d.type.total();
  Matrix<T> diff = d.sigma - d.sigma_prime;
  double scale = d.sigma.norm() + d.sigma_prime.norm();
  for (std::size_t c = 0; c < d.type.size(); ++c) {
    std::size_t off = d.type.offset(c), dc = d.type.dims[c];
    // Unknown v in G_{c,1}: (sigma - sigma') v = 0 and sigma v vanishes
    // outside the block of c.
    Matrix<T> eqs = diff.block(0, off, n, dc);
    Matrix<T> s_cols = d.sigma.block(0, off, n, dc);
    Matrix<T> outside(n - dc, dc);
    for (std::size_t r = 0, k = 0; r < n; ++r) {
      if (r >= off && r < off + dc) continue;
      for (std::size_t col = 0; col < dc; ++col) outside(k, col) = s_cols(r, col);
      ++k;
    }
    Matrix<T> coeffs = kernel_basis_scaled(vstack(eqs, outside), scale, tol);
    KSpace<T> ks;
    ks.index = c;
    ks.c = d.type.factors[c];
    ks.basis = Matrix<T>(n, coeffs.cols());
    if (coeffs.cols() > 0) ks.basis.set_block(off, 0, coeffs);
    ks.form = ks.basis.transpose() * d.sigma.conj() * ks.basis.conj();
    out.push_back(std::move(ks));
  }
  return out;
}

template <class T>
SplitResult<T> split_minimal(const StokesData<T>& d, const Tolerance& tol) {
  auto ks = k_spaces(d, tol);
  SplitResult<T> out;
  if (d.type.is_zero()) {
    out.minimal_part = d;
    out.assembled = d;
    return out;
  }
  std::size_t n = d.type.total();
  out.p1 = Matrix<T>(n, n);
  out.p2 = Matrix<T>(n, n);
  std::vector<std::size_t> kdims;
  for (std::size_t c = 0; c < d.type.size(); ++c) {
    std::size_t off = d.type.offset(c), dc = d.type.dims[c];
    Matrix<T> kc = ks[c].basis.block(off, 0, dc, ks[c].basis.cols());
    std::size_t k = kc.cols();
    kdims.push_back(k);
    if (k == 0) {
      out.p1.set_block(off, off, Matrix<T>::identity(dc));
      out.p2.set_block(off, off, Matrix<T>::identity(dc));
      continue;
    }
    const Matrix<T>& h = ks[c].form;
    if (rank(h, tol) < k)
      throw Error(ErrorKind::DegenerateKForm, "h_K is degenerate at factor " + format_point(ks[c].c));
    Matrix<T> s = factor_block(d, d.sigma, c, c) * kc;  // S(K_c) inside G_{c,2}
    // Trivial part: K_c in L1 paired with S(K_c) Q in L2, conj(Q) = h^{-1}.
    Matrix<T> w = s * inverse(h, tol).conj();
    // Complements: M1 orthogonal to S(K_c), M2 orthogonal to K_c.
    Matrix<T> m1 = kernel_basis(s.conj().transpose(), tol);
    Matrix<T> m2 = kernel_basis(kc.adjoint(), tol);
    if (m1.cols() != dc - k || m2.cols() != dc - k)
      throw Error(ErrorKind::SplitFailure, "complement dimensions do not match at " + format_point(ks[c].c));
    if (dc > k) {
      Matrix<T> a = m1.transpose() * m2.conj();
      if (rank(a, tol) < dc - k)
        throw Error(ErrorKind::SplitFailure, "complements are not in duality at " + format_point(ks[c].c));
      m2 = m2 * inverse(a, tol).conj();
    }
    out.p1.set_block(off, off, hstack(kc, m1));
    out.p2.set_block(off, off, hstack(w, m2));
  }

  Matrix<T> p2inv = inverse(out.p2, tol);
  Matrix<T> s_new = p2inv * d.sigma * out.p1;
  Matrix<T> sp_new = p2inv * d.sigma_prime * out.p1;

  // Coordinates of the minimal remainder, and per-factor trivial coordinates.
  std::vector<std::size_t> min_coords;
  std::vector<bool> is_trivial(n, false);
  for (std::size_t c = 0; c < d.type.size(); ++c) {
    std::size_t off = d.type.offset(c);
    for (std::size_t a = 0; a < d.type.dims[c]; ++a) {
      if (a < kdims[c]) is_trivial[off + a] = true;
      else min_coords.push_back(off + a);
    }
  }
  double scale = std::max(d.sigma.norm(), d.sigma_prime.norm());
  auto decoupled = [&](const Matrix<T>& m) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t col = 0; col < n; ++col) {
        bool same_summand = false;
        if (is_trivial[r] && is_trivial[col]) {
          // The same trivial summand: both coordinates in one factor block.
          for (std::size_t c = 0; c < d.type.size(); ++c) {
            std::size_t off = d.type.offset(c);
            if (r >= off && r < off + kdims[c] && col >= off && col < off + kdims[c]) same_summand = true;
          }
        } else if (!is_trivial[r] && !is_trivial[col]) {
          same_summand = true;
        }
        if (!same_summand && !negligible(Matrix<T>{{m(r, col)}}, scale, tol)) return false;
      }
    return true;
  };
  if (!decoupled(s_new) || !decoupled(sp_new))
    throw Error(ErrorKind::SplitFailure, "the adapted bases do not split the data");

  for (std::size_t c = 0; c < d.type.size(); ++c) {
    if (kdims[c] == 0) continue;
    std::size_t off = d.type.offset(c), k = kdims[c];
    TrivialSummand<T> t;
    t.index = c;
    t.c = d.type.factors[c];
    t.rank = k;
    t.sigma_block = s_new.block(off, off, k, k);
    Matrix<T> sp_block = sp_new.block(off, off, k, k);
    if (!approx_equal(t.sigma_block, sp_block, tol))
      throw Error(ErrorKind::SplitFailure, "S and S' differ on K_c at " + format_point(t.c));
    t.data = make_stokes_data<T>({t.c}, d.type.theta0, {k}, t.sigma_block, sp_block, tol);
    out.trivial_summands.push_back(std::move(t));
  }

  std::vector<std::size_t> min_dims;
  for (std::size_t c = 0; c < d.type.size(); ++c) min_dims.push_back(d.type.dims[c] - kdims[c]);
  Matrix<T> s_min(min_coords.size(), min_coords.size()), sp_min(min_coords.size(), min_coords.size());
  for (std::size_t r = 0; r < min_coords.size(); ++r)
    for (std::size_t col = 0; col < min_coords.size(); ++col) {
      s_min(r, col) = s_new(min_coords[r], min_coords[col]);
      sp_min(r, col) = sp_new(min_coords[r], min_coords[col]);
    }
  out.minimal_part = make_stokes_data(d.type.factors, d.type.theta0, min_dims, s_min, sp_min, tol);

  for (const auto& rk : k_spaces(out.minimal_part, tol))
    if (rk.basis.cols() != 0)
      throw Error(ErrorKind::SplitFailure, "the remainder is not minimal at " + format_point(rk.c));

  StokesData<T> acc = zero_data<T>(d.type.theta0);
  for (const auto& t : out.trivial_summands) acc = direct_sum(acc, t.data, tol);
  out.assembled = direct_sum(acc, out.minimal_part, tol);
  // Trivial coordinates precede the remainder inside each factor block in
  // both the adapted basis and the direct sum, so the two coincide.
  if (!approx_equal(out.assembled.sigma, s_new, tol) || !approx_equal(out.assembled.sigma_prime, sp_new, tol))
    throw Error(ErrorKind::SplitFailure, "direct sum does not reproduce the adapted basis");
  return out;
}

template <class T>
StokesData<T> reassemble(const SplitResult<T>& s, const Tolerance& tol) {
  if (s.assembled.type.is_zero()) return s.assembled;
  Matrix<T> p1inv = inverse(s.p1, tol);
  return {s.assembled.type, s.p2 * s.assembled.sigma * p1inv, s.p2 * s.assembled.sigma_prime * p1inv};
}

const char* to_string(Verdict v) {
  return v == Verdict::CertifiedPurePolarized ? "CERTIFIED_PURE_POLARIZED" : "FAILED";
}

template <class T>
Certificate<T> certify(const StokesData<T>& d, const Tolerance& tol) {
  Certificate<T> cert;
  auto fail = [&](const char* clause, std::string reason) {
    if (cert.failed_clause.empty()) {
      cert.failed_clause = clause;
      cert.reason = std::move(reason);
    }
  };

  cert.skew = check_iota_skew(d, tol);
  if (!cert.skew.is_skew) fail(kClauseSkew, "sigma_prime differs from -sigma^*");

  cert.hermitian = hermitian_classify(hermitian_part(d), tol);
  if (cert.hermitian.cls != Definiteness::PD && cert.hermitian.cls != Definiteness::PSD)
    fail(kClausePsd, std::string("sigma + sigma^* is ") + to_string(cert.hermitian.cls));

  bool all_nondegenerate = true;
  for (auto& ks : k_spaces(d, tol)) {
    KEntry<T> e;
    e.index = ks.index;
    e.c = ks.c;
    e.dim = ks.basis.cols();
    e.form = ks.form;
    if (e.dim == 0) {
      e.verdict = "zero";
    } else {
      if (rank(ks.form, tol) < e.dim) all_nondegenerate = false;
      auto ih = times_i(ks.form);
      if (!is_hermitian(ih, tol)) {
        e.verdict = "not_hermitian";
      } else {
        e.verdict = hermitian_classify(ih, tol).cls == Definiteness::PD ? "definite" : "not_definite";
      }
      if (e.verdict != "definite")
        fail(kClauseKDefinite, "i h_K is not positive definite at factor " + format_point(e.c));
    }
    cert.k_entries.push_back(std::move(e));
  }

  if (all_nondegenerate) {
    try {
      cert.split = split_minimal(d, tol);
    } catch (const Error& e) {
      cert.split_error = e.what();
    }
  } else {
    cert.split_error = "some h_K is degenerate";
  }

  if (cert.failed_clause.empty()) {
    cert.verdict = Verdict::CertifiedPurePolarized;
    if (cert.split) cert.minimal_gram = induced_form_on_F(cert.split->minimal_part, tol).gram;
  }
  return cert;
}

#define STOKES_INSTANTIATE_PAIRING(T)                                                                  \
  template bool compatibility_holds(const StokesData<T>&, const Matrix<T>&, const Tolerance&);         \
  template StokesData<T> normalize_pairing(const StokesData<T>&, const Matrix<T>&, const Tolerance&);  \
  template SkewCheck check_iota_skew(const StokesData<T>&, const Tolerance&);                          \
  template Matrix<T> hermitian_part(const StokesData<T>&);                                             \
  template InducedForm<T> induced_form_on_F(const StokesData<T>&, const Tolerance&);                   \
  template std::vector<KSpace<T>> k_spaces(const StokesData<T>&, const Tolerance&);                    \
  template SplitResult<T> split_minimal(const StokesData<T>&, const Tolerance&);                       \
  template StokesData<T> reassemble(const SplitResult<T>&, const Tolerance&);                          \
  template Certificate<T> certify(const StokesData<T>&, const Tolerance&);

STOKES_INSTANTIATE_PAIRING(FloatComplex)
STOKES_INSTANTIATE_PAIRING(GaussianRational)
STOKES_INSTANTIATE_PAIRING(Rational)

#undef STOKES_INSTANTIATE_PAIRING

}  // namespace stokes
