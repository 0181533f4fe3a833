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

#include "stokes/cech.hpp"

#include "stokes/linalg.hpp"
#include "stokes/pairing.hpp"

namespace stokes {

namespace {

template <class T>
std::size_t rank_of(const Matrix<T>& m, const Tolerance& tol) {
  return m.empty() ? 0 : rank(m, tol);
}

template <class T>
Matrix<T> kernel_of(const Matrix<T>& m, const Tolerance& tol) {
  if (m.rows() == 0) return Matrix<T>::identity(m.cols());
  if (m.cols() == 0) return Matrix<T>(0, 0);
  return kernel_basis(m, tol);
}

template <class T>
Matrix<T> columns_at(std::size_t n, const std::vector<std::size_t>& coords) {
  Matrix<T> out(n, coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k) out(coords[k], k) = ScalarTraits<T>::one();
  return out;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& coords) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0, j = 0; k < n; ++k) {
    if (j < coords.size() && coords[j] == k) {
      ++j;
      continue;
    }
    out.push_back(k);
  }
  return out;
}

template <class T>
Matrix<T> two_by_two(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c, const Matrix<T>& d) {
  Matrix<T> out(a.rows() + c.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  out.set_block(a.rows(), 0, c);
  out.set_block(a.rows(), a.cols(), d);
  return out;
}

// Finite model of L, L_{<=c} and L/L_{<=c} on the two-interval cover.
template <class T>
struct CoverModel {
  std::size_t n = 0;
  Matrix<T> a1, a2, a1p, a2p;
  // Coordinates of the stalks of L_{<=c} at theta0 and theta0'.
  std::vector<std::size_t> f0, f0p;
  Matrix<T> sel_f0, sel_f0p;  // columns: embeddings of the stalks
  Matrix<T> sel_q0, sel_q0p;  // columns: complements (quotient stalks)
  // Sections of L_{<=c} over I1, I2 and complements representing the
  // sections of the quotient.
  Matrix<T> sub1, sub2, quo1, quo2;
  Matrix<T> delta_L, delta_sub, delta_quot;
};

template <class T>
std::vector<std::size_t> filtered_coords(const StokesData<T>& d, const Direction<typename ScalarTraits<T>::Real>& theta,
                                         const PointOf<T>& c, const Tolerance& tol) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.type.size(); ++i) {
    auto cmp = leq_theta(d.type.factors[i], c, theta, tol);
    if (cmp == Comparison::Incomparable) throw Error(ErrorKind::OnStokesDirection, "factor incomparable with c");
    if (cmp == Comparison::GT) continue;
    for (std::size_t a = 0; a < d.type.dims[i]; ++a) out.push_back(d.type.offset(i) + a);
  }
  return out;
}

template <class T>
Matrix<T> complement_columns(const Matrix<T>& span, std::size_t n, const Tolerance& tol) {
  auto piv = pivot_columns(hstack(span, Matrix<T>::identity(n)), tol);
  std::vector<std::size_t> extra;
  for (std::size_t p : piv)
    if (p >= span.cols()) extra.push_back(p - span.cols());
  return columns_at<T>(n, extra);
}

template <class T>
CoverModel<T> build_model(const StokesData<T>& d, const PointOf<T>& c, const Tolerance& tol) {
  require_admissible(d, c, tol);
  CoverModel<T> m;
  std::size_t n = m.n = d.type.total();
  m.a1 = Matrix<T>::identity(n);
  m.a2 = inverse(d.sigma, tol);
  m.a1p = d.sigma_prime;
  m.a2p = Matrix<T>::identity(n);

  m.f0 = filtered_coords(d, d.type.theta0, c, tol);
  m.f0p = filtered_coords(d, d.type.theta0.opposite(), c, tol);
  m.sel_f0 = columns_at<T>(n, m.f0);
  m.sel_f0p = columns_at<T>(n, m.f0p);
  m.sel_q0 = columns_at<T>(n, complement(n, m.f0));
  m.sel_q0p = columns_at<T>(n, complement(n, m.f0p));

  // A section over an arc lies in L_{<=c} iff its germs do at both overlap
  // components (the stalks inside the arcs are larger at no point than the
  // smaller of the two, for admissible c).
  auto sections = [&](const Matrix<T>& to0, const Matrix<T>& to0p) {
    return kernel_of(vstack(Matrix<T>(m.sel_q0.transpose() * to0), Matrix<T>(m.sel_q0p.transpose() * to0p)), tol);
  };
  m.sub1 = sections(m.a1, m.a1p);
  m.sub2 = sections(m.a2, m.a2p);
  if (m.sub1.rows() == 0) m.sub1 = Matrix<T>(n, 0);
  if (m.sub2.rows() == 0) m.sub2 = Matrix<T>(n, 0);
  m.quo1 = complement_columns(m.sub1, n, tol);
  m.quo2 = complement_columns(m.sub2, n, tol);

  m.delta_L = two_by_two(m.a1, Matrix<T>(-m.a2), m.a1p, Matrix<T>(-m.a2p));
  auto restricted = [&](const Matrix<T>& sel0, const Matrix<T>& sel0p, const Matrix<T>& s1, const Matrix<T>& s2) {
    Matrix<T> p0 = sel0.transpose(), p0p = sel0p.transpose();
    return two_by_two(Matrix<T>(p0 * m.a1 * s1), Matrix<T>(-(p0 * m.a2 * s2)), Matrix<T>(p0p * m.a1p * s1),
                      Matrix<T>(-(p0p * m.a2p * s2)));
  };
  m.delta_sub = restricted(m.sel_f0, m.sel_f0p, m.sub1, m.sub2);
  m.delta_quot = restricted(m.sel_q0, m.sel_q0p, m.quo1, m.quo2);
  return m;
}

// Global sections of the quotient (columns of Z, in quo1 + quo2 coordinates)
// and their germs at theta0' (columns of R).
template <class T>
struct QuotientSections {
  Matrix<T> z;
  Matrix<T> u1;  // I1 representatives, L1-coordinates
  Matrix<T> u2;  // I2 representatives, L2-coordinates
  Matrix<T> r;
};

template <class T>
QuotientSections<T> quotient_sections(const CoverModel<T>& m, const Tolerance& tol) {
  QuotientSections<T> q;
  q.z = kernel_of(m.delta_quot, tol);
  std::size_t q1 = m.quo1.cols(), q2 = m.quo2.cols();
  q.u1 = m.quo1 * q.z.block(0, 0, q1, q.z.cols());
  q.u2 = m.quo2 * q.z.block(q1, 0, q2, q.z.cols());
  q.r = m.sel_q0p.transpose() * m.a1p * q.u1;
  if (!q.r.square() || rank_of(q.r, tol) != q.r.rows())
    throw Error(ErrorKind::NotAdmissible, "global sections of the quotient do not match the stalk at theta0'");
  return q;
}

}  // namespace

template <class T>
std::size_t stalk_dims(const StokesData<T>& d, const Direction<typename ScalarTraits<T>::Real>& theta,
                       const PointOf<T>& c, const Tolerance& tol) {
  auto pts = d.type.factors;
  if (d.type.find(c) == d.type.size()) pts.push_back(c);
  if (!is_generic(pts, theta, tol))
    throw Error(ErrorKind::OnStokesDirection, "direction is a Stokes direction of a pair in C u {c}");
  std::size_t total = 0;
  for (std::size_t i = 0; i < d.type.size(); ++i)
    if (leq_theta(d.type.factors[i], c, theta, tol) != Comparison::GT) total += d.type.dims[i];
  return total;
}

template <class T>
void require_admissible(const StokesData<T>& d, const PointOf<T>& c, const Tolerance& tol) {
  require_valid(d, tol);
  if (d.type.find(c) != d.type.size()) throw Error(ErrorKind::NotAdmissible, "c is an exponential factor");
  for (const auto& ci : d.type.factors)
    if (leq_theta(ci, c, d.type.theta0, tol) != Comparison::LT)
      throw Error(ErrorKind::NotAdmissible, format_point(ci) + " is not below c at theta0");
}

template <class T>
CohomologyReport<T> cohomology_report(const StokesData<T>& d, const PointOf<T>& c, const Tolerance& tol) {
  auto m = build_model(d, c, tol);
  CohomologyReport<T> rep;
  rep.c = c;
  auto dims = [&](const Matrix<T>& delta, std::size_t& h0, std::size_t& h1) {
    std::size_t r = rank_of(delta, tol);
    h0 = delta.cols() - r;
    h1 = delta.rows() - r;
  };
  dims(m.delta_L, rep.h0_L, rep.h1_L);
  dims(m.delta_sub, rep.h0_sub, rep.h1_sub);
  dims(m.delta_quot, rep.h0_quot, rep.h1_quot);

  rep.can = can_via_cech(d, c, tol);
  // can is a difference of two comparable terms; measure its rank against
  // their size so that rounding noise does not count.
  double scale = m.delta_L.norm() * inverse(quotient_sections(m, tol).r, tol).norm();
  rep.rank_can = rep.can.empty() ? 0 : rank_scaled(rep.can, scale, tol);
  rep.dim_F = rep.rank_can;

  // H^1(L_{<=c}) -> H^1(L) is induced by the inclusion of cochains.
  Matrix<T> incl = two_by_two(m.sel_f0, Matrix<T>(m.n, m.sel_f0p.cols()), Matrix<T>(m.n, m.sel_f0.cols()), m.sel_f0p);
  std::size_t meet = rank_of(incl, tol) + rank_of(m.delta_L, tol) - rank_of(hstack(incl, m.delta_L), tol);
  rep.h1_X = meet - rank_of(m.delta_sub, tol);
  rep.h2_X = rep.h1_L - (rep.h1_sub - rep.h1_X);

  rep.eigenvalue_one_dim = monodromy(d, tol).eigenvalue_one_dim;
  std::size_t n = m.n, e = rep.eigenvalue_one_dim;
  rep.consistent = rep.h0_sub == 0 && rep.h1_sub == n && rep.h0_quot == n && rep.h1_quot == 0 && rep.h0_L == e &&
                   rep.h1_L == e && rep.dim_F == n - e && rep.h1_X == rep.dim_F && rep.h2_X == 0;
  return rep;
}

template <class T>
Matrix<T> can_via_cech(const StokesData<T>& d, const PointOf<T>& c, const Tolerance& tol) {
  auto m = build_model(d, c, tol);
  auto q = quotient_sections(m, tol);
  // Lift to sections of L on each arc and take the Cech coboundary.
  Matrix<T> cob = m.delta_L * vstack(q.u1, q.u2);
  Matrix<T> at0 = cob.block(0, 0, m.n, cob.cols());
  Matrix<T> at0p = cob.block(m.n, 0, m.n, cob.cols());
  // The coboundary is a cochain of L_{<=c}; its class in H^1(L_{<=c}) is
  // read on the theta0 component, which is all of H^1 when the differential
  // of L_{<=c} vanishes.
  if (!approx_equal(Matrix<T>(m.sel_q0p.transpose() * at0p), Matrix<T>(m.sel_q0p.cols(), cob.cols()), tol) ||
      !approx_equal(Matrix<T>(m.sel_q0.transpose() * at0), Matrix<T>(m.sel_q0.cols(), cob.cols()), tol))
    throw Error(ErrorKind::NotAdmissible, "coboundary of a quotient section leaves L_{<=c}");
  if (rank_of(m.delta_sub, tol) != 0 || m.sel_f0p.cols() != 0)
    throw Error(ErrorKind::NotAdmissible, "H^1(L_{<=c}) is not the stalk at theta0");
  return at0 * inverse(q.r, tol);
}

template <class T>
Matrix<T> pairing_via_cech(const StokesData<T>& d, const PointOf<T>& c, CupRule rule, const Tolerance& tol) {
  if (!compatibility_holds(d, Matrix<T>::identity(d.type.total()), tol))
    throw Error(ErrorKind::InvalidData, "the normalized pairing is not compatible with the data");
  auto m = build_model(d, c, tol);
  auto q = quotient_sections(m, tol);
  // h12 pairs sections of L on I1 with sections of L on I2 (the sections of
  // the pulled-back system on I1); h21 on the I2 chart is induced from h12
  // by comparing germs at theta0.
  Matrix<T> h21 = m.a2.transpose() * inverse(m.a1, tol).transpose() * Matrix<T>(inverse(m.a2p, tol) * m.a1p).conj();
  // A class of H^1 of the pulled-back subsheaf is a germ v in L_{theta0}
  // placed on the theta0' component. Through chart I1 it is the germ of the
  // I2-section a2^{-1} v, through chart I2 that of the I1-section a1^{-1} v.
  Matrix<T> chart1 = q.u1.transpose() * inverse(m.a2, tol).conj();
  Matrix<T> chart2 = q.u2.transpose() * h21 * inverse(m.a1, tol).conj();
  Matrix<T> at0p;
  switch (rule) {
    case CupRule::Averaged: at0p = (chart1 + chart2) * ScalarTraits<T>::half(); break;
    case CupRule::FirstChart: at0p = chart1; break;
    case CupRule::SecondChart: at0p = chart2; break;
  }
  Matrix<T> at0(at0p.rows(), at0p.cols());
  // H^1(S^1, k) = k: value on the theta0' component minus value on theta0.
  Matrix<T> cls = at0p - at0;
  return inverse(q.r, tol).transpose() * cls;
}

template <class T>
Matrix<T> induced_form_via_cech(const StokesData<T>& d, const PointOf<T>& c, const Matrix<T>& param_basis,
                                CupRule rule, const Tolerance& tol) {
  Matrix<T> p = pairing_via_cech(d, c, rule, tol);
  Matrix<T> can = can_via_cech(d, c, tol);
  Matrix<T> xp = d.sigma_prime * param_basis;
  return xp.transpose() * p * Matrix<T>(can * xp).conj();
}

#define STOKES_INSTANTIATE_CECH(T)                                                                               \
  template std::size_t stalk_dims(const StokesData<T>&, const Direction<ScalarTraits<T>::Real>&, const PointOf<T>&, \
                                  const Tolerance&);                                                             \
  template void require_admissible(const StokesData<T>&, const PointOf<T>&, const Tolerance&);                   \
  template CohomologyReport<T> cohomology_report(const StokesData<T>&, const PointOf<T>&, const Tolerance&);      \
  template Matrix<T> can_via_cech(const StokesData<T>&, const PointOf<T>&, const Tolerance&);                    \
  template Matrix<T> pairing_via_cech(const StokesData<T>&, const PointOf<T>&, CupRule, const Tolerance&);       \
  template Matrix<T> induced_form_via_cech(const StokesData<T>&, const PointOf<T>&, const Matrix<T>&, CupRule,   \
                                           const Tolerance&);

STOKES_INSTANTIATE_CECH(FloatComplex)
STOKES_INSTANTIATE_CECH(GaussianRational)
STOKES_INSTANTIATE_CECH(Rational)

#undef STOKES_INSTANTIATE_CECH

}  // namespace stokes
