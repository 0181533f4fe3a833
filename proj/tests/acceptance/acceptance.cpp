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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stokes/birkhoff.hpp"
#include "stokes/cech.hpp"
#include "stokes/generate.hpp"
#include "stokes/pairing.hpp"
#include "test_util.hpp"

namespace stokes {
namespace {

using namespace stokes::testing;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> failures;

  void check(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (failures.size() < 3) failures.push_back(what);
  }
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0: none
  std::function<Outcome()> body;
};

// Largest |eigenvalue| and smallest eigenvalue of a Hermitian float matrix.
std::pair<double, double> spectrum_bounds(const Matrix<FloatComplex>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.cwiseAbs().maxCoeff(), ev.minCoeff()};
}

// Shapes used by the randomized criteria.
GeneratorOptions shape(ShapeGen& gen, std::size_t max_factors, std::size_t max_dim, bool full_rank) {
  GeneratorOptions o = gen.options(max_factors, max_dim);
  std::size_t total = 0;
  for (auto k : o.dims) total += k;
  o.rank = full_rank ? total : gen.uniform(0, total == 0 ? 0 : total - 1);
  o.aligned_kernel = gen.uniform(0, 1) == 1;
  return o;
}

// Real skew data exists only for some shapes (an odd block with zero
// Hermitian part has no invertible real skew completion). In rational mode
// infeasible shapes are redrawn and counted; other modes take every draw.
template <class T>
StokesData<T> draw_certified(ShapeGen& gen, std::size_t max_factors, std::size_t max_dim, bool full_rank,
                             std::size_t& redrawn) {
  for (;;) {
    GeneratorOptions o = shape(gen, max_factors, max_dim, full_rank);
    if constexpr (ScalarTraits<T>::has_imaginary_unit) {
      return generate_certified<T>(o);
    } else {
      try {
        return generate_certified<T>(o);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BadParams && e.kind() != ErrorKind::Unsatisfiable) throw;
        ++redrawn;
      }
    }
  }
}

std::string seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

// 1. Positivity of the induced form on F.
Outcome positivity() {
  Outcome out;
  ShapeGen gen(1001);
  const int n = 500;
  double worst_ratio = 1e300;
  std::size_t deficient = 0;
  auto exact_check = [&](const auto& d, const char* mode, int k) {
    auto f = induced_form_on_F(d);
    auto h = hermitian_part(d);
    out.check(f.gram.rows() == rank(h), std::string(mode) + " #" + std::to_string(k) + ": dim F != rank H");
    if (f.gram.rows() > 0) {
      out.check(is_hermitian(f.gram), std::string(mode) + " #" + std::to_string(k) + ": gram not Hermitian");
      out.check(hermitian_classify(f.gram).cls == Definiteness::PD,
                std::string(mode) + " #" + std::to_string(k) + ": gram not PD");
    }
  };
  std::size_t redrawn = 0;
  ShapeGen rgen(1002);
  for (int k = 0; k < n; ++k) {
    GeneratorOptions o = shape(gen, 4, 3, k % 2 == 0);
    std::size_t total = 0;
    for (auto x : o.dims) total += x;
    if (o.rank < total) ++deficient;
    exact_check(generate_certified<GaussianRational>(o), "gaussian_rational", k);
    exact_check(draw_certified<Rational>(rgen, 4, 3, k % 2 == 0, redrawn), "rational", k);

    auto df = generate_certified<FloatComplex>(o);
    auto f = induced_form_on_F(df);
    auto h = hermitian_part(df);
    out.check(f.gram.rows() == rank(h), "float #" + std::to_string(k) + ": dim F != rank H");
    if (f.gram.rows() > 0) {
      out.check(is_hermitian(f.gram), "float #" + std::to_string(k) + ": gram not Hermitian");
      double h_norm = spectrum_bounds(h).first;
      double min_eig = spectrum_bounds(f.gram).second;
      worst_ratio = std::min(worst_ratio, min_eig / h_norm);
      out.check(min_eig > 1e-8 * h_norm, "float #" + std::to_string(k) + ": min eigenvalue " +
                                             std::to_string(min_eig) + " <= 1e-8 ||H||");
    }
  }
  std::ostringstream os;
  os << n << " instances x {float, gaussian_rational, rational}, " << deficient
     << " rank-deficient, " << redrawn << " infeasible rational shapes redrawn; worst float min_eig/||H||_2 = " << worst_ratio << " (> 1e-8)";
  out.detail = os.str();
  return out;
}

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if constexpr (ScalarTraits<T>::exact) {
    return a == b ? 0.0 : 1.0;
  } else {
    return Matrix<T>(a - b).max_abs();
  }
}

// 2. Cech oracle against the closed forms.
Outcome two_path() {
  Outcome out;
  const int n = 500;
  double worst_float = 0.0;
  std::size_t max_total = 0, redrawn = 0;
  auto within = [](double r, bool exact) { return exact ? r == 0.0 : r <= 1e-10; };

  // can on arbitrary valid data.
  auto can_suite = [&]<class T>(std::uint64_t seed, std::size_t max_factors, std::size_t max_dim, const char* mode) {
    ShapeGen gen(seed);
    for (int k = 0; k < n; ++k) {
      auto d = generate_random_valid<T>(gen.options(max_factors, max_dim));
      max_total = std::max(max_total, d.type.total());
      auto c = admissible_point(d.type.factors, d.type.theta0);
      double r = max_abs_diff(can_via_cech(d, c), Matrix<T>(inverse(d.sigma_prime) - inverse(d.sigma)));
      if (!ScalarTraits<T>::exact) worst_float = std::max(worst_float, r);
      out.check(within(r, ScalarTraits<T>::exact), std::string(mode) + " can #" + std::to_string(k));
    }
  };
  can_suite.operator()<GaussianRational>(2001, 4, 3, "gaussian_rational");
  can_suite.operator()<Rational>(2002, 4, 3, "rational");
  can_suite.operator()<FloatComplex>(2003, 8, 4, "float");

  // The pairing needs gram12 = Id to be compatible: skew data, and every
  // third instance twisted to sigma' = zeta sigma^* with |zeta| = 1.
  auto pairing_suite = [&]<class T>(std::uint64_t seed, std::size_t max_factors, std::size_t max_dim,
                                    const char* mode) {
    ShapeGen gen(seed);
    for (int k = 0; k < n; ++k) {
      auto d = draw_certified<T>(gen, max_factors, max_dim, k % 3 == 0, redrawn);
      if constexpr (ScalarTraits<T>::has_imaginary_unit) {
        if (k % 3 == 1) d.sigma_prime = d.sigma.adjoint() * ScalarTraits<T>::from_parts(
                                            typename ScalarTraits<T>::Real(3) / 5, typename ScalarTraits<T>::Real(4) / 5);
      }
      max_total = std::max(max_total, d.type.total());
      auto c = admissible_point(d.type.factors, d.type.theta0);
      Matrix<T> want = inverse(d.sigma).transpose() * d.sigma_prime.conj();
      double r = max_abs_diff(pairing_via_cech(d, c), want);
      if (!ScalarTraits<T>::exact) worst_float = std::max(worst_float, r);
      out.check(within(r, ScalarTraits<T>::exact), std::string(mode) + " pairing #" + std::to_string(k));
    }
  };
  pairing_suite.operator()<GaussianRational>(2004, 4, 3, "gaussian_rational");
  pairing_suite.operator()<Rational>(2005, 4, 3, "rational");
  pairing_suite.operator()<FloatComplex>(2006, 8, 4, "float");

  std::ostringstream os;
  os << n << " instances per path and mode (can: random valid; pairing: compatible), n_tot <= " << max_total
     << " (" << redrawn << " infeasible rational shapes redrawn); exact modes equal; worst float residual " << worst_float << " (<= 1e-10)";
  out.detail = os.str();
  return out;
}

// 3. K_c against the radical of H, T1-invariance and Hom from the trivial object.
Outcome minimality() {
  Outcome out;
  ShapeGen gen(3001);
  const int n = 300;
  std::size_t nonzero = 0;
  for (int k = 0; k < n; ++k) {
    auto d = generate_certified<GaussianRational>(shape(gen, 4, 3, false));
    auto h = hermitian_part(d);
    auto t1 = monodromy(d).T1;
    for (const auto& ks : k_spaces(d)) {
      std::size_t off = d.type.offset(ks.index), dc = d.type.dims[ks.index];
      Matrix<GaussianRational> local = kernel_basis(h.block(0, off, h.rows(), dc));
      Matrix<GaussianRational> radical(h.rows(), local.cols());
      if (local.cols() > 0) radical.set_block(off, 0, local);
      std::string tag = "#" + std::to_string(k) + " factor " + std::to_string(ks.index);
      out.check(ks.basis.cols() == radical.cols() && same_span(ks.basis, radical), tag + ": K_c != ker H on block");
      out.check(t1 * ks.basis == ks.basis, tag + ": T1 moves K_c");
      auto triv = trivial_data<GaussianRational>(ks.c, d.type.theta0);
      out.check(hom_space(triv, d).size() == ks.basis.cols(), tag + ": dim Hom(trivial, D) != dim K_c");
      if (ks.basis.cols() > 0) ++nonzero;
    }
  }
  out.detail = std::to_string(n) + " skew instances (gaussian_rational), " + std::to_string(nonzero) +
               " nonzero K_c; (a) exact span equality (b) T1 v = v (c) Hom dimension";
  return out;
}

// 4. iota and dualize are involutions and never leave the valid data.
Outcome round_trips() {
  Outcome out;
  ShapeGen gen(4001);
  const int n = 300;
  int violations = 0;
  for (int k = 0; k < n; ++k) {
    auto d = k % 2 == 0 ? generate_random_valid<GaussianRational>(gen.options(4, 3))
                        : generate_certified<GaussianRational>(shape(gen, 4, 3, k % 4 == 1));
    try {
      auto i = iota(d);
      auto u = dualize(d);
      out.check(validate(i).valid() && validate(u).valid(), "#" + std::to_string(k) + ": invalid output");
      out.check(iota(i) == d, "#" + std::to_string(k) + ": iota o iota != id");
      out.check(dualize(u) == d, "#" + std::to_string(k) + ": dual o dual != id");
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ConventionViolation) ++violations;
      out.check(false, "#" + std::to_string(k) + ": " + e.what());
    }
  }
  out.detail = std::to_string(n) + " instances (half random valid, half skew), field-for-field equality; " +
               std::to_string(violations) + " ConventionViolation";
  return out;
}

// 5. Splitting off the trivial summands and putting them back.
Outcome splitting() {
  Outcome out;
  ShapeGen gen(5001);
  const int want = 200;
  int counted = 0, attempts = 0, with_summands = 0, degenerate = 0;
  while (counted < want && attempts < 5000) {
    ++attempts;
    auto o = shape(gen, 4, 3, false);
    o.aligned_kernel = true;
    auto d = generate_certified<GaussianRational>(o);
    bool nondegenerate = true;
    for (const auto& ks : k_spaces(d))
      if (ks.basis.cols() > 0 && rank(ks.form) < ks.basis.cols()) nondegenerate = false;
    if (!nondegenerate) {
      ++degenerate;
      continue;
    }
    ++counted;
    std::string tag = "#" + std::to_string(counted);
    try {
      auto s = split_minimal(d);
      out.check(reassemble(s) == d, tag + ": reassembly differs from input");
      for (const auto& ks : k_spaces(s.minimal_part))
        out.check(ks.basis.cols() == 0, tag + ": remainder has K_c != 0");
      if (!s.trivial_summands.empty()) ++with_summands;
    } catch (const Error& e) {
      out.check(false, tag + ": " + e.what());
    }
  }
  out.check(counted >= want, "only " + std::to_string(counted) + " instances with nondegenerate h_K");
  out.detail = std::to_string(counted) + " instances with nondegenerate h_K (" + std::to_string(with_summands) +
               " with trivial summands, " + std::to_string(degenerate) +
               " degenerate draws skipped), exact reassembly, minimal remainder";
  return out;
}

// 6. Soundness of the certificate.
Outcome certificate() {
  Outcome out;
  ShapeGen gen(6001);
  const int n = 100;
  for (int k = 0; k < n; ++k) {
    auto d = generate_certified<GaussianRational>(shape(gen, 4, 3, true));
    out.check(certify(d).verdict == Verdict::CertifiedPurePolarized, "full-rank #" + std::to_string(k));
  }
  using M = Matrix<GaussianRational>;
  auto minus_i = certify(data_on_line<GaussianRational>(M{{gq(0, -1)}}, M{{gq(0, -1)}}));
  out.check(minus_i.verdict == Verdict::Failed && minus_i.failed_clause == kClauseKDefinite,
            "sigma = (-i) not FAILED on the K-space clause");
  auto plus_i = certify(data_on_line<GaussianRational>(M{{gq(0, 1)}}, M{{gq(0, 1)}}));
  out.check(plus_i.verdict == Verdict::CertifiedPurePolarized && plus_i.split &&
                plus_i.split->trivial_summands.size() == 1,
            "sigma = (i) not CERTIFIED through a trivial summand");
  out.detail = std::to_string(n) + " full-rank generated instances CERTIFIED; (-i) FAILED " +
               kClauseKDefinite + "; (i) CERTIFIED with 1 trivial summand";
  return out;
}

// 7. Rank bookkeeping of the cohomology.
Outcome cohomology() {
  Outcome out;
  ShapeGen gen(7001);
  const int n = 300;
  for (int k = 0; k < n; ++k) {
    auto d = k % 2 == 0 ? generate_random_valid<GaussianRational>(gen.options(4, 3))
                        : generate_certified<GaussianRational>(shape(gen, 4, 3, k % 4 == 1));
    auto c = admissible_point(d.type.factors, d.type.theta0);
    auto r = cohomology_report(d, c);
    std::size_t total = d.type.total();
    std::string tag = "#" + std::to_string(k);
    out.check(r.h1_sub == total, tag + ": dim H1(L_<=c) != n_tot");
    out.check(r.dim_F == total - r.eigenvalue_one_dim, tag + ": dim F_c != n_tot - dim ker(T1 - Id)");
    out.check(r.h2_X == 0, tag + ": dim H2 != 0");
    out.check(r.consistent, tag + ": report inconsistent");
  }
  out.detail = std::to_string(n) + " instances at an admissible c: H1(L_<=c) = n_tot, F_c = n_tot - ker(T1 - Id), H2 = 0";
  return out;
}

// 8. Partial indices.
Outcome birkhoff() {
  Outcome out;
  std::size_t runs = 0, monomials = 0;
  std::mt19937_64 rng(8001);
  auto record = [&](const IndexResult& r, const std::string& tag) {
    ++runs;
    int sum = 0;
    for (int x : r.indices) sum += x;
    out.check(sum == r.det_winding, tag + ": sum(indices) != det_winding");
  };
  // Every multiset of exponents in [-5, 5] of size 1..4, fed in shuffled order.
  std::function<void(std::vector<int>&, int, std::size_t)> sweep = [&](std::vector<int>& ks, int hi, std::size_t d) {
    if (ks.size() == d) {
      std::vector<int> fed = ks;
      std::shuffle(fed.begin(), fed.end(), rng);
      std::string tag = "monomial";
      for (int x : fed) tag += " " + std::to_string(x);
      try {
        auto r = partial_indices(make_monomial(fed));
        record(r, tag);
        out.check(r.indices == ks, tag + ": wrong indices");
      } catch (const Error& e) {
        out.check(false, tag + ": " + e.what());
      }
      ++monomials;
      return;
    }
    for (int k = hi; k >= -5; --k) {
      ks.push_back(k);
      sweep(ks, k, d);
      ks.pop_back();
    }
  };
  for (std::size_t d = 1; d <= 4; ++d) {
    std::vector<int> ks;
    sweep(ks, 5, d);
  }

  // Constant positive definite Hermitian loops.
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    std::size_t dim = 1 + rng() % 4;
    Matrix<FloatComplex> a(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) a(r, c) = {nd(rng), nd(rng)};
    Matrix<FloatComplex> h = a.adjoint() * a + Matrix<FloatComplex>::identity(dim) * FloatComplex(0.1);
    try {
      auto r = partial_indices(make_constant(h));
      record(r, "constant #" + std::to_string(k));
      out.check(r.pure(), "constant #" + std::to_string(k) + ": not all zero");
    } catch (const Error& e) {
      out.check(false, "constant #" + std::to_string(k) + ": " + e.what());
    }
  }

  // [[z, 1], [0, 1/z]] and its factorization g_- g_+ (sympy oracle).
  auto upper = partial_indices(make_upper_example());
  record(upper, "upper example");
  out.check(upper.indices == std::vector<int>{0, 0}, "upper example: indices not (0, 0)");
  using CM = Matrix<FloatComplex>;
  CM m0{{0.0, 1.0}, {-1.0, 0.0}}, m1{{0.0, 0.0}, {0.0, 1.0}}, p1{{0.0, 0.0}, {1.0, 0.0}};
  MatrixLoop g_minus(2, {{0, m0}, {-1, m1}});
  MatrixLoop g_plus(2, {{0, CM::identity(2)}, {1, p1}});
  MatrixLoop prod = g_minus * g_plus, want = make_upper_example();
  bool same = prod.fourier().size() == want.fourier().size();
  for (const auto& [k, c] : want.fourier()) same = same && prod.fourier().count(k) && approx_equal(prod.fourier().at(k), c);
  out.check(same, "upper example: g_- g_+ does not reproduce the loop");
  for (const auto* f : {&g_minus, &g_plus}) {
    auto r = partial_indices(*f);
    record(r, "factor");
    out.check(r.pure() && r.det_winding == 0, "upper example: a factor has nonzero indices");
  }
  out.detail = std::to_string(monomials) + " monomial loops (|k| <= 5, d <= 4, multisets), 50 constant PD loops, "
               "upper example (0, 0) with g_- g_+ factorization; sum = winding on all " +
               std::to_string(runs) + " runs";
  return out;
}

// 9. Order axioms on random triples.
Outcome order_axioms() {
  Outcome out;
  std::mt19937_64 rng(9001);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
  auto small = [&] { return Rational(num(rng), den(rng)); };
  auto canon = [](Rational x) {
    x.canonicalize();
    return x;
  };
  auto point = [&] { return Point<Rational>{canon(small()), canon(small())}; };
  const int n = 10000;
  int stokes_checked = 0;
  for (int k = 0; k < n; ++k) {
    Point<Rational> c = point(), c2 = point(), a = point();
    Direction<Rational> t{canon(small()), canon(small())};
    if (t.u == 0 && t.v == 0) t.u = 1;
    std::string tag = "#" + std::to_string(k);
    Comparison cmp = leq_theta(c, c2, t);
    bool lt = cmp == Comparison::LT;
    out.check(leq_theta(c + a, c2 + a, t) == cmp, tag + ": translation");
    out.check(!(lt && leq_theta(c2, c, t) == Comparison::LT), tag + ": antisymmetry");
    out.check(lt == (leq_theta(c2, c, t.opposite()) == Comparison::LT), tag + ": reversal at theta + pi");
    out.check(lt == (leq_theta(-c2, -c, t) == Comparison::LT), tag + ": negation");
    if (!(c == c2)) {
      auto [s1, s2] = stokes_directions(c, c2);
      out.check(leq_theta(c, c2, s1) == Comparison::Incomparable && leq_theta(c, c2, s2) == Comparison::Incomparable,
                tag + ": comparable on a Stokes direction");
      out.check(same_direction(s1.opposite(), s2), tag + ": Stokes directions not opposite");
      Rational cross = s1.u * t.v - s1.v * t.u;
      out.check((cmp == Comparison::Incomparable) == (cross == 0), tag + ": incomparable off the Stokes directions");
      ++stokes_checked;
    } else {
      out.check(cmp == Comparison::EQ, tag + ": equal points not EQ");
    }
  }
  out.detail = std::to_string(n) + " random triples (exact), " + std::to_string(stokes_checked) +
               " with distinct points: translation, antisymmetry, reversal, negation, Stokes incomparability";
  return out;
}

}  // namespace
}  // namespace stokes

int main() {
  using namespace stokes;
  const std::vector<Criterion> criteria = {
      {1, "positivity of the induced form on F", 60.0, positivity},
      {2, "Cech two-path equality for can and the pairing", 0.0, two_path},
      {3, "minimality equivalences", 0.0, minimality},
      {4, "iota and dual round trips", 0.0, round_trips},
      {5, "splitting round trip", 0.0, splitting},
      {6, "certificate soundness", 1.0, certificate},
      {7, "cohomology rank bookkeeping", 0.0, cohomology},
      {8, "partial indices", 120.0, birkhoff},
      {9, "order axioms", 10.0, order_axioms},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("uncaught error: ") + e.what();
    }
    double s = std::chrono::duration<double>(Clock::now() - start).count();
    std::string timing = seconds(s);
    if (c.time_limit_s > 0) {
      timing += " (limit " + seconds(c.time_limit_s) + ")";
      if (s >= c.time_limit_s) {
        o.ok = false;
        o.failures.push_back("time limit exceeded");
      }
    }
    std::printf("%s criterion %d: %s | %s | %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                timing.c_str());
    for (const auto& f : o.failures) std::printf("    failure: %s\n", f.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  return failed;
}
