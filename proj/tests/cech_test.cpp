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

#include <gtest/gtest.h>

#include "stokes/cech.hpp"
#include "stokes/generate.hpp"
#include "stokes/pairing.hpp"
#include "test_util.hpp"

namespace stokes {
namespace {

using namespace stokes::testing;
using M = Matrix<GQ>;
using P = Point<Q>;

constexpr CupRule kRules[] = {CupRule::Averaged, CupRule::FirstChart, CupRule::SecondChart};

template <class T>
PointOf<T> above(const StokesData<T>& d) {
  return admissible_point(d.type.factors, d.type.theta0);
}

TEST(StalkDims, Examples) {
  auto d = data_on_line<GQ>(M::identity(3), M::identity(3), {2, 1});
  EXPECT_EQ(stalk_dims(d, dir0(), P{-5, 0}), 0u);
  EXPECT_EQ(stalk_dims(d, dir0(), P{5, 0}), 3u);
  EXPECT_EQ(stalk_dims(d, dir0(), P{q("1/2"), 0}), 2u);
  // At theta = pi both 1 and 0 lie below 0.
  EXPECT_EQ(stalk_dims(d, dir0().opposite(), P{0, 0}), 3u);
}

TEST(StalkDims, OnStokesDirection) {
  auto d = data_on_line<GQ>(M::identity(2), M::identity(2));
  try {
    stalk_dims(d, Direction<Q>{Q(0), Q(1)}, P{5, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OnStokesDirection);
  }
}

TEST(Can, EqualMatricesGiveZero) {
  auto d = data_on_line<GQ>(M::identity(2), M::identity(2));
  EXPECT_TRUE(can_via_cech(d, above(d)).is_zero());
}

TEST(Can, ScalarTwo) {
  auto d = skew_data_on_line<GQ>(M{{gq(2)}});
  EXPECT_EQ(can_via_cech(d, above(d)), M{{gq(-1)}});
}

TEST(Pairing, ScalarTwoIsMinusOne) {
  auto d = skew_data_on_line<GQ>(M{{gq(2)}});
  for (auto rule : kRules) EXPECT_EQ(pairing_via_cech(d, above(d), rule), M{{gq(-1)}});
}

TEST(Pairing, IncompatibleRejected) {
  auto d = data_on_line<GQ>(M{{gq(2)}}, M{{gq(1)}});
  try {
    pairing_via_cech(d, above(d));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidData);
  }
}

TEST(Cohomology, IdentityMonodromy) {
  auto d = data_on_line<GQ>(M::identity(3), M::identity(3), {2, 1});
  auto r = cohomology_report(d, above(d));
  EXPECT_EQ(r.h0_L, 3u);
  EXPECT_EQ(r.h1_L, 3u);
  EXPECT_EQ(r.dim_F, 0u);
  EXPECT_TRUE(r.consistent);
}

TEST(Cohomology, TwoFactorPositive) {
  auto d = skew_data_on_line<GQ>(M{{gq(1), gq(0)}, {gq(1), gq(1)}});
  auto r = cohomology_report(d, above(d));
  EXPECT_EQ(r.dim_F, 2u);
  EXPECT_EQ(r.h0_L, 0u);
  EXPECT_EQ(r.h1_sub, 2u);
  EXPECT_EQ(r.h0_quot, 2u);
  EXPECT_EQ(r.h1_X, 2u);
  EXPECT_EQ(r.h2_X, 0u);
  EXPECT_TRUE(r.consistent);
}

TEST(Cohomology, DiagonalOneAndI) {
  auto d = skew_data_on_line<GQ>(M{{gq(1), gq(0)}, {gq(0), gq(0, 1)}});
  auto r = cohomology_report(d, above(d));
  EXPECT_EQ(r.eigenvalue_one_dim, 1u);
  EXPECT_EQ(r.dim_F, 1u);
  EXPECT_TRUE(r.consistent);
}

TEST(Cohomology, NotAdmissible) {
  auto d = skew_data_on_line<GQ>(M{{gq(1), gq(0)}, {gq(1), gq(1)}});
  for (const P& c : {P{0, 0}, P{q("1/2"), 0}, P{-1, 0}}) {
    try {
      cohomology_report(d, c);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotAdmissible);
    }
  }
}

TEST(CechProperty, CanMatchesClosedForm) {
  ShapeGen gen(41);
  for (int trial = 0; trial < 80; ++trial) {
    auto d = generate_random_valid<GQ>(gen.options(4, 2));
    auto c = above(d);
    M can = can_via_cech(d, c);
    EXPECT_EQ(can, inverse(d.sigma_prime) - inverse(d.sigma));
    auto r = cohomology_report(d, c);
    EXPECT_TRUE(r.consistent);
    EXPECT_EQ(d.type.total() - r.eigenvalue_one_dim, rank(can));
    EXPECT_EQ(r.dim_F, rank(can));
    EXPECT_EQ(r.h2_X, 0u);
  }
}

TEST(CechProperty, PairingIsMinusIdentityUnderSkew) {
  ShapeGen gen(42);
  for (int trial = 0; trial < 60; ++trial) {
    auto o = gen.options(4, 2);
    o.aligned_kernel = trial % 2 == 0;
    auto d = generate_certified<GQ>(o);
    auto c = above(d);
    std::size_t n = d.type.total();
    for (auto rule : kRules) EXPECT_EQ(pairing_via_cech(d, c, rule), -M::identity(n));
    auto f = induced_form_on_F(d);
    for (auto rule : kRules) EXPECT_EQ(induced_form_via_cech(d, c, f.param_basis, rule), f.gram);
  }
}

TEST(CechProperty, PairingOnCompatibleNonSkewData) {
  // sigma' = zeta sigma^* with |zeta| = 1 keeps G = Id compatible.
  ShapeGen gen(43);
  GQ zeta = gq("3/5", "4/5");
  for (int trial = 0; trial < 40; ++trial) {
    auto base = generate_certified<GQ>(gen.options(3, 2));
    StokesData<GQ> d{base.type, base.sigma, base.sigma.adjoint() * zeta};
    ASSERT_TRUE(compatibility_holds(d, M::identity(d.type.total())));
    M want = inverse(d.sigma).transpose() * d.sigma_prime.conj();
    for (auto rule : kRules) EXPECT_EQ(pairing_via_cech(d, above(d), rule), want);
  }
}

TEST(CechProperty, FloatResidualSmall) {
  ShapeGen gen(44);
  for (int trial = 0; trial < 30; ++trial) {
    auto o = gen.options(6, 3);
    auto d = generate_certified<FloatComplex>(o);
    auto c = above(d);
    std::size_t n = d.type.total();
    Matrix<FloatComplex> can = can_via_cech(d, c);
    EXPECT_LE((can - (inverse(d.sigma_prime) - inverse(d.sigma))).max_abs(), 1e-10);
    for (auto rule : kRules)
      EXPECT_LE((pairing_via_cech(d, c, rule) + Matrix<FloatComplex>::identity(n)).max_abs(), 1e-10);
  }
}

}  // namespace
}  // namespace stokes
