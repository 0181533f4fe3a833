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

#include <cmath>
#include <numbers>
#include <random>

#include "stokes/halfplane.hpp"
#include "test_util.hpp"

namespace stokes {
namespace {

using namespace stokes::testing;
using P = Point<Q>;

constexpr double kPi = std::numbers::pi;

TEST(LeqTheta, BehindAlongTheta) {
  EXPECT_EQ(leq_theta(P{-1, 0}, P{0, 0}, dir0()), Comparison::LT);
  EXPECT_EQ(leq_theta(P{0, 0}, P{-1, 0}, dir0()), Comparison::GT);
}

TEST(LeqTheta, EqualPointsInEveryDirection) {
  for (double t : {0.0, 1.0, 2.5, 4.0}) {
    EXPECT_EQ(leq_theta(P{0, 0}, P{0, 0}, rational_direction_from_angle(t)), Comparison::EQ);
    EXPECT_EQ(leq_theta(Point<double>{0, 0}, Point<double>{0, 0}, direction_from_angle(t)), Comparison::EQ);
  }
}

TEST(LeqTheta, IncomparableOnStokesDirection) {
  EXPECT_EQ(leq_theta(P{0, 1}, P{0, 0}, dir0()), Comparison::Incomparable);
  EXPECT_EQ(leq_theta(Point<double>{0, 1}, Point<double>{0, 0}, fdir0()), Comparison::Incomparable);
}

TEST(StokesDirections, RealPair) {
  auto [a, b] = stokes_directions(P{1, 0}, P{0, 0});
  EXPECT_NEAR(a.angle(), kPi / 2, 1e-15);
  EXPECT_NEAR(b.angle(), 3 * kPi / 2, 1e-15);
}

TEST(StokesDirections, ImaginaryPair) {
  auto [a, b] = stokes_directions(P{0, 1}, P{0, 0});
  EXPECT_NEAR(a.angle(), 0.0, 1e-15);
  EXPECT_NEAR(b.angle(), kPi, 1e-15);
}

TEST(StokesDirections, EqualPointsRejected) {
  try {
    stokes_directions(P{0, 0}, P{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EqualFactors);
  }
}

TEST(OrderFactors, ReversedAtPi) {
  Direction<Q> pi{Q(-1), Q(0)};
  auto ordered = order_factors(std::vector<P>{{0, 0}, {1, 0}}, pi);
  ASSERT_EQ(ordered.size(), 2u);
  EXPECT_EQ(ordered[0], (P{1, 0}));
  EXPECT_EQ(ordered[1], (P{0, 0}));
}

TEST(OrderFactors, Singleton) {
  auto ordered = order_factors(std::vector<P>{{0, 0}}, Direction<Q>{Q(3), Q(4)});
  ASSERT_EQ(ordered.size(), 1u);
}

TEST(OrderFactors, NotGeneric) {
  try {
    order_factors(std::vector<P>{{0, 0}, {0, 1}}, dir0());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotGeneric);
  }
}

TEST(AdmissiblePoint, Examples) {
  P c = admissible_point(std::vector<P>{{0, 0}}, dir0());
  EXPECT_EQ(c, (P{1, 0}));
  EXPECT_EQ(leq_theta(P{0, 0}, c, dir0()), Comparison::LT);

  std::vector<P> neg{{-2, 0}, {-1, 0}};
  c = admissible_point(neg, dir0());
  EXPECT_EQ(c.im(), Q(0));
  for (const auto& x : neg) EXPECT_EQ(leq_theta(x, c, dir0()), Comparison::LT);

  Direction<Q> pi{Q(-1), Q(0)};
  std::vector<P> two{{0, 0}, {1, 0}};
  c = admissible_point(two, pi);
  EXPECT_LT(c.re(), Q(0));
  for (const auto& x : two) EXPECT_EQ(leq_theta(x, c, pi), Comparison::LT);
}

// Random Gaussian-rational points with small numerators and denominators.
struct PointGen {
  std::mt19937_64 rng;
  explicit PointGen(std::uint64_t seed) : rng(seed) {}
  Q small() {
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    return Q(num(rng), den(rng));
  }
  P point() { return {small(), small()}; }
  Direction<Q> direction() {
    Direction<Q> d{small(), small()};
    while (d.u == 0 && d.v == 0) d = {small(), small()};
    return d;
  }
};

TEST(OrderProperty, AxiomsOnRandomTriples) {
  PointGen gen(2026);
  for (int trial = 0; trial < 2000; ++trial) {
    P c = gen.point(), c2 = gen.point(), a = gen.point();
    Direction<Q> t = gen.direction();
    Comparison cmp = leq_theta(c, c2, t);
    // Translation invariance.
    EXPECT_EQ(leq_theta(c + a, c2 + a, t), cmp);
    // Strict antisymmetry.
    EXPECT_FALSE(cmp == Comparison::LT && leq_theta(c2, c, t) == Comparison::LT);
    // Reversal at the opposite direction.
    EXPECT_EQ(cmp == Comparison::LT, leq_theta(c2, c, t.opposite()) == Comparison::LT);
    // Negation law.
    EXPECT_EQ(cmp == Comparison::LT, leq_theta(-c2, -c, t) == Comparison::LT);
    if (!(c == c2)) {
      auto [s1, s2] = stokes_directions(c, c2);
      EXPECT_EQ(leq_theta(c, c2, s1), Comparison::Incomparable);
      EXPECT_EQ(leq_theta(c, c2, s2), Comparison::Incomparable);
      EXPECT_TRUE(same_direction(s1.opposite(), s2));
    }
  }
}

TEST(OrderProperty, ComparisonConstantOnEachArc) {
  PointGen gen(7);
  for (int trial = 0; trial < 1000; ++trial) {
    P c = gen.point(), c2 = gen.point();
    if (c == c2) continue;
    auto [s1, s2] = stokes_directions(c, c2);
    Direction<Q> t = gen.direction(), t2 = gen.direction();
    Q side = s1.u * t.v - s1.v * t.u, side2 = s1.u * t2.v - s1.v * t2.u;
    Comparison a = leq_theta(c, c2, t), b = leq_theta(c, c2, t2);
    EXPECT_EQ(side == 0, a == Comparison::Incomparable);
    if (sgn(side) != 0 && sgn(side) == sgn(side2)) EXPECT_EQ(a, b);
    if (sgn(side) != 0 && sgn(side) == -sgn(side2)) EXPECT_NE(a, b);
  }
}

TEST(OrderProperty, NegatedFactorsAtOppositeDirectionKeepIndexOrder) {
  PointGen gen(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<P> pts;
    for (int k = 0; k < 4; ++k) pts.push_back(gen.point());
    Direction<Q> t = gen.direction();
    if (!is_generic(pts, t)) continue;
    auto ordered = order_factors(pts, t);
    std::vector<P> neg;
    for (const auto& p : ordered) neg.push_back(-p);
    EXPECT_EQ(order_factors(neg, t.opposite()), neg);
    std::vector<P> reversed(neg.rbegin(), neg.rend());
    EXPECT_EQ(order_factors(neg, t), reversed);
  }
}

}  // namespace
}  // namespace stokes
