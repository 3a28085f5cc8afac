#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "addlab/error.hpp"
#include "addlab/field.hpp"
#include "addlab/group.hpp"
#include "addlab/rng.hpp"
#include "oracles.hpp"

using namespace addlab;

namespace {

// F_9 = F_3[y]/(y^2 + 1): modulus little-endian (1, 0, 1).
FieldCtx f9() { return FieldCtx(3, 2, {1, 0, 1}); }

// y is the element with digits (0, 1), encoded as 0 + 1*3.
constexpr FieldCtx::Elem kY = 3;

}  // namespace

TEST(Field, TraceOfOneInF9) { EXPECT_EQ(f9().trace(1), 2u); }

TEST(Field, TraceOfGeneratorInF9) {
  const FieldCtx f = f9();
  // y^3 = -y = 2y, so Tr(y) = y + y^3 = 3y = 0.
  EXPECT_EQ(f.pow(kY, 3), f.mul(2, kY));
  EXPECT_EQ(f.trace(kY), 0u);
}

TEST(Field, TraceOfZero) {
  for (auto [p, r] : {std::pair{3u, 1u}, {3u, 2u}, {5u, 3u}, {7u, 2u}}) {
    EXPECT_EQ(FieldCtx::builtin(p, r).trace(0), 0u);
  }
}

TEST(Field, TraceIsAdditiveAndNontrivial) {
  for (auto [p, r] : {std::pair{3u, 1u}, {3u, 2u}, {3u, 3u}, {5u, 2u}, {7u, 3u}}) {
    const FieldCtx f = FieldCtx::builtin(p, r);
    bool nonzero = false;
    for (FieldCtx::Elem a = 0; a < f.q(); ++a) {
      nonzero = nonzero || f.trace(a) != 0;
      EXPECT_EQ(f.trace(a), f.trace_cached(a));
      for (FieldCtx::Elem b = 0; b < f.q(); b += 1 + f.q() / 17) {
        EXPECT_EQ(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % p);
      }
    }
    EXPECT_TRUE(nonzero) << "q = " << f.q();
  }
}

TEST(Field, ScalarGeneratorSquaredInF9) {
  const GroupCtx g = GroupCtx::vector_space(f9(), 1);
  // y * y = y^2 = -1 = 2.
  EXPECT_EQ(g.scale(kY, kY), 2u);
}

TEST(Field, MultiplicativeInverses) {
  for (auto [p, r] : {std::pair{3u, 2u}, {5u, 2u}, {7u, 3u}}) {
    const FieldCtx f = FieldCtx::builtin(p, r);
    for (FieldCtx::Elem a = 1; a < f.q(); ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  }
}

TEST(Field, RejectsReducibleModulus) {
  // y^2 - 1 = (y - 1)(y + 1) over F_3.
  EXPECT_THROW(FieldCtx(3, 2, {2, 0, 1}), UsageError);
  EXPECT_THROW(FieldCtx(4, 1, {0, 1}), UsageError);
}

TEST(Field, IrreducibilityByTrialDivision) {
  const std::vector<std::uint32_t> y2p1{1, 0, 1};
  const std::vector<std::uint32_t> y2m1{2, 0, 1};
  EXPECT_TRUE(is_irreducible(3, y2p1));
  EXPECT_FALSE(is_irreducible(3, y2m1));
  EXPECT_FALSE(is_irreducible(5, y2p1));  // 2^2 = -1 mod 5
}

TEST(Group, CyclicAddition) {
  const GroupCtx g = GroupCtx::cyclic(5);
  EXPECT_EQ(g.add(3, 4), 2u);
  EXPECT_EQ(g.neg(2), 3u);
  EXPECT_EQ(g.scale_int(3, -2), 4u);
}

TEST(Group, VectorAddition) {
  const GroupCtx g = GroupCtx::vector_space(FieldCtx::prime(3), 2);
  const Index x = g.parse_element("1 2");
  const Index y = g.parse_element("2 2");
  EXPECT_EQ(g.format(g.add(x, y)), "0 1");
}

TEST(Group, ScalarKindMismatch) {
  const GroupCtx g = GroupCtx::cyclic(7);
  EXPECT_THROW(g.scale(1, 2), UsageError);
}

TEST(Group, EncodingRoundTrip) {
  for (const GroupCtx& g : {GroupCtx::cyclic(60), GroupCtx::vector_space(f9(), 2),
                            GroupCtx::vector_space(FieldCtx::builtin(5, 3), 1)}) {
    const GroupCtx back = GroupCtx::parse(g.encoding());
    EXPECT_EQ(back, g);
    for (Index x = 0; x < g.order(); x += 7) EXPECT_EQ(g.parse_element(g.format(x)), x);
  }
  EXPECT_EQ(GroupCtx::vector_space(f9(), 2).format(1 + 2 * 3 + 1 * 9 + 0 * 27), "1,2 1,0");
}

TEST(Group, RejectsOversizedOrder) {
  EXPECT_THROW(GroupCtx::vector_space(FieldCtx::builtin(7, 3), 10), UsageError);
}

TEST(Character, PrimitiveCubeRoot) {
  const GroupCtx g = GroupCtx::vector_space(FieldCtx::prime(3), 1);
  const Complex want = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  EXPECT_NEAR(std::abs(g.character(1, 1) - want), 0.0, 1e-12);
}

TEST(Character, TrivialFrequency) {
  for (const GroupCtx& g : {GroupCtx::cyclic(12), GroupCtx::vector_space(f9(), 2)}) {
    for (Index x = 0; x < g.order(); ++x) EXPECT_NEAR(std::abs(g.character(x, 0) - 1.0), 0.0, 1e-12);
  }
}

TEST(Character, Z8HalfTurn) {
  // e(2 * 2 / 8) = e(1/2) = -1.
  const GroupCtx g = GroupCtx::cyclic(8);
  EXPECT_NEAR(std::abs(g.character(2, 2) - Complex(-1.0, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(oracle::character(g, 2, 2) - Complex(-1.0, 0.0)), 0.0, 1e-12);
}

TEST(Character, MatchesDefinition) {
  for (const GroupCtx& g : {GroupCtx::cyclic(30), GroupCtx::vector_space(f9(), 2),
                            GroupCtx::vector_space(FieldCtx::builtin(5, 2), 1)}) {
    for (Index x = 0; x < g.order(); ++x) {
      for (Index xi = 0; xi < g.order(); xi += 3) {
        EXPECT_NEAR(std::abs(g.character(x, xi) - oracle::character(g, x, xi)), 0.0, 1e-12);
      }
    }
  }
}

TEST(Character, HomomorphismAndSymmetry) {
  SplitMix64 rng(7);
  for (const GroupCtx& g : {GroupCtx::cyclic(1001), GroupCtx::vector_space(FieldCtx::builtin(7, 2), 2),
                            GroupCtx::vector_space(FieldCtx::builtin(3, 3), 3)}) {
    for (int trial = 0; trial < 10000; ++trial) {
      const Index x = rng.below(g.order());
      const Index y = rng.below(g.order());
      const Index xi = rng.below(g.order());
      const Complex lhs = g.character(g.add(x, y), xi);
      const Complex rhs = g.character(x, xi) * g.character(y, xi);
      ASSERT_NEAR(std::abs(lhs - rhs), 0.0, 1e-10);
      ASSERT_NEAR(std::abs(g.character(x, xi) - g.character(xi, x)), 0.0, 1e-12);
      ASSERT_NEAR(std::abs(g.character(x, xi)), 1.0, 1e-12);
    }
  }
}

TEST(Character, Orthogonality) {
  for (const GroupCtx& g : {GroupCtx::cyclic(97), GroupCtx::vector_space(FieldCtx::prime(3), 4),
                            GroupCtx::vector_space(f9(), 2), GroupCtx::vector_space(FieldCtx::prime(3), 8)}) {
    const double n = static_cast<double>(g.order());
    const Index step = g.order() > 1000 ? 97 : 1;
    for (Index xi = 0; xi < g.order(); xi += step) {
      Complex sum = 0;
      for (Index x = 0; x < g.order(); ++x) sum += g.character(x, xi);
      if (xi == 0) {
        EXPECT_NEAR(sum.real(), n, 1e-8 * n);
      } else {
        EXPECT_LE(std::abs(sum), 1e-8 * n) << g.encoding() << " xi=" << xi;
      }
    }
  }
}
