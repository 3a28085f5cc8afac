#include <sstream>

#include <gtest/gtest.h>

#include "addlab/energy.hpp"
#include "addlab/error.hpp"
#include "addlab/set.hpp"
#include "oracles.hpp"

using namespace addlab;

namespace {

GroupPtr z(std::uint64_t m) { return make_group(GroupCtx::cyclic(m)); }

}  // namespace

TEST(RepDiff, TwoPointSetInZ4) {
  const SetA a(z(4), {0, 1});
  EXPECT_EQ(rep_diff_counts(a), (std::vector<std::int64_t>{2, 1, 0, 1}));
  const Dfn r = rep_diff(a);
  EXPECT_EQ(r[3].real(), 1.0);
}

TEST(RepDiff, ZeroShiftAndTotalMass) {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const SetA a = oracle::random_set(z(30 + trial), 4 + trial, rng);
    const auto r = rep_diff_counts(a);
    EXPECT_EQ(r[0], static_cast<std::int64_t>(a.size()));
    std::int64_t total = 0;
    for (auto v : r) total += v;
    EXPECT_EQ(total, static_cast<std::int64_t>(a.size() * a.size()));
    EXPECT_EQ(r, oracle::rep_by_pairs(a));
  }
}

TEST(RepDiff, FullGroupIsConstant) {
  std::vector<Index> all(9);
  for (Index x = 0; x < 9; ++x) all[x] = x;
  const SetA a(make_group(GroupCtx::vector_space(FieldCtx::prime(3), 2)), all);
  for (auto v : rep_diff_counts(a)) EXPECT_EQ(v, 9);
}

TEST(RepTuple, IntervalInZ8) {
  const SetA a(z(8), {0, 1, 2, 3});
  const std::vector<Index> tuple{0, 1};
  EXPECT_EQ(rep_tuple(a, tuple), 2u);
  EXPECT_EQ(admissible_shifts(a, tuple), (std::vector<Index>{6, 7}));
}

TEST(RepTuple, RepeatedCoordinate) {
  const SetA a(z(4), {0, 1});
  const std::vector<Index> tuple{0, 0};
  EXPECT_EQ(rep_tuple(a, tuple), 1u);
}

TEST(RepTuple, RejectsTupleOutsideSet) {
  const SetA a(z(10), {0, 1, 4});
  const std::vector<Index> tuple{0, 2};
  EXPECT_THROW(rep_tuple(a, tuple), UsageError);
}

TEST(RepTuple, SidonPairsHaveAtMostOneShift) {
  const SetA a = construct::erdos_turan_sidon(7);
  for (Index x : a.elements()) {
    for (Index y : a.elements()) {
      if (x == y) continue;
      const std::vector<Index> tuple{x, y};
      EXPECT_LE(rep_tuple(a, tuple), 1u);
    }
  }
}

TEST(KstFree, SidonExampleIsFree) {
  const SetA a(z(20), {0, 1, 3, 7});
  EXPECT_TRUE(is_kst_free(a, 2, 2));
  EXPECT_FALSE(oracle::has_kst_grid(a, 2, 2));
}

TEST(KstFree, IntervalHasGridWitness) {
  const SetA a(z(20), {0, 1, 2, 3});
  const auto w = find_kst_grid(a, 2, 2);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->b, (std::vector<Index>{0, 1}));
  EXPECT_EQ(w->c, (std::vector<Index>{0, 2}));
  EXPECT_TRUE(is_grid_witness(a, *w, 2, 2));
  EXPECT_TRUE(oracle::has_kst_grid(a, 2, 2));
}

TEST(KstFree, SmallSetsAreFree) {
  const SetA a(z(20), {4, 9});
  EXPECT_TRUE(is_kst_free(a, 3, 3));
  EXPECT_TRUE(is_kst_free(SetA(z(5), {}), 2, 2));
}

TEST(KstFree, RejectsBadParameters) {
  const SetA a(z(20), {0, 1, 2});
  EXPECT_THROW(is_kst_free(a, 3, 2), UsageError);
  EXPECT_THROW(is_kst_free(a, 1, 2), UsageError);
}

TEST(KstFree, AgreesWithExhaustiveOracle) {
  SplitMix64 rng(2);
  for (auto [s, t] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
    for (int trial = 0; trial < 40; ++trial) {
      const GroupPtr g = trial % 4 == 3 ? make_group(GroupCtx::vector_space(FieldCtx::prime(3), 3)) : z(18 + trial % 9);
      const SetA a = oracle::random_set(g, 3 + rng.below(9), rng);
      const auto w = find_kst_grid(a, s, t);
      EXPECT_EQ(!w.has_value(), !oracle::has_kst_grid(a, s, t)) << g->encoding() << " s=" << s << " t=" << t;
      if (w) EXPECT_TRUE(is_grid_witness(a, *w, s, t));
    }
  }
}

TEST(KstFree, FreenessIsTheShiftBound) {
  // Free iff every distinct s-tuple has at most t-1 shifts counting d = 0,
  // i.e. at most t-2 nonzero ones; both directions.
  SplitMix64 rng(3);
  for (auto [s, t] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
    for (int trial = 0; trial < 30; ++trial) {
      const SetA a = oracle::random_set(z(24), 4 + rng.below(8), rng);
      const TupleStats st = tuple_statistics(a, s, t - 1);
      const bool bound = st.distinct_rep_max + 2 <= static_cast<std::uint64_t>(t);
      EXPECT_EQ(bound, is_kst_free(a, s, t));
    }
  }
}

TEST(Construct, ErdosTuranFive) {
  const SetA a = construct::erdos_turan_sidon(5);
  EXPECT_EQ(std::vector<Index>(a.elements().begin(), a.elements().end()), (std::vector<Index>{0, 11, 24, 34, 41}));
  EXPECT_TRUE(is_kst_free(a, 2, 2));
  EXPECT_EQ(a.interval_length(), 55u);
  EXPECT_THROW(construct::erdos_turan_sidon(6), UsageError);
}

TEST(Construct, GreedyIsFree) {
  const SetA a = construct::greedy_kst_free(2, 3, 100, 1);
  EXPECT_TRUE(is_kst_free(a, 2, 3));
  EXPECT_GT(a.size(), 5u);
  EXPECT_EQ(a.provenance().seed, 1u);
  const SetA b = construct::greedy_kst_free_in(make_group(GroupCtx::vector_space(FieldCtx::prime(3), 3)), 2, 2, 5);
  EXPECT_TRUE(is_kst_free(b, 2, 2));
  // Maximality: adding any further element breaks freeness.
  for (Index x = 0; x < b.ctx().order(); ++x) {
    if (b.contains(x)) continue;
    std::vector<Index> more(b.elements().begin(), b.elements().end());
    more.push_back(x);
    EXPECT_FALSE(is_kst_free(SetA(b.ctx_ptr(), more), 2, 2));
  }
}

TEST(Construct, GreedyIsDeterministic) {
  const SetA a = construct::greedy_kst_free(2, 2, 80, 9);
  const SetA b = construct::greedy_kst_free(2, 2, 80, 9);
  EXPECT_TRUE(std::equal(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end()));
}

TEST(Construct, SubspaceAndRandom) {
  const GroupPtr g = make_group(GroupCtx::vector_space(FieldCtx::prime(3), 3));
  EXPECT_EQ(construct::subspace(g, {}).size(), 1u);
  const std::vector<Index> basis{g->parse_element("1 0 1"), g->parse_element("0 1 1")};
  EXPECT_EQ(construct::subspace(g, basis).size(), 9u);
  EXPECT_EQ(construct::random_subset(z(100), 0.25, 3).size(), 25u);
  EXPECT_THROW(construct::random_subset(z(100), 1.5, 3), UsageError);
}

TEST(Construct, EquationFreeHasOnlyDiagonalSolutions) {
  const EquationSpec eq({1, 1, -2});
  const SetA a = construct::equation_free_greedy(eq, 60, 4);
  EXPECT_GT(a.size(), 5u);
  std::vector<std::int64_t> values;
  for (Index x : a.elements()) values.push_back(a.ctx().signed_rep(x));
  Int128 trivial = 0;
  EXPECT_EQ(oracle::integer_solutions(eq.coeffs(), values, &trivial), static_cast<Int128>(a.size()));
  EXPECT_EQ(trivial, static_cast<Int128>(a.size()));
}

TEST(Construct, EquationWithZeroSumBlocksForcesSingletons) {
  // (a, a, b, b, a) solves x1 + x2 + x3 - x4 - 2 x5 = 0 for any a, b.
  const EquationSpec eq({1, 1, 1, -1, -2});
  EXPECT_EQ(construct::equation_free_greedy(eq, 50, 1).size(), 1u);
}

TEST(SetFile, RoundTrip) {
  for (const SetA& a : {construct::erdos_turan_sidon(7),
                        construct::greedy_kst_free_in(make_group(GroupCtx::vector_space(FieldCtx::builtin(3, 2), 2)),
                                                      2, 2, 3)}) {
    std::stringstream ss;
    write_set(ss, a);
    const SetA back = read_set(ss);
    EXPECT_EQ(back.ctx(), a.ctx());
    EXPECT_EQ(back.interval_length(), a.interval_length());
    EXPECT_TRUE(std::equal(a.elements().begin(), a.elements().end(), back.elements().begin(), back.elements().end()));
  }
}

TEST(SetFile, RejectsMalformedInput) {
  std::stringstream no_header("0\n1\n");
  EXPECT_THROW(read_set(no_header), UsageError);
  std::stringstream outside("ctx=cyclic:5\n7\n");
  EXPECT_THROW(read_set(outside), UsageError);
}

TEST(CrossModule, PowerSumOfRepIsEnergy) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const SetA a = oracle::random_set(z(60), 5 + trial, rng);
    const auto r = rep_diff_counts(a);
    for (int s = 1; s <= 4; ++s) {
      Int128 total = 0;
      for (auto v : r) total += ipow(v, static_cast<unsigned>(s));
      EXPECT_EQ(total, energy_exact(a, s));
    }
  }
}
