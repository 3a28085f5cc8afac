#include <cmath>

#include <gtest/gtest.h>

#include "addlab/counting.hpp"
#include "addlab/dense_model.hpp"
#include "addlab/error.hpp"
#include "oracles.hpp"

using namespace addlab;

namespace {

GroupPtr z(std::uint64_t m) { return make_group(GroupCtx::cyclic(m)); }
GroupPtr fp(std::uint32_t p, std::uint32_t n) { return make_group(GroupCtx::vector_space(FieldCtx::prime(p), n)); }

std::vector<Dfn> copies(const Dfn& h, std::size_t k) { return std::vector<Dfn>(k, h); }

}  // namespace

TEST(Equation, ParsingAndInvariance) {
  const EquationSpec eq = EquationSpec::parse("1,1,1,-1,-2");
  EXPECT_EQ(eq.k(), 5u);
  EXPECT_EQ(eq.str(), "1,1,1,-1,-2");
  EXPECT_EQ(eq.abs_sum(), 6);
  // Invariance is checked against the ring the equation is used over.
  EXPECT_THROW(EquationSpec({1, 1, -1}).check_group(*z(9)), UsageError);
  EXPECT_THROW(EquationSpec({1, -1}), UsageError);
  EXPECT_THROW(EquationSpec({1, 0, -1}), UsageError);
  EXPECT_THROW(EquationSpec::parse("1,x,-1"), UsageError);
  // Over F_5 the sum only has to vanish mod 5.
  EXPECT_NO_THROW(EquationSpec({1, 1, 1, 1, 1}, *fp(5, 1)));
  EXPECT_THROW(EquationSpec({1, 1, 1, 1, 1}, *fp(3, 1)), UsageError);
  EXPECT_THROW(EquationSpec({1, 1, 1}, *fp(3, 1)).check_group(*z(9)), UsageError);
}

TEST(Equation, RequiredModulusIsCoprimeAndLargeEnough) {
  const EquationSpec eq({1, 1, 1, -1, -2});
  const auto m = required_modulus(eq, 100);
  EXPECT_GT(m, 6u * 99u);
  for (auto a : eq.coeffs()) EXPECT_TRUE(coefficient_inverse(GroupCtx::cyclic(m), a).has_value());
}

TEST(CountT, FullGroupAndDiagonal) {
  const GroupPtr g = fp(5, 1);
  const EquationSpec eq({1, 1, 1, 1, 1}, *g);
  for (auto method : {CountMethod::Brute, CountMethod::Fourier}) {
    const auto full = count_T(eq, copies(Dfn::constant(g, 1.0), 5), method);
    EXPECT_NEAR(full.total.real(), 625.0, 1e-9);
    const auto single = count_T(eq, copies(Dfn::indicator(g, std::vector<Index>{0}), 5), method);
    EXPECT_NEAR(single.total.real(), 1.0, 1e-9);
    EXPECT_NEAR(single.trivial.real(), 1.0, 1e-12);
  }
}

TEST(CountT, RandomComplexOnZ12) {
  SplitMix64 rng(1);
  const GroupPtr g = z(12);
  const EquationSpec eq({1, 1, -2});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Dfn> hs;
    for (int i = 0; i < 3; ++i) hs.push_back(oracle::random_complex(g, rng));
    const Complex want = oracle::count_T(eq, hs);
    const Complex brute = count_T(eq, hs, CountMethod::Brute).total;
    const Complex fast = count_T(eq, hs, CountMethod::Fourier).total;
    EXPECT_NEAR(std::abs(brute - want), 0.0, 1e-9 * std::max(1.0, std::abs(want)));
    EXPECT_NEAR(std::abs(fast - want), 0.0, 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST(CountT, NonInvertibleCoefficientFallsBackToScan) {
  // In Z_12 no coefficient of (2, 2, -4) is invertible.
  SplitMix64 rng(2);
  const GroupPtr g = z(12);
  const EquationSpec eq({2, 2, -4});
  std::vector<Dfn> hs;
  for (int i = 0; i < 3; ++i) hs.push_back(oracle::random_real(g, rng));
  const Complex want = oracle::count_T(eq, hs);
  EXPECT_NEAR(std::abs(count_T(eq, hs, CountMethod::Brute).total - want), 0.0, 1e-9 * std::abs(want) + 1e-9);
  EXPECT_NEAR(std::abs(count_T(eq, hs, CountMethod::Fourier).total - want), 0.0, 1e-9 * std::abs(want) + 1e-9);
}

TEST(CountT, IntegerModelPaddingEnforced) {
  const GroupPtr g = z(50);
  const SetA a(g, {0, 10, 40});
  const EquationSpec eq({1, 1, -2});
  try {
    count_T(eq, copies(a.indicator(), 3), CountMethod::Brute, Ambient::IntegerModel);
    FAIL() << "expected the padding check to fire";
  } catch (const UsageError& e) {
    // 40 is read as its signed representative -10, so the window is [-10, 10].
    EXPECT_NE(std::string(e.what()).find(std::to_string(required_modulus(eq, 21))), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(count_T(eq, copies(a.indicator(), 3), CountMethod::Brute, Ambient::Group));
}

TEST(CountT, IntegerModelMatchesIntegerOracle) {
  SplitMix64 rng(3);
  for (const EquationSpec& eq : {EquationSpec({1, 1, -2}), EquationSpec({1, 1, 1, -1, -2}), EquationSpec({2, 3, -5}),
                                 EquationSpec({1, -1, 3, -3})}) {
    for (int trial = 0; trial < 5; ++trial) {
      const std::uint64_t n = 20 + rng.below(15);
      const GroupPtr g = z(required_modulus(eq, n));
      std::vector<Index> el;
      std::vector<std::int64_t> values;
      for (std::uint64_t x = 0; x < n; ++x) {
        if (rng.uniform() < 0.4) {
          el.push_back(x);
          values.push_back(static_cast<std::int64_t>(x));
        }
      }
      const SetA a(g, el);
      const Int128 want = oracle::integer_solutions(eq.coeffs(), values);
      for (auto method : {CountMethod::Brute, CountMethod::Fourier}) {
        const auto r = count_T(eq, copies(a.indicator(), eq.k()), method, Ambient::IntegerModel);
        EXPECT_EQ(std::llround(r.total.real()), static_cast<long long>(want)) << eq.str();
      }
      EXPECT_EQ(count_solutions(eq, a, Ambient::IntegerModel).total, want);
    }
  }
}

TEST(CountT, MultilinearAndTranslationInvariant) {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const GroupPtr g = trial % 2 ? z(15 + trial % 7) : fp(3, 2);
    const EquationSpec eq = trial % 2 ? EquationSpec({1, 1, -2}) : EquationSpec({1, 1, 1}, *g);
    std::vector<Dfn> hs;
    for (int i = 0; i < 3; ++i) hs.push_back(oracle::random_complex(g, rng));
    const Dfn alt = oracle::random_complex(g, rng);
    const Complex alpha(0.7, -0.2);
    const Complex beta(-1.3, 0.4);
    auto mixed = hs;
    mixed[1] = hs[1].scaled(alpha).plus(alt.scaled(beta));
    auto with_alt = hs;
    with_alt[1] = alt;
    const Complex lhs = count_T(eq, mixed, CountMethod::Brute).total;
    const Complex rhs = alpha * count_T(eq, hs, CountMethod::Brute).total +
                        beta * count_T(eq, with_alt, CountMethod::Brute).total;
    ASSERT_NEAR(std::abs(lhs - rhs), 0.0, 1e-9 * std::max(1.0, std::abs(lhs)));

    const Index c = rng.below(g->order());
    std::vector<Dfn> shifted;
    for (const auto& h : hs) shifted.push_back(h.translated(c));
    const Complex base = count_T(eq, hs, CountMethod::Brute).total;
    ASSERT_NEAR(std::abs(count_T(eq, shifted, CountMethod::Brute).total - base), 0.0,
                1e-12 * std::max(1.0, std::abs(base)));
  }
}

TEST(CountSolutions, EquationFreeSetsCountOnlyTheDiagonal) {
  const EquationSpec eq({1, 1, -2});
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SetA a = construct::equation_free_greedy(eq, 80, seed);
    const auto r = count_T(eq, copies(a.indicator(), 3), CountMethod::Fourier, Ambient::IntegerModel);
    EXPECT_EQ(std::llround(r.total.real()), static_cast<long long>(a.size()));
    const SolutionCounts sc = count_solutions(eq, a, Ambient::IntegerModel);
    EXPECT_EQ(sc.nontrivial(), 0);
    EXPECT_FALSE(sc.first_nontrivial.has_value());
  }
}

TEST(CountSolutions, AllDistinctCountIsReported) {
  const GroupPtr g = z(required_modulus(EquationSpec({1, 1, -2}), 10));
  const SetA a(g, {0, 1, 2});
  const SolutionCounts sc = count_solutions(EquationSpec({1, 1, -2}), a, Ambient::IntegerModel);
  // 0 + 2 = 2*1 in both orders, plus the three diagonal solutions.
  EXPECT_EQ(sc.total, 5);
  EXPECT_EQ(sc.trivial, 3);
  EXPECT_EQ(sc.all_distinct, 2);
}

TEST(TrivialValue, SingletonAndCorpus) {
  const EquationSpec eq({1, 1, 1, -1, -2});
  const GroupPtr g = z(required_modulus(eq, 30));
  const SetA single(g, {0}, {}, 30);
  const auto tv = trivial_solution_value(eq, single, 2);
  EXPECT_NEAR(tv.value, std::pow(30.0, 2.5), 1e-9 * tv.value);
  EXPECT_TRUE(tv.report.pass());
  const EquationSpec ap({1, 1, -2});
  const SetA a = construct::equation_free_greedy(ap, 100, 3);
  const auto tv2 = trivial_solution_value(ap, a, 2);
  EXPECT_TRUE(tv2.report.pass());
  EXPECT_NEAR(tv2.counted, tv2.value, 1e-8 * tv2.value);
}

TEST(TrivialValue, PlantedSolutionIsReported) {
  const EquationSpec eq({1, 1, -2});
  const GroupPtr g = z(required_modulus(eq, 40));
  const SetA a(g, {3, 10, 17, 30}, {}, 40);  // 3 + 17 = 2 * 10
  try {
    trivial_solution_value(eq, a, 2);
    FAIL() << "expected a precondition failure";
  } catch (const PreconditionError& e) {
    const auto& w = e.witness().at("solution");
    std::vector<std::string> got;
    for (const auto& v : w) got.push_back(v.get<std::string>());
    EXPECT_EQ(got, (std::vector<std::string>{"3", "17", "10"}));
  }
}

TEST(CountingLemma, ScaledIndicatorAndZeroSlot) {
  const EquationSpec eq({1, 1, 1, -1, -2});
  const GroupPtr g = z(required_modulus(eq, 20));
  const SetA a = construct::erdos_turan_sidon(3).reembedded(g);
  const Dfn nu = a.indicator().scaled(2.0);
  const auto rep = verify_counting_lemma(eq, nu, copies(nu, 5));
  EXPECT_TRUE(rep.pass()) << rep.to_json().dump(2);
  auto fs = copies(nu, 5);
  fs[0] = Dfn::zeros(g);
  const auto zero = verify_counting_lemma(eq, nu, fs);
  EXPECT_TRUE(zero.pass());
  EXPECT_NEAR(counting_chain(eq, nu, fs).t.real(), 0.0, 1e-9);
}

TEST(CountingLemma, RandomDominatedFamilies) {
  SplitMix64 rng(5);
  const GroupPtr g = z(65);
  for (const EquationSpec& eq : {EquationSpec({1, 1, 1, -1, -2}), EquationSpec({1, 1, 1, 1, -1, -3})}) {
    for (int trial = 0; trial < 30; ++trial) {
      const Dfn nu = oracle::random_real(g, rng, 0.0, 1.0);
      std::vector<Dfn> fs;
      for (std::size_t i = 0; i < eq.k(); ++i) {
        std::vector<Complex> v(g->order());
        for (Index x = 0; x < g->order(); ++x) v[x] = nu[x].real() * std::polar(rng.uniform(), 6.283185 * rng.uniform());
        fs.emplace_back(g, Tag::Complex, v);
      }
      ASSERT_TRUE(verify_counting_lemma(eq, nu, fs).pass());
    }
  }
}

TEST(CountingLemma, DominationViolationLocated) {
  const EquationSpec eq({1, 1, 1, -1, -2});
  const GroupPtr g = z(15);
  const Dfn nu = Dfn::constant(g, 0.5);
  auto fs = copies(nu, 5);
  fs[2] = Dfn::delta(g, 7);
  try {
    verify_counting_lemma(eq, nu, fs);
    FAIL() << "expected a domination failure";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("7"), std::string::npos) << e.what();
  }
  EXPECT_THROW(verify_counting_lemma(EquationSpec({1, 1, -2}), nu, copies(nu, 3)), UsageError);
  // The chain compares norms of dilated transforms, so every dilation must be a bijection.
  EXPECT_THROW(verify_counting_lemma(eq, Dfn::constant(z(16), 0.5), copies(Dfn::constant(z(16), 0.5), 5)), UsageError);
}

TEST(Telescoping, ChainSkippedWhenDilationIsNotBijective) {
  SplitMix64 rng(8);
  const GroupPtr g = z(30);
  const Dfn f = oracle::random_real(g, rng, 0.0, 1.0);
  const auto rep = verify_telescoping(EquationSpec({1, 1, 1, -1, -2}), f, oracle::random_real(g, rng, 0.0, 1.0));
  EXPECT_TRUE(rep.pass()) << rep.to_json().dump();
  EXPECT_FALSE(rep.to_json().at("quantities").contains("sum_i bound_i"));
}

TEST(Telescoping, DegenerateCases) {
  SplitMix64 rng(6);
  const GroupPtr g = z(31);
  const EquationSpec eq({1, 1, 1, -1, -2});
  const Dfn f = oracle::random_real(g, rng, 0.0, 1.0);
  EXPECT_TRUE(verify_telescoping(eq, f, f).pass());
  EXPECT_TRUE(verify_telescoping(eq, f, Dfn::zeros(g)).pass());
  EXPECT_TRUE(verify_telescoping(EquationSpec({1, 1, -2}), f, oracle::random_real(g, rng)).pass());
}

TEST(Telescoping, RandomPairs) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const GroupPtr g = trial % 2 ? z(24 + trial) : fp(3, 3);
    const EquationSpec eq = trial % 2 ? EquationSpec({1, 1, 1, -1, -2}) : EquationSpec({1, 1, 1, 1, 2}, *g);
    const auto rep = verify_telescoping(eq, oracle::random_real(g, rng), oracle::random_real(g, rng));
    ASSERT_TRUE(rep.pass()) << rep.to_json().dump();
  }
}

TEST(Telescoping, DenseModelOfSidonSet) {
  const EquationSpec eq({1, 1, 1, -1, -2});
  const SetA a = construct::erdos_turan_sidon(5);
  const DenseModel m = build_dense_model(a, 2, 2, Rational(1, 8), ModelMode::IntegerModel);
  const SetA wide = m.set.reembedded(make_group(GroupCtx::cyclic(required_modulus(eq, m.set.ctx().modulus()))));
  const DenseModel mw = build_dense_model(wide, 2, 2, Rational(1, 8), ModelMode::IntegerModel);
  const Dfn big_f = mw.set.indicator().scaled(mw.scale);
  EXPECT_TRUE(verify_telescoping(eq, mw.f, big_f).pass());
}

TEST(LevelSet, ConstantFunction) {
  const GroupPtr g = z(20);
  const auto [a0, rep] = level_set_extract(Dfn::constant(g, 1.0), 1.0, 2.0);
  EXPECT_EQ(a0.size(), 20u);
  EXPECT_TRUE(rep.pass());
}

TEST(LevelSet, SpikeOnTenPoints) {
  const GroupPtr g = z(10);
  const auto [a0, rep] = level_set_extract(Dfn::delta(g, 0).scaled(2.0), 0.2, 2.0);
  ASSERT_EQ(a0.size(), 1u);
  EXPECT_EQ(a0.elements()[0], 0u);
  EXPECT_TRUE(rep.pass());
  EXPECT_THROW(level_set_extract(Dfn::delta(g, 0).scaled(-1.0), 0.2, 2.0), UsageError);
}

TEST(LevelSet, RandomNormalisedFunctions) {
  SplitMix64 rng(8);
  for (double p : {2.0, 3.0}) {
    for (int trial = 0; trial < 50; ++trial) {
      const GroupPtr g = z(50 + trial);
      std::vector<double> v(g->order());
      for (auto& x : v) x = rng.uniform() < 0.3 ? 3.0 * rng.uniform() : 0.0;
      double sp = 0;
      for (double x : v) sp += std::pow(x, p);
      const double scale = std::pow(static_cast<double>(g->order()) / std::max(sp, 1e-300), 1.0 / p);
      for (auto& x : v) x *= std::min(1.0, scale);
      double sum = 0;
      for (double x : v) sum += x;
      const double delta = sum / static_cast<double>(g->order());
      const auto [a0, rep] = level_set_extract(Dfn(g, v), delta, p);
      ASSERT_TRUE(rep.pass()) << rep.to_json().dump();
      EXPECT_GE(static_cast<double>(a0.size()) + 1e-9,
                std::pow(delta / 2, p / (p - 1)) * static_cast<double>(g->order()));
    }
  }
}

TEST(Supersaturation, Examples) {
  const GroupPtr g1 = fp(3, 1);
  const EquationSpec eq3({1, 1, 1}, *g1);
  const auto zero = verify_supersaturation(eq3, SetA(g1, {0}));
  EXPECT_TRUE(zero.pass());
  EXPECT_EQ(zero.quantities().at("cycles"), 1);
  const auto full = verify_supersaturation(eq3, SetA(g1, {0, 1, 2}));
  EXPECT_TRUE(full.pass());
  EXPECT_EQ(full.quantities().at("cycles"), 9);

  SplitMix64 rng(9);
  const GroupPtr g2 = fp(3, 2);
  const SetA a0 = oracle::random_set(g2, 5, rng);
  const EquationSpec eq({1, 2, 1, 2}, *g2);
  const auto rep = verify_supersaturation(eq, a0);
  EXPECT_TRUE(rep.pass());
  EXPECT_GE(rep.quantities().at("cycles").get<std::int64_t>(), 5);
  EXPECT_EQ(rep.quantities().at("cycles").get<std::int64_t>(),
            static_cast<std::int64_t>(oracle::group_solutions(eq, a0)));
}

TEST(Supersaturation, CycleCounting) {
  const GroupPtr g = fp(5, 1);
  std::vector<SetA> xs{SetA(g, {0, 1}), SetA(g, {2}), SetA(g, {2, 3, 4})};
  // x + 2 + z = 0 mod 5: (0, 2, 3), (1, 2, 2).
  EXPECT_EQ(count_k_cycles(xs), 2);
}

TEST(Pipeline, SingletonGivesTrivialLedger) {
  const EquationSpec eq({1, 1, 1, -1, -2});
  const GroupPtr g = z(61);
  const SetA a(g, {0}, {}, 30);
  const PipelineReport r = run_transference_pipeline(a, eq, 2, 2, Rational(1, 8));
  EXPECT_TRUE(r.pass()) << r.to_json().dump(2);
  EXPECT_NEAR(r.ledger.at("T(F)").get<double>(), std::pow(30.0, 2.5), 1e-6 * std::pow(30.0, 2.5));
  EXPECT_TRUE(r.ledger.at("equation_free").get<bool>());
}

TEST(Pipeline, SidonSetEleven) {
  const PipelineReport r =
      run_transference_pipeline(construct::erdos_turan_sidon(11), EquationSpec({1, 1, 1, -1, -2}), 2, 2, Rational(1, 8));
  EXPECT_TRUE(r.pass()) << r.to_json().dump(2);
  for (const char* key : {"T(f)", "T(F)", "|T(f) - T(F)|", "||g^||_inf", "sum nu", "|A_0|"}) {
    EXPECT_TRUE(r.ledger.contains(key)) << key;
  }
}
