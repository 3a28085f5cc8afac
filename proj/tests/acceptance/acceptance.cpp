// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "addlab/counting.hpp"
#include "addlab/dense_model.hpp"
#include "addlab/energy.hpp"
#include "addlab/spectral.hpp"
#include "addlab/suite.hpp"
#include "oracles.hpp"

using namespace addlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failures with the first few messages kept for the summary line.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_ += (messages_.empty() ? "" : "; ") + what;
  }
  void report(const VerificationReport& rep, const std::string& what) {
    check(rep.pass(), what + (rep.pass() ? "" : " [" + rep.failures().front() + "]"));
  }
  std::uint64_t checks() const { return checks_; }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream out;
    out << summary << ", " << checks_ << " checks, " << failures_ << " failures";
    if (!messages_.empty()) out << " (" << messages_ << ")";
    return {failures_ == 0, out.str()};
  }

 private:
  std::uint64_t checks_ = 0;
  std::uint64_t failures_ = 0;
  std::string messages_;
};

GroupPtr z(std::uint64_t m) { return make_group(GroupCtx::cyclic(m)); }
GroupPtr space(std::uint32_t p, std::uint32_t r, std::uint32_t n) {
  return make_group(GroupCtx::vector_space(r == 1 ? FieldCtx::prime(p) : FieldCtx::builtin(p, r), n));
}

std::vector<Dfn> copies(const Dfn& h, std::size_t k) { return std::vector<Dfn>(k, h); }

// E_s(1_A, 1_{-A}) = sum_d #{(a_1..a_s) in A^s : a_i - d in A for all i}.
Int128 energy_by_shifted_tuples(const SetA& a, int s) {
  const GroupCtx& g = a.ctx();
  const auto el = a.elements();
  Int128 total = 0;
  if (el.empty()) return 0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(s), 0);
  for (Index d = 0; d < g.order(); ++d) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      bool ok = true;
      for (std::size_t i = 0; i < idx.size() && ok; ++i) ok = a.contains(g.sub(el[idx[i]], d));
      total += ok;
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == el.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  return total;
}

// 1. Fast transform against the O(N^2) definition, plus Parseval.
Outcome fourier_correctness() {
  Tally tally;
  SplitMix64 rng(1001);
  const std::vector<GroupPtr> groups{z(60), z(256), z(1024), space(3, 1, 4), space(5, 1, 3), space(3, 2, 2)};
  double worst = 0;
  for (const GroupPtr& g : groups) {
    const Index n = g->order();
    std::vector<Complex> table(n * n);
    for (Index x = 0; x < n; ++x) {
      for (Index xi = 0; xi < n; ++xi) table[x * n + xi] = std::conj(oracle::character(*g, x, xi));
    }
    for (int trial = 0; trial < 100; ++trial) {
      const Dfn h = oracle::random_complex(g, rng);
      std::vector<Complex> want(n, Complex(0));
      for (Index x = 0; x < n; ++x) {
        const Complex hx = h[x];
        const Complex* row = &table[x * n];
        for (Index xi = 0; xi < n; ++xi) want[xi] += hx * row[xi];
      }
      const Dfn fast = fourier(h);
      const double err = oracle::max_rel_error(fast.values(), want);
      worst = std::max(worst, err);
      tally.check(err < 1e-9, g->encoding() + " transform error " + std::to_string(err));
      const double phys = power_sum(h, 2.0);
      const double dual = dual_mean_power(fast, 2.0);
      tally.check(std::abs(phys - dual) <= 1e-9 * phys, g->encoding() + " Parseval");
    }
  }
  std::ostringstream s;
  s << "6 groups x 100 random functions, worst rel error " << worst;
  return tally.outcome(s.str());
}

// 2. Fourier-side second energy and exact energies against tuple enumeration.
Outcome energy_exactness() {
  Tally tally;
  SplitMix64 rng(1002);
  for (int trial = 0; trial < 200; ++trial) {
    const GroupPtr g = trial % 4 == 3 ? space(3, 1, 4) : z(50 + rng.below(200));
    const SetA a = oracle::random_set(g, 1 + rng.below(40), rng);
    const auto r = rep_diff_counts(a);
    Int128 e2 = 0;
    for (auto v : r) e2 += static_cast<Int128>(v) * v;
    const double fourier_side = dual_mean_power(fourier(a.indicator()), 4.0);
    tally.check(std::abs(static_cast<double>(e2) - fourier_side) <= 1e-8 * static_cast<double>(e2),
                "second energy identity on " + g->encoding());
  }
  int small = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const GroupPtr g = trial % 3 == 2 ? space(5, 1, 2) : z(16 + rng.below(40));
    const SetA a = oracle::random_set(g, 1 + rng.below(12), rng);
    for (int s = 1; s <= 4; ++s) {
      const Int128 exact = energy_exact(a, s);
      tally.check(exact == energy_by_shifted_tuples(a, s), "E_" + std::to_string(s) + " vs shifted tuples");
      const std::vector<Dfn> fs{a.indicator(), a.negated().indicator()};
      const double floating = energy(fs, s);
      tally.check(std::llround(floating) == static_cast<long long>(exact), "floating energy rounds to exact");
      if (a.size() <= 8 && s <= 3) {
        tally.check(exact == oracle::energy_by_tuples(a, s), "E_s vs full 2s-tuple enumeration");
        ++small;
      }
    }
  }
  return tally.outcome("200 random sets for the Fourier identity, 60 sets |A| <= 12 with s <= 4 exact");
}

// 3. Shift bound on free sets and freeness against the exhaustive grid oracle.
Outcome shift_bound_and_freeness() {
  Tally tally;
  SplitMix64 rng(1003);
  std::uint64_t generated = 0;
  std::uint64_t oracle_checked = 0;
  std::uint64_t sharp = 0;
  for (auto [s, t] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
    for (int trial = 0; trial < 200; ++trial) {
      const SetA a = trial % 5 == 4 ? construct::greedy_kst_free_in(space(3, 1, 3), s, t, 7 * trial + 1)
                                    : construct::greedy_kst_free(s, t, 12 + rng.below(60), 7 * trial + 1);
      ++generated;
      const TupleStats st = tuple_statistics(a, s, t);
      tally.check(st.distinct_rep_max <= static_cast<std::uint64_t>(t - 1), "distinct tuple with rep > t-1");
      sharp += st.distinct_rep_max + 2 <= static_cast<std::uint64_t>(t);
      if (a.size() <= 14) {
        tally.check(!oracle::has_kst_grid(a, s, t), "generated set has a grid");
        ++oracle_checked;
      }
      const GroupPtr g = trial % 3 == 0 ? space(3, 1, 3) : z(14 + rng.below(16));
      const SetA r = oracle::random_set(g, 2 + rng.below(13), rng);
      const auto w = find_kst_grid(r, s, t);
      tally.check(!w.has_value() == !oracle::has_kst_grid(r, s, t), "freeness disagrees with the oracle");
      if (w) tally.check(is_grid_witness(r, *w, s, t), "witness is not a grid");
      ++oracle_checked;
    }
  }
  std::ostringstream out;
  out << generated << " generated free sets (sharper bound rep <= t-2 held on " << sharp << "), " << oracle_checked
      << " sets with |A| <= 14 against the exhaustive oracle";
  return tally.outcome(out.str());
}

// 4. E_2 <= 2|A|^2 - |A| on Sidon sets.
Outcome sidon_energy() {
  Tally tally;
  std::vector<SetA> corpus;
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u, 19u}) corpus.push_back(construct::erdos_turan_sidon(p));
  for (std::uint64_t seed = 1; seed <= 40; ++seed) corpus.push_back(construct::greedy_kst_free(2, 2, 50 + 10 * seed, seed));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    corpus.push_back(construct::greedy_kst_free_in(space(3, 1, 4), 2, 2, seed));
    corpus.push_back(construct::greedy_kst_free_in(space(5, 1, 3), 2, 2, seed));
  }
  for (const SetA& a : corpus) {
    const Int128 n = static_cast<Int128>(a.size());
    tally.check(energy_exact(a, 2) <= 2 * n * n - n, "E_2 > 2|A|^2 - |A| on " + a.provenance().construction);
    tally.report(verify_lemma_Es(a, 2, 2), "Sidon energy report");
  }
  return tally.outcome(std::to_string(corpus.size()) + " Sidon sets including Erdos-Turan p = 5..19");
}

std::vector<std::pair<SetA, std::pair<int, int>>> free_corpus() {
  std::vector<std::pair<SetA, std::pair<int, int>>> out;
  for (auto st : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
    for (std::uint64_t n : {64, 128, 256}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) out.push_back({construct::greedy_kst_free(st.first, st.second, n, seed), st});
    }
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      out.push_back({construct::greedy_kst_free_in(space(3, 1, 4), st.first, st.second, seed), st});
    }
  }
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u}) out.push_back({construct::erdos_turan_sidon(p), {2, 2}});
  return out;
}

// 5. rA-large and the size bound with explicit constants.
Outcome ra_large_and_size() {
  Tally tally;
  std::uint64_t applicable = 0;
  std::uint64_t total = 0;
  for (const auto& [a, st] : free_corpus()) {
    const auto [s, t] = st;
    for (const VerificationReport& rep : {verify_rA_large(a, s, t), verify_size_bound(a, s, t)}) {
      ++total;
      applicable += rep.applicable();
      tally.report(rep, rep.lemma());
    }
  }
  return tally.outcome(std::to_string(total) + " reports over the free corpus, " + std::to_string(applicable) +
                       " applicable (eta < 1)");
}

// 6. Dense model properties, both modes; S-chain on F_3^n, n <= 6.
Outcome dense_model_properties() {
  Tally tally;
  int models = 0;
  for (std::uint32_t n = 2; n <= 6; ++n) {
    for (auto [s, t] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
      const SetA a = construct::greedy_kst_free_in(space(3, 1, n), s, t, n);
      for (const Rational eps : {Rational(1, 8), Rational(1, 4)}) {
        const DenseModel m = build_dense_model(a, s, t, eps, ModelMode::FiniteField);
        tally.report(verify_model_properties(m), "ffield properties");
        tally.report(verify_S_decomposition(a, s, t, *m.subspace), "S-chain F_3^" + std::to_string(n));
        ++models;
      }
    }
  }
  for (std::uint64_t n : {64, 128, 256}) {
    for (auto [s, t] : {std::pair{2, 2}, {2, 3}}) {
      const SetA a = construct::greedy_kst_free(s, t, n, n);
      const DenseModel m = build_dense_model(a, s, t, Rational(1, 8), ModelMode::IntegerModel);
      tally.report(verify_model_properties(m), "integer properties");
      tally.report(verify_S_decomposition(m.set, s, t, m.smoother), "integer S-chain");
      ++models;
    }
  }
  for (std::uint32_t p : {5u, 7u, 11u}) {
    const DenseModel m = build_dense_model(construct::erdos_turan_sidon(p), 2, 2, Rational(1, 4), ModelMode::IntegerModel);
    tally.report(verify_model_properties(m), "integer properties on Erdos-Turan");
    ++models;
  }
  return tally.outcome(std::to_string(models) + " dense models");
}

// 7. Brute = Fourier, equation-free totals, multilinearity, translation invariance.
Outcome counting_properties() {
  Tally tally;
  SplitMix64 rng(1007);
  const std::vector<EquationSpec> eqs{EquationSpec({1, 1, -2}), EquationSpec({1, 1, 1, -1, -2}), EquationSpec({2, 3, -5}),
                                      EquationSpec({1, -1, 1, -1})};
  int instances = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const EquationSpec& eq = eqs[trial % eqs.size()];
    const GroupPtr g = z(eq.k() >= 5 ? 11 + rng.below(6) : 12 + rng.below(20));
    std::vector<Dfn> hs;
    for (std::size_t i = 0; i < eq.k(); ++i) hs.push_back(oracle::random_complex(g, rng));
    const Complex brute = count_T(eq, hs, CountMethod::Brute).total;
    const Complex fast = count_T(eq, hs, CountMethod::Fourier).total;
    tally.check(std::abs(brute - fast) <= 1e-6 * std::max(1.0, std::abs(brute)), "brute != fourier");
    ++instances;

    // Multilinearity in a random slot.
    const std::size_t slot = rng.below(eq.k());
    const Dfn alt = oracle::random_complex(g, rng);
    const Complex alpha(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
    const Complex beta(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
    auto mixed = hs;
    mixed[slot] = hs[slot].scaled(alpha).plus(alt.scaled(beta));
    auto with_alt = hs;
    with_alt[slot] = alt;
    const Complex lhs = count_T(eq, mixed, CountMethod::Fourier).total;
    const Complex rhs = alpha * fast + beta * count_T(eq, with_alt, CountMethod::Fourier).total;
    tally.check(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)), "multilinearity");

    // Translation invariance on integer-valued inputs, compared exactly.
    std::vector<Dfn> ints;
    for (std::size_t i = 0; i < eq.k(); ++i) {
      std::vector<double> v(g->order());
      for (auto& x : v) x = static_cast<double>(static_cast<int>(rng.below(7)) - 3);
      ints.emplace_back(g, v);
    }
    const Index c = rng.below(g->order());
    std::vector<Dfn> shifted;
    for (const auto& h : ints) shifted.push_back(h.translated(c));
    tally.check(count_T(eq, ints, CountMethod::Brute).total == count_T(eq, shifted, CountMethod::Brute).total,
                "translation invariance");
  }
  for (const EquationSpec& eq : {EquationSpec({1, 1, -2}), EquationSpec({1, 2, -3}), EquationSpec({1, 1, 1, -3})}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const SetA a = construct::equation_free_greedy(eq, 120, seed);
      for (auto method : {CountMethod::Brute, CountMethod::Fourier}) {
        const auto r = count_T(eq, copies(a.indicator(), eq.k()), method, Ambient::IntegerModel);
        tally.check(std::llround(r.total.real()) == static_cast<long long>(a.size()), "equation-free total != |A|");
        ++instances;
      }
      std::vector<std::int64_t> values;
      for (Index x : a.elements()) values.push_back(static_cast<std::int64_t>(x));
      tally.check(oracle::integer_solutions(eq.coeffs(), values) == static_cast<Int128>(a.size()),
                  "integer oracle disagrees on equation-free set");
    }
  }
  return tally.outcome(std::to_string(instances) + " count instances, 100 multilinearity and 100 translation trials");
}

// 8. Counting-lemma chain on random dominated families.
Outcome counting_lemma_chain() {
  Tally tally;
  SplitMix64 rng(1008);
  for (const EquationSpec& eq : {EquationSpec({1, 1, 1, -1, -2}), EquationSpec({1, 1, 1, 1, -1, -3})}) {
    for (int trial = 0; trial < 100; ++trial) {
      const GroupPtr g = trial % 4 == 3 ? z(required_modulus(eq, 40)) : z(65);
      const Dfn nu = oracle::random_real(g, rng, 0.0, 2.0);
      std::vector<Dfn> fs;
      for (std::size_t i = 0; i < eq.k(); ++i) {
        std::vector<double> v(g->order());
        for (Index x = 0; x < g->order(); ++x) v[x] = nu[x].real() * (2.0 * rng.uniform() - 1.0);
        fs.emplace_back(g, v);
      }
      tally.report(verify_counting_lemma(eq, nu, fs), "counting lemma k=" + std::to_string(eq.k()));
    }
  }
  return tally.outcome("100 dominated families for each k in {5, 6}");
}

std::vector<std::pair<SetA, std::pair<int, int>>> pipeline_corpus() {
  std::vector<std::pair<SetA, std::pair<int, int>>> out;
  for (std::uint32_t p : {5u, 7u, 11u}) out.push_back({construct::erdos_turan_sidon(p), {2, 2}});
  for (std::uint64_t n : {64, 128, 256}) {
    out.push_back({construct::greedy_kst_free(2, 2, n, n), {2, 2}});
    out.push_back({construct::greedy_kst_free(2, 3, n, n + 1), {2, 3}});
  }
  return out;
}

// 9. Telescoping identity and the transference ledger.
Outcome telescoping_and_ledger() {
  Tally tally;
  SplitMix64 rng(1009);
  for (int trial = 0; trial < 100; ++trial) {
    const GroupPtr g = trial % 3 == 2 ? space(3, 1, 3) : z(20 + rng.below(40));
    const EquationSpec eq = trial % 3 == 2 ? EquationSpec({1, 1, 1, 1, 2}, *g) : EquationSpec({1, 1, 1, -1, -2});
    const Dfn f = oracle::random_real(g, rng, 0.0, 2.0);
    const Dfn big_f = oracle::random_real(g, rng, 0.0, 2.0);
    tally.report(verify_telescoping(eq, f, big_f), "telescoping");
  }
  const EquationSpec eq({1, 1, 1, -1, -2});
  int pipelines = 0;
  for (const auto& [a, st] : pipeline_corpus()) {
    const PipelineReport r = run_transference_pipeline(a, eq, st.first, st.second, Rational(1, 8));
    for (const auto& rep : r.reports) tally.report(rep, "pipeline " + rep.lemma());
    ++pipelines;
  }
  return tally.outcome("100 random (f, F) pairs, " + std::to_string(pipelines) + " pipelines");
}

// 10. Diagonal cycles and the cycle/solution bijection on F_3^n, F_5^n.
Outcome supersaturation() {
  Tally tally;
  SplitMix64 rng(1010);
  int runs = 0;
  for (std::uint32_t n = 1; n <= 7; ++n) {
    const GroupPtr g = space(3, 1, n);
    for (const EquationSpec& eq : {EquationSpec({1, 1, 1}, *g), EquationSpec({1, 2, 1, 2}, *g)}) {
      const std::size_t size = std::min<std::uint64_t>(g->order(), eq.k() == 3 ? 60 : 25);
      const SetA a0 = oracle::random_set(g, 1 + rng.below(size), rng);
      tally.report(verify_supersaturation(eq, a0), "F_3^" + std::to_string(n));
      ++runs;
    }
  }
  for (std::uint32_t n = 1; n <= 5; ++n) {
    const GroupPtr g = space(5, 1, n);
    for (const EquationSpec& eq : {EquationSpec({1, 2, 2}, *g), EquationSpec({1, 1, 1, 1, 1}, *g)}) {
      const std::size_t size = std::min<std::uint64_t>(g->order(), eq.k() == 3 ? 60 : 12);
      const SetA a0 = oracle::random_set(g, 1 + rng.below(size), rng);
      const auto rep = verify_supersaturation(eq, a0);
      tally.report(rep, "F_5^" + std::to_string(n));
      if (a0.size() <= 12) {
        tally.check(rep.quantities().at("solutions").get<std::int64_t>() ==
                        static_cast<std::int64_t>(oracle::group_solutions(eq, a0)),
                    "solution count vs enumeration");
      }
      ++runs;
    }
  }
  return tally.outcome(std::to_string(runs) + " sets in F_3^n (n <= 7) and F_5^n (n <= 5)");
}

// 11. Level-set bound for normalised nonnegative functions.
Outcome level_sets() {
  Tally tally;
  SplitMix64 rng(1011);
  for (double p : {2.0, 3.0}) {
    for (int trial = 0; trial < 100; ++trial) {
      const GroupPtr g = z(32 + rng.below(200));
      const double density = 0.05 + 0.9 * rng.uniform();
      std::vector<double> v(g->order());
      for (auto& x : v) x = rng.uniform() < density ? 4.0 * rng.uniform() : 0.0;
      double sp = 0;
      for (double x : v) sp += std::pow(x, p);
      const double n = static_cast<double>(g->order());
      if (sp > n) {
        const double scale = std::pow(n / sp, 1.0 / p) * (1.0 - 1e-12);
        for (auto& x : v) x *= scale;
      }
      double sum = 0;
      for (double x : v) sum += x;
      if (sum <= 0) v[0] = 1.0, sum = 1.0;
      const auto [a0, rep] = level_set_extract(Dfn(g, v), sum / n, p);
      tally.report(rep, "level set");
      tally.check(static_cast<double>(a0.size()) >= std::pow(sum / n / 2, p / (p - 1)) * n * (1 - 1e-12),
                  "|A_0| below (delta/2)^{p/(p-1)} N");
    }
  }
  return tally.outcome("100 functions for each p in {2, 3}");
}

// 12. Full pipeline on the Erdos-Turan set for p = 31.
Outcome end_to_end() {
  Tally tally;
  const auto start = std::chrono::steady_clock::now();
  const SetA a = construct::erdos_turan_sidon(31);
  const PipelineReport r = run_transference_pipeline(a, EquationSpec({1, 1, 1, -1, -2}), 2, 2, Rational(1, 8));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& rep : r.reports) tally.report(rep, rep.lemma());
  tally.check(secs < 120.0, "runtime " + std::to_string(secs) + " s");
  for (const char* key : {"T(f)", "T(F)", "|T(f) - T(F)|", "||g^||_inf", "sum nu", "|A_0|", "diagonal_value"}) {
    tally.check(r.ledger.contains(key), std::string("ledger lacks ") + key);
  }
  emit_report("acceptance_pipeline_et31.json", r.to_json());
  std::ostringstream out;
  out << "N = " << r.ledger.at("N") << ", |A| = " << a.size() << ", " << secs << " s, ledger in acceptance_pipeline_et31.json";
  return tally.outcome(out.str());
}

// 13. Two suite runs with the same seed give the same report.
Outcome determinism() {
  Tally tally;
  SuiteConfig c;
  c.set("suites", "all");
  c.seed = 42;
  c.output = "acceptance-suite";
  const SuiteResult first = run_suite(c);
  const SuiteResult second = run_suite(c);
  tally.check(strip_timestamps(first.report) == strip_timestamps(second.report), "reports differ");
  tally.check(first.exit_code == 0, "suite run failed");
  return tally.outcome(std::to_string(first.report.at("jobs").size()) + " jobs, seed 42, compared modulo timestamps");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Fourier correctness", fourier_correctness},
      {"Convolution/energy exactness", energy_exactness},
      {"Admissible-shift bound and freeness oracle", shift_bound_and_freeness},
      {"Sidon second-energy bound", sidon_energy},
      {"rA-large and size bound", ra_large_and_size},
      {"Dense model properties", dense_model_properties},
      {"Counting properties", counting_properties},
      {"Counting lemma chain", counting_lemma_chain},
      {"Telescoping and transference ledger", telescoping_and_ledger},
      {"Supersaturation", supersaturation},
      {"Level-set bound", level_sets},
      {"End-to-end pipeline", end_to_end},
      {"Determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
