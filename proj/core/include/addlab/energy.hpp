#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "addlab/dfn.hpp"
#include "addlab/exact.hpp"
#include "addlab/report.hpp"
#include "addlab/set.hpp"

namespace addlab {

// Selects f_i = 1_A (Plus) or f_i = 1_{-A} (Minus) in an energy.
enum class Sign { Plus, Minus };

// +, -, +, - ... of length h.
std::vector<Sign> alternating_pattern(int h);

// E_s(f_1..f_h) = sum_n (f_1 * ... * f_h)(n)^s with f_i = 1_{±A}, in exact
// integers. Throws UsageError on 128-bit overflow.
Int128 energy_exact(const SetA& a, std::span<const Sign> pattern, int s);
// E_s(1_A, 1_{-A}).
Int128 energy_exact(const SetA& a, int s);

// Floating E_s for arbitrary real functions on a common group, via fast
// convolution. Throws UsageError on an empty list or complex input.
double energy(std::span<const Dfn> fs, int s);

// Aggregates over all ordered s-tuples a in A^s of rep = |D(a)|, split into
// tuples with pairwise-distinct entries and degenerate ones (some repeat).
struct TupleStats {
  int s = 0;
  int t = 0;
  std::uint64_t distinct_tuples = 0;
  std::uint64_t degenerate_tuples = 0;
  Int128 distinct_rep_total = 0;
  Int128 degenerate_rep_total = 0;
  std::uint64_t distinct_rep_max = 0;
  // Tuples with rep > t - 1, and sum of (rep - (t - 1))_+.
  std::uint64_t large_tuples = 0;
  Int128 distinct_excess = 0;
  Int128 degenerate_excess = 0;
  // First distinct tuple (lexicographic) attaining distinct_rep_max.
  std::vector<Index> max_tuple;

  Int128 rep_total() const { return distinct_rep_total + degenerate_rep_total; }
  Int128 excess_total() const { return distinct_excess + degenerate_excess; }
};

TupleStats tuple_statistics(const SetA& a, int s, int t);

// c_s from the energy lemma: (s-2)/(s-1) for s > 2 and 1 for s = 2.
double energy_exponent_cs(int s);

// |A|^h <= E_s <= |A|^{sh-s+1}.
VerificationReport verify_trivial_bounds(const SetA& a, int h, int s, std::span<const Sign> pattern = {});

// Hoelder interpolation of r = 1_A * 1_{-A} between ||r||_1 = |A|^2 and E_s:
// E_2 <= K^{1/(s-1)} |A|^{3-1/(s-1)} and, for s >= 3,
// E_{s-1} <= K^{(s-2)/(s-1)} |A|^{s-(s-2)/(s-1)}, K = E_s/|A|^s.
VerificationReport verify_lemma_E2(const SetA& a, int s);

// E_s = |A|^s + distinct + degenerate contributions, each distinct tuple
// having rep <= t - 1; hence E_s <= t|A|^s + degenerate. For s = 2 also
// E_2 <= t|A|^2 - (t-1)|A|. Throws PreconditionError if A is not K_{s,t}-free.
VerificationReport verify_lemma_Es(const SetA& a, int s, int t);

// With eta = E_s/|A|^s - t < 1: #{a : rep(a) > t-1} <= (1 - (1-eta)/t)|A|^s.
VerificationReport verify_rA_large(const SetA& a, int s, int t);

// With eta < 1 (eta <= 0 read as 0): |A| <= 2 (t^2/(1-eta))^{1/s} N^{1-1/s}.
VerificationReport verify_size_bound(const SetA& a, int s, int t);

// sum over tuples of (rep - (t-1))_+; the distinct-tuple part is 0 for free A.
// Throws PreconditionError if A is not K_{s,t}-free.
VerificationReport verify_vanishing(const SetA& a, int s, int t);

// Throws PreconditionError carrying the grid if A is not K_{s,t}-free.
void require_kst_free(const SetA& a, int s, int t);

}  // namespace addlab
