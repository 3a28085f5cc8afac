#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "addlab/dfn.hpp"
#include "addlab/equation.hpp"
#include "addlab/exact.hpp"
#include "addlab/rational.hpp"
#include "addlab/report.hpp"
#include "addlab/set.hpp"

namespace addlab {

enum class CountMethod { Brute, Fourier };

// How a cyclic group is being used. IntegerModel demands that the supports
// fit in a window short enough for Z_M-solutions to be integer solutions.
enum class Ambient { Group, IntegerModel };

// T(h_1..h_k) = sum over a_1 x_1 + ... + a_k x_k = 0 of prod h_i(x_i).
struct CountResult {
  Complex total;
  Complex trivial;  // diagonal part: sum_x prod h_i(x)
  CountMethod method;
};

// Brute: nested loops over supports (smallest first), the slot with the
// largest support and an invertible coefficient solved last. Fourier:
// (1/N) sum_xi prod_j h_j^(a_j xi). With Ambient::IntegerModel in Z_M, throws
// UsageError naming the minimal modulus when M is too small.
CountResult count_T(const EquationSpec& eq, std::span<const Dfn> hs, CountMethod method,
                    Ambient ambient = Ambient::Group);

// The signed-representative window [lo, hi] covering every support, and the
// smallest modulus making it integer-faithful for eq.
struct SupportWindow {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::uint64_t required_modulus = 1;
};
SupportWindow support_window(const EquationSpec& eq, std::span<const Dfn> hs);

// Exact solution counts of eq in A^k.
struct SolutionCounts {
  Int128 total = 0;
  Int128 trivial = 0;       // x_1 = ... = x_k
  Int128 all_distinct = 0;  // pairwise distinct coordinates
  std::optional<std::vector<Index>> first_nontrivial;  // lexicographic in A's order
  Int128 nontrivial() const { return total - trivial; }
};
SolutionCounts count_solutions(const EquationSpec& eq, const SetA& a, Ambient ambient = Ambient::Group);

// T(F) for F = N^{1/s} 1_A when A has only trivial solutions: N^{k/s} |A|.
// The report compares it with count_T. Throws PreconditionError carrying the
// first nontrivial solution otherwise.
struct TrivialValue {
  double value;
  double counted;
  VerificationReport report;
};
TrivialValue trivial_solution_value(const EquationSpec& eq, const SetA& a, int s);

// Hoelder chain behind the counting lemma, for k >= 5 and |f_i| <= nu.
struct CountingChain {
  Complex t;
  double abs_sum;                      // (1/N) sum_xi prod |f_j^(a_j xi)|
  std::vector<double> sup;             // ||f_j^||_inf
  std::vector<double> norm_k1;         // ||f_j^(a_j .)||_{k-1}
  std::vector<double> fourth_moment;   // ||f_j^||_4^4 (dual mean)
  std::vector<double> e2;              // E_2(f_j, f_j) = sum_x |f_j * f_j|^2
  std::vector<double> slot_bound;      // ||f_i^||_inf prod_{j != i} ||f_j^||_{k-1}
  double e2_nu;                        // E_2(nu, nu)
  double chain_bound;                  // min_i slot_bound[i]
  double energy_bound;                 // min_i sup_i prod_{j!=i} (sup_j^{k-5} E_2(nu,nu))^{1/(k-1)}
};
CountingChain counting_chain(const EquationSpec& eq, const Dfn& nu, std::span<const Dfn> fs);
VerificationReport verify_counting_lemma(const EquationSpec& eq, const Dfn& nu, std::span<const Dfn> fs);

// T(f..f) - T(F..F) = sum_i T(f..f, g, F..F) with g = f - F in slot i, and
// |T(f) - T(F)| <= sum_i bound_i with the Hoelder chain (k >= 5) taken with
// nu = |f| + |F|.
VerificationReport verify_telescoping(const EquationSpec& eq, const Dfn& f, const Dfn& big_f);

// A_0 = {x : f(x) >= delta/2}. With C = sum f^p / N and sum f >= delta N,
// Hoelder gives |A_0| >= (delta/2)^{p/(p-1)} C^{-1/(p-1)} N, which is
// (delta/2)^{p/(p-1)} N when C <= 1. N defaults to |G|.
std::pair<SetA, VerificationReport> level_set_extract(const Dfn& f, double delta, double p,
                                                      std::optional<std::uint64_t> n = std::nullopt);

// #{(x_1..x_k) in X_1 x ... x X_k : x_1 + ... + x_k = 0}.
Int128 count_k_cycles(std::span<const SetA> xs);

// X_i = a_i A_0 over F_q^n: diagonal cycles (a_1 x, ..., a_k x) are |A_0|
// cycles distinct in every coordinate, and cycles correspond bijectively to
// solutions of eq in A_0^k. cycles/N^{k-1} is compared with (rho/2k)^C.
VerificationReport verify_supersaturation(const EquationSpec& eq, const SetA& a0, double exponent_c = 1.0);

// End-to-end measured ledger for a K_{s,t}-free A.
struct PipelineReport {
  Json inputs;
  std::vector<VerificationReport> reports;
  Json ledger;

  bool pass() const;
  Json to_json() const;
};
PipelineReport run_transference_pipeline(const SetA& a, const EquationSpec& eq, int s, int t, const Rational& eps);

}  // namespace addlab
