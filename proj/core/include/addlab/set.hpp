#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "addlab/dfn.hpp"
#include "addlab/equation.hpp"

namespace addlab {

struct Provenance {
  std::string construction = "explicit";
  std::string params;
  std::uint64_t seed = 0;
};

// A subset of the ambient group with O(1) membership.
//
// In a cyclic group used as a model of the interval [N], elements are the
// integers 0..N-1 and `modeled_length` records N; lemmas stated on [N] read N
// from there. Without it N is the group order.
class SetA {
 public:
  SetA(GroupPtr ctx, std::vector<Index> elements, Provenance provenance = {},
       std::optional<std::uint64_t> modeled_length = std::nullopt);

  const GroupCtx& ctx() const { return *ctx_; }
  const GroupPtr& ctx_ptr() const { return ctx_; }
  std::span<const Index> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(Index x) const { return x < ctx_->order() && ((bits_[x >> 6] >> (x & 63)) & 1u); }
  const Provenance& provenance() const { return provenance_; }
  std::optional<std::uint64_t> modeled_length() const { return modeled_length_; }
  // N for lemmas stated on [N]: the modeled interval length, else |G|.
  std::uint64_t interval_length() const { return modeled_length_.value_or(ctx_->order()); }

  Dfn indicator() const;
  SetA negated() const;  // -A
  // Same integers, placed in Z_M (cyclic models only).
  SetA reembedded(GroupPtr cyclic_ctx) const;
  SetA with_provenance(Provenance p) const;

 private:
  GroupPtr ctx_;
  std::vector<Index> elements_;
  std::vector<std::uint64_t> bits_;
  Provenance provenance_;
  std::optional<std::uint64_t> modeled_length_;
};

// r(d) = #{(a, a') in A^2 : a - a' = d}, by pair enumeration.
std::vector<std::int64_t> rep_diff_counts(const SetA& a);
Dfn rep_diff(const SetA& a);

// D(a_1..a_s) = {d != 0 : a_i - d in A for all i}, ascending by index.
std::vector<Index> admissible_shifts(const SetA& a, std::span<const Index> tuple);
// |D(a_1..a_s)|. Every tuple entry must lie in A.
std::uint64_t rep_tuple(const SetA& a, std::span<const Index> tuple);

struct GridWitness {
  std::vector<Index> b;  // s distinct elements
  std::vector<Index> c;  // t distinct elements
};

// A is K_{s,t}-free iff every s-tuple of distinct elements has at most t-2
// admissible shifts: with the tuple itself as the d = 0 column, t-1 shifts
// already give an s x t grid {a_i - d}. Scans sorted s-subsets in
// lexicographic order; the first hit yields x_i = a_i and y_j = -d_j with
// d_1 = 0 < d_2 < ... the smallest shifts.
std::optional<GridWitness> find_kst_grid(const SetA& a, int s, int t);
bool is_kst_free(const SetA& a, int s, int t);
// True iff b + c is contained in A with |b| = s, |c| = t distinct.
bool is_grid_witness(const SetA& a, const GridWitness& w, int s, int t);

// Would adding x to a K_{s,t}-free A create a grid? Any grid through x can be
// re-based on a column containing x, so only tuples containing x are scanned.
bool creates_kst_grid(const GroupCtx& g, const std::vector<char>& member, std::span<const Index> elements,
                      Index x, int s, int t);

nlohmann::ordered_json witness_json(const GroupCtx& g, const GridWitness& w);

// line 1 "ctx=<encoding>", then one element per line.
void write_set(std::ostream& out, const SetA& a);
SetA read_set(std::istream& in);

namespace construct {

// {2 p i + (i^2 mod p) : 0 <= i < p}, a Sidon set in [N] with N = 2p^2 + p.
// Lives in Z_M; M defaults to 2N + 1 so differences never wrap.
SetA erdos_turan_sidon(std::uint32_t p, std::optional<std::uint64_t> modulus = std::nullopt);

// Random-order greedy insertion over [N] keeping A K_{s,t}-free, in Z_{2N+1}.
SetA greedy_kst_free(int s, int t, std::uint64_t n, std::uint64_t seed);
// Same, inside an arbitrary group.
SetA greedy_kst_free_in(GroupPtr ctx, int s, int t, std::uint64_t seed);

// round(density * |G|) distinct elements chosen uniformly.
SetA random_subset(GroupPtr ctx, double density, std::uint64_t seed);

// F_q-span of the given vectors (elements of a vector space).
SetA subspace(GroupPtr ctx, std::span<const Index> basis);

// Random-order greedy insertion keeping only trivial (all-equal) solutions
// to eq; optionally also K_{s,t}-free. Cyclic ctx: [N] inside a padded Z_M
// (M = required_modulus(eq, N)), so solutions are integer solutions.
struct EquationFreeOptions {
  std::optional<std::pair<int, int>> kst;
  std::optional<std::uint64_t> max_size;
};
SetA equation_free_greedy(const EquationSpec& eq, std::uint64_t n, std::uint64_t seed,
                          EquationFreeOptions options = {});
SetA equation_free_greedy_in(const EquationSpec& eq, GroupPtr ctx, std::uint64_t seed,
                             EquationFreeOptions options = {});

}  // namespace construct

}  // namespace addlab
