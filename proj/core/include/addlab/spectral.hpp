#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "addlab/dfn.hpp"
#include "addlab/rational.hpp"
#include "addlab/report.hpp"
#include "addlab/set.hpp"

namespace addlab {

// Spec(A, eps) = {xi : |1_A^(xi)| >= eps |A|}. Ties are included; the
// comparison allows 1e-9 |A| of roundoff so exact ties are never lost.
struct Spectrum {
  GroupPtr ctx;
  Rational eps;
  std::size_t set_size = 0;
  std::vector<Index> frequencies;  // |value| descending, then index ascending
  std::vector<Complex> values;

  bool contains(Index xi) const;
};

Spectrum spectrum(const SetA& a, const Rational& eps);
// Same scan over an O(N^2) transform; reference for tests.
Spectrum spectrum_direct(const SetA& a, const Rational& eps);

// B = {n in [-W, W] : ||n xi / M|| < eps for every xi in Spec}, W = floor(eps N),
// tested in exact integer arithmetic. Elements are residues mod M, listed by
// increasing signed value.
struct BohrSet {
  GroupPtr ctx;
  Rational eps;
  std::uint64_t width = 0;
  std::vector<Index> elements;

  std::size_t size() const { return elements.size(); }
  SetA as_set() const;
};

BohrSet bohr_set(const Spectrum& spec, const Rational& eps, std::uint64_t n);
// ||n xi / M||_T < eps, exactly.
bool torus_norm_below(std::int64_t n, Index xi, std::uint64_t modulus, const Rational& eps);

// An F_q-subspace of F_q^n, stored as reduced row echelon basis rows.
class Subspace {
 public:
  Subspace(GroupPtr ctx, std::vector<std::vector<std::uint32_t>> rref_rows);

  const GroupCtx& ctx() const { return *ctx_; }
  const GroupPtr& ctx_ptr() const { return ctx_; }
  std::size_t dim() const { return rows_.size(); }
  std::uint64_t size() const;
  const std::vector<std::vector<std::uint32_t>>& rows() const { return rows_; }
  std::vector<Index> basis() const;
  bool contains(Index x) const;
  // All q^dim elements, ascending.
  std::vector<Index> elements() const;
  SetA as_set() const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.rows_ == b.rows_; }

 private:
  GroupPtr ctx_;
  std::vector<std::vector<std::uint32_t>> rows_;
};

// F_q-span by Gaussian elimination.
Subspace span(GroupPtr ctx, std::span<const Index> vectors);
// V^perp = {x : <x, v> = 0 for all v in V}; for F_q-subspaces this is exactly
// the set where every character from V is trivial.
Subspace annihilator(const Subspace& v);

// Sum_gamma |S(gamma)|^2 <= (N1 + 1/delta) sum |a(n)|^2 with
// S(gamma) = sum_{n=1}^{N1} a(n) e(n gamma). The intervals (gamma - delta,
// gamma + delta) must be pairwise disjoint mod 1 (else UsageError).
VerificationReport large_sieve_check(std::span<const double> points, double delta, std::span<const Complex> coeffs);

// Finite-field spectrum dimension chain: dim V <= |Spec| and, for a basis
// Lambda of V drawn from Spec, dim V * eps^4 |A|^4 <= sum_Lambda |1_A^|^4 <= N E_2.
VerificationReport verify_spectrum_dimension(const SetA& a, const Rational& eps);

}  // namespace addlab
