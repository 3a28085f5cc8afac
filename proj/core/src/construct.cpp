#include <algorithm>
#include <cmath>

#include "addlab/error.hpp"
#include "addlab/exact.hpp"
#include "addlab/rng.hpp"
#include "addlab/set.hpp"

namespace addlab::construct {

namespace {

std::string st_params(int s, int t, std::uint64_t n) {
  return "s=" + std::to_string(s) + ",t=" + std::to_string(t) + ",N=" + std::to_string(n);
}

// Inverse of a modulo m when gcd(a, m) = 1.
// Multiplier that inverts the integer coefficient a on the group.
std::uint64_t coefficient_inverse_or_throw(const GroupCtx& g, std::int64_t a) {
  auto inv = coefficient_inverse(g, a);
  if (!inv) throw UsageError("coefficient not invertible in the ambient group");
  return *inv;
}

// Is there a solution of eq with entries in A + {x}, some entry equal to x,
// and not all entries equal?
bool creates_nontrivial_solution(const GroupCtx& g, const EquationSpec& eq, const std::vector<char>& member,
                                 std::span<const Index> elements, Index x) {
  const std::size_t k = eq.k();
  std::vector<Index> pool(elements.begin(), elements.end());
  pool.push_back(x);
  auto in_set = [&](Index y) { return y == x || member[y]; };
  std::vector<Index> tuple(k);
  for (std::size_t fixed = 0; fixed < k; ++fixed) {
    const std::size_t solve = (fixed == k - 1) ? k - 2 : k - 1;
    const std::uint64_t inv = coefficient_inverse_or_throw(g, eq.coeff(solve));
    std::vector<std::size_t> free_pos;
    for (std::size_t i = 0; i < k; ++i) {
      if (i != fixed && i != solve) free_pos.push_back(i);
    }
    std::vector<std::size_t> idx(free_pos.size(), 0);
    tuple[fixed] = x;
    while (true) {
      Index acc = g.scale_int(x, eq.coeff(fixed));
      for (std::size_t j = 0; j < free_pos.size(); ++j) {
        tuple[free_pos[j]] = pool[idx[j]];
        acc = g.add(acc, g.scale_int(pool[idx[j]], eq.coeff(free_pos[j])));
      }
      Index last = g.scale_int(g.neg(acc), static_cast<std::int64_t>(inv));
      if (in_set(last)) {
        tuple[solve] = last;
        bool all_equal = std::all_of(tuple.begin(), tuple.end(), [&](Index v) { return v == tuple[0]; });
        if (!all_equal) return true;
      }
      std::size_t j = 0;
      while (j < idx.size() && ++idx[j] == pool.size()) idx[j++] = 0;
      if (j == idx.size()) break;
    }
  }
  return false;
}

}  // namespace

SetA erdos_turan_sidon(std::uint32_t p, std::optional<std::uint64_t> modulus) {
  if (!is_prime(p)) throw UsageError("erdos_turan_sidon needs a prime p");
  const std::uint64_t n = 2ULL * p * p + p;
  const std::uint64_t m = modulus.value_or(2 * n + 1);
  if (m < n) throw UsageError("modulus must be at least 2p^2 + p");
  auto ctx = make_group(GroupCtx::cyclic(m));
  std::vector<Index> elems;
  for (std::uint64_t i = 0; i < p; ++i) elems.push_back(2ULL * p * i + (i * i) % p);
  SetA a(ctx, std::move(elems), Provenance{"erdos_turan_sidon", "p=" + std::to_string(p), 0}, n);
  if (!is_kst_free(a, 2, 2)) {
    throw UsageError("erdos_turan_sidon(" + std::to_string(p) + ") is not Sidon in Z_" + std::to_string(m));
  }
  return a;
}

SetA greedy_kst_free_in(GroupPtr ctx, int s, int t, std::uint64_t seed) {
  if (s < 2 || t < s) throw UsageError("need 2 <= s <= t");
  const std::uint64_t n = ctx->order();
  std::vector<Index> order(n);
  for (Index i = 0; i < n; ++i) order[i] = i;
  SplitMix64 rng(seed);
  rng.shuffle(std::span<Index>(order));
  std::vector<char> member(n, 0);
  std::vector<Index> elems;
  for (auto x : order) {
    if (!creates_kst_grid(*ctx, member, elems, x, s, t)) {
      member[x] = 1;
      elems.push_back(x);
    }
  }
  return SetA(std::move(ctx), std::move(elems), Provenance{"greedy_kst_free", st_params(s, t, n), seed});
}

SetA greedy_kst_free(int s, int t, std::uint64_t n, std::uint64_t seed) {
  if (s < 2 || t < s) throw UsageError("need 2 <= s <= t");
  if (n < 1) throw UsageError("N must be positive");
  auto ctx = make_group(GroupCtx::cyclic(2 * n + 1));
  std::vector<Index> order(n);
  for (Index i = 0; i < n; ++i) order[i] = i;
  SplitMix64 rng(seed);
  rng.shuffle(std::span<Index>(order));
  std::vector<char> member(ctx->order(), 0);
  std::vector<Index> elems;
  for (auto x : order) {
    if (!creates_kst_grid(*ctx, member, elems, x, s, t)) {
      member[x] = 1;
      elems.push_back(x);
    }
  }
  return SetA(ctx, std::move(elems), Provenance{"greedy_kst_free", st_params(s, t, n), seed}, n);
}

SetA random_subset(GroupPtr ctx, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw UsageError("density must lie in [0, 1]");
  const std::uint64_t n = ctx->order();
  const auto size = static_cast<std::uint64_t>(std::llround(density * static_cast<double>(n)));
  std::vector<Index> all(n);
  for (Index i = 0; i < n; ++i) all[i] = i;
  SplitMix64 rng(seed);
  // Partial Fisher-Yates: the first `size` slots are a uniform sample.
  for (std::uint64_t i = 0; i < size; ++i) {
    std::uint64_t j = i + rng.below(n - i);
    std::swap(all[i], all[j]);
  }
  all.resize(size);
  return SetA(std::move(ctx), std::move(all),
              Provenance{"random_subset", "density=" + std::to_string(density), seed});
}

SetA subspace(GroupPtr ctx, std::span<const Index> basis) {
  if (ctx->is_cyclic()) throw UsageError("subspace construction needs a vector space");
  const auto& f = ctx->field();
  std::vector<Index> elems{0};
  for (auto v : basis) {
    if (!ctx->valid(v)) throw UsageError("basis vector outside the group");
    std::vector<Index> next;
    next.reserve(elems.size() * f.q());
    for (auto e : elems) {
      for (FieldCtx::Elem c = 0; c < f.q(); ++c) next.push_back(ctx->add(e, ctx->scale(v, c)));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    elems = std::move(next);
  }
  return SetA(std::move(ctx), std::move(elems), Provenance{"subspace", "dim<=" + std::to_string(basis.size()), 0});
}

SetA equation_free_greedy_in(const EquationSpec& eq, GroupPtr ctx, std::uint64_t seed,
                             EquationFreeOptions options) {
  eq.check_group(*ctx);
  const std::uint64_t n = ctx->order();
  std::vector<Index> order(n);
  for (Index i = 0; i < n; ++i) order[i] = i;
  SplitMix64 rng(seed);
  rng.shuffle(std::span<Index>(order));
  std::vector<char> member(n, 0);
  std::vector<Index> elems;
  for (auto x : order) {
    if (options.max_size && elems.size() >= *options.max_size) break;
    if (options.kst && creates_kst_grid(*ctx, member, elems, x, options.kst->first, options.kst->second)) continue;
    if (creates_nontrivial_solution(*ctx, eq, member, elems, x)) continue;
    member[x] = 1;
    elems.push_back(x);
  }
  return SetA(std::move(ctx), std::move(elems), Provenance{"equation_free_greedy", "eq=" + eq.str(), seed});
}

SetA equation_free_greedy(const EquationSpec& eq, std::uint64_t n, std::uint64_t seed,
                          EquationFreeOptions options) {
  if (n < 1) throw UsageError("N must be positive");
  eq.check_group(GroupCtx::cyclic(1));
  auto ctx = make_group(GroupCtx::cyclic(std::max<std::uint64_t>(required_modulus(eq, n), 2 * n + 1)));
  std::vector<Index> order(n);
  for (Index i = 0; i < n; ++i) order[i] = i;
  SplitMix64 rng(seed);
  rng.shuffle(std::span<Index>(order));
  std::vector<char> member(ctx->order(), 0);
  std::vector<Index> elems;
  for (auto x : order) {
    if (options.max_size && elems.size() >= *options.max_size) break;
    if (options.kst && creates_kst_grid(*ctx, member, elems, x, options.kst->first, options.kst->second)) continue;
    if (creates_nontrivial_solution(*ctx, eq, member, elems, x)) continue;
    member[x] = 1;
    elems.push_back(x);
  }
  std::string params = "eq=" + eq.str() + ",N=" + std::to_string(n);
  if (options.kst) params += ",s=" + std::to_string(options.kst->first) + ",t=" + std::to_string(options.kst->second);
  return SetA(ctx, std::move(elems), Provenance{"equation_free_greedy", params, seed}, n);
}

}  // namespace addlab::construct
