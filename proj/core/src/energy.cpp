#include "addlab/energy.hpp"

#include <cmath>
#include <string>

#include "addlab/parallel.hpp"

namespace addlab {
namespace {

Json set_inputs(const SetA& a) {
  Json j;
  j["group"] = a.ctx().encoding();
  j["size"] = a.size();
  j["interval_length"] = a.interval_length();
  j["construction"] = a.provenance().construction;
  j["params"] = a.provenance().params;
  j["seed"] = a.provenance().seed;
  return j;
}

std::string pattern_string(std::span<const Sign> pattern) {
  std::string out;
  for (Sign sg : pattern) out += sg == Sign::Plus ? '+' : '-';
  return out;
}

long double as_ld(Int128 v) { return static_cast<long double>(v); }

void merge_stats(TupleStats& into, const TupleStats& part) {
  into.distinct_tuples += part.distinct_tuples;
  into.degenerate_tuples += part.degenerate_tuples;
  into.distinct_rep_total += part.distinct_rep_total;
  into.degenerate_rep_total += part.degenerate_rep_total;
  into.large_tuples += part.large_tuples;
  into.distinct_excess += part.distinct_excess;
  into.degenerate_excess += part.degenerate_excess;
  if (!part.max_tuple.empty() && (into.max_tuple.empty() || part.distinct_rep_max > into.distinct_rep_max)) {
    into.distinct_rep_max = part.distinct_rep_max;
    into.max_tuple = part.max_tuple;
  }
}

// Depth-first walk over the tuples with a fixed leading entry; cands[depth]
// holds the shifts d (including 0) that keep the first depth+1 entries in A.
struct TupleWalker {
  const SetA& a;
  const GroupCtx& g;
  int s;
  int t;
  std::vector<Index> tuple;
  std::vector<std::vector<Index>> cands;
  TupleStats stats;

  TupleWalker(const SetA& set, int s_, int t_)
      : a(set), g(set.ctx()), s(s_), t(t_), tuple(static_cast<std::size_t>(s_)), cands(static_cast<std::size_t>(s_)) {
    stats.s = s;
    stats.t = t;
  }

  void run(Index lead) {
    tuple[0] = lead;
    cands[0].clear();
    for (Index x : a.elements()) cands[0].push_back(g.sub(lead, x));
    descend(1);
  }

  void descend(int depth) {
    if (depth == s) {
      leaf();
      return;
    }
    auto& next = cands[static_cast<std::size_t>(depth)];
    const auto& prev = cands[static_cast<std::size_t>(depth - 1)];
    for (Index x : a.elements()) {
      tuple[static_cast<std::size_t>(depth)] = x;
      next.clear();
      for (Index d : prev) {
        if (a.contains(g.sub(x, d))) next.push_back(d);
      }
      descend(depth + 1);
    }
  }

  void leaf() {
    const std::uint64_t rep = cands[static_cast<std::size_t>(s - 1)].size() - 1;
    bool distinct = true;
    for (int i = 0; i < s && distinct; ++i) {
      for (int j = 0; j < i; ++j) {
        if (tuple[static_cast<std::size_t>(i)] == tuple[static_cast<std::size_t>(j)]) {
          distinct = false;
          break;
        }
      }
    }
    const std::uint64_t cap = static_cast<std::uint64_t>(t - 1);
    const std::uint64_t excess = rep > cap ? rep - cap : 0;
    if (rep > cap) ++stats.large_tuples;
    if (distinct) {
      ++stats.distinct_tuples;
      stats.distinct_rep_total += rep;
      stats.distinct_excess += excess;
      if (stats.max_tuple.empty() || rep > stats.distinct_rep_max) {
        stats.distinct_rep_max = rep;
        stats.max_tuple = tuple;
      }
    } else {
      ++stats.degenerate_tuples;
      stats.degenerate_rep_total += rep;
      stats.degenerate_excess += excess;
    }
  }
};

Int128 size_pow(const SetA& a, int e) { return ipow(static_cast<Int128>(a.size()), static_cast<unsigned>(e)); }

}  // namespace

std::vector<Sign> alternating_pattern(int h) {
  if (h < 1) throw UsageError("energy needs at least one function");
  std::vector<Sign> out;
  for (int i = 0; i < h; ++i) out.push_back(i % 2 == 0 ? Sign::Plus : Sign::Minus);
  return out;
}

Int128 energy_exact(const SetA& a, std::span<const Sign> pattern, int s) {
  if (pattern.empty()) throw UsageError("energy of an empty function list");
  if (s < 1) throw UsageError("energy exponent s must be >= 1");
  const GroupCtx& g = a.ctx();
  const std::size_t n = g.order();
  std::vector<std::int64_t> cur(n, 0);
  cur[0] = 1;
  std::vector<std::int64_t> next(n);
  for (Sign sg : pattern) {
    std::fill(next.begin(), next.end(), 0);
    for (Index x = 0; x < n; ++x) {
      if (cur[x] == 0) continue;
      for (Index y : a.elements()) {
        Index z = sg == Sign::Plus ? g.add(x, y) : g.sub(x, y);
        next[z] += cur[x];
      }
    }
    cur.swap(next);
  }
  Int128 total = 0;
  for (std::int64_t v : cur) {
    if (v != 0) total = checked_add(total, ipow(v, static_cast<unsigned>(s)));
  }
  return total;
}

Int128 energy_exact(const SetA& a, int s) {
  const Sign pattern[] = {Sign::Plus, Sign::Minus};
  return energy_exact(a, pattern, s);
}

double energy(std::span<const Dfn> fs, int s) {
  if (fs.empty()) throw UsageError("energy of an empty function list");
  if (s < 1) throw UsageError("energy exponent s must be >= 1");
  for (const Dfn& f : fs) {
    if (!f.is_real()) throw UsageError("energy() takes real-valued functions");
    require_same_ctx(fs[0], f);
  }
  Dfn acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = convolve(acc, fs[i], ConvMethod::Fast);
  double total = 0.0;
  for (const Complex& v : acc.values()) total += std::pow(v.real(), s);
  return total;
}

TupleStats tuple_statistics(const SetA& a, int s, int t) {
  if (s < 1) throw UsageError("tuple length s must be >= 1");
  if (t < 1) throw UsageError("t must be >= 1");
  const auto elems = a.elements();
  std::vector<TupleStats> parts(elems.size());
  parallel_for(elems.size(), [&](std::size_t i) {
    TupleWalker w(a, s, t);
    w.run(elems[i]);
    parts[i] = std::move(w.stats);
  });
  TupleStats total;
  total.s = s;
  total.t = t;
  for (const auto& p : parts) merge_stats(total, p);
  return total;
}

double energy_exponent_cs(int s) {
  if (s < 2) throw UsageError("c_s is defined for s >= 2");
  return s == 2 ? 1.0 : static_cast<double>(s - 2) / static_cast<double>(s - 1);
}

void require_kst_free(const SetA& a, int s, int t) {
  if (auto w = find_kst_grid(a, s, t)) {
    throw PreconditionError("set is not K_{" + std::to_string(s) + "," + std::to_string(t) + "}-free",
                            witness_json(a.ctx(), *w));
  }
}

VerificationReport verify_trivial_bounds(const SetA& a, int h, int s, std::span<const Sign> pattern) {
  if (h < 2 || s < 1) throw UsageError("trivial bounds need h >= 2 and s >= 1");
  std::vector<Sign> pat(pattern.begin(), pattern.end());
  if (pat.empty()) pat = alternating_pattern(h);
  if (static_cast<int>(pat.size()) != h) throw UsageError("sign pattern length must equal h");

  VerificationReport rep("energy_trivial_bounds");
  rep.inputs()["set"] = set_inputs(a);
  rep.inputs()["h"] = h;
  rep.inputs()["s"] = s;
  rep.inputs()["pattern"] = pattern_string(pat);
  const Int128 e = energy_exact(a, pat, s);
  const Int128 lower = size_pow(a, h);
  const Int128 upper = size_pow(a, s * h - s + 1);
  rep.quantities()["E_s"] = to_json_int(e);
  rep.expect_le("|A|^h <= E_s", lower, e);
  rep.expect_le("E_s <= |A|^(sh-s+1)", e, upper);
  if (upper > 0) rep.ratios()["E_s/|A|^(sh-s+1)"] = static_cast<double>(as_ld(e) / as_ld(upper));
  return rep;
}

VerificationReport verify_lemma_E2(const SetA& a, int s) {
  if (s < 2) throw UsageError("lemma E2 needs s >= 2");
  VerificationReport rep("energy_holder_interpolation");
  rep.inputs()["set"] = set_inputs(a);
  rep.inputs()["s"] = s;
  if (a.empty()) {
    rep.set_not_applicable("empty set");
    return rep;
  }
  const Int128 sz = static_cast<Int128>(a.size());
  const Int128 es = energy_exact(a, s);
  const Int128 e2 = energy_exact(a, 2);
  const Int128 es1 = energy_exact(a, s - 1);
  const long double k = as_ld(es) / std::pow(static_cast<long double>(sz), s);
  rep.quantities()["E_s"] = to_json_int(es);
  rep.quantities()["E_2"] = to_json_int(e2);
  rep.quantities()["E_{s-1}"] = to_json_int(es1);
  rep.quantities()["K"] = static_cast<double>(k);

  const long double sm1 = static_cast<long double>(s - 1);
  const long double lsz = static_cast<long double>(sz);
  const long double e2_bound = std::pow(k, 1.0L / sm1) * std::pow(lsz, 3.0L - 1.0L / sm1);
  rep.quantities()["E_2 bound"] = static_cast<double>(e2_bound);
  rep.ratios()["E_2/bound"] = static_cast<double>(as_ld(e2) / e2_bound);

  // Raised to the (s-1)-th power both clauses are integer inequalities:
  // E_2^{s-1} <= |A|^{2(s-2)} E_s and E_{s-1}^{s-1} <= |A|^2 E_s^{s-2}.
  try {
    rep.expect_le("E_2^(s-1) <= |A|^(2(s-2)) * E_s", ipow(e2, static_cast<unsigned>(s - 1)),
                  checked_mul(ipow(sz, static_cast<unsigned>(2 * (s - 2))), es));
  } catch (const UsageError&) {
    const long double lhs = sm1 * std::log(as_ld(e2));
    const long double rhs = 2.0L * (s - 2) * std::log(lsz) + std::log(as_ld(es));
    rep.expect_le("log E_2^(s-1) <= log |A|^(2(s-2)) E_s", static_cast<double>(lhs), static_cast<double>(rhs),
                  1e-12);
    rep.flag("E_2 clause compared in logarithms (128-bit overflow)");
  }

  if (s >= 3) {
    const long double es1_bound =
        std::pow(k, static_cast<long double>(s - 2) / sm1) * std::pow(lsz, s - static_cast<long double>(s - 2) / sm1);
    rep.quantities()["E_{s-1} bound"] = static_cast<double>(es1_bound);
    rep.ratios()["E_{s-1}/bound"] = static_cast<double>(as_ld(es1) / es1_bound);
    try {
      rep.expect_le("E_{s-1}^(s-1) <= |A|^2 * E_s^(s-2)", ipow(es1, static_cast<unsigned>(s - 1)),
                    checked_mul(sz * sz, ipow(es, static_cast<unsigned>(s - 2))));
    } catch (const UsageError&) {
      const long double lhs = sm1 * std::log(as_ld(es1));
      const long double rhs = 2.0L * std::log(lsz) + (s - 2) * std::log(as_ld(es));
      rep.expect_le("log E_{s-1}^(s-1) <= log |A|^2 E_s^(s-2)", static_cast<double>(lhs),
                    static_cast<double>(rhs), 1e-12);
      rep.flag("E_{s-1} clause compared in logarithms (128-bit overflow)");
    }
  } else {
    rep.flag("s = 2: the E_2 clause is an identity and the E_{s-1} clause is vacuous");
  }
  return rep;
}

VerificationReport verify_lemma_Es(const SetA& a, int s, int t) {
  if (s < 2 || t < s) throw UsageError("energy lemma needs 2 <= s <= t");
  require_kst_free(a, s, t);
  VerificationReport rep("energy_kst_bound");
  rep.inputs()["set"] = set_inputs(a);
  rep.inputs()["s"] = s;
  rep.inputs()["t"] = t;
  const Int128 es = energy_exact(a, s);
  const Int128 as = size_pow(a, s);
  const TupleStats st = tuple_statistics(a, s, t);
  rep.quantities()["E_s"] = to_json_int(es);
  rep.quantities()["|A|^s"] = to_json_int(as);
  rep.quantities()["distinct_tuples"] = st.distinct_tuples;
  rep.quantities()["distinct_contribution"] = to_json_int(st.distinct_rep_total);
  rep.quantities()["degenerate_contribution"] = to_json_int(st.degenerate_rep_total);
  rep.quantities()["max_rep_distinct"] = st.distinct_rep_max;

  rep.expect_eq("E_s == |A|^s + distinct + degenerate", es, as + st.rep_total());
  rep.expect_le("max rep over distinct tuples <= t-1", static_cast<Int128>(st.distinct_rep_max),
                static_cast<Int128>(t - 1));
  rep.expect_le("distinct contribution <= (t-1) * #distinct", st.distinct_rep_total,
                static_cast<Int128>(t - 1) * static_cast<Int128>(st.distinct_tuples));
  rep.expect_le("E_s <= t|A|^s + degenerate", es, checked_add(checked_mul(t, as), st.degenerate_rep_total));

  if (s == 2) {
    const auto r = rep_diff_counts(a);
    std::int64_t off_max = 0;
    for (std::size_t d = 1; d < r.size(); ++d) off_max = std::max(off_max, r[d]);
    const Int128 sz = static_cast<Int128>(a.size());
    rep.quantities()["max_{d!=0} r(d)"] = off_max;
    rep.expect_le("max_{d!=0} r(d) <= t-1", off_max, static_cast<Int128>(t - 1));
    rep.expect_le("E_2 <= t|A|^2 - (t-1)|A|", es, t * sz * sz - (t - 1) * sz);
  }

  const double cs = energy_exponent_cs(s);
  rep.quantities()["c_s"] = cs;
  rep.flag(s == 2 ? "c_2 = 1 taken from the separate s = 2 argument"
                  : "c_s = (s-2)/(s-1) from the displayed error term");
  if (!a.empty()) {
    const long double denom = std::pow(static_cast<long double>(a.size()), s - cs);
    rep.ratios()["degenerate/|A|^(s-c_s)"] = static_cast<double>(as_ld(st.degenerate_rep_total) / denom);
    rep.ratios()["(E_s - t|A|^s)/|A|^(s-c_s)"] =
        static_cast<double>((as_ld(es) - t * as_ld(as)) / denom);
  }
  return rep;
}

VerificationReport verify_rA_large(const SetA& a, int s, int t) {
  if (s < 2 || t < 1) throw UsageError("rA-large needs s >= 2 and t >= 1");
  VerificationReport rep("rA_large");
  rep.inputs()["set"] = set_inputs(a);
  rep.inputs()["s"] = s;
  rep.inputs()["t"] = t;
  if (a.empty()) {
    rep.set_not_applicable("empty set");
    return rep;
  }
  const Int128 es = energy_exact(a, s);
  const Int128 as = size_pow(a, s);
  const double eta = static_cast<double>(as_ld(es) / as_ld(as)) - t;
  rep.quantities()["E_s"] = to_json_int(es);
  rep.quantities()["eta"] = eta;
  if (es >= checked_mul(t + 1, as)) {
    rep.set_not_applicable("eta >= 1");
    return rep;
  }
  const TupleStats st = tuple_statistics(a, s, t);
  rep.quantities()["large_tuples"] = st.large_tuples;
  rep.quantities()["bound"] = (1.0 - (1.0 - eta) / t) * static_cast<double>(as);
  // count <= (1 - (1-eta)/t)|A|^s  <=>  t * count <= E_s - |A|^s.
  rep.expect_le("t * #{rep > t-1} <= E_s - |A|^s", checked_mul(t, static_cast<Int128>(st.large_tuples)), es - as);
  rep.ratios()["large_tuples/|A|^s"] = static_cast<double>(st.large_tuples) / static_cast<double>(as);
  return rep;
}

VerificationReport verify_size_bound(const SetA& a, int s, int t) {
  if (s < 2 || t < 1) throw UsageError("size bound needs s >= 2 and t >= 1");
  VerificationReport rep("size_bound");
  rep.inputs()["set"] = set_inputs(a);
  rep.inputs()["s"] = s;
  rep.inputs()["t"] = t;
  const std::uint64_t n = a.interval_length();
  rep.inputs()["N"] = n;
  if (a.empty()) {
    rep.set_not_applicable("empty set");
    return rep;
  }
  const Int128 es = energy_exact(a, s);
  const Int128 as = size_pow(a, s);
  const double eta = static_cast<double>(as_ld(es) / as_ld(as)) - t;
  rep.quantities()["E_s"] = to_json_int(es);
  rep.quantities()["eta"] = eta;
  const Int128 p = checked_mul(t + 1, as) - es;  // |A|^s (1 - eta)
  if (p <= 0) {
    rep.set_not_applicable("eta >= 1");
    return rep;
  }
  const double eta_used = eta > 0 ? eta : 0.0;
  const double bound = 2.0 * std::pow(t * static_cast<double>(t) / (1.0 - eta_used), 1.0 / s) *
                       std::pow(static_cast<double>(n), 1.0 - 1.0 / s);
  rep.quantities()["bound"] = bound;
  rep.ratios()["|A|/bound"] = static_cast<double>(a.size()) / bound;
  const Int128 rhs = checked_mul(checked_mul(ipow(2, static_cast<unsigned>(s)), static_cast<Int128>(t) * t),
                                 ipow(static_cast<Int128>(n), static_cast<unsigned>(s - 1)));
  if (eta <= 0) {
    rep.flag("eta <= 0 treated as eta -> 0+");
    rep.expect_le("|A|^s <= 2^s t^2 N^(s-1)", as, rhs);
  } else {
    rep.expect_le("|A|^s (1-eta) <= 2^s t^2 N^(s-1)", p, rhs);
  }
  return rep;
}

VerificationReport verify_vanishing(const SetA& a, int s, int t) {
  if (s < 2 || t < s) throw UsageError("vanishing lemma needs 2 <= s <= t");
  require_kst_free(a, s, t);
  VerificationReport rep("vanishing_excess");
  rep.inputs()["set"] = set_inputs(a);
  rep.inputs()["s"] = s;
  rep.inputs()["t"] = t;
  const TupleStats st = tuple_statistics(a, s, t);
  rep.quantities()["excess_total"] = to_json_int(st.excess_total());
  rep.quantities()["distinct_excess"] = to_json_int(st.distinct_excess);
  rep.quantities()["degenerate_excess"] = to_json_int(st.degenerate_excess);
  rep.expect_eq("distinct-tuple excess == 0", st.distinct_excess, 0);
  if (!a.empty()) {
    const double cs = energy_exponent_cs(s);
    const long double as = std::pow(static_cast<long double>(a.size()), s);
    rep.quantities()["eta"] = static_cast<double>(as_ld(st.excess_total()) / as);
    rep.ratios()["excess/|A|^(s-c_s)"] =
        static_cast<double>(as_ld(st.excess_total()) / std::pow(static_cast<long double>(a.size()), s - cs));
  }
  return rep;
}

}  // namespace addlab
