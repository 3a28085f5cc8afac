#include "addlab/dense_model.hpp"

#include <cmath>

#include "addlab/energy.hpp"
#include "addlab/parallel.hpp"

namespace addlab {
namespace {

std::vector<std::int64_t> smoothed_counts(const SetA& a, std::span<const Index> smoother) {
  const GroupCtx& g = a.ctx();
  std::vector<std::int64_t> cnt(g.order(), 0);
  for (Index x : a.elements()) {
    for (Index b : smoother) ++cnt[g.add(x, b)];
  }
  return cnt;
}

long double ld(Int128 v) { return static_cast<long double>(v); }

}  // namespace

ModelMode parse_model_mode(std::string_view text) {
  if (text == "integer" || text == "integer_model") return ModelMode::IntegerModel;
  if (text == "ffield" || text == "finite_field") return ModelMode::FiniteField;
  throw UsageError("unknown dense-model mode '" + std::string(text) + "' (integer|ffield)");
}

std::string to_string(ModelMode mode) { return mode == ModelMode::IntegerModel ? "integer" : "ffield"; }

DenseModel build_dense_model(const SetA& a_in, int s, int t, const Rational& eps, ModelMode mode) {
  if (s < 2 || t < s) throw UsageError("dense model needs 2 <= s <= t");
  if (eps.num <= 0 || eps.num >= eps.den) throw UsageError("dense model eps must lie in (0, 1)");
  if (a_in.empty()) throw UsageError("dense model of an empty set");
  require_kst_free(a_in, s, t);

  Json diag;
  SetA a = a_in;
  std::uint64_t n = 0;
  std::optional<BohrSet> bohr;
  std::optional<Subspace> sub;
  std::vector<Index> smoother_elems;

  if (mode == ModelMode::FiniteField) {
    if (a.ctx().is_cyclic()) throw UsageError("finite-field dense model needs an F_q^n group");
    n = a.ctx().order();
  } else {
    if (!a.ctx().is_cyclic()) throw UsageError("integer dense model needs a cyclic model of [N]");
    n = a.interval_length();
    const auto w = static_cast<std::uint64_t>(static_cast<Int128>(eps.num) * n / eps.den);
    const std::uint64_t need = n + 2 * w + 1;
    if (a.ctx().modulus() < need) {
      a = a.reembedded(make_group(GroupCtx::cyclic(need)));
      diag["reembedded_modulus"] = need;
    }
  }

  Spectrum spec = spectrum(a, eps);
  if (mode == ModelMode::FiniteField) {
    Subspace v = span(a.ctx_ptr(), spec.frequencies);
    sub = annihilator(v);
    smoother_elems = sub->elements();
    diag["dim V"] = v.dim();
    diag["dim H"] = sub->dim();
  } else {
    bohr = bohr_set(spec, eps, n);
    smoother_elems = bohr->elements;
    diag["bohr_width"] = bohr->width;
  }
  SetA smoother(a.ctx_ptr(), smoother_elems,
                Provenance{mode == ModelMode::FiniteField ? "annihilator" : "bohr_set", "eps=" + eps.str(), 0});

  auto counts = smoothed_counts(a, smoother.elements());
  const double scale = std::pow(static_cast<double>(n), 1.0 / s);
  const double per = scale / static_cast<double>(smoother.size());
  std::vector<double> fv(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) fv[i] = per * static_cast<double>(counts[i]);
  Dfn f(a.ctx_ptr(), fv);

  double mass = 0.0;
  for (double v : fv) mass += v;
  diag["mode"] = to_string(mode);
  diag["N"] = n;
  diag["group"] = a.ctx().encoding();
  diag["spec_size"] = spec.frequencies.size();
  diag["smoother_size"] = smoother.size();
  diag["mass"] = mass;
  diag["ls_norm"] = power_sum(f, s) / static_cast<double>(n);

  return DenseModel{mode, s, t, eps, n, scale, std::move(a), std::move(spec), std::move(smoother),
                    std::move(bohr), std::move(sub), std::move(counts), std::move(f), std::move(diag)};
}

VerificationReport verify_model_properties(const DenseModel& m) {
  VerificationReport rep("dense_model_properties");
  const SetA& a = m.set;
  const double sz = static_cast<double>(a.size());
  const double bsz = static_cast<double>(m.smoother.size());
  rep.inputs()["mode"] = to_string(m.mode);
  rep.inputs()["group"] = a.ctx().encoding();
  rep.inputs()["size"] = a.size();
  rep.inputs()["N"] = m.n;
  rep.inputs()["s"] = m.s;
  rep.inputs()["t"] = m.t;
  rep.inputs()["eps"] = m.eps.str();
  rep.quantities() = m.diagnostics;

  // f >= 0 and (i) mass, on the all-integer rescaling.
  std::int64_t min_count = 0;
  Int128 total = 0;
  for (auto c : m.counts) {
    min_count = std::min(min_count, c);
    total += c;
  }
  rep.expect_le("f >= 0 (min of 1_A * 1_S)", 0, min_count);
  rep.expect_eq("(i) sum 1_A * 1_S == |A| |S|", total,
                static_cast<Int128>(a.size()) * static_cast<Int128>(m.smoother.size()));
  double mass = 0.0;
  for (const auto& v : m.f.values()) mass += v.real();
  rep.expect_near("(i) sum f == N^{1/s} |A|", mass, m.scale * sz, 1e-10);

  // (ii) Fourier gap.
  const Dfn fhat = fourier(m.f);
  const Dfn ahat = fourier(a.indicator());
  const double eps = m.eps.value();
  double gap = 0.0;
  double gap_off = 0.0;
  double gap_on = 0.0;
  std::vector<char> in_spec(fhat.size(), 0);
  for (Index xi : m.spec.frequencies) in_spec[xi] = 1;
  for (Index xi = 0; xi < fhat.size(); ++xi) {
    const double d = std::abs(fhat[xi] - m.scale * ahat[xi]);
    gap = std::max(gap, d);
    double& side = in_spec[xi] ? gap_on : gap_off;
    side = std::max(side, d);
  }
  rep.quantities()["fourier_gap"] = gap;
  rep.quantities()["fourier_gap_on_spec"] = gap_on;
  rep.quantities()["fourier_gap_off_spec"] = gap_off;

  if (m.mode == ModelMode::FiniteField) {
    // f^ = N^{1/s} 1_A^ 1_V: exact on V, zero off V.
    double on_v = 0.0;
    double off_v_max = 0.0;
    Subspace v = annihilator(*m.subspace);
    for (Index xi = 0; xi < fhat.size(); ++xi) {
      if (v.contains(xi)) {
        on_v = std::max(on_v, std::abs(fhat[xi] - m.scale * ahat[xi]));
      } else {
        off_v_max = std::max(off_v_max, std::abs(fhat[xi]));
      }
    }
    rep.expect_le("(ii) f^ == N^{1/s} 1_A^ on V", on_v, 0.0, 0.0, 1e-9 * m.scale * sz);
    rep.expect_le("(ii) |f^| ~ 0 off V", off_v_max, 0.0, 0.0, 1e-8 * static_cast<double>(m.n));
    rep.expect_le("(ii) gap <= eps N^{1/s} |A|", gap, eps * m.scale * sz, 1e-9);
    rep.ratios()["gap/(eps N^{1/s} |A|)"] = gap / (eps * m.scale * sz);
  } else {
    // On Spec: |1 - mu_B^(xi)| <= 2 pi eps, from ||n xi / M|| < eps on B.
    const GroupCtx& g = a.ctx();
    double on_factor = 0.0;
    for (Index xi : m.spec.frequencies) {
      Complex mu = 0.0;
      for (Index b : m.smoother.elements()) mu += std::conj(g.character(b, xi));
      mu /= bsz;
      on_factor = std::max(on_factor, std::abs(1.0 - mu));
    }
    rep.quantities()["max_Spec |1 - mu_B^|"] = on_factor;
    rep.expect_le("(ii) max_Spec |1 - mu_B^| <= 2 pi eps", on_factor, 2.0 * M_PI * eps, 1e-12);
    rep.expect_le("(ii) off-Spec gap <= 2 eps N^{1/s} |A|", gap_off, 2.0 * eps * m.scale * sz, 1e-9);
    rep.expect_le("(ii) gap <= 2 pi eps N^{1/s} |A|", gap, 2.0 * M_PI * eps * m.scale * sz, 1e-9);
    rep.ratios()["C = gap/(eps N)"] = gap / (eps * static_cast<double>(m.n));
    rep.ratios()["|B|/N"] = bsz / static_cast<double>(m.n);
  }

  // (iii) L^s bound via the S-chain.
  const TupleStats st = tuple_statistics(a, m.s, m.t);
  Int128 big_s = 0;
  for (auto c : m.counts) {
    if (c != 0) big_s = checked_add(big_s, ipow(c, static_cast<unsigned>(m.s)));
  }
  const Int128 bs = static_cast<Int128>(m.smoother.size());
  const Int128 lhs = checked_mul(m.t, big_s);
  const Int128 rhs = checked_add(checked_mul(static_cast<Int128>(m.t) * m.t, ipow(bs, static_cast<unsigned>(m.s))),
                                 checked_mul(bs, st.excess_total()));
  rep.quantities()["S"] = to_json_int(big_s);
  rep.quantities()["excess_total"] = to_json_int(st.excess_total());
  rep.expect_le("(iii) t S <= t^2 |S|^s + |S| excess", lhs, rhs);

  const double fs = power_sum(m.f, m.s);
  const long double excess =
      ld(st.excess_total()) / (static_cast<long double>(m.t) * std::pow(static_cast<long double>(bsz), m.s - 1));
  const double bound = static_cast<double>(m.n) * static_cast<double>(m.t + excess);
  rep.quantities()["sum f^s"] = fs;
  rep.quantities()["excess"] = static_cast<double>(excess);
  rep.expect_le("(iii) sum f^s <= N (t + excess)", fs, bound, 1e-9);
  const long double eta = ld(st.excess_total()) / std::pow(static_cast<long double>(sz), m.s);
  rep.ratios()["eta |A|^{c_s}"] = static_cast<double>(eta * std::pow(static_cast<long double>(sz), energy_exponent_cs(m.s)));
  rep.ratios()["sum f^s / N"] = fs / static_cast<double>(m.n);
  return rep;
}

VerificationReport verify_S_decomposition(const SetA& a, int s, int t, const SetA& smoother,
                                          bool smoother_is_subgroup) {
  if (s < 2 || t < s) throw UsageError("S-decomposition needs 2 <= s <= t");
  require_kst_free(a, s, t);
  const GroupCtx& g = a.ctx();
  VerificationReport rep("S_decomposition");
  rep.inputs()["group"] = g.encoding();
  rep.inputs()["size"] = a.size();
  rep.inputs()["smoother_size"] = smoother.size();
  rep.inputs()["subgroup"] = smoother_is_subgroup;
  rep.inputs()["s"] = s;
  rep.inputs()["t"] = t;

  Int128 big_s = 0;
  for (auto c : smoothed_counts(a, smoother.elements())) {
    if (c != 0) big_s = checked_add(big_s, ipow(c, static_cast<unsigned>(s)));
  }

  // Enumerate b in S^s (b_1 = 0 under translation symmetry), in parallel over
  // the second coordinate's index; per-slot sums reduced in order.
  const auto elems = smoother.elements();
  const std::size_t bs = elems.size();
  struct Part {
    Int128 sum_sizes = 0;
    Int128 weighted_excess = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t large = 0;
  };
  std::vector<Index> firsts;
  if (smoother_is_subgroup) {
    firsts.push_back(g.zero());
  } else {
    firsts.assign(elems.begin(), elems.end());
  }
  std::vector<Part> parts(firsts.size() * bs);
  parallel_for(parts.size(), [&](std::size_t job) {
    Part& part = parts[job];
    std::vector<Index> b(static_cast<std::size_t>(s));
    b[0] = firsts[job / bs];
    b[1] = elems[job % bs];
    std::vector<Index> members;
    std::vector<Index> tuple(static_cast<std::size_t>(s));
    // Odometer over b_3..b_s.
    std::vector<std::size_t> idx(static_cast<std::size_t>(s), 0);
    for (;;) {
      for (int i = 2; i < s; ++i) b[static_cast<std::size_t>(i)] = elems[idx[static_cast<std::size_t>(i)]];
      members.clear();
      for (Index x0 : a.elements()) {
        const Index x = g.add(x0, b[0]);
        bool ok = true;
        for (int i = 1; i < s && ok; ++i) ok = a.contains(g.sub(x, b[static_cast<std::size_t>(i)]));
        if (ok) members.push_back(x);
      }
      const auto m = static_cast<std::uint64_t>(members.size());
      part.sum_sizes += m;
      if (m > static_cast<std::uint64_t>(t)) {
        ++part.large;
        part.weighted_excess += static_cast<Int128>(m) * static_cast<Int128>(m - static_cast<std::uint64_t>(t));
      }
      for (Index x : members) {
        for (int i = 0; i < s; ++i) tuple[static_cast<std::size_t>(i)] = g.sub(x, b[static_cast<std::size_t>(i)]);
        if (rep_tuple(a, tuple) + 1 != m) ++part.mismatches;
      }
      int pos = s - 1;
      while (pos >= 2 && ++idx[static_cast<std::size_t>(pos)] == bs) idx[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 2) break;
    }
  });
  Part total;
  for (const auto& p : parts) {
    total.sum_sizes += p.sum_sizes;
    total.weighted_excess += p.weighted_excess;
    total.mismatches += p.mismatches;
    total.large += p.large;
  }
  const Int128 mult = smoother_is_subgroup ? static_cast<Int128>(bs) : 1;
  const Int128 sum_sizes = checked_mul(total.sum_sizes, mult);
  const Int128 weighted = checked_mul(total.weighted_excess, mult);
  const TupleStats st = tuple_statistics(a, s, t);
  const Int128 excess = st.excess_total();
  const Int128 bsz = static_cast<Int128>(bs);

  rep.quantities()["S"] = to_json_int(big_s);
  rep.quantities()["sum_b |S_b|"] = to_json_int(sum_sizes);
  rep.quantities()["#{b : |S_b| > t}"] = to_json_int(checked_mul(total.large, mult));
  rep.quantities()["excess_total"] = to_json_int(excess);
  rep.expect_eq("S == sum_b |S_b|", big_s, sum_sizes);
  rep.expect_eq("rep(x - b) == |S_b| - 1 mismatches", static_cast<Int128>(total.mismatches), 0);
  rep.expect_le("sum_b |S_b| (|S_b| - t)_+ <= |S| excess", weighted, checked_mul(bsz, excess));
  const Int128 lhs = checked_mul(t, big_s);
  const Int128 rhs =
      checked_add(checked_mul(static_cast<Int128>(t) * t, ipow(bsz, static_cast<unsigned>(s))), checked_mul(bsz, excess));
  rep.expect_le("t S <= t^2 |S|^s + |S| excess", lhs, rhs);
  if (!a.empty()) {
    const long double eta = ld(excess) / std::pow(static_cast<long double>(a.size()), s);
    rep.quantities()["eta"] = static_cast<double>(eta);
    rep.ratios()["S / (t|S|^s + (eta/t)|A|^s|S|)"] = static_cast<double>(ld(lhs) / ld(rhs));
  }
  return rep;
}

VerificationReport verify_S_decomposition(const SetA& a, int s, int t, const Subspace& h) {
  return verify_S_decomposition(a, s, t, h.as_set(), true);
}

}  // namespace addlab
