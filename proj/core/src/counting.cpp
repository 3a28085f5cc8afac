#include "addlab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "addlab/parallel.hpp"

namespace addlab {
namespace {

struct Entry {
  Index x;
  Index ax;  // a_i x
  Complex v;
};

void check_family(const EquationSpec& eq, std::span<const Dfn> hs) {
  if (hs.size() != eq.k()) throw UsageError("need exactly k functions for a k-variable equation");
  for (const Dfn& h : hs) require_same_ctx(hs[0], h);
  eq.check_group(hs[0].ctx());
}

void check_window(const EquationSpec& eq, std::span<const Dfn> hs) {
  const GroupCtx& g = hs[0].ctx();
  if (!g.is_cyclic()) return;
  const SupportWindow w = support_window(eq, hs);
  if (g.modulus() < w.required_modulus) {
    throw UsageError("Z_" + std::to_string(g.modulus()) + " is too small to model integer solutions on [" +
                     std::to_string(w.lo) + ", " + std::to_string(w.hi) + "]; minimal modulus is " +
                     std::to_string(w.required_modulus));
  }
}

bool dilations_bijective(const EquationSpec& eq, const GroupCtx& g) {
  for (auto a : eq.coeffs()) {
    if (!coefficient_inverse(g, a)) return false;
  }
  return true;
}

// Dilation xi -> a xi must permute the dual group for the Hoelder links.
void check_dilations(const EquationSpec& eq, const GroupCtx& g) {
  for (auto a : eq.coeffs()) {
    if (!coefficient_inverse(g, a)) {
      throw UsageError("coefficient " + std::to_string(a) + " is not invertible on " + g.encoding());
    }
  }
}

std::vector<Dfn> hats_of(std::span<const Dfn> hs) {
  std::vector<Dfn> out;
  out.reserve(hs.size());
  for (const Dfn& h : hs) out.push_back(fourier(h));
  return out;
}

// (1/N) sum_xi prod_j H_j(a_j xi), summed in fixed blocks.
Complex fourier_count(const EquationSpec& eq, const std::vector<Dfn>& hats) {
  const GroupCtx& g = hats[0].ctx();
  const std::size_t n = g.order();
  const std::size_t block = 4096;
  const std::size_t nblocks = (n + block - 1) / block;
  std::vector<Complex> parts(nblocks);
  parallel_for(nblocks, [&](std::size_t b) {
    Complex acc = 0.0;
    for (std::size_t xi = b * block; xi < std::min(n, (b + 1) * block); ++xi) {
      Complex prod = 1.0;
      for (std::size_t j = 0; j < hats.size(); ++j) prod *= hats[j][g.scale_int(xi, eq.coeff(j))];
      acc += prod;
    }
    parts[b] = acc;
  });
  Complex total = 0.0;
  for (const auto& p : parts) total += p;
  return total / static_cast<double>(n);
}

Complex diagonal_sum(std::span<const Dfn> hs) {
  Complex total = 0.0;
  for (Index x = 0; x < hs[0].size(); ++x) {
    Complex prod = 1.0;
    for (const Dfn& h : hs) prod *= h[x];
    total += prod;
  }
  return total;
}

Complex brute_count(const EquationSpec& eq, std::span<const Dfn> hs) {
  const GroupCtx& g = hs[0].ctx();
  const std::size_t k = eq.k();
  std::vector<std::vector<Entry>> supp(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (Index x = 0; x < hs[i].size(); ++x) {
      if (hs[i][x] != Complex(0.0)) supp[i].push_back({x, g.scale_int(x, eq.coeff(i)), hs[i][x]});
    }
    if (supp[i].empty()) return 0.0;
  }
  // Solve for the largest support with an invertible coefficient.
  std::optional<std::size_t> solved;
  std::optional<std::uint64_t> inv;
  for (std::size_t i = 0; i < k; ++i) {
    auto u = coefficient_inverse(g, eq.coeff(i));
    if (u && (!solved || supp[i].size() > supp[*solved].size())) {
      solved = i;
      inv = u;
    }
  }
  const std::size_t js = solved.value_or(k - 1);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < k; ++i) {
    if (i != js) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return supp[x].size() < supp[y].size(); });

  const Dfn& hsolved = hs[js];
  const auto& first = supp[order[0]];
  std::vector<Complex> parts(first.size());
  parallel_for(first.size(), [&](std::size_t e) {
    Complex out = 0.0;
    auto rec = [&](auto&& self, std::size_t depth, Index acc, Complex prod) -> void {
      if (depth == order.size()) {
        if (inv) {
          const Index x = g.scale_int(g.neg(acc), static_cast<std::int64_t>(*inv));
          out += prod * hsolved[x];
        } else {
          for (const Entry& en : supp[js]) {
            if (g.add(acc, en.ax) == 0) out += prod * en.v;
          }
        }
        return;
      }
      for (const Entry& en : supp[order[depth]]) self(self, depth + 1, g.add(acc, en.ax), prod * en.v);
    };
    rec(rec, 1, first[e].ax, first[e].v);
    parts[e] = out;
  });
  Complex total = 0.0;
  for (const auto& p : parts) total += p;
  return total;
}

double norm_pow_mean(const Dfn& hat, double p) { return dual_mean_power(hat, p); }

Json format_tuple(const GroupCtx& g, std::span<const Index> xs) {
  Json j = Json::array();
  for (Index x : xs) j.push_back(g.format(x));
  return j;
}

Json complex_json(Complex c) {
  if (c.imag() == 0.0) return c.real();
  return Json::array({c.real(), c.imag()});
}

}  // namespace

SupportWindow support_window(const EquationSpec& eq, std::span<const Dfn> hs) {
  const GroupCtx& g = hs[0].ctx();
  if (!g.is_cyclic()) throw UsageError("support windows are defined for cyclic models");
  SupportWindow w;
  bool any = false;
  for (const Dfn& h : hs) {
    for (Index x = 0; x < h.size(); ++x) {
      if (h[x] == Complex(0.0)) continue;
      const std::int64_t v = g.signed_rep(x);
      w.lo = any ? std::min(w.lo, v) : v;
      w.hi = any ? std::max(w.hi, v) : v;
      any = true;
    }
  }
  w.required_modulus = any ? required_modulus(eq, static_cast<std::uint64_t>(w.hi - w.lo + 1)) : 1;
  return w;
}

CountResult count_T(const EquationSpec& eq, std::span<const Dfn> hs, CountMethod method, Ambient ambient) {
  check_family(eq, hs);
  if (ambient == Ambient::IntegerModel) check_window(eq, hs);
  CountResult r;
  r.method = method;
  r.trivial = diagonal_sum(hs);
  r.total = method == CountMethod::Brute ? brute_count(eq, hs) : fourier_count(eq, hats_of(hs));
  return r;
}

SolutionCounts count_solutions(const EquationSpec& eq, const SetA& a, Ambient ambient) {
  const GroupCtx& g = a.ctx();
  eq.check_group(g);
  const std::size_t k = eq.k();
  if (ambient == Ambient::IntegerModel && g.is_cyclic() && !a.empty()) {
    const Dfn ind = a.indicator();
    std::vector<Dfn> hs(k, ind);
    check_window(eq, hs);
  }
  SolutionCounts out;
  if (a.empty()) return out;
  // Solve for the last slot with an invertible coefficient.
  std::optional<std::size_t> solved;
  std::uint64_t inv = 0;
  for (std::size_t i = k; i-- > 0;) {
    if (auto u = coefficient_inverse(g, eq.coeff(i))) {
      solved = i;
      inv = *u;
      break;
    }
  }
  if (!solved) throw UsageError("no coefficient of " + eq.str() + " is invertible on " + g.encoding());
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < k; ++i) {
    if (i != *solved) free.push_back(i);
  }
  const auto elems = a.elements();
  struct Part {
    Int128 total = 0;
    Int128 distinct = 0;
    std::optional<std::vector<Index>> witness;
  };
  std::vector<Part> parts(elems.size());
  parallel_for(elems.size(), [&](std::size_t e) {
    Part& part = parts[e];
    std::vector<Index> tuple(k);
    auto rec = [&](auto&& self, std::size_t depth, Index acc) -> void {
      if (depth == free.size()) {
        const Index x = g.scale_int(g.neg(acc), static_cast<std::int64_t>(inv));
        if (!a.contains(x)) return;
        tuple[*solved] = x;
        ++part.total;
        bool all_equal = true;
        bool distinct = true;
        for (std::size_t i = 0; i < k; ++i) {
          if (tuple[i] != tuple[0]) all_equal = false;
          for (std::size_t j = 0; j < i && distinct; ++j) distinct = tuple[i] != tuple[j];
        }
        if (distinct) ++part.distinct;
        if (!all_equal && !part.witness) part.witness = tuple;
        return;
      }
      for (Index y : elems) {
        tuple[free[depth]] = y;
        self(self, depth + 1, g.add(acc, g.scale_int(y, eq.coeff(free[depth]))));
      }
    };
    tuple[free[0]] = elems[e];
    rec(rec, 1, g.scale_int(elems[e], eq.coeff(free[0])));
  });
  for (auto& p : parts) {
    out.total += p.total;
    out.all_distinct += p.distinct;
    if (p.witness && !out.first_nontrivial) out.first_nontrivial = std::move(p.witness);
  }
  // Every diagonal tuple solves eq because the coefficients sum to zero.
  out.trivial = static_cast<Int128>(a.size());
  return out;
}

TrivialValue trivial_solution_value(const EquationSpec& eq, const SetA& a, int s) {
  if (s < 1) throw UsageError("s must be >= 1");
  const Ambient ambient = a.ctx().is_cyclic() ? Ambient::IntegerModel : Ambient::Group;
  const SolutionCounts sc = count_solutions(eq, a, ambient);
  if (sc.first_nontrivial) {
    Json w;
    w["equation"] = eq.str();
    w["solution"] = format_tuple(a.ctx(), *sc.first_nontrivial);
    throw PreconditionError("set has a nontrivial solution of " + eq.str(), w);
  }
  const double n = static_cast<double>(a.interval_length());
  const double scale = std::pow(n, 1.0 / s);
  const double value = std::pow(n, static_cast<double>(eq.k()) / s) * static_cast<double>(a.size());
  const Dfn big_f = a.indicator().scaled(scale);
  std::vector<Dfn> hs(eq.k(), big_f);
  const double counted = count_T(eq, hs, CountMethod::Brute, ambient).total.real();
  VerificationReport rep("trivial_solution_value");
  rep.inputs()["equation"] = eq.str();
  rep.inputs()["group"] = a.ctx().encoding();
  rep.inputs()["size"] = a.size();
  rep.inputs()["N"] = a.interval_length();
  rep.inputs()["s"] = s;
  rep.expect_eq("solutions in A^k == |A| (diagonal only)", sc.total, static_cast<Int128>(a.size()));
  rep.expect_near("T(F) == N^{k/s} |A|", counted, value, 1e-8);
  return TrivialValue{value, counted, std::move(rep)};
}

CountingChain counting_chain(const EquationSpec& eq, const Dfn& nu, std::span<const Dfn> fs) {
  check_family(eq, fs);
  require_same_ctx(nu, fs[0]);
  const std::size_t k = eq.k();
  if (k < 5) throw UsageError("the counting-lemma chain needs k >= 5");
  const GroupCtx& g = nu.ctx();
  check_dilations(eq, g);
  double nu_max = 0.0;
  for (const auto& v : nu.values()) {
    if (v.real() < 0.0 || v.imag() != 0.0) throw UsageError("nu must be real and nonnegative");
    nu_max = std::max(nu_max, v.real());
  }
  const double tol = 1e-12 * std::max(1.0, nu_max);
  for (std::size_t i = 0; i < k; ++i) {
    for (Index x = 0; x < g.order(); ++x) {
      if (std::abs(fs[i][x]) > nu[x].real() + tol) {
        throw UsageError("domination |f_" + std::to_string(i + 1) + "| <= nu fails at x = " + g.format(x));
      }
    }
  }
  const std::vector<Dfn> hats = hats_of(fs);
  const double n = static_cast<double>(g.order());
  CountingChain c;
  c.t = fourier_count(eq, hats);
  double abs_sum = 0.0;
  for (Index xi = 0; xi < g.order(); ++xi) {
    double prod = 1.0;
    for (std::size_t j = 0; j < k; ++j) prod *= std::abs(hats[j][g.scale_int(xi, eq.coeff(j))]);
    abs_sum += prod;
  }
  c.abs_sum = abs_sum / n;
  const double km1 = static_cast<double>(k - 1);
  for (std::size_t j = 0; j < k; ++j) {
    c.sup.push_back(sup_abs(hats[j]));
    c.norm_k1.push_back(std::pow(norm_pow_mean(hats[j], km1), 1.0 / km1));
    c.fourth_moment.push_back(norm_pow_mean(hats[j], 4.0));
    c.e2.push_back(power_sum(convolve(fs[j], fs[j], ConvMethod::Fast), 2.0));
  }
  c.e2_nu = power_sum(convolve(nu, nu, ConvMethod::Fast), 2.0);
  c.chain_bound = INFINITY;
  c.energy_bound = INFINITY;
  for (std::size_t i = 0; i < k; ++i) {
    double b = c.sup[i];
    double e = c.sup[i];
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      b *= c.norm_k1[j];
      e *= std::pow(std::pow(c.sup[j], km1 - 4.0) * c.e2_nu, 1.0 / km1);
    }
    c.slot_bound.push_back(b);
    c.chain_bound = std::min(c.chain_bound, b);
    c.energy_bound = std::min(c.energy_bound, e);
  }
  return c;
}

VerificationReport verify_counting_lemma(const EquationSpec& eq, const Dfn& nu, std::span<const Dfn> fs) {
  const CountingChain c = counting_chain(eq, nu, fs);
  const std::size_t k = eq.k();
  const double km1 = static_cast<double>(k - 1);
  VerificationReport rep("counting_lemma");
  rep.inputs()["equation"] = eq.str();
  rep.inputs()["group"] = nu.ctx().encoding();
  rep.quantities()["T"] = complex_json(c.t);
  rep.quantities()["(1/N) sum prod |f^|"] = c.abs_sum;
  rep.quantities()["sup"] = c.sup;
  rep.quantities()["norm_{k-1}"] = c.norm_k1;
  rep.quantities()["E_2(f_j,f_j)"] = c.e2;
  rep.quantities()["E_2(nu,nu)"] = c.e2_nu;
  rep.quantities()["chain_bound"] = c.chain_bound;
  rep.quantities()["energy_bound"] = c.energy_bound;
  const double rel = 1e-9;
  rep.expect_le("|T| <= (1/N) sum_xi prod |f_j^(a_j xi)|", std::abs(c.t), c.abs_sum, rel, 1e-12 * c.abs_sum);
  for (std::size_t i = 0; i < k; ++i) {
    rep.expect_le("Hoelder with sup in slot " + std::to_string(i + 1), c.abs_sum, c.slot_bound[i], rel);
  }
  rep.expect_le("|T| <= min_i ||f_i^||_inf prod_{j!=i} ||f_j^||_{k-1}", std::abs(c.t), c.chain_bound, rel,
                1e-12 * c.abs_sum);
  for (std::size_t j = 0; j < k; ++j) {
    const std::string tag = " (f_" + std::to_string(j + 1) + ")";
    rep.expect_le("||f^||_{k-1}^{k-1} <= ||f^||_inf^{k-5} ||f^||_4^4" + tag, std::pow(c.norm_k1[j], km1),
                  std::pow(c.sup[j], km1 - 4.0) * c.fourth_moment[j], rel);
    rep.expect_near("||f^||_4^4 == E_2(f,f)" + tag, c.fourth_moment[j], c.e2[j], rel, 1e-12 * c.e2_nu);
    rep.expect_le("E_2(f,f) <= E_2(nu,nu)" + tag, c.e2[j], c.e2_nu, rel);
  }
  rep.expect_le("|T| <= min_i sup_i prod_{j!=i} (sup_j^{k-5} E_2(nu,nu))^{1/(k-1)}", std::abs(c.t), c.energy_bound,
                rel, 1e-12 * c.abs_sum);
  if (c.chain_bound > 0) rep.ratios()["|T|/chain_bound"] = std::abs(c.t) / c.chain_bound;
  return rep;
}

VerificationReport verify_telescoping(const EquationSpec& eq, const Dfn& f, const Dfn& big_f) {
  require_same_ctx(f, big_f);
  const std::size_t k = eq.k();
  const GroupCtx& g = f.ctx();
  eq.check_group(g);
  const Dfn gdiff = f.minus(big_f);
  const Dfn fh = fourier(f);
  const Dfn bh = fourier(big_f);
  const Dfn gh = fourier(gdiff);
  const double n = static_cast<double>(g.order());

  Complex tf = 0.0;
  Complex tbig = 0.0;
  std::vector<Complex> terms(k, 0.0);
  std::vector<Complex> fv(k), bv(k), gv(k);
  for (Index xi = 0; xi < g.order(); ++xi) {
    for (std::size_t j = 0; j < k; ++j) {
      const Index d = g.scale_int(xi, eq.coeff(j));
      fv[j] = fh[d];
      bv[j] = bh[d];
      gv[j] = gh[d];
    }
    Complex pf = 1.0;
    Complex pb = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      pf *= fv[j];
      pb *= bv[j];
    }
    tf += pf;
    tbig += pb;
    for (std::size_t i = 0; i < k; ++i) {
      Complex p = gv[i];
      for (std::size_t j = 0; j < i; ++j) p *= fv[j];
      for (std::size_t j = i + 1; j < k; ++j) p *= bv[j];
      terms[i] += p;
    }
  }
  tf /= n;
  tbig /= n;
  Complex rhs = 0.0;
  double scale = std::max(std::abs(tf), std::abs(tbig));
  for (auto& t : terms) {
    t /= n;
    rhs += t;
    scale = std::max(scale, std::abs(t));
  }

  VerificationReport rep("telescoping");
  rep.inputs()["equation"] = eq.str();
  rep.inputs()["group"] = g.encoding();
  rep.quantities()["T(f)"] = complex_json(tf);
  rep.quantities()["T(F)"] = complex_json(tbig);
  Json tj = Json::array();
  for (const auto& t : terms) tj.push_back(complex_json(t));
  rep.quantities()["terms"] = tj;
  const double ghat_sup = sup_abs(gh);
  rep.quantities()["||g^||_inf"] = ghat_sup;
  const double diff = std::abs(tf - tbig);
  rep.quantities()["|T(f) - T(F)|"] = diff;
  rep.expect_le("|T(f) - T(F) - sum_i T(..g in slot i..)|", std::abs(tf - tbig - rhs), 0.0, 0.0,
                1e-8 * std::max(scale, 1e-300));
  const double nk2 = std::pow(n, static_cast<double>(k) - 2.0);
  if (ghat_sup > 0) rep.ratios()["|T(f)-T(F)| / (N^{k-2} ||g^||_inf)"] = diff / (nk2 * ghat_sup);

  if (k >= 5 && !dilations_bijective(eq, g)) {
    rep.flag("a coefficient is not invertible on " + g.encoding() + ": the Hoelder transference chain is not applicable");
  } else if (k >= 5) {
    std::vector<double> fvals(g.order());
    for (Index x = 0; x < g.order(); ++x) fvals[x] = std::abs(f[x]) + std::abs(big_f[x]);
    const Dfn nu(f.ctx_ptr(), fvals);
    double bound_sum = 0.0;
    Json bounds = Json::array();
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Dfn> fs;
      for (std::size_t j = 0; j < k; ++j) fs.push_back(j < i ? f : (j == i ? gdiff : big_f));
      const VerificationReport sub = verify_counting_lemma(eq, nu, fs);
      rep.absorb(sub, "slot " + std::to_string(i + 1) + ": ");
      const CountingChain c = counting_chain(eq, nu, fs);
      bounds.push_back(c.slot_bound[i]);
      bound_sum += c.slot_bound[i];
      rep.expect_le("|T(..g in slot " + std::to_string(i + 1) + "..)| <= bound_i", std::abs(terms[i]),
                    c.slot_bound[i], 1e-9, 1e-12 * scale);
    }
    rep.quantities()["bound_i"] = bounds;
    rep.quantities()["sum_i bound_i"] = bound_sum;
    rep.quantities()["sum nu"] = std::accumulate(fvals.begin(), fvals.end(), 0.0);
    rep.expect_le("|T(f) - T(F)| <= sum_i bound_i", diff, bound_sum, 1e-9, 1e-12 * scale);
    if (bound_sum > 0) rep.ratios()["|T(f)-T(F)| / sum_i bound_i"] = diff / bound_sum;
  } else {
    rep.flag("k < 5: the Hoelder transference chain is not applicable");
  }
  return rep;
}

std::pair<SetA, VerificationReport> level_set_extract(const Dfn& f, double delta, double p,
                                                      std::optional<std::uint64_t> n_opt) {
  if (!(p > 1.0)) throw UsageError("level-set exponent p must exceed 1");
  if (!(delta > 0.0)) throw UsageError("level-set delta must be positive");
  const GroupCtx& g = f.ctx();
  for (Index x = 0; x < g.order(); ++x) {
    if (f[x].real() < 0.0 || f[x].imag() != 0.0) {
      throw UsageError("level-set input must be nonnegative; f(" + g.format(x) + ") = " +
                       std::to_string(f[x].real()));
    }
  }
  const std::uint64_t n = n_opt.value_or(g.order());
  const double nd = static_cast<double>(n);
  std::vector<Index> a0;
  double mass = 0.0;
  double mass_a0 = 0.0;
  double pow_sum = 0.0;
  std::uint64_t support = 0;
  for (Index x = 0; x < g.order(); ++x) {
    const double v = f[x].real();
    mass += v;
    pow_sum += std::pow(v, p);
    if (v > 0.0) ++support;
    if (v >= delta / 2.0) {
      a0.push_back(x);
      mass_a0 += v;
    }
  }
  const double c = pow_sum / nd;
  const double sz = static_cast<double>(a0.size());
  const double expo = p / (p - 1.0);
  const std::uint64_t outside = support - static_cast<std::uint64_t>(
                                              std::count_if(a0.begin(), a0.end(), [&](Index x) { return f[x].real() > 0.0; }));

  VerificationReport rep("level_set");
  rep.inputs()["group"] = g.encoding();
  rep.inputs()["N"] = n;
  rep.inputs()["delta"] = delta;
  rep.inputs()["p"] = p;
  rep.quantities()["sum f"] = mass;
  rep.quantities()["sum f^p"] = pow_sum;
  rep.quantities()["C"] = c;
  rep.quantities()["|A_0|"] = a0.size();
  rep.quantities()["|supp f|"] = support;

  // The chain: sum_{A_0} f >= sum f - (delta/2) |supp f \ A_0|, then Hoelder.
  const double lower_mass = mass - delta / 2.0 * static_cast<double>(outside);
  rep.expect_le("sum f - (delta/2)|supp f \\ A_0| <= sum_{A_0} f", lower_mass, mass_a0, 1e-12);
  double pow_a0 = 0.0;
  for (Index x : a0) pow_a0 += std::pow(f[x].real(), p);
  rep.expect_le("sum_{A_0} f <= |A_0|^{1-1/p} (sum_{A_0} f^p)^{1/p}", mass_a0,
                std::pow(sz, 1.0 - 1.0 / p) * std::pow(pow_a0, 1.0 / p), 1e-12);
  if (lower_mass > 0.0) {
    rep.expect_le("|A_0| >= (sum_{A_0} f)^{p/(p-1)} / (sum f^p)^{1/(p-1)}",
                  std::pow(lower_mass, expo) / std::pow(pow_sum, 1.0 / (p - 1.0)), sz, 1e-12);
  }

  const bool mass_ok = mass >= delta * nd * (1.0 - 1e-12);
  const bool window_ok = support <= n;
  if (!mass_ok) {
    rep.flag("sum f < delta N: the level-set lemma does not apply");
  } else if (!window_ok) {
    rep.flag("supp f exceeds N points; the lemma form is reported as a ratio only");
  } else {
    const double general = std::pow(delta / 2.0, expo) * std::pow(c, -1.0 / (p - 1.0)) * nd;
    rep.quantities()["holder_bound"] = general;
    rep.expect_le("|A_0| >= (delta/2)^{p/(p-1)} C^{-1/(p-1)} N", general, sz, 1e-12);
    if (c <= 1.0) {
      rep.expect_le("|A_0| >= (delta/2)^{p/(p-1)} N (C <= 1)", std::pow(delta / 2.0, expo) * nd, sz, 1e-12);
    }
  }
  rep.ratios()["|A_0| / ((delta/2)^{p/(p-1)} N)"] = sz / (std::pow(delta / 2.0, expo) * nd);
  SetA out(f.ctx_ptr(), a0, Provenance{"level_set", "delta=" + std::to_string(delta), 0});
  return {std::move(out), std::move(rep)};
}

Int128 count_k_cycles(std::span<const SetA> xs) {
  if (xs.size() < 2) throw UsageError("k-cycles need k >= 2 sets");
  const GroupCtx& g = xs[0].ctx();
  for (const auto& x : xs) {
    if (!(x.ctx() == g)) throw UsageError("k-cycle sets must share a group");
  }
  const std::size_t k = xs.size();
  const auto first = xs[0].elements();
  std::vector<Int128> parts(first.size(), 0);
  parallel_for(first.size(), [&](std::size_t e) {
    Int128 count = 0;
    auto rec = [&](auto&& self, std::size_t depth, Index acc) -> void {
      if (depth == k - 1) {
        if (xs[k - 1].contains(g.neg(acc))) ++count;
        return;
      }
      for (Index y : xs[depth].elements()) self(self, depth + 1, g.add(acc, y));
    };
    rec(rec, 1, first[e]);
    parts[e] = count;
  });
  Int128 total = 0;
  for (auto p : parts) total += p;
  return total;
}

VerificationReport verify_supersaturation(const EquationSpec& eq, const SetA& a0, double exponent_c) {
  const GroupCtx& g = a0.ctx();
  if (g.is_cyclic()) throw UsageError("supersaturation is stated over F_q^n");
  eq.check_group(g);
  const std::size_t k = eq.k();
  std::vector<SetA> xs;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Index> img;
    for (Index x : a0.elements()) img.push_back(g.scale_int(x, eq.coeff(i)));
    xs.emplace_back(a0.ctx_ptr(), img, Provenance{"dilate", "a=" + std::to_string(eq.coeff(i)), 0});
  }
  VerificationReport rep("supersaturation");
  rep.inputs()["equation"] = eq.str();
  rep.inputs()["group"] = g.encoding();
  rep.inputs()["|A_0|"] = a0.size();

  // (a) diagonal cycles.
  std::uint64_t diagonal = 0;
  for (Index x : a0.elements()) {
    Index sum = 0;
    for (std::size_t i = 0; i < k; ++i) sum = g.add(sum, g.scale_int(x, eq.coeff(i)));
    if (sum == 0) ++diagonal;
  }
  for (std::size_t i = 0; i < k; ++i) {
    rep.expect_eq("diagonal cycles distinct in coordinate " + std::to_string(i + 1),
                  static_cast<Int128>(xs[i].size()), static_cast<Int128>(a0.size()));
  }
  rep.expect_eq("every diagonal tuple is a cycle", static_cast<Int128>(diagonal), static_cast<Int128>(a0.size()));
  const Int128 cycles = count_k_cycles(xs);
  rep.quantities()["cycles"] = to_json_int(cycles);
  rep.expect_le("cycles >= |A_0|", static_cast<Int128>(a0.size()), cycles);

  // (b) solutions of eq in A_0^k <-> cycles.
  const SolutionCounts sc = count_solutions(eq, a0);
  rep.quantities()["solutions"] = to_json_int(sc.total);
  rep.quantities()["all_distinct_solutions"] = to_json_int(sc.all_distinct);
  rep.expect_eq("#solutions in A_0^k == #cycles", sc.total, cycles);

  // (c) ratio only.
  const double nd = static_cast<double>(g.order());
  const double rho = static_cast<double>(a0.size()) / nd;
  const double density = static_cast<double>(cycles) / std::pow(nd, static_cast<double>(k) - 1.0);
  rep.inputs()["C"] = exponent_c;
  rep.quantities()["rho"] = rho;
  if (rho > 0) rep.ratios()["cycles/N^{k-1} / (rho/2k)^C"] = density / std::pow(rho / (2.0 * k), exponent_c);
  return rep;
}

}  // namespace addlab
