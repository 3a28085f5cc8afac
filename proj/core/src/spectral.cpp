#include "addlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "addlab/energy.hpp"

namespace addlab {
namespace {

using Row = std::vector<std::uint32_t>;

Spectrum scan(const SetA& a, const Rational& eps, const Dfn& hat) {
  if (a.empty()) throw UsageError("spectrum of an empty set");
  if (eps.num <= 0 || eps.num > eps.den) throw UsageError("spectrum threshold must lie in (0, 1]");
  const double size = static_cast<double>(a.size());
  const double threshold = eps.value() * size - 1e-9 * size;
  const double quantum = 1e-9 * size;
  struct Hit {
    Index xi;
    Complex v;
    long long key;
  };
  std::vector<Hit> hits;
  for (Index xi = 0; xi < hat.size(); ++xi) {
    const double m = std::abs(hat[xi]);
    if (m >= threshold) hits.push_back({xi, hat[xi], std::llround(m / quantum)});
  }
  // Magnitudes are bucketed at the roundoff scale so that mathematically
  // equal values (xi and -xi, say) order by index.
  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
    if (x.key != y.key) return x.key > y.key;
    return x.xi < y.xi;
  });
  Spectrum spec;
  spec.ctx = a.ctx_ptr();
  spec.eps = eps;
  spec.set_size = a.size();
  for (const auto& h : hits) {
    spec.frequencies.push_back(h.xi);
    spec.values.push_back(h.v);
  }
  return spec;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(const FieldCtx& f, std::vector<Row>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const auto inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const auto factor = rows[i][c];
      for (std::size_t j = 0; j < ncols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::size_t pivot_of(const Row& row) {
  std::size_t c = 0;
  while (c < row.size() && row[c] == 0) ++c;
  return c;
}

}  // namespace

bool Spectrum::contains(Index xi) const {
  return std::find(frequencies.begin(), frequencies.end(), xi) != frequencies.end();
}

Spectrum spectrum(const SetA& a, const Rational& eps) { return scan(a, eps, fourier(a.indicator())); }

Spectrum spectrum_direct(const SetA& a, const Rational& eps) {
  return scan(a, eps, fourier_direct(a.indicator()));
}

bool torus_norm_below(std::int64_t n, Index xi, std::uint64_t modulus, const Rational& eps) {
  const Int128 m = static_cast<Int128>(modulus);
  Int128 r = (static_cast<Int128>(n) * static_cast<Int128>(xi)) % m;
  if (r < 0) r += m;
  const Int128 dist = std::min(r, m - r);
  // dist / M < num / den
  return dist * eps.den < static_cast<Int128>(eps.num) * m;
}

SetA BohrSet::as_set() const {
  Provenance p{"bohr_set", "eps=" + eps.str() + ",W=" + std::to_string(width), 0};
  return SetA(ctx, elements, p);
}

BohrSet bohr_set(const Spectrum& spec, const Rational& eps, std::uint64_t n) {
  if (!spec.ctx || !spec.ctx->is_cyclic()) throw UsageError("Bohr sets live in a cyclic group");
  if (eps.num <= 0 || eps.num >= eps.den) throw UsageError("Bohr parameter must lie in (0, 1)");
  const std::uint64_t m = spec.ctx->modulus();
  const auto w = static_cast<std::uint64_t>(static_cast<Int128>(eps.num) * n / eps.den);
  if (2 * w + 1 > m) throw UsageError("Bohr window [-eps N, eps N] wraps around Z_M; enlarge M");
  BohrSet b;
  b.ctx = spec.ctx;
  b.eps = eps;
  b.width = w;
  const auto ww = static_cast<std::int64_t>(w);
  for (std::int64_t v = -ww; v <= ww; ++v) {
    bool ok = true;
    for (Index xi : spec.frequencies) {
      if (!torus_norm_below(v, xi, m, eps)) {
        ok = false;
        break;
      }
    }
    if (ok) b.elements.push_back(spec.ctx->from_signed(v));
  }
  return b;
}

Subspace::Subspace(GroupPtr ctx, std::vector<Row> rref_rows) : ctx_(std::move(ctx)), rows_(std::move(rref_rows)) {
  if (!ctx_ || ctx_->is_cyclic()) throw UsageError("subspaces live in a vector space F_q^n");
  for (const auto& r : rows_) {
    if (r.size() != ctx_->dim()) throw UsageError("subspace row has wrong length");
  }
}

std::uint64_t Subspace::size() const {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < rows_.size(); ++i) out *= ctx_->field().q();
  return out;
}

std::vector<Index> Subspace::basis() const {
  std::vector<Index> out;
  for (const auto& r : rows_) out.push_back(ctx_->from_coords(r));
  return out;
}

bool Subspace::contains(Index x) const {
  const FieldCtx& f = ctx_->field();
  auto v = ctx_->coords(x);
  for (const auto& r : rows_) {
    const std::size_t p = pivot_of(r);
    const auto coef = v[p];
    if (coef == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(coef, r[j]));
  }
  return std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; });
}

std::vector<Index> Subspace::elements() const {
  std::vector<Index> out{ctx_->zero()};
  const std::uint32_t q = ctx_->field().q();
  for (const Index b : basis()) {
    std::vector<Index> next;
    next.reserve(out.size() * q);
    for (Index x : out) {
      for (std::uint32_t c = 0; c < q; ++c) next.push_back(ctx_->add(x, ctx_->scale(b, c)));
    }
    out.swap(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SetA Subspace::as_set() const {
  return SetA(ctx_, elements(), Provenance{"subspace", "dim=" + std::to_string(dim()), 0});
}

Subspace span(GroupPtr ctx, std::span<const Index> vectors) {
  if (!ctx || ctx->is_cyclic()) throw UsageError("span needs a vector space F_q^n");
  std::vector<Row> rows;
  for (Index v : vectors) {
    if (!ctx->valid(v)) throw UsageError("span: vector outside the group");
    rows.push_back(ctx->coords(v));
  }
  rref(ctx->field(), rows, ctx->dim());
  return Subspace(std::move(ctx), std::move(rows));
}

Subspace annihilator(const Subspace& v) {
  const GroupCtx& g = v.ctx();
  const FieldCtx& f = g.field();
  const std::size_t n = g.dim();
  std::vector<bool> is_pivot(n, false);
  std::vector<std::size_t> pivots;
  for (const auto& r : v.rows()) {
    pivots.push_back(pivot_of(r));
    is_pivot[pivots.back()] = true;
  }
  // Null space of the RREF matrix: one vector per free column.
  std::vector<Index> gens;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    Row x(n, 0);
    x[c] = 1;
    for (std::size_t i = 0; i < v.rows().size(); ++i) x[pivots[i]] = f.neg(v.rows()[i][c]);
    gens.push_back(g.from_coords(x));
  }
  return span(v.ctx_ptr(), gens);
}

VerificationReport large_sieve_check(std::span<const double> points, double delta, std::span<const Complex> coeffs) {
  if (!(delta > 0.0) || delta > 0.5) throw UsageError("large sieve: delta must lie in (0, 1/2]");
  const std::size_t n1 = coeffs.size();
  for (double g : points) {
    if (!(g >= 0.0 && g < 1.0)) throw UsageError("large sieve: points must lie in [0, 1)");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double d = std::abs(points[i] - points[j]);
      d = std::min(d, 1.0 - d);
      if (d < 2.0 * delta - 1e-12) {
        throw UsageError("large sieve: intervals around " + std::to_string(points[j]) + " and " +
                         std::to_string(points[i]) + " overlap");
      }
    }
  }
  VerificationReport rep("large_sieve");
  rep.inputs()["points"] = points.size();
  rep.inputs()["delta"] = delta;
  rep.inputs()["N1"] = n1;
  double lhs = 0.0;
  for (double g : points) {
    Complex sum = 0.0;
    for (std::size_t n = 1; n <= n1; ++n) {
      const double frac = std::fmod(static_cast<double>(n) * g, 1.0);
      sum += coeffs[n - 1] * std::polar(1.0, 2.0 * M_PI * frac);
    }
    lhs += std::norm(sum);
  }
  double mass = 0.0;
  for (const auto& c : coeffs) mass += std::norm(c);
  const double rhs = (static_cast<double>(n1) + 1.0 / delta) * mass;
  rep.quantities()["sum |S|^2"] = lhs;
  rep.quantities()["sum |a|^2"] = mass;
  const bool sharp = rep.expect_le("sum |S(gamma)|^2 <= (N1 + 1/delta) sum |a|^2", lhs, rhs, 1e-12);
  if (!sharp && lhs <= 2.0 * rhs) {
    rep.flag("sharp constant fails but the constant-2 relaxation holds");
  }
  if (rhs > 0) rep.ratios()["lhs/rhs"] = lhs / rhs;
  return rep;
}

VerificationReport verify_spectrum_dimension(const SetA& a, const Rational& eps) {
  if (a.ctx().is_cyclic()) throw UsageError("spectrum dimension bound is stated for F_q^n");
  VerificationReport rep("spectrum_dimension");
  rep.inputs()["group"] = a.ctx().encoding();
  rep.inputs()["size"] = a.size();
  rep.inputs()["eps"] = eps.str();
  const Spectrum spec = spectrum(a, eps);
  const Subspace v = span(a.ctx_ptr(), spec.frequencies);
  rep.quantities()["|Spec|"] = spec.frequencies.size();
  rep.quantities()["dim V"] = v.dim();
  rep.expect_le("dim V <= |Spec|", static_cast<Int128>(v.dim()), static_cast<Int128>(spec.frequencies.size()));

  // Lambda: greedily pick spectrum frequencies that raise the rank.
  const GroupCtx& g = a.ctx();
  std::vector<Index> lambda;
  double lambda_sum = 0.0;
  for (std::size_t i = 0; i < spec.frequencies.size() && lambda.size() < v.dim(); ++i) {
    std::vector<Index> trial = lambda;
    trial.push_back(spec.frequencies[i]);
    if (span(a.ctx_ptr(), trial).dim() == trial.size()) {
      lambda = std::move(trial);
      lambda_sum += std::pow(std::abs(spec.values[i]), 4);
    }
  }
  const Int128 e2 = energy_exact(a, 2);
  const double sz = static_cast<double>(a.size());
  const double lower = static_cast<double>(v.dim()) * std::pow(eps.value(), 4) * std::pow(sz, 4);
  const double upper = static_cast<double>(g.order()) * static_cast<double>(e2);
  rep.quantities()["E_2"] = to_json_int(e2);
  rep.quantities()["sum_Lambda |1_A^|^4"] = lambda_sum;
  rep.expect_le("dim V * eps^4 |A|^4 <= sum_Lambda |1_A^|^4", lower, lambda_sum, 1e-9);
  rep.expect_le("sum_Lambda |1_A^|^4 <= N E_2", lambda_sum, upper, 1e-9);
  if (upper > 0) {
    rep.ratios()["dim V / (N E_2 / (eps^4 |A|^4))"] = static_cast<double>(v.dim()) * std::pow(eps.value(), 4) * std::pow(sz, 4) / upper;
  }
  return rep;
}

}  // namespace addlab
