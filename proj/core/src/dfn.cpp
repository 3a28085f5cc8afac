#include "addlab/dfn.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "addlab/error.hpp"

namespace addlab {

namespace {

constexpr double kRealTolerance = 1e-12;

}  // namespace

Dfn::Dfn(GroupPtr ctx, Tag tag, std::vector<Complex> values)
    : ctx_(std::move(ctx)), tag_(tag), values_(std::move(values)) {
  if (!ctx_) throw UsageError("Dfn without a group");
  if (values_.size() != ctx_->order()) {
    throw UsageError("Dfn has " + std::to_string(values_.size()) + " values, group order is " +
                     std::to_string(ctx_->order()));
  }
  if (tag_ == Tag::Real) {
    for (auto& v : values_) {
      if (std::abs(v.imag()) > kRealTolerance * std::max(1.0, std::abs(v.real()))) {
        throw UsageError("real-tagged Dfn has a non-negligible imaginary part");
      }
      v = {v.real(), 0.0};
    }
  }
}

Dfn::Dfn(GroupPtr ctx, std::span<const double> real_values)
    : Dfn(ctx, Tag::Real, std::vector<Complex>(real_values.begin(), real_values.end())) {}

Dfn Dfn::zeros(GroupPtr ctx, Tag tag) {
  auto n = ctx->order();
  return Dfn(std::move(ctx), tag, std::vector<Complex>(n));
}

Dfn Dfn::constant(GroupPtr ctx, double value) {
  auto n = ctx->order();
  return Dfn(std::move(ctx), Tag::Real, std::vector<Complex>(n, value));
}

Dfn Dfn::delta(GroupPtr ctx, Index at) {
  std::vector<Complex> v(ctx->order());
  v.at(at) = 1.0;
  return Dfn(std::move(ctx), Tag::Real, std::move(v));
}

Dfn Dfn::indicator(GroupPtr ctx, std::span<const Index> support) {
  std::vector<Complex> v(ctx->order());
  for (auto x : support) v.at(x) = 1.0;
  return Dfn(std::move(ctx), Tag::Real, std::move(v));
}

std::vector<double> Dfn::real_values() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i].real();
  return out;
}

Dfn Dfn::scaled(Complex c) const {
  std::vector<Complex> v(values_);
  for (auto& x : v) x *= c;
  Tag tag = (tag_ == Tag::Real && c.imag() == 0.0) ? Tag::Real : Tag::Complex;
  return Dfn(ctx_, tag, std::move(v));
}

void require_same_ctx(const Dfn& a, const Dfn& b) {
  if (a.ctx_ptr() != b.ctx_ptr() && !(a.ctx() == b.ctx())) {
    throw UsageError("functions live on different groups: " + a.ctx().encoding() + " vs " +
                     b.ctx().encoding());
  }
}

Dfn Dfn::plus(const Dfn& other) const {
  require_same_ctx(*this, other);
  std::vector<Complex> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
  Tag tag = (is_real() && other.is_real()) ? Tag::Real : Tag::Complex;
  return Dfn(ctx_, tag, std::move(v));
}

Dfn Dfn::minus(const Dfn& other) const { return plus(other.scaled(-1.0)); }

Dfn Dfn::translated(Index c) const {
  std::vector<Complex> v(values_.size());
  for (Index x = 0; x < v.size(); ++x) v[ctx_->add(x, c)] = values_[x];
  return Dfn(ctx_, tag_, std::move(v));
}

Dfn Dfn::reflected() const {
  std::vector<Complex> v(values_.size());
  for (Index x = 0; x < v.size(); ++x) v[ctx_->neg(x)] = values_[x];
  return Dfn(ctx_, tag_, std::move(v));
}

Dfn Dfn::abs() const {
  std::vector<Complex> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(values_[i]);
  return Dfn(ctx_, Tag::Real, std::move(v));
}

Dfn convolve(const Dfn& h1, const Dfn& h2, ConvMethod method) {
  require_same_ctx(h1, h2);
  const Tag tag = (h1.is_real() && h2.is_real()) ? Tag::Real : Tag::Complex;
  const auto& g = h1.ctx();
  if (method == ConvMethod::Direct) {
    std::vector<Complex> out(g.order());
    // Sparse in h1: skip zero entries, exact for integer-valued inputs.
    for (Index y = 0; y < g.order(); ++y) {
      const Complex a = h1[y];
      if (a == Complex{}) continue;
      for (Index z = 0; z < g.order(); ++z) {
        const Complex b = h2[z];
        if (b == Complex{}) continue;
        out[g.add(y, z)] += a * b;
      }
    }
    return Dfn(h1.ctx_ptr(), tag, std::move(out));
  }
  Dfn f1 = fourier(h1);
  Dfn f2 = fourier(h2);
  std::vector<Complex> prod(f1.values());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= f2.values()[i];
  Dfn back = inverse_fourier(Dfn(h1.ctx_ptr(), Tag::Complex, std::move(prod)));
  if (tag == Tag::Complex) return back;
  std::vector<Complex> re(back.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = back.values()[i].real();
  return Dfn(h1.ctx_ptr(), Tag::Real, std::move(re));
}

double power_sum(const Dfn& h, double p) {
  double acc = 0.0;
  for (const auto& v : h.values()) acc += std::pow(std::abs(v), p);
  return acc;
}

double dual_mean_power(const Dfn& spectrum, double p) {
  return power_sum(spectrum, p) / static_cast<double>(spectrum.size());
}

double sup_abs(const Dfn& h) {
  double m = 0.0;
  for (const auto& v : h.values()) m = std::max(m, std::abs(v));
  return m;
}

Norms norms(const Dfn& h, double p) {
  if (!(p >= 1.0)) throw UsageError("norm exponent must be >= 1");
  Dfn hat = fourier(h);
  Norms n{};
  n.p = p;
  n.l1 = power_sum(h, 1.0);
  n.l2 = std::sqrt(power_sum(h, 2.0));
  n.lp = std::pow(power_sum(h, p), 1.0 / p);
  n.sup = sup_abs(h);
  n.fourier_sup = sup_abs(hat);
  n.fourier_lp = std::pow(dual_mean_power(hat, p), 1.0 / p);
  return n;
}

void write_dfn(std::ostream& out, const Dfn& h) {
  out << "ctx=" << h.ctx().encoding() << " tag=" << (h.is_real() ? "real" : "complex") << '\n';
  out << std::setprecision(17);
  for (const auto& v : h.values()) {
    if (h.is_real()) {
      out << v.real() << '\n';
    } else {
      out << v.real() << ' ' << v.imag() << '\n';
    }
  }
  if (!out) throw IoError("failed writing Dfn");
}

Dfn read_dfn(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw IoError("empty Dfn stream");
  std::istringstream hs(header);
  std::string ctx_field, tag_field;
  hs >> ctx_field >> tag_field;
  if (ctx_field.rfind("ctx=", 0) != 0 || tag_field.rfind("tag=", 0) != 0) {
    throw UsageError("bad Dfn header: '" + header + "'");
  }
  auto ctx = make_group(GroupCtx::parse(ctx_field.substr(4)));
  std::string tag_name = tag_field.substr(4);
  Tag tag;
  if (tag_name == "real") {
    tag = Tag::Real;
  } else if (tag_name == "complex") {
    tag = Tag::Complex;
  } else {
    throw UsageError("bad Dfn tag '" + tag_name + "'");
  }
  std::vector<Complex> values;
  values.reserve(ctx->order());
  std::string line;
  while (values.size() < ctx->order() && std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    if (!(ls >> re)) throw UsageError("bad Dfn value line '" + line + "'");
    if (tag == Tag::Complex && !(ls >> im)) throw UsageError("complex Dfn line lacks imaginary part");
    values.emplace_back(re, im);
  }
  if (values.size() != ctx->order()) throw UsageError("Dfn stream truncated");
  return Dfn(std::move(ctx), tag, std::move(values));
}

}  // namespace addlab
