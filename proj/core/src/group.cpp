#include "addlab/group.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "addlab/error.hpp"
#include "addlab/exact.hpp"

namespace addlab {

namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 48;

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("not a nonnegative integer: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::complex<double> unit_root(std::uint64_t num, std::uint64_t den) {
  num %= den;
  // Extended precision keeps the angle's rounding far below double epsilon.
  const long double frac = static_cast<long double>(num) / static_cast<long double>(den);
  const long double angle = 2.0L * std::numbers::pi_v<long double> * frac;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

GroupCtx GroupCtx::cyclic(std::uint64_t modulus) {
  if (modulus < 1) throw UsageError("cyclic group order must be >= 1");
  if (modulus > kMaxOrder) throw UsageError("group order exceeds 2^48");
  GroupCtx g;
  g.kind_ = Kind::Cyclic;
  g.order_ = modulus;
  return g;
}

GroupCtx GroupCtx::vector_space(FieldCtx field, std::uint32_t dim) {
  if (dim < 1) throw UsageError("vector space dimension must be >= 1");
  GroupCtx g;
  g.kind_ = Kind::VectorSpace;
  g.dim_ = dim;
  std::uint64_t order = 1;
  g.coord_stride_.reserve(dim);
  for (std::uint32_t j = 0; j < dim; ++j) {
    g.coord_stride_.push_back(order);
    if (order > kMaxOrder / field.q()) throw UsageError("group order q^n exceeds 2^48");
    order *= field.q();
  }
  g.order_ = order;
  g.field_ = std::move(field);
  return g;
}

std::uint64_t GroupCtx::modulus() const {
  if (kind_ != Kind::Cyclic) throw UsageError("modulus() on a vector space");
  return order_;
}

const FieldCtx& GroupCtx::field() const {
  if (kind_ != Kind::VectorSpace) throw UsageError("field() on a cyclic group");
  return *field_;
}

std::uint32_t GroupCtx::dim() const {
  if (kind_ != Kind::VectorSpace) throw UsageError("dim() on a cyclic group");
  return dim_;
}

std::string GroupCtx::encoding() const {
  if (kind_ == Kind::Cyclic) return "cyclic:" + std::to_string(order_);
  std::string mod;
  for (std::size_t i = 0; i < field_->modulus().size(); ++i) {
    if (i) mod += ',';
    mod += std::to_string(field_->modulus()[i]);
  }
  return "fq:" + std::to_string(field_->p()) + ":" + std::to_string(field_->r()) + ":" + mod + ":" +
         std::to_string(dim_);
}

GroupCtx GroupCtx::parse(std::string_view encoding) {
  auto parts = split(encoding, ':');
  if (parts.size() == 2 && parts[0] == "cyclic") return cyclic(parse_u64(parts[1]));
  if (parts.size() == 5 && parts[0] == "fq") {
    auto p = static_cast<std::uint32_t>(parse_u64(parts[1]));
    auto r = static_cast<std::uint32_t>(parse_u64(parts[2]));
    std::vector<std::uint32_t> mod;
    for (auto tok : split(parts[3], ',')) mod.push_back(static_cast<std::uint32_t>(parse_u64(tok)));
    auto n = static_cast<std::uint32_t>(parse_u64(parts[4]));
    return vector_space(FieldCtx(p, r, std::move(mod)), n);
  }
  // Shorthand "fq:p:r:n" picks the built-in modulus.
  if (parts.size() == 4 && parts[0] == "fq") {
    auto p = static_cast<std::uint32_t>(parse_u64(parts[1]));
    auto r = static_cast<std::uint32_t>(parse_u64(parts[2]));
    auto n = static_cast<std::uint32_t>(parse_u64(parts[3]));
    return vector_space(FieldCtx::builtin(p, r), n);
  }
  throw UsageError("bad group encoding '" + std::string(encoding) + "'");
}

std::vector<FieldCtx::Elem> GroupCtx::coords(Index x) const {
  const auto q = field().q();
  std::vector<FieldCtx::Elem> out(dim_);
  for (std::uint32_t j = 0; j < dim_; ++j) {
    out[j] = static_cast<FieldCtx::Elem>(x % q);
    x /= q;
  }
  return out;
}

Index GroupCtx::from_coords(std::span<const FieldCtx::Elem> c) const {
  if (c.size() != dim()) throw UsageError("coordinate count does not match dimension");
  Index out = 0;
  for (std::uint32_t j = 0; j < dim_; ++j) {
    if (!field_->valid(c[j])) throw UsageError("coordinate out of range");
    out += c[j] * coord_stride_[j];
  }
  return out;
}

Index GroupCtx::add(Index x, Index y) const {
  if (kind_ == Kind::Cyclic) {
    Index s = x + y;
    return s >= order_ ? s - order_ : s;
  }
  // Digitwise addition mod p.
  const std::uint64_t p = field_->p();
  Index out = 0;
  Index scale = 1;
  while (x > 0 || y > 0) {
    out += ((x % p + y % p) % p) * scale;
    x /= p;
    y /= p;
    scale *= p;
  }
  return out;
}

Index GroupCtx::neg(Index x) const {
  if (kind_ == Kind::Cyclic) return x == 0 ? 0 : order_ - x;
  const std::uint64_t p = field_->p();
  Index out = 0;
  Index scale = 1;
  while (x > 0) {
    out += ((p - x % p) % p) * scale;
    x /= p;
    scale *= p;
  }
  return out;
}

Index GroupCtx::sub(Index x, Index y) const { return add(x, neg(y)); }

Index GroupCtx::scale_int(Index x, std::int64_t c) const {
  if (kind_ == Kind::Cyclic) {
    std::int64_t m = c % static_cast<std::int64_t>(order_);
    if (m < 0) m += static_cast<std::int64_t>(order_);
    return mulmod(x, static_cast<std::uint64_t>(m), order_);
  }
  const std::uint64_t p = field_->p();
  std::int64_t m = c % static_cast<std::int64_t>(p);
  if (m < 0) m += static_cast<std::int64_t>(p);
  Index out = 0;
  Index scale = 1;
  while (x > 0) {
    out += ((x % p) * static_cast<std::uint64_t>(m) % p) * scale;
    x /= p;
    scale *= p;
  }
  return out;
}

Index GroupCtx::scale(Index x, FieldCtx::Elem c) const {
  if (kind_ != Kind::VectorSpace) throw UsageError("F_q scalar multiplication on a cyclic group");
  if (!field_->valid(c)) throw UsageError("scalar is not an element of F_q");
  auto v = coords(x);
  for (auto& e : v) e = field_->mul(e, c);
  return from_coords(v);
}

FieldCtx::Elem GroupCtx::dot(Index x, Index y) const {
  const auto& f = field();
  const auto q = f.q();
  FieldCtx::Elem acc = 0;
  for (std::uint32_t j = 0; j < dim_; ++j) {
    acc = f.add(acc, f.mul(static_cast<FieldCtx::Elem>(x % q), static_cast<FieldCtx::Elem>(y % q)));
    x /= q;
    y /= q;
  }
  return acc;
}

Phase GroupCtx::phase(Index x, Index xi) const {
  if (kind_ == Kind::Cyclic) return {mulmod(x, xi, order_), order_};
  return {field_->trace_cached(dot(x, xi)), field_->p()};
}

std::complex<double> GroupCtx::character(Index x, Index xi) const {
  auto ph = phase(x, xi);
  return unit_root(ph.num, ph.den);
}

std::string GroupCtx::format(Index x) const {
  if (kind_ == Kind::Cyclic) return std::to_string(x);
  std::string out;
  auto c = coords(x);
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j) out += ' ';
    out += field_->format(c[j]);
  }
  return out;
}

Index GroupCtx::parse_element(std::string_view text) const {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (kind_ == Kind::Cyclic) {
    auto v = parse_u64(text);
    if (v >= order_) throw UsageError("residue out of range: " + std::string(text));
    return v;
  }
  std::vector<FieldCtx::Elem> c;
  for (auto tok : split(text, ' ')) {
    if (tok.empty()) continue;
    c.push_back(field_->parse(tok));
  }
  return from_coords(c);
}

std::int64_t GroupCtx::signed_rep(Index x) const {
  const auto m = modulus();
  return x > m / 2 ? static_cast<std::int64_t>(x) - static_cast<std::int64_t>(m) : static_cast<std::int64_t>(x);
}

Index GroupCtx::from_signed(std::int64_t v) const {
  const auto m = static_cast<std::int64_t>(modulus());
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<Index>(r);
}

bool operator==(const GroupCtx& a, const GroupCtx& b) {
  if (a.kind_ != b.kind_ || a.order_ != b.order_) return false;
  if (a.kind_ == GroupCtx::Kind::Cyclic) return true;
  return a.dim_ == b.dim_ && *a.field_ == *b.field_;
}

}  // namespace addlab
