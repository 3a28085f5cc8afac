#include "addlab/field.hpp"

#include <charconv>

#include "addlab/error.hpp"

namespace addlab {

namespace {

constexpr std::uint32_t kMaxFieldOrder = 10000;
constexpr std::uint32_t kMulTableLimit = 729;

using Poly = std::vector<std::uint32_t>;

// Remainder of a modulo monic b over F_p; both little-endian.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    std::uint32_t lead = a.back() % p;
    if (lead != 0) {
      std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = (a[shift + i] + p - (lead * b[i]) % p) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

bool all_zero(const Poly& a) {
  for (auto c : a) {
    if (c != 0) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic_poly) {
  const std::size_t deg = monic_poly.size() - 1;
  if (deg == 0) return false;
  Poly f(monic_poly.begin(), monic_poly.end());
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (all_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t r, std::vector<std::uint32_t> modulus)
    : p_(p), r_(r), q_(1), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw UsageError("field characteristic " + std::to_string(p) + " is not prime");
  if (p == 2) throw UsageError("characteristic 2 is not supported; q must be odd");
  if (r < 1) throw UsageError("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw UsageError("field order exceeds 10^4");
  }
  q_ = static_cast<std::uint32_t>(q);
  if (modulus_.size() != r + 1) {
    throw UsageError("modulus must have r+1 = " + std::to_string(r + 1) + " coefficients");
  }
  for (auto c : modulus_) {
    if (c >= p) throw UsageError("modulus coefficient out of range [0,p)");
  }
  if (modulus_.back() != 1) throw UsageError("modulus must be monic");
  if (!is_irreducible(p, modulus_)) throw UsageError("modulus is reducible over F_p");

  if (q_ <= kMulTableLimit) {
    mul_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a) {
      for (Elem b = 0; b < q_; ++b) {
        mul_table_[static_cast<std::size_t>(a) * q_ + b] =
            static_cast<std::uint16_t>(mul_schoolbook(a, b));
      }
    }
  }
  trace_table_.resize(q_);
  for (Elem a = 0; a < q_; ++a) trace_table_[a] = trace(a);
}

FieldCtx FieldCtx::builtin(std::uint32_t p, std::uint32_t r) {
  // Irreducibility of each entry is re-checked by the constructor.
  if (r == 1) return FieldCtx(p, 1, {0, 1});
  if (r == 2) {
    if (p == 3) return FieldCtx(3, 2, {1, 0, 1});  // y^2 + 1
    if (p == 5) return FieldCtx(5, 2, {2, 0, 1});  // y^2 + 2
    if (p == 7) return FieldCtx(7, 2, {1, 0, 1});  // y^2 + 1
  }
  if (r == 3) {
    if (p == 3) return FieldCtx(3, 3, {1, 2, 0, 1});  // y^3 + 2y + 1
    if (p == 5) return FieldCtx(5, 3, {1, 1, 0, 1});  // y^3 + y + 1
    if (p == 7) return FieldCtx(7, 3, {2, 0, 0, 1});  // y^3 + 2
  }
  throw UsageError("no built-in modulus for p=" + std::to_string(p) + ", r=" + std::to_string(r));
}

FieldCtx FieldCtx::prime(std::uint32_t p) { return FieldCtx(p, 1, {0, 1}); }

std::vector<std::uint32_t> FieldCtx::digits(Elem a) const {
  std::vector<std::uint32_t> out(r_);
  for (std::uint32_t i = 0; i < r_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

FieldCtx::Elem FieldCtx::from_digits(std::span<const std::uint32_t> digits) const {
  if (digits.size() != r_) throw UsageError("expected " + std::to_string(r_) + " field digits");
  Elem out = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= p_) throw UsageError("field digit out of range [0,p)");
    out = out * p_ + digits[i];
  }
  return out;
}

FieldCtx::Elem FieldCtx::add(Elem a, Elem b) const {
  Elem out = 0;
  Elem scale = 1;
  for (std::uint32_t i = 0; i < r_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

FieldCtx::Elem FieldCtx::neg(Elem a) const {
  Elem out = 0;
  Elem scale = 1;
  for (std::uint32_t i = 0; i < r_; ++i) {
    out += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

FieldCtx::Elem FieldCtx::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FieldCtx::Elem FieldCtx::mul_schoolbook(Elem a, Elem b) const {
  auto da = digits(a);
  auto db = digits(b);
  Poly prod(2 * r_ - 1, 0);
  for (std::uint32_t i = 0; i < r_; ++i) {
    for (std::uint32_t j = 0; j < r_; ++j) {
      prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
  }
  Poly rem = poly_mod(std::move(prod), modulus_, p_);
  rem.resize(r_, 0);
  return from_digits(rem);
}

FieldCtx::Elem FieldCtx::mul(Elem a, Elem b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * q_ + b];
  return mul_schoolbook(a, b);
}

FieldCtx::Elem FieldCtx::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  Elem base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FieldCtx::Elem FieldCtx::inv(Elem a) const {
  if (a == 0) throw UsageError("inverse of zero in F_q");
  return pow(a, q_ - 2);
}

FieldCtx::Elem FieldCtx::from_int(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  return static_cast<Elem>(m);
}

std::uint32_t FieldCtx::trace(Elem a) const {
  Elem sum = 0;
  Elem frob = a;
  for (std::uint32_t j = 0; j < r_; ++j) {
    sum = add(sum, frob);
    frob = pow(frob, p_);
  }
  // The trace lies in the prime subfield: only the constant digit survives.
  return sum % p_;
}

std::string FieldCtx::format(Elem a) const {
  std::string out;
  auto d = digits(a);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(d[i]);
  }
  return out;
}

FieldCtx::Elem FieldCtx::parse(std::string_view text) const {
  std::vector<std::uint32_t> d;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view tok = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
      throw UsageError("bad field element '" + std::string(text) + "'");
    }
    d.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return from_digits(d);
}

}  // namespace addlab
