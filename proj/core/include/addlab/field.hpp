#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace addlab {

// F_q = F_p[y]/(m(y)) with q = p^r. An element is encoded as the integer
// sum_i d_i p^i of its little-endian coefficients in the basis 1, y, ..., y^{r-1}.
class FieldCtx {
 public:
  using Elem = std::uint32_t;

  // modulus holds r+1 coefficients, little-endian, and must be monic and
  // irreducible over F_p. p must be an odd prime; q is capped at 10^4.
  FieldCtx(std::uint32_t p, std::uint32_t r, std::vector<std::uint32_t> modulus);

  // Built-in moduli for p in {3,5,7}, r in {1,2,3}.
  static FieldCtx builtin(std::uint32_t p, std::uint32_t r);
  // Prime field F_p.
  static FieldCtx prime(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  std::uint32_t r() const { return r_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;
  Elem inv(Elem a) const;  // a != 0
  // Embeds an integer through F_p into F_q.
  Elem from_int(std::int64_t v) const;

  // Tr_{F_q/F_p}(a) = sum_{j<r} a^{p^j}, by repeated Frobenius.
  std::uint32_t trace(Elem a) const;
  // Table lookup of the same value, for hot loops.
  std::uint32_t trace_cached(Elem a) const { return trace_table_[a]; }

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint32_t> digits) const;

  // "d0,d1,...,d_{r-1}"
  std::string format(Elem a) const;
  Elem parse(std::string_view text) const;

  bool valid(Elem a) const { return a < q_; }

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.p_ == b.p_ && a.r_ == b.r_ && a.modulus_ == b.modulus_;
  }

 private:
  Elem mul_schoolbook(Elem a, Elem b) const;

  std::uint32_t p_;
  std::uint32_t r_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> trace_table_;
  std::vector<std::uint16_t> mul_table_;  // q*q entries when q is small
};

bool is_prime(std::uint64_t n);

// Exhaustive trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic_poly);

}  // namespace addlab
