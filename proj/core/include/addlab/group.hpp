#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "addlab/field.hpp"

namespace addlab {

// Every group element is identified with an index in [0, N). For Z_M the index
// is the residue; for F_q^n it is the mixed-radix number whose base-p digits
// are the r coefficients of coordinate 0, then coordinate 1, and so on.
using Index = std::uint64_t;

// A phase u/den, standing for the unit complex number exp(2 pi i u / den).
struct Phase {
  std::uint64_t num;
  std::uint64_t den;
};

class GroupCtx {
 public:
  enum class Kind { Cyclic, VectorSpace };

  static GroupCtx cyclic(std::uint64_t modulus);
  static GroupCtx vector_space(FieldCtx field, std::uint32_t dim);

  // "cyclic:M" or "fq:p:r:m0,m1,...,mr:n"
  static GroupCtx parse(std::string_view encoding);
  std::string encoding() const;

  Kind kind() const { return kind_; }
  bool is_cyclic() const { return kind_ == Kind::Cyclic; }
  std::uint64_t order() const { return order_; }
  std::uint64_t modulus() const;      // Cyclic only
  const FieldCtx& field() const;      // VectorSpace only
  std::uint32_t dim() const;          // VectorSpace only

  bool valid(Index x) const { return x < order_; }

  Index zero() const { return 0; }
  Index add(Index x, Index y) const;
  Index sub(Index x, Index y) const;
  Index neg(Index x) const;
  // Integer multiple c*x (through F_p for vector spaces).
  Index scale_int(Index x, std::int64_t c) const;
  // F_q scalar multiple; vector spaces only.
  Index scale(Index x, FieldCtx::Elem c) const;

  std::vector<FieldCtx::Elem> coords(Index x) const;  // VectorSpace only
  Index from_coords(std::span<const FieldCtx::Elem> coords) const;
  FieldCtx::Elem dot(Index x, Index y) const;         // VectorSpace only

  // chi_xi(x): e(x xi / M) for Z_M, e_q(<x, xi>) for F_q^n.
  Phase phase(Index x, Index xi) const;
  std::complex<double> character(Index x, Index xi) const;

  // Cyclic elements print as residues; vector-space elements as n
  // space-separated field elements, each r comma-separated digits.
  std::string format(Index x) const;
  Index parse_element(std::string_view text) const;

  // Signed representative of a residue, in (-M/2, M/2]. Cyclic only.
  std::int64_t signed_rep(Index x) const;
  Index from_signed(std::int64_t v) const;

  friend bool operator==(const GroupCtx& a, const GroupCtx& b);

 private:
  GroupCtx() = default;

  Kind kind_ = Kind::Cyclic;
  std::uint64_t order_ = 1;
  std::uint32_t dim_ = 0;
  std::optional<FieldCtx> field_;
  std::vector<std::uint64_t> coord_stride_;  // q^j
};

using GroupPtr = std::shared_ptr<const GroupCtx>;

inline GroupPtr make_group(GroupCtx ctx) { return std::make_shared<const GroupCtx>(std::move(ctx)); }

// exp(2 pi i num/den), evaluated on the reduced angle.
std::complex<double> unit_root(std::uint64_t num, std::uint64_t den);

}  // namespace addlab
