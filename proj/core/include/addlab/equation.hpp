#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "addlab/group.hpp"

namespace addlab {

// a_1 x_1 + ... + a_k x_k = 0 with k >= 3 and every a_i != 0. Translation
// invariance depends on the scalar ring: sum a_i = 0 over Z for cyclic models
// of [N], sum a_i = 0 mod p for F_q^n. check_group() enforces it and every
// consumer calls it before counting.
class EquationSpec {
 public:
  explicit EquationSpec(std::vector<std::int64_t> coeffs);
  EquationSpec(std::vector<std::int64_t> coeffs, const GroupCtx& g);

  // "1,1,1,-1,-2"
  static EquationSpec parse(std::string_view text);
  std::string str() const;

  std::size_t k() const { return coeffs_.size(); }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t coeff(std::size_t i) const { return coeffs_[i]; }
  std::int64_t abs_sum() const;
  std::int64_t sum() const;

  // Over F_q^n the coefficients act through F_p: each must be nonzero mod p
  // and their sum must vanish mod p. Throws UsageError otherwise.
  void check_group(const GroupCtx& g) const;

  friend bool operator==(const EquationSpec&, const EquationSpec&) = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

// Smallest cyclic modulus M > (sum |a_i|) * (window - 1) that is coprime to
// every coefficient. Solutions in Z_M with all coordinates in an integer
// window of that length are then exactly the integer solutions, and each
// dilation xi -> a_i xi is a bijection of the dual group.
std::uint64_t required_modulus(const EquationSpec& eq, std::uint64_t window);

// u with u * a acting as the identity on g (mod M, or mod p for F_q^n), if
// the integer a is invertible there.
std::optional<std::uint64_t> coefficient_inverse(const GroupCtx& g, std::int64_t a);

}  // namespace addlab
