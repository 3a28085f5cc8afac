#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <json.hpp>

#include "addlab/error.hpp"

namespace addlab {

// Exact integer arithmetic for energies and proof-internal counts.
using Int128 = __int128;

inline std::string to_string(Int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v)
                            : static_cast<unsigned __int128>(v);
  std::string out;
  while (u > 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) out.insert(out.begin(), '-');
  return out;
}

// Small values serialize as JSON integers; anything wider as a decimal string.
inline nlohmann::ordered_json to_json_int(Int128 v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return to_string(v);
}

inline Int128 checked_mul(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw UsageError("exact arithmetic overflow (128-bit)");
  }
  return out;
}

inline Int128 checked_add(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw UsageError("exact arithmetic overflow (128-bit)");
  }
  return out;
}

inline Int128 ipow(Int128 base, unsigned exp) {
  Int128 out = 1;
  for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace addlab
