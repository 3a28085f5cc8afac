#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace addlab {

// Positive-denominator rational, kept in lowest terms. Thresholds such as the
// spectrum/Bohr parameter are rationals so membership tests can be exact.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  // Accepts "p/q", an integer, or a finite decimal such as "0.125".
  static Rational parse(std::string_view text);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

bool operator<(const Rational& a, const Rational& b);

}  // namespace addlab
