#include "addlab/equation.hpp"

#include <charconv>
#include <numeric>
#include <tuple>

#include "addlab/error.hpp"

namespace addlab {

EquationSpec::EquationSpec(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 3) throw UsageError("equation needs k >= 3 variables");
  for (auto a : coeffs_) {
    if (a == 0) throw UsageError("equation coefficients must be nonzero");
  }
}

EquationSpec::EquationSpec(std::vector<std::int64_t> coeffs, const GroupCtx& g)
    : EquationSpec(std::move(coeffs)) {
  check_group(g);
}

std::int64_t EquationSpec::sum() const {
  std::int64_t s = 0;
  for (auto a : coeffs_) s += a;
  return s;
}

EquationSpec EquationSpec::parse(std::string_view text) {
  std::vector<std::int64_t> coeffs;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view tok = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
      throw UsageError("bad equation '" + std::string(text) + "'");
    }
    coeffs.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return EquationSpec(std::move(coeffs));
}

std::string EquationSpec::str() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(coeffs_[i]);
  }
  return out;
}

std::int64_t EquationSpec::abs_sum() const {
  std::int64_t s = 0;
  for (auto a : coeffs_) s += a < 0 ? -a : a;
  return s;
}

void EquationSpec::check_group(const GroupCtx& g) const {
  if (g.is_cyclic()) {
    if (sum() != 0) {
      throw UsageError("equation " + str() + " is not translation invariant over Z: coefficients sum to " +
                       std::to_string(sum()));
    }
    return;
  }
  const auto p = static_cast<std::int64_t>(g.field().p());
  if (sum() % p != 0) {
    throw UsageError("equation " + str() + " is not translation invariant over F_" + std::to_string(p));
  }
  for (auto a : coeffs_) {
    if (a % p == 0) {
      throw UsageError("coefficient " + std::to_string(a) + " vanishes in F_" + std::to_string(p));
    }
  }
}

std::uint64_t required_modulus(const EquationSpec& eq, std::uint64_t window) {
  if (window == 0) window = 1;
  std::uint64_t m = static_cast<std::uint64_t>(eq.abs_sum()) * (window - 1) + 1;
  while (true) {
    bool coprime = true;
    for (auto a : eq.coeffs()) {
      if (std::gcd(static_cast<std::uint64_t>(a < 0 ? -a : a), m) != 1) {
        coprime = false;
        break;
      }
    }
    if (coprime) return m;
    ++m;
  }
}

std::optional<std::uint64_t> coefficient_inverse(const GroupCtx& g, std::int64_t a) {
  const auto m = static_cast<std::int64_t>(g.is_cyclic() ? g.modulus() : g.field().p());
  if (m == 1) return 0;
  std::int64_t r0 = m;
  std::int64_t r1 = a % m;
  if (r1 < 0) r1 += m;
  std::int64_t t0 = 0;
  std::int64_t t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (r0 != 1) return std::nullopt;
  if (t0 < 0) t0 += m;
  return static_cast<std::uint64_t>(t0);
}

}  // namespace addlab
