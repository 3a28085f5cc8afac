#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "addlab/exact.hpp"

namespace addlab {

using Json = nlohmann::ordered_json;

struct Assertion {
  std::string name;
  Json lhs;
  std::string relation;  // "<=", "==", "<"
  Json rhs;
  bool pass = false;
};

// Structured record of one lemma check: inputs, measured quantities, the
// asserted inequalities, and ratios that are reported but never asserted.
class VerificationReport {
 public:
  VerificationReport() = default;
  explicit VerificationReport(std::string lemma) : lemma_(std::move(lemma)) {}

  const std::string& lemma() const { return lemma_; }
  Json& inputs() { return inputs_; }
  const Json& inputs() const { return inputs_; }
  Json& quantities() { return quantities_; }
  const Json& quantities() const { return quantities_; }
  Json& ratios() { return ratios_; }
  const Json& ratios() const { return ratios_; }
  const std::vector<Assertion>& assertions() const { return assertions_; }
  const std::vector<std::string>& flags() const { return flags_; }

  // Exact integer comparisons.
  bool expect_le(const std::string& name, Int128 lhs, Int128 rhs);
  bool expect_lt(const std::string& name, Int128 lhs, Int128 rhs);
  bool expect_eq(const std::string& name, Int128 lhs, Int128 rhs);
  // Floating comparisons: lhs <= rhs + rel_tol * max(|lhs|, |rhs|) (+ abs_tol).
  bool expect_le(const std::string& name, double lhs, double rhs, double rel_tol, double abs_tol = 0.0);
  bool expect_near(const std::string& name, double lhs, double rhs, double rel_tol, double abs_tol = 0.0);
  bool expect_true(const std::string& name, bool ok, const std::string& detail = {});

  void flag(std::string message) { flags_.push_back(std::move(message)); }
  void set_not_applicable(std::string reason);
  bool applicable() const { return applicable_; }

  // True when every assertion passed (vacuously for an empty report).
  bool pass() const;
  std::vector<std::string> failures() const;

  // Appends another report's assertions, prefixing names.
  void absorb(const VerificationReport& other, const std::string& prefix);

  // {lemma, pass, applicable, inputs, quantities, assertions:[{name, lhs,
  // relation, rhs, pass}], measured_ratios, flags}
  Json to_json() const;
  static VerificationReport from_json(const Json& j);

 private:
  std::string lemma_;
  Json inputs_ = Json::object();
  Json quantities_ = Json::object();
  Json ratios_ = Json::object();
  std::vector<Assertion> assertions_;
  std::vector<std::string> flags_;
  bool applicable_ = true;
  std::string not_applicable_reason_;
};

}  // namespace addlab
