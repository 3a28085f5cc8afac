#include "addlab/report.hpp"

#include <cmath>

namespace addlab {

bool VerificationReport::expect_le(const std::string& name, Int128 lhs, Int128 rhs) {
  bool ok = lhs <= rhs;
  assertions_.push_back({name, to_json_int(lhs), "<=", to_json_int(rhs), ok});
  return ok;
}

bool VerificationReport::expect_lt(const std::string& name, Int128 lhs, Int128 rhs) {
  bool ok = lhs < rhs;
  assertions_.push_back({name, to_json_int(lhs), "<", to_json_int(rhs), ok});
  return ok;
}

bool VerificationReport::expect_eq(const std::string& name, Int128 lhs, Int128 rhs) {
  bool ok = lhs == rhs;
  assertions_.push_back({name, to_json_int(lhs), "==", to_json_int(rhs), ok});
  return ok;
}

bool VerificationReport::expect_le(const std::string& name, double lhs, double rhs, double rel_tol,
                                   double abs_tol) {
  const double slack = rel_tol * std::max(std::abs(lhs), std::abs(rhs)) + abs_tol;
  bool ok = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + slack;
  assertions_.push_back({name, lhs, "<=", rhs, ok});
  return ok;
}

bool VerificationReport::expect_near(const std::string& name, double lhs, double rhs, double rel_tol,
                                     double abs_tol) {
  const double slack = rel_tol * std::max(std::abs(lhs), std::abs(rhs)) + abs_tol;
  bool ok = std::isfinite(lhs) && std::isfinite(rhs) && std::abs(lhs - rhs) <= slack;
  assertions_.push_back({name, lhs, "==", rhs, ok});
  return ok;
}

bool VerificationReport::expect_true(const std::string& name, bool ok, const std::string& detail) {
  assertions_.push_back({name, detail.empty() ? Json(ok) : Json(detail), "holds", true, ok});
  return ok;
}

void VerificationReport::set_not_applicable(std::string reason) {
  applicable_ = false;
  not_applicable_reason_ = std::move(reason);
}

bool VerificationReport::pass() const {
  for (const auto& a : assertions_) {
    if (!a.pass) return false;
  }
  return true;
}

std::vector<std::string> VerificationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& a : assertions_) {
    if (!a.pass) out.push_back(lemma_ + ": " + a.name);
  }
  return out;
}

void VerificationReport::absorb(const VerificationReport& other, const std::string& prefix) {
  for (auto a : other.assertions_) {
    a.name = prefix + a.name;
    assertions_.push_back(std::move(a));
  }
  for (const auto& f : other.flags_) flags_.push_back(prefix + f);
}

Json VerificationReport::to_json() const {
  Json j;
  j["lemma"] = lemma_;
  j["pass"] = pass();
  j["applicable"] = applicable_;
  if (!applicable_) j["not_applicable_reason"] = not_applicable_reason_;
  j["inputs"] = inputs_;
  j["quantities"] = quantities_;
  j["assertions"] = Json::array();
  for (const auto& a : assertions_) {
    Json aj;
    aj["name"] = a.name;
    aj["lhs"] = a.lhs;
    aj["relation"] = a.relation;
    aj["rhs"] = a.rhs;
    aj["pass"] = a.pass;
    j["assertions"].push_back(std::move(aj));
  }
  j["measured_ratios"] = ratios_;
  j["flags"] = flags_;
  return j;
}

VerificationReport VerificationReport::from_json(const Json& j) {
  VerificationReport r(j.at("lemma").get<std::string>());
  r.applicable_ = j.value("applicable", true);
  if (!r.applicable_) r.not_applicable_reason_ = j.value("not_applicable_reason", std::string{});
  r.inputs_ = j.value("inputs", Json::object());
  r.quantities_ = j.value("quantities", Json::object());
  r.ratios_ = j.value("measured_ratios", Json::object());
  for (const auto& aj : j.at("assertions")) {
    r.assertions_.push_back({aj.at("name").get<std::string>(), aj.at("lhs"), aj.at("relation").get<std::string>(),
                             aj.at("rhs"), aj.at("pass").get<bool>()});
  }
  if (j.contains("flags")) r.flags_ = j.at("flags").get<std::vector<std::string>>();
  return r;
}

}  // namespace addlab
