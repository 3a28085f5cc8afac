#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace addlab {

// Invalid arguments or a call that violates an operation's contract.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A verifier's mathematical precondition does not hold for the given input.
// The witness (e.g. a K_{s,t} grid or a nontrivial solution) travels with it.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& what, nlohmann::ordered_json witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}

  const nlohmann::ordered_json& witness() const { return witness_; }

 private:
  nlohmann::ordered_json witness_;
};

}  // namespace addlab
