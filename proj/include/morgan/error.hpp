#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace morgan {

/// Input does not describe a valid structure. `witness` names the offending
/// elements (a cycle, a pair, a triple, ...).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> witness = {})
      : std::runtime_error(what), witness_(std::move(witness)) {}

  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  std::vector<std::string> witness_;
};

/// An operation was called outside its domain (non-projective input to a
/// retraction builder, Kleene variety on a non-Kleene object, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exhaustive searches refuse inputs above their size guard.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction produced something that fails its own contract.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace morgan
