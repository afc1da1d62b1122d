#pragma once

#include <stdexcept>
#include <string>

namespace tropicount {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input that cannot even be checked (bad indices, wrong arity).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A precondition of a weight or validator rule does not hold.
class HypothesisError : public Error {
 public:
  HypothesisError(std::string rule, const std::string& what)
      : Error(rule + ": " + what), rule_(std::move(rule)) {}
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string rule_;
};

class GenericityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace tropicount
