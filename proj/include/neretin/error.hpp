#pragma once

#include <stdexcept>
#include <string>

namespace neretin {

enum class ErrorKind {
  validation,       // malformed input, bad parameters
  parse,            // DSL / cycle-notation syntax error
  resource_limit,   // refinement or enumeration cap exceeded
  ball_not_rigid,   // evaluate_ball on a ball the element does not map rigidly
  invalid_target,   // refine() target above the antichain
  identity_input,   // operation requires a nontrivial element
  hypothesis,       // witness construction preconditions fail
  invariance,       // measure not invariant under a supplied conjugator
  normalization,    // subgroup does not normalize where it must
  internal          // two computation routes disagree
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::parse: return "parse";
    case ErrorKind::resource_limit: return "resource-limit";
    case ErrorKind::ball_not_rigid: return "ball-not-rigid";
    case ErrorKind::invalid_target: return "invalid-target";
    case ErrorKind::identity_input: return "identity-input";
    case ErrorKind::hypothesis: return "hypothesis-violation";
    case ErrorKind::invariance: return "invariance-violation";
    case ErrorKind::normalization: return "normalization-violation";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace neretin
