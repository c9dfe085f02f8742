#pragma once

#include <stdexcept>
#include <string>

namespace vfree {

// Failure classes map one-to-one onto CLI exit codes.
enum class ErrorKind {
  Input,         // malformed input or violated precondition (exit 2)
  Verification,  // a mathematical check failed (exit 1)
  Budget,        // scan budget or extension cap exhausted (exit 3)
  Integrity,     // internal consistency assertion (exit 1)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& msg) { throw Error(ErrorKind::Input, msg); }
[[noreturn]] inline void throw_budget(const std::string& msg) { throw Error(ErrorKind::Budget, msg); }
[[noreturn]] inline void throw_integrity(const std::string& msg) {
  throw Error(ErrorKind::Integrity, msg);
}
[[noreturn]] inline void throw_verification(const std::string& msg) {
  throw Error(ErrorKind::Verification, msg);
}

}  // namespace vfree
