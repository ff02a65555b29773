#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hlf {

enum class ErrorKind {
  Parse,         // malformed text input or configuration
  Precondition,  // an operation was called outside its domain
  Invariant,     // internal consistency check failed
};

// Every failure carries the module and operation that raised it so that the
// CLI can report "module.op: message" without guessing.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, std::string op, const std::string& message)
      : std::runtime_error(module + "." + op + ": " + message),
        kind_(kind),
        module_(std::move(module)),
        op_(std::move(op)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& op() const noexcept { return op_; }

 private:
  ErrorKind kind_;
  std::string module_;
  std::string op_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string_view module, std::string_view op,
                              const std::string& message) {
  throw Error(kind, std::string(module), std::string(op), message);
}

}  // namespace hlf
