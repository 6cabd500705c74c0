#pragma once

#include <stdexcept>
#include <string>

namespace dtlab {

/// Failure category; the CLI maps these onto exit codes.
enum class ErrorKind {
  config,     ///< invalid input or configuration (exit 2)
  numerical,  ///< a numerical abort from a lower module (exit 3)
};

/// Exception carrying a module-qualified code such as "matrix_lab.singular".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] void throw_config(std::string code, const std::string& message);
[[noreturn]] void throw_numerical(std::string code, const std::string& message);

}  // namespace dtlab
