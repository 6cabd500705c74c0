#include "dtlab/error.hpp"

#include <utility>

namespace dtlab {

Error::Error(ErrorKind kind, std::string code, const std::string& message)
    : std::runtime_error(code + ": " + message), kind_(kind), code_(std::move(code)) {}

void throw_config(std::string code, const std::string& message) {
  throw Error(ErrorKind::config, std::move(code), message);
}

void throw_numerical(std::string code, const std::string& message) {
  throw Error(ErrorKind::numerical, std::move(code), message);
}

}  // namespace dtlab
