#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace transineq {

/// Stable identifiers for every failure the library can raise. The CLI
/// surfaces these names verbatim in report.json.
enum class ErrorCode {
  kSyntaxError,
  kUnknownIdentifier,
  kNonIntegrable,
  kQuantileOutOfRange,
  kInverseOutOfRange,
  kAngularUnbounded,
  kEtaUnbounded,
  kModeUnsupported,
  kNonConvexCost,
  kNonRadialPerturbation,
  kSizeLimitExceeded,
  kAllInfinite,
  kNonConstantAngular,
  kInvalidArgument,
  kQuadratureFailure,
  kConfigError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with the byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::kSyntaxError,
              what + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::size_t position, const std::string& name)
      : Error(ErrorCode::kUnknownIdentifier,
              "'" + name + "' at offset " + std::to_string(position)),
        position_(position),
        name_(name) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::size_t position_;
  std::string name_;
};

/// Config validation failure; `path` is a dotted field path such as
/// `checks[2].weight`.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(ErrorCode::kConfigError, path + ": " + what),
        path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace transineq
