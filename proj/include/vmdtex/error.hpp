#pragma once

#include <stdexcept>
#include <string>

namespace vmdtex {

/// Coarse failure class; maps onto CLI exit codes (config=2, data=3, numerical=4).
enum class ErrorCategory { config, data, numerical };

/// Library-wide exception. `kind()` is a stable machine-readable tag such as
/// "MalformedName" or "IllConditioned".
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string& message)
      : std::runtime_error(message), category_(category), kind_(std::move(kind)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCategory category_;
  std::string kind_;
};

inline Error config_error(std::string kind, const std::string& message) {
  return Error(ErrorCategory::config, std::move(kind), message);
}
inline Error data_error(std::string kind, const std::string& message) {
  return Error(ErrorCategory::data, std::move(kind), message);
}
inline Error numerical_error(std::string kind, const std::string& message) {
  return Error(ErrorCategory::numerical, std::move(kind), message);
}

inline int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::config: return 2;
    case ErrorCategory::data: return 3;
    case ErrorCategory::numerical: return 4;
  }
  return 1;
}

inline const char* to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::config: return "config";
    case ErrorCategory::data: return "data";
    case ErrorCategory::numerical: return "numerical";
  }
  return "unknown";
}

}  // namespace vmdtex
