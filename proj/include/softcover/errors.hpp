#ifndef SOFTCOVER_ERRORS_HPP
#define SOFTCOVER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace softcover {

// Enumeration or state-space cap hit; CLI maps this to exit code 3.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Bad experiment config; CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace softcover

#endif
