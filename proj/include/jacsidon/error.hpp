#pragma once

#include <stdexcept>
#include <string>

namespace jacsidon {

/// Raised when a request exceeds one of the enumeration or budget caps.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jacsidon
