#pragma once

#include <stdexcept>
#include <string>

namespace pvqa {

/// Raised when a computation fails numerically (singular kernel, failed fit,
/// empty count record). Distinct from std::invalid_argument so callers can
/// map it to a dedicated exit code.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pvqa
