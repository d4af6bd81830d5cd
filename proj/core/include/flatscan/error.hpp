#pragma once

#include <stdexcept>
#include <string>

namespace flatscan {

/// Error type thrown by all library operations on contract violations
/// (degenerate inputs, dimension mismatches, parse failures).
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flatscan
