#pragma once

#include <stdexcept>
#include <string>

namespace fractal {

// Single exception type for all contract violations in the library.
// Messages are stable strings that callers (and tests) match on.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fractal
