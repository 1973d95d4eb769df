#pragma once

#include <stdexcept>
#include <string>

namespace cmair {

// Invalid parameters, malformed inputs, unsatisfiable brackets. The CLI maps
// this to exit code 2; anything else escaping to main() is exit code 1.
class config_error : public std::invalid_argument {
  public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace cmair
