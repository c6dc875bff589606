#pragma once

#include <stdexcept>
#include <string>

namespace pplay {

// Raised when a configuration or schedule fails an admissibility check.
// The CLI maps this to exit code 1; other exceptions map to 2.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pplay
