#pragma once

#include <stdexcept>

namespace sdmx {

/// Raised when a serialized word stream or index file is malformed.
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when input to a structure builder violates its preconditions.
class build_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace sdmx
