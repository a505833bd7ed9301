#pragma once

#include <stdexcept>

namespace rtdig {

/// Thrown when a construction would exceed its configured state cap.
/// Callers map this to a dedicated exit code instead of reporting a verdict
/// from a partial construction.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rtdig
