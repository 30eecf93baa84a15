#pragma once

#include <stdexcept>
#include <string>

namespace nscartan {

/// Internal consistency failure: non-integral value where integrality is a
/// theorem, disagreement between independent computation paths, and the like.
/// These are never recoverable; the CLI maps them to exit code 3.
struct HardError : std::runtime_error {
    explicit HardError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A p-adic quantity is indistinguishable from zero at the working precision.
/// Callers either escalate the precision or give up loudly; a valuation is
/// never silently reported as 0.
struct InsufficientPrecision : std::runtime_error {
    explicit InsufficientPrecision(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace nscartan
