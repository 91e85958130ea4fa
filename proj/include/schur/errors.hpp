#pragma once

#include <stdexcept>
#include <string>

namespace schur {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad mathematical input: invalid factor, nesting violation, gluing
/// mismatch, precondition failure.  CLI maps this to exit code 1.
struct domain_error : error {
    using error::error;
};

/// A configured size/time bound was exceeded.  CLI maps this to exit code 2.
struct resource_error : error {
    using error::error;
};

/// API misuse: unregistered decomposition, wrong carrier group, etc.
struct usage_error : domain_error {
    using domain_error::domain_error;
};

/// A theorem-guaranteed property failed to hold; indicates a library bug.
struct internal_error : error {
    using error::error;
};

} // namespace schur
