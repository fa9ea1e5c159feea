#pragma once

#include <stdexcept>
#include <string>

namespace gsite {

/// Raised when an input specification (tower, G-set, config) violates a
/// structural requirement. Messages name the offending level/pair so the
/// caller can point at the bad table entry.
class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when two values that must live over the same tower (or must be
/// composable) are mixed.
class CompatibilityError : public std::runtime_error {
public:
    explicit CompatibilityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gsite
