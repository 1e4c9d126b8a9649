#pragma once

#include <stdexcept>
#include <string>

namespace bect {

// Bad caller input: malformed files, out-of-range indices, inconsistent sizes.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A guarded computation would exceed its configured budget. The message names
// the offending count so the caller can decide whether to raise the budget.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bect
