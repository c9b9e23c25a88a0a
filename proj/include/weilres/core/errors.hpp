#pragma once

#include <stdexcept>
#include <string>

namespace weilres {

/// Input violates a structural invariant (bad descriptor, malformed matrix).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A well-formed request that cannot be computed (overflow, failed check).
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration outside the supported class of groups (non-reduced relative
/// systems, non-quasi-split data, ramified towers where unramified is needed).
class UnsupportedCase : public ComputeError {
public:
    explicit UnsupportedCase(const std::string& what) : ComputeError(what) {}
};

} // namespace weilres
