#pragma once

#include <stdexcept>
#include <string>

namespace uea {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Subsystem dimensions do not match the data they describe.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

/// A numerical precondition failed (non-Hermitian input, not a state, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A desk-scale size guard was exceeded.
class GuardError : public Error {
public:
    explicit GuardError(const std::string& what) : Error(what) {}
};

/// Run configuration is invalid; carries all problems found, not just the first.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace uea
