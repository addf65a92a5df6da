#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace zfn {

// Base for all library errors. `name()` is the stable identifier the CLI
// prints and maps to exit statuses.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// A result would leave the representable range [0, 2^63).
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& m) : Error("overflow", m) {}
};

// An argument violates an operation's precondition.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& m) : Error("domain", m) {}
};

class NotCoprimeError : public Error {
public:
    explicit NotCoprimeError(const std::string& m) : Error("not_coprime", m) {}
};

// A bounded search ran out of budget before finding its target.
class ExhaustionError : public Error {
public:
    explicit ExhaustionError(const std::string& m) : Error("exhaustion", m) {}
};

// A lookup table does not cover the requested range.
class CoverageError : public Error {
public:
    explicit CoverageError(const std::string& m) : Error("coverage", m) {}
};

class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(const std::string& m) : Error("resource_limit", m) {}
};

// A beta chain for the class decomposition fails its validity constraints.
class InvalidChainError : public Error {
public:
    explicit InvalidChainError(const std::string& m) : Error("invalid_chain", m) {}
};

class CacheFormatError : public Error {
public:
    explicit CacheFormatError(const std::string& m) : Error("cache_format", m) {}
};

// An asserted bound or verification failed.
class CheckFailure : public Error {
public:
    explicit CheckFailure(const std::string& m) : Error("check_failed", m) {}
};

}  // namespace zfn
