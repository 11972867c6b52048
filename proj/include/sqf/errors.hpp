#pragma once

#include <stdexcept>
#include <string>

namespace sqf {

// Argument outside an operation's declared domain.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Computation would exceed a hard cap (sieve size, block materialization,
// direct-route term count).
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A caller-asserted hypothesis failed within the finite budget of a run.
struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sqf
