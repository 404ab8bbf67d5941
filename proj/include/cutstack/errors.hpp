// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <stdexcept>
#include <string>

namespace cutstack {

// Error taxonomy shared across modules. The CLI maps kinds to exit codes:
// config/parse -> 2, infeasible -> 3, resource -> 4, everything else -> 1.
enum class ErrorKind {
    contract,            // precondition / invariant violation
    domain,              // argument outside a function's mathematical domain
    infeasible,          // cover target unreachable (neglected mass too large)
    resource,            // configurable cap exceeded
    bound_inapplicable,  // closed-form bound's hypotheses not met
    param_search,        // parameter search exhausted its cap
    parse,               // malformed config / snapshot file
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) raise(kind, msg);
}

}  // namespace cutstack
