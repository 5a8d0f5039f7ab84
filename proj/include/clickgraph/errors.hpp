#pragma once

#include <stdexcept>
#include <string>

namespace clickgraph {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Graph structure violated: bad endpoint, registry/graph size mismatch.
struct StructuralError : Error {
    using Error::Error;
};

/// A value breaks a documented invariant (non-positive weight, duplicate domain).
struct ValidationError : Error {
    using Error::Error;
};

/// Malformed input text; messages carry the offending line number.
struct ParseError : Error {
    using Error::Error;
};

/// Unusable configuration: unknown format, missing column, bad generator spec.
struct ConfigError : Error {
    using Error::Error;
};

/// Operation mathematically undefined on this input (density of a 1-node graph).
struct DomainError : Error {
    using Error::Error;
};

} // namespace clickgraph
