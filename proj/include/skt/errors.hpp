#pragma once

#include <stdexcept>
#include <string>

namespace skt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A point fell outside an evaluator's admissible domain (vanishing
/// denominator, negative radicand, t = 0 singularity, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Parameters do not match the system shape an operation requires.
struct ShapeError : Error {
    using Error::Error;
};

/// Invalid run configuration (bad JSON, schema violation, bad argv).
struct ConfigError : Error {
    using Error::Error;
};

/// Every requested sample point was skipped or inadmissible.
struct EmptySampleError : Error {
    using Error::Error;
};

}  // namespace skt
