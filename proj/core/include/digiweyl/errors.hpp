#pragma once

#include <stdexcept>
#include <string>

namespace digiweyl {

// Base of every error raised by the library. The CLI maps the subclasses to
// exit codes: ResourceError -> 3, everything else that reaches main -> 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter lies outside the mathematical domain of an operation
// (d < 3, gamma outside (0,1), invalid digit class, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A coefficient description could not be parsed or resolved.
class DescriptionError : public Error {
public:
    using Error::Error;
};

// The certified interval for a real number is too wide for the request.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// A configured size guard would be exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Missing or malformed parameter combination.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Redundant inputs disagree with each other.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// No admissible candidate in the requested range.
class RangeError : public Error {
public:
    using Error::Error;
};

} // namespace digiweyl
