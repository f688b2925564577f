#pragma once

#include <stdexcept>
#include <string>

namespace melon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was not met by its arguments.
class ContractViolation : public Error {
public:
    using Error::Error;
};

class InvalidPartition : public Error {
public:
    using Error::Error;
};

class InvalidPath : public Error {
public:
    using Error::Error;
};

/// Raised when a computation would exceed one of the enumeration or
/// assignment-count guards.
class ResourceError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

}  // namespace melon
