#pragma once

#include <stdexcept>
#include <string>

namespace detfacet {

// Base of every error thrown by the library. The CLI maps each subclass to
// its own exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Variables, monomials or minors that do not fit the matrix layout.
class LayoutError : public Error {
public:
    using Error::Error;
};

// Mixing polynomials from different fields or term orders.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

// An operation that needs a nonzero polynomial received zero.
class EmptyInputError : public Error {
public:
    using Error::Error;
};

// Step limits, permutation bounds and generator caps.
class ResourceError : public Error {
public:
    using Error::Error;
};

// The complex does not have the shape an operation needs.
class StructuralError : public Error {
public:
    using Error::Error;
};

// Malformed prime sequences, minor families and similar inputs.
class ValidationError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

// Unreadable input documents.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace detfacet
