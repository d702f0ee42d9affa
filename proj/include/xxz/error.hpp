#pragma once

#include <stdexcept>
#include <string>

namespace xxz {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite or out-of-range parameters, malformed configurations.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A closed-form expression is singular at the requested parameters.
class DegenerateLimit : public Error {
public:
    using Error::Error;
};

// Matrix is not a density matrix (Hermiticity, trace or positivity).
class NotAState : public Error {
public:
    using Error::Error;
};

// Matrix does not have the X pattern required by an X-state formula.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Scalar argument outside the function's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Steady state requested without intrinsic decoherence.
class NoSteadyState : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace xxz
