#pragma once

#include <stdexcept>
#include <string>

namespace utaylor {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (|z| >= 1 for the
// Poisson kernel, the pole of a Green function, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Working precision is insufficient for the requested computation.
class PrecisionError : public Error {
public:
    using Error::Error;
};

class StreamExhausted : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class ScheduleError : public Error {
public:
    using Error::Error;
};

// A strict-mode step certificate missed one of its requested bounds.
class CertificateError : public Error {
public:
    CertificateError(int step, const std::string& what)
        : Error("step " + std::to_string(step) + ": " + what), step_(step) {}
    int step() const noexcept { return step_; }

private:
    int step_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace utaylor
