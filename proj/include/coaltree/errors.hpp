#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coaltree {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed tree: unary vertex, cycle, several roots, non-monotone marks.
class StructuralError : public Error {
public:
    using Error::Error;
};

// Argument outside an operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Two inputs that were supposed to describe the same object do not.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// Series with plateaus or tied minima.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, double x)
        : Error(what + " (x = " + std::to_string(x) + ")"), x_(x) {}
    double x() const noexcept { return x_; }

private:
    double x_;
};

// Statistical test with too few counts left after pooling.
class TestUndefinedError : public Error {
public:
    using Error::Error;
};

}  // namespace coaltree
