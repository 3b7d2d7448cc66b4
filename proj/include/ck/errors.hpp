#pragma once

#include <stdexcept>
#include <string>

namespace ck {

/// Base class for errors that describe bad input or an unanswerable query,
/// as opposed to internal failures. The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public DomainError {
public:
    ParseError(const std::string& msg, int line, int column)
        : DomainError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A certificate could not be assembled because some evidence was undecided.
class NoCertificate : public DomainError {
public:
    using DomainError::DomainError;
};

class ClassBoundExceeded : public DomainError {
public:
    using DomainError::DomainError;
};

/// A supplied witness did not verify.
class WitnessError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace ck
