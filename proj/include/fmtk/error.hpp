#pragma once

#include <stdexcept>
#include <string>

namespace fmtk {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the arguments of an operation was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Text input could not be parsed. `position` is a byte offset (or line number for
/// line-oriented formats), stored in the message as well.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// A desk-scale guard (size limit, expansion budget, ...) was exceeded.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// An internal certificate did not verify.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace fmtk
