#pragma once

#include <stdexcept>
#include <string>

namespace langprime {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument values: foreign symbols, mismatched alphabets,
/// out-of-range states, malformed instances.
class InputError : public Error {
public:
    using Error::Error;
};

/// Text format could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A configured resource limit was exceeded.
class LimitError : public Error {
public:
    using Error::Error;
};

/// A documented precondition was violated (reported distinctly from
/// plain input errors, e.g. the split-relation checker on a rejected word).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Degenerate inputs for the primality construction; the caller should
/// decide concatenation equivalence directly instead.
class DegenerateInputError : public InputError {
public:
    using InputError::InputError;
};

} // namespace langprime
