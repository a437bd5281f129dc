#pragma once

#include <stdexcept>
#include <string>

namespace credal {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter outside its documented domain (alpha, r, confidence, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidInterval : public Error {
public:
    using Error::Error;
};

/// No distribution satisfies an act's probability box.
class FeasibilityError : public Error {
public:
    FeasibilityError(std::string act, const std::string& what)
        : Error(what), act_(std::move(act)) {}

    const std::string& act() const noexcept { return act_; }

private:
    std::string act_;
};

/// A body of knowledge that asserts contradictory statements.
class InconsistentKnowledge : public Error {
public:
    using Error::Error;
};

/// Two sources assign different intervals to the same outcome.
class ConflictingOverride : public Error {
public:
    using Error::Error;
};

/// A label that does not resolve against the decision problem.
class UnknownLabel : public Error {
public:
    using Error::Error;
};

/// Direct inference found no unique most-specific reference class.
class AmbiguousReferenceClass : public Error {
public:
    using Error::Error;
};

/// Dempster combination of two fully conflicting mass functions.
class TotalConflict : public Error {
public:
    using Error::Error;
};

/// Root finding target lies outside the values attained on the search range.
class NotBracketed : public Error {
public:
    using Error::Error;
};

/// Malformed problem file. The message carries the line or field path.
class SchemaError : public Error {
public:
    using Error::Error;
};

} // namespace credal
