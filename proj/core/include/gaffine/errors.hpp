#pragma once

#include <stdexcept>
#include <string>

namespace gaffine {

// All library failures derive from Error; the concrete type names the
// precondition that was violated.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZeroJet : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// The curve is not locally a graph y(x) in the current chart (dx/dt = 0).
class NotAGraph : public Error {
public:
    using Error::Error;
};

/// The prolonged jet leaves graph form: Γ = a11 + a12·y1 vanishes.
class VerticalTangent : public Error {
public:
    using Error::Error;
};

class DegenerateMap : public Error {
public:
    using Error::Error;
};

/// An operation that requires S1 ≠ 0 and S2 ≠ 0 was called at a singular jet.
class SingularPoint : public Error {
public:
    using Error::Error;
};

class S3Zero : public Error {
public:
    using Error::Error;
};

class NotAllSingular : public Error {
public:
    using Error::Error;
};

class StepTooLarge : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace gaffine
