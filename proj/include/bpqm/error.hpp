#pragma once

#include <stdexcept>
#include <string>

namespace bpqm {

// Base of every error raised by the library. The CLI maps subclasses to
// distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad eigen list, bad Gram row, bad parameter range.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Overlaps that do not form a positive semidefinite Gram matrix.
class NotPsd : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class DimensionMismatch : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class SizeMismatch : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class NotUnitary : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Dense PGM oracle could not build a complete measurement on supp(rho_bar).
class SingularMean : public Error {
public:
    using Error::Error;
};

// A dense construction or a Monte-Carlo run would exceed its size budget.
class GuardViolation : public Error {
public:
    using Error::Error;
};

// Threshold bisection endpoints gave the same verdict.
class NoTransition : public Error {
public:
    using Error::Error;
};

}  // namespace bpqm
