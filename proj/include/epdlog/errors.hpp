#pragma once

#include <stdexcept>
#include <string>

namespace epdlog {

// Base for every error the library reports. Callers that only need a
// message can catch this; the CLI maps the subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input (zero modulus, non-prime p, bad text).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// An element that has no multiplicative inverse was used where a unit is required.
class NotInvertible : public Error {
public:
    using Error::Error;
};

// The target is not in the cyclic group generated by the base.
class NoSolution : public Error {
public:
    using Error::Error;
};

// Two residues disagree modulo the gcd of their moduli.
class InconsistentResidues : public NoSolution {
public:
    using NoSolution::NoSolution;
};

// A randomized procedure could not reach a verdict; retrying with more
// samples may succeed.
class Indeterminate : public Error {
public:
    using Error::Error;
};

}  // namespace epdlog
