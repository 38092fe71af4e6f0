#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hybridie {

// Argument outside the half-open interval [0,1) or similar domain violation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Bad caller-supplied data: mismatched configs, non-finite samples, missing
// initial conditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Internal numerical routine failed to converge (quadrature nodes).
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hybridie
