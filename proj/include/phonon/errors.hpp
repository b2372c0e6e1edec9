#pragma once

#include <stdexcept>
#include <string>

namespace phonon {

// Precondition violations (bad arguments, shape mismatches).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Base for everything that went wrong numerically at runtime.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A closed form is undefined in the requested parameter regime and the
// caller must switch to a general integration path.
class UnsupportedRegime : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// An ODE step produced non-finite entries; carries the most unstable
// eigenvalue of the drift generator for diagnosis.
class InstabilityError : public NumericalError {
public:
    InstabilityError(const std::string& what, double max_real_eigenvalue)
        : NumericalError(what), max_real_eigenvalue(max_real_eigenvalue) {}
    double max_real_eigenvalue;
};

// Adaptive quadrature did not reach the requested tolerance; the best
// estimate and its error bound are attached.
class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : NumericalError(what), estimate(estimate), error_bound(error_bound) {}
    double estimate;
    double error_bound;
};

// Truncated Fock basis too small for the requested state or evolution.
class TruncationError : public NumericalError {
public:
    TruncationError(const std::string& what, int suggested_dim)
        : NumericalError(what), suggested_dim(suggested_dim) {}
    int suggested_dim;
};

// Purity ~ 1 with a nonzero purity derivative: the Gaussian QFI formula
// diverges.
class SingularPurityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Cramer-Rao bound requested for a state family carrying no information.
class NoInformationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace phonon
