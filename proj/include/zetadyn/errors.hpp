#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace zetadyn {

/// Base of every error the toolkit throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A map was evaluated at |x| below the singularity guard.
class SingularState : public Error {
public:
    explicit SingularState(double x);
    double state;
};

/// A map evaluation produced a non-finite value.
class Overflow : public Error {
public:
    using Error::Error;
};

/// Caller-supplied values violate an operation's preconditions.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Position outside the domain of a potential or stencil term.
class DomainError : public Error {
public:
    using Error::Error;
};

class TooShort : public Error {
public:
    using Error::Error;
};

/// Lyapunov exponent requested over an orbit that escaped or went singular.
class OrbitAborted : public Error {
public:
    using Error::Error;
};

class DegenerateDerivative : public Error {
public:
    using Error::Error;
};

/// The constant-k eigenfunction is only oscillatory for E > A.
class EvanescentRegime : public Error {
public:
    using Error::Error;
};

/// Iterative eigensolver ran out of restarts. Carries the best residuals seen.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, std::vector<double> best_residuals);
    std::vector<double> best_residuals;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace zetadyn
