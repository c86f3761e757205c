#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace pei {

// Base of every error raised by the library. The CLI maps subclasses onto
// process exit codes (validation 2, estimation 3, I/O 4).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Malformed input data (bad record, bad config value).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Caller passed arguments outside an operation's preconditions.
class ArgumentError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Series that carries no information (constant, singular design).
class DegenerateSeriesError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EstimationError : public Error {
public:
    EstimationError(const std::string& what, double best_loglik)
        : Error(what), best_loglik_(best_loglik) {}
    explicit EstimationError(const std::string& what)
        : EstimationError(what, -std::numeric_limits<double>::infinity()) {}

    double best_loglik() const noexcept { return best_loglik_; }

private:
    double best_loglik_;
};

}  // namespace pei
