#ifndef RZK_ERRORS_HPP
#define RZK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rzk {

// All library failures derive from Error so callers can map them to a single
// exit path; the subclasses distinguish the cause.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape or layout mismatch between objects that must agree.
class StructuralError : public Error {
public:
    using Error::Error;
};

// Bad data handed to an operation (non-finite samples, too few points, ...).
class InputError : public Error {
public:
    using Error::Error;
};

// Bad parameters (negative orders, out-of-range coefficients, unknown keys).
class ConfigError : public Error {
public:
    using Error::Error;
};

// The time integration left the healthy regime.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, double t, double max_abs)
        : Error(what), time_(t), max_abs_(max_abs) {}
    double time() const { return time_; }
    double max_abs() const { return max_abs_; }

private:
    double time_;
    double max_abs_;
};

// The Picard map failed to contract within the iteration budget.
class NonContractionError : public Error {
public:
    NonContractionError(const std::string& what, double last_ratio)
        : Error(what), last_ratio_(last_ratio) {}
    double last_ratio() const { return last_ratio_; }

private:
    double last_ratio_;
};

}  // namespace rzk

#endif  // RZK_ERRORS_HPP
