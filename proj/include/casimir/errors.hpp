#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Raised when a quadrature or summation fails to reach its tolerance.
// Carries the partial result so callers can report how far the
// computation got.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double partial_value,
                   double achieved_error)
        : std::runtime_error(what),
          partial_value_(partial_value),
          achieved_error_(achieved_error)
    {}

    double partial_value() const { return partial_value_; }
    double achieved_error() const { return achieved_error_; }

private:
    double partial_value_;
    double achieved_error_;
};

// Invalid run configuration (CLI or config file).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace casimir
