#pragma once

#include <stdexcept>
#include <string>

namespace fluxheat {

/// Argument outside the mathematical domain of an operation (t <= 0, z not a
/// half-integer, tau >= t, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A solution family cannot be built from the given problem data.
class ConstructionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature ran out of budget before reaching the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_estimate)
        : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}

    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

/// Malformed or schema-violating case configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Time-step or grid parameters violate the scheme's stability bound.
class StabilityError : public std::invalid_argument {
public:
    StabilityError(const std::string& what, double required_dt)
        : std::invalid_argument(what), required_dt_(required_dt) {}

    double required_dt() const noexcept { return required_dt_; }

private:
    double required_dt_;
};

}  // namespace fluxheat
