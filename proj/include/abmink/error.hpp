#pragma once

#include <stdexcept>
#include <string>

namespace abmink {

/// Thrown when an input violates a physical or numerical bound. The message
/// always names the quantity, the bound and the supplied value.
class PreconditionError : public std::domain_error {
public:
    PreconditionError(std::string quantity, std::string bound, double value);

    const std::string& quantity() const noexcept { return quantity_; }
    const std::string& bound() const noexcept { return bound_; }
    double value() const noexcept { return value_; }

private:
    std::string quantity_;
    std::string bound_;
    double value_;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace abmink
