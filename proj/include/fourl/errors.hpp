#pragma once
#include <stdexcept>
#include <string>

namespace fourl {

// Bad input or configuration. The CLI maps this to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure could not reach its target (pole, divergence, budget).
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Some L(1, chi_i * conj(chi_j)) in a main term is at a pole.
class ConfluentCharacters : public MathError {
public:
    using MathError::MathError;
};

class QuadratureError : public MathError {
public:
    QuadratureError(const std::string& what, double estimate, double bound)
        : MathError(what), estimate_(estimate), bound_(bound) {}
    double estimate() const { return estimate_; }
    double bound() const { return bound_; }

private:
    double estimate_;
    double bound_;
};

}  // namespace fourl
