#pragma once

#include <stdexcept>
#include <string>

namespace tec {

// Invalid inputs (bad fields, broken preconditions). CLI maps these to exit 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
    virtual const char* name() const { return "ValidationError"; }
};

// Base for runtime failures of the physical model. CLI maps these to exit 3.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* name() const { return "ModelError"; }
};

// The 2x2 heat-flow system is degenerate for this parameter combination.
class SingularSystem : public ModelError {
public:
    SingularSystem(const std::string& msg, double det)
        : ModelError(msg), determinant(det) {}
    const char* name() const override { return "SingularSystem"; }
    double determinant;
};

// A computed temperature fell to or below absolute zero.
class NonPhysicalTemperature : public ModelError {
public:
    using ModelError::ModelError;
    const char* name() const override { return "NonPhysicalTemperature"; }
};

// Hot junction is at or below the cold junction; the reversible limit is undefined.
class DegenerateGradient : public ModelError {
public:
    using ModelError::ModelError;
    const char* name() const override { return "DegenerateGradient"; }
};

// Cold-side heat flow is not positive; the loss ratio is undefined.
class NoUsefulCooling : public ModelError {
public:
    using ModelError::ModelError;
    const char* name() const override { return "NoUsefulCooling"; }
};

// Electrical power is not positive; the loss ratio is undefined.
class NoDrive : public ModelError {
public:
    using ModelError::ModelError;
    const char* name() const override { return "NoDrive"; }
};

// No current in the search bounds yields useful cooling. CLI maps this to exit 4.
class InfeasibleProblem : public ModelError {
public:
    using ModelError::ModelError;
    const char* name() const override { return "InfeasibleProblem"; }
};

// Requested integration step violates the explicit-Euler stability guard.
class UnstableStep : public ModelError {
public:
    using ModelError::ModelError;
    const char* name() const override { return "UnstableStep"; }
};

} // namespace tec
