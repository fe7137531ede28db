#pragma once

#include <stdexcept>
#include <string>

namespace fishbone {

// Invalid configuration or parameters. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Config text that does not follow the key=value schema.
class SchemaError : public ConfigError {
public:
    SchemaError(std::string key, const std::string& what)
        : ConfigError(what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// A parsed value that violates a parameter invariant.
class ValidationError : public ConfigError {
public:
    ValidationError(std::string field, const std::string& what)
        : ConfigError(what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class LookupError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// The model lacks a structural assumption an operation needs (e.g. no
// asymptotic slope for the high-energy limit).
class UnsupportedModelError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Numerical failures. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AccuracyError : public NumericalError {
public:
    AccuracyError(const std::string& what, double achieved)
        : NumericalError(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

// Step size collapsed below round-off.
class StiffnessError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// No period (or target event) inside the allowed time horizon.
class HorizonError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DeterminantDriftError : public NumericalError {
public:
    DeterminantDriftError(const std::string& what, double drift)
        : NumericalError(what), drift_(drift) {}
    double drift() const { return drift_; }

private:
    double drift_;
};

}  // namespace fishbone
