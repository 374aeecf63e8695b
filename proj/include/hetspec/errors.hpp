// errors.hpp — exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace hetspec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// parameter validation
struct NonPositiveRate : Error {
    explicit NonPositiveRate(const std::string& what) : Error("NonPositiveRate: " + what) {}
};
struct RegimeViolation : Error {
    RegimeViolation(const std::string& name, double value, double bound)
        : Error("RegimeViolation: " + name + " = " + std::to_string(value) +
                " violates bound " + std::to_string(bound)),
          name(name), value(value), bound(bound) {}
    std::string name;
    double value, bound;
};
struct DetuningNotZeroForClosedForm : Error {
    explicit DetuningNotZeroForClosedForm(double Delta)
        : Error("DetuningNotZeroForClosedForm: closed-form spectra require Delta = 0, got " +
                std::to_string(Delta)) {}
};
struct NonPositiveTemperature : Error {
    explicit NonPositiveTemperature(double T)
        : Error("NonPositiveTemperature: T = " + std::to_string(T)) {}
};

// spectra
struct UnsupportedCombo : Error {
    explicit UnsupportedCombo(const std::string& what) : Error("UnsupportedCombo: " + what) {}
};
struct AsymmetricGrid : Error {
    explicit AsymmetricGrid(const std::string& what) : Error("AsymmetricGrid: " + what) {}
};
struct GridMismatch : Error {
    explicit GridMismatch(const std::string& what) : Error("GridMismatch: " + what) {}
};
struct DegenerateFit : Error {
    explicit DegenerateFit(const std::string& what) : Error("DegenerateFit: " + what) {}
};
struct BackactionTooLarge : Error {
    explicit BackactionTooLarge(double p)
        : Error("BackactionTooLarge: p = " + std::to_string(p) + " >= 1/2") {}
};

// cooling
struct AntiDamping : Error {
    explicit AntiDamping(double gamma_eff)
        : Error("AntiDamping: effective linewidth " + std::to_string(gamma_eff) + " <= 0") {}
};
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error("NoConvergence: " + what) {}
};

// monte carlo
struct StepTooLarge : Error {
    StepTooLarge(double dt, double bound)
        : Error("StepTooLarge: dt = " + std::to_string(dt) + " > " + std::to_string(bound)) {}
};
struct UnstableDrift : Error {
    explicit UnstableDrift(const std::string& what) : Error("UnstableDrift: " + what) {}
};
struct MissingOutputTrace : Error {
    MissingOutputTrace() : Error("MissingOutputTrace: trace has no output-field record") {}
};
struct TooFewSamples : Error {
    explicit TooFewSamples(const std::string& what) : Error("TooFewSamples: " + what) {}
};
struct WindowOutOfRange : Error {
    explicit WindowOutOfRange(const std::string& what) : Error("WindowOutOfRange: " + what) {}
};

// cli
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error("ConfigError: " + what) {}
};

} // namespace hetspec
