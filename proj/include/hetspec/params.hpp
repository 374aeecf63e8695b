// params.hpp — validated parameter records and derived coupling quantities.
//
// All library math works in units of the mechanical linewidth gamma_m
// (gamma_m = 1 after validation). The CLI converts SI inputs before
// constructing these records.
#pragma once

#include <complex>
#include <optional>
#include <string>

#include "hetspec/errors.hpp"

namespace hetspec {

struct MechParams {
    double omega_m{50.0};   // mechanical frequency
    double gamma_m{1.0};    // energy damping rate
    double n_th{0.0};       // bath occupancy
    double beta{1.0};       // quantum-bath tag (1 quantum, 0 classical)
};

struct CavityParams {
    double kappa{500.0};      // total decay rate
    double kappa_ext{400.0};  // decay to the measured port
    double Delta{0.0};        // drive detuning
    double G{0.0};            // many-photon coupling
    int lambda{0};            // 0 transmission, 1 reflection
};

struct LaserNoise {
    double C_xx{0.0};
    double C_xy{0.0};
    double C_yy{0.0};
    double r{0.0};  // drive-strength ratio; only r*C_ij combinations matter
};

enum class FieldKind { ClassicalIntrinsic, QuantumVacuum };

struct FieldNoise {
    FieldKind kind{FieldKind::QuantumVacuum};
    double alpha{1.0};
    std::optional<LaserNoise> laser{};
};

enum class DetectorModel { SCL, QUA };

struct DetectorParams {
    DetectorModel model{DetectorModel::SCL};
    double Z2{1.0};         // photocurrent scale |Z|^2
    double omega_if{0.0};   // intermediate frequency; 0 -> 8*omega_m
    double i0_ratio{1.0};   // qv^2 i0 / |Z|^2 for the QUA shot-noise floor
};

struct SystemParams {
    MechParams mech{};
    CavityParams cavity{};
    FieldNoise noise{};
    DetectorParams detector{};
};

struct DerivedCoupling {
    double p{0.0};              // backaction number
    double C{0.0};              // cooperativity
    double kappa_bar_ext{0.0};  // kappa_ext / kappa
};

struct ValidateOptions {
    bool force{false};              // skip regime guards (not hard errors)
    double min_quality{10.0};       // omega_m/gamma_m lower bound
    double max_coupling_ratio{0.1}; // |G|/kappa upper bound
    bool require_zero_detuning{true};
};

class ValidatedParams {
public:
    const SystemParams& sys() const { return sys_; }
    const MechParams& mech() const { return sys_.mech; }
    const CavityParams& cavity() const { return sys_.cavity; }
    const FieldNoise& noise() const { return sys_.noise; }
    const DetectorParams& detector() const { return sys_.detector; }
    const DerivedCoupling& coupling() const { return coupling_; }

    // effective occupancy including probe backaction
    double n_eff() const;

    ValidatedParams() = default;

private:
    friend ValidatedParams validate(SystemParams, const ValidateOptions&);
    SystemParams sys_{};
    DerivedCoupling coupling_{};
};

// Normalizes every rate to gamma_m-units, applies regime guards and
// returns an immutable record. Throws NonPositiveRate, RegimeViolation or
// DetuningNotZeroForClosedForm.
ValidatedParams validate(SystemParams params, const ValidateOptions& opt = {});

// C = 4G^2/(kappa gamma_m); p = (kappa^2 |chi_c[omega_m]|^2 / 4) C.
DerivedCoupling derive_coupling(const CavityParams& cavity, const MechParams& mech);

// Bath occupancy from temperature [K] and omega_m [rad/s].
// quantum: 1/(exp(hbar omega/kT) - 1); classical: kT/(hbar omega).
double occupancy_from_temperature(double T, double omega_m, bool classical = false);

// Steady-state cavity amplitude Omega/(kappa/2 - i Delta); identity-check helper.
std::complex<double> abar(double Omega, double kappa, double Delta);

} // namespace hetspec
