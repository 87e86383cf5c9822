#pragma once

#include "filament/congruence.hpp"

namespace filament {

/// Two forms of the background-field relation are in circulation and they
/// disagree: integrating the field-divergence balance gives the integrand
/// -(theta_bs + div b), the stated closed form uses +(theta_bs + theta_ns).
/// Both are kept; the gap between the profiles is a report entry.
enum class B0Form {
    RateSum,            // B0(s) = -c0 exp[ +integral_0^s (theta_bs + theta_ns) ds' ]
    DivergenceBalance,  // B0(s) = -c0 exp[ -integral_0^s (theta_bs + div b) ds' ]
};

Profile solve_B0(const CongruenceCoefficients& coeffs, double c0,
                 B0Form form = B0Form::RateSum);

/// p1_0 = (rho1_0 / rho0) p0, the linearized pressure relation in the form
/// used here (no adiabatic index; gamma is carried only for reporting).
double adiabatic_relation(double rho1_0, double rho0, double p0);

/// Static background: B0 along the tangent, v0 = 0, J0 = 0 implicit.
struct EquilibriumState {
    Profile B0;
    double rho0 = 1.0;   // mass density, strictly positive
    double p0 = 0.0;     // pressure
    double gamma = 5.0 / 3.0;
    double mu0 = 4.0e-7 * 3.14159265358979323846;
    double c0 = -1.0;    // integration constant; B0(0) = -c0

    void validate() const;  // throws invalid-density etc.
};

/// Per-item equilibrium validation. Failures are entries, not errors.
struct ValidationReport {
    ConstraintReport constraints;
    double max_current_residual = 0.0;
    bool current_ok = false;
    bool b0_nonvanishing_ok = false;
    bool rho0_positive = false;
    bool p0_nonnegative = false;
    bool all_ok() const {
        return constraints.all_ok() && current_ok && b0_nonvanishing_ok && rho0_positive &&
               p0_nonnegative;
    }
};

ValidationReport validate_equilibrium(
    const EquilibriumState& state, const CongruenceCoefficients& coeffs, const FrameField& frame,
    double tol = 1e-6,
    FrameDerivativeReading reading = FrameDerivativeReading::Antisymmetric);

}  // namespace filament
