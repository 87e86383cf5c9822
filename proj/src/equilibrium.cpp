#include "filament/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "filament/grid.hpp"

namespace filament {

Profile solve_B0(const CongruenceCoefficients& coeffs, double c0, B0Form form) {
    coeffs.validate();
    if (!std::isfinite(c0) || c0 == 0.0) {
        fail(ErrorCode::InvalidInput, "integration constant c0 must be finite and nonzero");
    }
    const std::size_t n = coeffs.size();
    Profile integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
        integrand[i] = form == B0Form::RateSum
                           ? coeffs.theta_bs[i] + coeffs.theta_ns[i]
                           : -(coeffs.theta_bs[i] + coeffs.div_b[i]);
    }
    const std::vector<double> integral =
        cumulative_trapezoid(std::span<const double>(integrand), coeffs.spacing());
    Profile B0(n);
    for (std::size_t i = 0; i < n; ++i) {
        B0[i] = -c0 * std::exp(integral[i]);
    }
    return B0;
}

double adiabatic_relation(double rho1_0, double rho0, double p0) {
    if (!(rho0 > 0.0) || !std::isfinite(rho0)) {
        fail(ErrorCode::InvalidDensity, "background density rho0 must be positive");
    }
    return rho1_0 / rho0 * p0;
}

void EquilibriumState::validate() const {
    if (!(rho0 > 0.0) || !std::isfinite(rho0)) {
        fail(ErrorCode::InvalidDensity, "background density rho0 must be positive");
    }
    if (!(p0 >= 0.0) || !std::isfinite(p0)) {
        fail(ErrorCode::InvalidInput, "background pressure p0 must be nonnegative");
    }
    if (!(mu0 > 0.0) || !std::isfinite(mu0)) {
        fail(ErrorCode::InvalidInput, "mu0 must be positive");
    }
    if (!std::isfinite(gamma)) {
        fail(ErrorCode::InvalidInput, "gamma must be finite");
    }
    if (!std::isfinite(c0)) {
        fail(ErrorCode::InvalidInput, "c0 must be finite");
    }
    if (B0.empty()) {
        fail(ErrorCode::InvalidInput, "equilibrium carries an empty B0 profile");
    }
    for (std::size_t i = 0; i < B0.size(); ++i) {
        if (!std::isfinite(B0[i])) {
            fail(ErrorCode::InvalidInput, "B0 is not finite at sample " + std::to_string(i), i);
        }
    }
}

ValidationReport validate_equilibrium(const EquilibriumState& state,
                                      const CongruenceCoefficients& coeffs,
                                      const FrameField& frame, double tol,
                                      FrameDerivativeReading reading) {
    // Deliberately no state.validate() here: a bad equilibrium is what this
    // report exists to describe, so failures become entries, not errors.
    coeffs.validate();
    if (state.B0.size() != frame.size() || coeffs.size() != frame.size()) {
        fail(ErrorCode::InvalidInput, "equilibrium, congruence and frame grids must align");
    }

    ValidationReport report;
    report.constraints = check_equilibrium_constraints(coeffs, frame, tol);

    const std::vector<Vec3> residual =
        equilibrium_current_residual(coeffs, frame, state.B0, reading);
    for (const Vec3& r : residual) {
        report.max_current_residual = std::max(report.max_current_residual, r.norm());
    }
    report.current_ok = report.max_current_residual < tol;

    double min_abs_b0 = std::numeric_limits<double>::infinity();
    for (double b : state.B0) min_abs_b0 = std::min(min_abs_b0, std::abs(b));
    report.b0_nonvanishing_ok = min_abs_b0 > tol;

    report.rho0_positive = state.rho0 > 0.0;
    report.p0_nonnegative = state.p0 >= 0.0;
    return report;
}

}  // namespace filament
