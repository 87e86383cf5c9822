#include "filament/modes.hpp"

#include <cmath>

namespace filament {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        fail(ErrorCode::InvalidInput, std::string(name) + " must be finite");
    }
}

}  // namespace

std::string to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "STABLE";
        case Stability::Marginal: return "MARGINAL";
        case Stability::Unstable: return "UNSTABLE";
    }
    return "UNKNOWN";
}

std::string to_string(Branch b) { return b == Branch::Plus ? "+" : "-"; }

std::string to_string(MassInterpretation m) {
    return m == MassInterpretation::DropDivB ? "drop_div_b" : "keep_div_b";
}

std::pair<double, double> moivre_expand(ModePhase phase) {
    require_finite(phase.theta, "phase");
    return {std::cos(phase.theta), -std::sin(phase.theta)};
}

RootPair solve_kperp(double kappa0, double B1_0, double J1_0, double mu0) {
    require_finite(kappa0, "kappa0");
    require_finite(J1_0, "J1_0");
    require_finite(mu0, "mu0");
    if (!std::isfinite(B1_0) || B1_0 == 0.0) {
        fail(ErrorCode::DegenerateAmplitude, "B1_0 must be nonzero to solve for k_perp");
    }
    const double magnitude = std::abs(kappa0 * B1_0 + mu0 * J1_0) / std::abs(B1_0);
    return {magnitude, -magnitude};
}

RootPair solve_kparallel(double theta_ns, double theta_bs) {
    require_finite(theta_ns, "theta_ns");
    require_finite(theta_bs, "theta_bs");
    const double magnitude = std::abs(theta_ns + theta_bs);
    return {magnitude, -magnitude};
}

GrowthRate growth_rate(double v1_0, double rho0, double rho1_0) {
    require_finite(v1_0, "v1_0");
    if (!(rho0 > 0.0) || !std::isfinite(rho0)) {
        fail(ErrorCode::InvalidDensity, "background density rho0 must be positive");
    }
    if (!std::isfinite(rho1_0) || rho1_0 == 0.0) {
        fail(ErrorCode::DegenerateAmplitude, "rho1_0 must be nonzero to solve for the growth rate");
    }
    GrowthRate g;
    g.im_omega = v1_0 * rho0 / rho1_0;
    g.im_omega_squared_root = -g.im_omega;
    if (g.im_omega > 0.0) {
        g.stability = Stability::Unstable;
    } else if (g.im_omega < 0.0) {
        g.stability = Stability::Stable;
    } else {
        g.stability = Stability::Marginal;
    }
    return g;
}

double mass_conservation_residual(std::complex<double> omega, double rho1_0, double v1_0,
                                  double rho0, double div_b, MassInterpretation interpretation) {
    require_finite(omega.real(), "Re omega");
    require_finite(omega.imag(), "Im omega");
    require_finite(rho1_0, "rho1_0");
    require_finite(v1_0, "v1_0");
    require_finite(div_b, "div_b");
    if (!(rho0 > 0.0) || !std::isfinite(rho0)) {
        fail(ErrorCode::InvalidDensity, "background density rho0 must be positive");
    }
    const double factor = interpretation == MassInterpretation::DropDivB ? 1.0 : div_b;
    const double lhs = omega.real() * rho1_0;
    const double rhs = omega.imag() * rho1_0 + v1_0 * rho0 * factor;
    return std::abs(lhs * lhs - rhs * rhs);
}

double alfven_frequency(double k_par, double L, double B0, double kappa0, double div_n,
                        double B1_0, Branch branch) {
    require_finite(k_par, "k_par");
    require_finite(B0, "B0");
    require_finite(kappa0, "kappa0");
    require_finite(div_n, "div_n");
    if (!(L > 0.0) || !std::isfinite(L)) {
        fail(ErrorCode::InvalidInput, "filament length L must be positive");
    }
    if (!std::isfinite(B1_0) || B1_0 == 0.0) {
        fail(ErrorCode::DegenerateAmplitude, "B1_0 must be nonzero in the Alfven relation");
    }
    return branch_sign(branch) * k_par * L * B0 * (kappa0 + div_n) / B1_0;
}

double alfven_velocity(double L, double B0, double kappa0, double div_n, double B1_0,
                       Branch branch) {
    require_finite(B0, "B0");
    require_finite(kappa0, "kappa0");
    require_finite(div_n, "div_n");
    if (!(L > 0.0) || !std::isfinite(L)) {
        fail(ErrorCode::InvalidInput, "filament length L must be positive");
    }
    if (!std::isfinite(B1_0) || B1_0 == 0.0) {
        fail(ErrorCode::DegenerateAmplitude, "B1_0 must be nonzero in the Alfven relation");
    }
    return branch_sign(branch) * L * B0 * (kappa0 + div_n) / B1_0;
}

void PerturbationMode::validate() const {
    require_finite(J1_0, "J1_0");
    require_finite(v1_0, "v1_0");
    require_finite(p1_0, "p1_0");
    require_finite(k_par, "k_par");
    require_finite(k_perp, "k_perp");
    require_finite(omega.real(), "Re omega");
    require_finite(omega.imag(), "Im omega");
    if (!std::isfinite(B1_0) || B1_0 == 0.0) {
        fail(ErrorCode::DegenerateAmplitude, "B1_0 must be nonzero");
    }
    if (!std::isfinite(rho1_0) || rho1_0 == 0.0) {
        fail(ErrorCode::DegenerateAmplitude, "rho1_0 must be nonzero");
    }
}

}  // namespace filament
