#pragma once

#include <complex>
#include <string>
#include <utility>

#include "filament/errors.hpp"

namespace filament {

/// Sign selector applied where the dispersion relations themselves carry a +-.
enum class Branch {
    Plus,
    Minus,
};

inline double branch_sign(Branch b) { return b == Branch::Plus ? 1.0 : -1.0; }

enum class Stability {
    Stable,    // Im omega < 0: the mode decays, the field is damped
    Marginal,  // Im omega = 0
    Unstable,  // Im omega > 0: exponential growth
};

std::string to_string(Stability s);
std::string to_string(Branch b);

/// Whether the squared mass relation keeps the div b factor of the
/// pre-squared equation or drops it, as the stated squared form does.
enum class MassInterpretation {
    DropDivB,
    KeepDivB,
};

std::string to_string(MassInterpretation m);

/// Phase of the exponential perturbation ansatz,
/// theta = omega t - (k_par s + k_perp n).
struct ModePhase {
    double theta = 0.0;
};

/// exp[-i theta] = cos theta - i sin theta; returns (cos theta, -sin theta).
std::pair<double, double> moivre_expand(ModePhase phase);

/// Both roots of a squared scalar relation, closed under negation.
struct RootPair {
    double plus = 0.0;
    double minus = 0.0;
};

/// Roots of [k_perp B1_0]^2 = [kappa0 B1_0 + mu0 J1_0]^2.
RootPair solve_kperp(double kappa0, double B1_0, double J1_0, double mu0);

/// Roots of [k_par B1_0]^2 = [(theta_ns + theta_bs) B1_0]^2.
RootPair solve_kparallel(double theta_ns, double theta_bs);

/// Growth rate on the Re omega = 0 branch.
///
/// im_omega is the closed form +v1_0 rho0 / rho1_0 and drives the
/// classification; im_omega_squared_root is the opposite sign root
/// -v1_0 rho0 / rho1_0, the one that actually zeroes the squared mass
/// relation. Both are reported; the sign clash is never silently resolved.
struct GrowthRate {
    double im_omega = 0.0;
    double im_omega_squared_root = 0.0;
    Stability stability = Stability::Marginal;
    std::complex<double> omega() const { return {0.0, im_omega}; }
};

GrowthRate growth_rate(double v1_0, double rho0, double rho1_0);

/// Residual of the squared mass-conservation relation
/// [Re omega rho1_0]^2 = [Im omega rho1_0 + v1_0 rho0 (div b)]^2,
/// with the div b factor per the chosen interpretation.
double mass_conservation_residual(std::complex<double> omega, double rho1_0, double v1_0,
                                  double rho0, double div_b, MassInterpretation interpretation);

/// omega0 = +- k_par L B0 (kappa0 + div n) / B1_0.
double alfven_frequency(double k_par, double L, double B0, double kappa0, double div_n,
                        double B1_0, Branch branch);

/// Va = +- L B0 (kappa0 + div n) / B1_0, so that omega0 = k_par Va.
/// With div n = 0 this is the curvature form +- L B0 kappa0 / B1_0.
double alfven_velocity(double L, double B0, double kappa0, double div_n, double B1_0,
                       Branch branch);

/// One perturbation mode: amplitudes, wavenumbers, complex frequency.
struct PerturbationMode {
    double B1_0 = 0.0;
    double J1_0 = 0.0;
    double v1_0 = 0.0;
    double rho1_0 = 0.0;
    double p1_0 = 0.0;
    double k_par = 0.0;
    double k_perp = 0.0;
    std::complex<double> omega{0.0, 0.0};
    Branch branch = Branch::Plus;

    void validate() const;  // finite amplitudes, real wavenumbers
};

}  // namespace filament
