#pragma once

#include <cstddef>

#include "filament/curve.hpp"
#include "filament/modes.hpp"

namespace filament {

/// Closed-form curvature, torsion and length for the analytic families;
/// the reference the discrete frame computation is checked against.
struct AnalyticFrame {
    double kappa = 0.0;
    double tau = 0.0;
    double length = 0.0;
};

AnalyticFrame analytic_frame_oracle(const LineSpec& spec);
AnalyticFrame analytic_frame_oracle(const CircleSpec& spec);
AnalyticFrame analytic_frame_oracle(const HelixSpec& spec);

/// Pre-squared complex relations the mode roots came from.
enum class ModeEquation {
    CurrentBalance,    // i k_perp B1_0 e^{-i th} = (kappa0 B1_0 + mu0 J1_0) e^{-i th}
    DivergenceFree,    // i k_par  B1_0 e^{-i th} = -(theta_ns + theta_bs) B1_0 e^{-i th}
    MassConservation,  // -i omega rho1_0 e^{-i th} = v1_0 rho0 (div b) e^{-i th}
};

/// Background quantities the complex checks need besides the mode itself.
struct ModeContext {
    double kappa0 = 0.0;
    double mu0 = 1.0;
    double theta_ns = 0.0;
    double theta_bs = 0.0;
    double rho0 = 1.0;
    double div_b = 0.0;
};

struct BranchResidual {
    double max_abs = 0.0;     // max |LHS - RHS| over the sampled phases
    double max_sq = 0.0;      // max | |LHS|^2 - |RHS|^2 |
    double spread_sq = 0.0;   // max-min of the squared-form residual
};

/// Evaluates both sides of the chosen pre-squared equation at uniformly
/// sampled phases, once per sign branch of the solved quantity.
/// satisfied_branch is +1/-1 when that branch's |LHS - RHS| stays below
/// 1e-10, 0 when neither does (the usual case for the squared-only roots).
struct BacksubReport {
    BranchResidual plus;
    BranchResidual minus;
    int satisfied_branch = 0;
};

BacksubReport complex_backsubstitution(const PerturbationMode& mode, const ModeContext& context,
                                       ModeEquation equation, std::size_t theta_samples = 128);

/// Re omega = 0 axis scan of the squared mass-relation residual.
struct ScanGrid {
    double im_min = -2.0;
    double im_max = 2.0;
    std::size_t steps = 401;
};

struct ScanResult {
    double im_omega = 0.0;   // residual minimizer after local refinement
    double residual = 0.0;
    double cell = 0.0;       // refined cell width the minimizer is known to
};

/// Locates the growth rate by brute residual minimization, independent of
/// the closed form: grid scan plus three bisection rounds over the winning
/// cell. The minimizer must be interior to the grid; a boundary minimizer
/// raises no-root-in-bracket.
ScanResult omega_residual_scan(double rho1_0, double v1_0, double rho0, double div_b,
                               MassInterpretation interpretation, const ScanGrid& grid);

}  // namespace filament
