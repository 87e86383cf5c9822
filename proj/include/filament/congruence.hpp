#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "filament/curve.hpp"

namespace filament {

/// Scalar value per curve sample (units 1/length unless noted).
using Profile = std::vector<double>;

/// Transverse expansion and abnormality profiles of the filament bundle.
/// These are supplied attributes of the congruence, not derived from a 3-D
/// field: constants or tabulated values interpolated onto the curve grid.
struct CongruenceCoefficients {
    Profile theta_ns;
    Profile theta_bs;
    Profile omega_s;
    Profile omega_n;
    Profile omega_b;
    Profile div_n;
    Profile div_b;
    std::vector<double> s;  // grid the profiles live on (copy of arc_length)

    std::size_t size() const { return s.size(); }
    double spacing() const { return s.back() / static_cast<double>(s.size() - 1); }

    /// All profiles aligned with the grid and finite everywhere; throws.
    void validate() const;

    /// Constant coefficients broadcast over the curve grid.
    static CongruenceCoefficients constants(const DiscreteCurve& curve, double theta_ns,
                                            double theta_bs, double omega_s, double omega_n,
                                            double omega_b, double div_n, double div_b);
};

/// Mean over the unique samples (duplicate closing sample excluded).
double profile_mean(std::span<const double> profile, bool closed);

/// Gradient of a scalar in the orthonormal (t, n, b) directions.
struct FrameGradient {
    double d_s = 0.0;
    double d_n = 0.0;
    double d_b = 0.0;
    double squared_norm() const { return d_s * d_s + d_n * d_n + d_b * d_b; }
};

FrameGradient frame_gradient(double d_s, double d_n, double d_b);

/// Which reading of the transverse derivative relations to evaluate. Two
/// sign conventions are in circulation. Antisymmetric is the default: the
/// coefficient matrix of the directional derivatives in the frame basis is
/// made exactly antisymmetric (a triad of unit vectors admits no other);
/// Literal keeps the alternative sign pattern, which breaks antisymmetry in
/// two of the coefficient pairs.
enum class FrameDerivativeReading {
    Antisymmetric,
    Literal,
};

/// Directional derivatives of the triad across the bundle at one sample.
struct TransverseDerivatives {
    Vec3 dn_t, dn_n, dn_b;  // d/dn of t, n, b
    Vec3 db_t, db_n, db_b;  // d/db of t, n, b
};

TransverseDerivatives transverse_frame_derivatives(
    const CongruenceCoefficients& coeffs, const FrameField& frame, std::size_t sample,
    FrameDerivativeReading reading = FrameDerivativeReading::Antisymmetric);

/// Residual of the equilibrium Ampere relation, sample by sample:
/// B0 [ n x d_n t + b x d_b t ]. Must vanish for a current-free equilibrium;
/// in general it does not under the constraint set used here, which is why
/// it is measured rather than assumed.
std::vector<Vec3> equilibrium_current_residual(
    const CongruenceCoefficients& coeffs, const FrameField& frame, const Profile& B0,
    FrameDerivativeReading reading = FrameDerivativeReading::Antisymmetric);

/// Geometric equilibrium constraints: planarity (tau = 0), Omega_n = 0,
/// kappa = Omega_b, and the geodesic-bundle flag Omega_s = 0.
struct ConstraintReport {
    bool planar_ok = false;
    bool omega_n_ok = false;
    bool kappa_eq_omega_b_ok = false;
    bool geodesic = false;
    double max_abs_tau = 0.0;
    double max_abs_omega_n = 0.0;
    double max_abs_kappa_minus_omega_b = 0.0;
    double max_abs_omega_s = 0.0;
    double tol = 0.0;
    bool all_ok() const { return planar_ok && omega_n_ok && kappa_eq_omega_b_ok && geodesic; }
};

ConstraintReport check_equilibrium_constraints(const CongruenceCoefficients& coeffs,
                                               const FrameField& frame, double tol = 1e-6);

}  // namespace filament
