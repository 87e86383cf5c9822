#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "filament/config.hpp"

namespace filament {

inline constexpr const char* kToolName = "filament-stability";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Scalar reductions of the profile quantities that feed the mode algebra:
/// means over the unique samples, plus the reference field value B0(0).
struct Reductions {
    double kappa0 = 0.0;
    double B0_ref = 0.0;
    double L = 0.0;
    double theta_ns_mean = 0.0;
    double theta_bs_mean = 0.0;
    double omega_s_mean = 0.0;
    double omega_n_mean = 0.0;
    double omega_b_mean = 0.0;
    double div_n_mean = 0.0;
    double div_b_mean = 0.0;
};

/// Independent checks of the closed-form results: complex backsubstitution
/// into the pre-squared relations and a brute-force residual scan for the
/// growth rate, plus the gap between the two background-field forms.
struct ModeVerification {
    BacksubReport current_balance;
    BacksubReport divergence_free;
    BacksubReport mass_conservation;
    std::optional<ScanResult> scan;
    std::string scan_note;        // set when the scan could not bracket a root
    double scan_target = 0.0;     // the root the scan should find
    bool scan_matches = false;
    double b0_form_gap = 0.0;     // max |rate_sum - divergence_balance|
};

struct AnalysisResult {
    AnalysisConfig config;
    DiscreteCurve curve;
    FrameField frame;
    FrenetResiduals frenet;
    bool planar = false;
    CongruenceCoefficients coeffs;
    EquilibriumState equilibrium;  // B0 under the configured form
    Profile B0_alt;                // the other form
    ValidationReport validation;
    Reductions reductions;
    RootPair k_perp;
    RootPair k_par;
    GrowthRate growth;
    double omega0 = 0.0;
    double va = 0.0;
    double p1_0 = 0.0;
    PerturbationMode mode;         // branch-resolved wavenumbers and omega
    ModeVerification verification;
    std::vector<std::string> notes;
};

AnalysisResult run_analysis(const AnalysisConfig& config);

/// One named pass/fail verdict of the verify verb.
struct VerifyCheck {
    std::string name;
    bool ok = false;
    double value = 0.0;      // measured quantity
    double bound = 0.0;      // tolerance it was held to
};

struct VerifyOutcome {
    AnalysisResult result;
    std::vector<VerifyCheck> checks;
    bool ok() const;
};

VerifyOutcome run_verify(const AnalysisConfig& config);

/// Scalar outputs of one sweep combination, in axis order.
struct SweepRow {
    std::vector<double> axis_values;
    double kappa0 = 0.0;
    double L = 0.0;
    double B0_ref = 0.0;
    double k_par_plus = 0.0;
    double k_perp_plus = 0.0;
    double im_omega = 0.0;
    double im_omega_squared_root = 0.0;
    Stability stability = Stability::Marginal;
    double omega0 = 0.0;
    double va = 0.0;
    double p1_0 = 0.0;
    double frenet_max = 0.0;
    double current_residual_max = 0.0;
    bool equilibrium_ok = false;
};

/// Cartesian sweep over the config's axes. Axes are sorted by key; rows are
/// emitted in lexicographic index order (last axis fastest). The product of
/// axis lengths must stay within numerics.sweep_cap.
struct SweepResult {
    std::vector<std::string> axes;
    std::vector<std::vector<double>> axis_values;
    std::vector<SweepRow> rows;
};

SweepResult run_sweep(const AnalysisConfig& config);

nlohmann::ordered_json report_json(const AnalysisResult& result);
nlohmann::ordered_json report_json(const VerifyOutcome& outcome);
nlohmann::ordered_json report_json(const SweepResult& sweep, const AnalysisConfig& config);

std::string human_summary(const AnalysisResult& result);
std::string human_summary(const VerifyOutcome& outcome);
std::string human_summary(const SweepResult& sweep);

std::string summary_csv(const AnalysisResult& result);
std::string summary_csv(const SweepResult& sweep);
std::string curve_csv(const AnalysisResult& result);
std::string b0_profile_csv(const AnalysisResult& result);

/// Creates out_dir if needed and writes the named file; invalid-input on
/// filesystem failure.
void write_text_file(const std::string& out_dir, const std::string& name,
                     const std::string& content);

}  // namespace filament
