#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "filament/report.hpp"

namespace {

int exit_code_for(filament::ErrorCode code) {
    switch (code) {
        case filament::ErrorCode::ParseError: return 2;
        case filament::ErrorCode::DegenerateCurve:
        case filament::ErrorCode::DegenerateNormal: return 3;
        case filament::ErrorCode::DegenerateAmplitude: return 4;
        case filament::ErrorCode::InvalidDensity: return 5;
        case filament::ErrorCode::InvalidConvention: return 6;
        case filament::ErrorCode::SweepTooLarge: return 7;
        default: return 1;
    }
}

struct Cli {
    std::string config_path;
    std::string out_dir;
    std::string format = "text";
    std::optional<unsigned long long> seed;
    std::optional<unsigned long long> resolution;

    filament::AnalysisConfig load() const {
        filament::AnalysisConfig config = filament::parse_config_file(config_path);
        if (seed) config.numerics.seed = *seed;
        if (resolution) {
            if (*resolution < 4) {
                filament::fail(filament::ErrorCode::ParseError,
                               "--resolution must be at least 4");
            }
            config.curve.resolution = static_cast<std::size_t>(*resolution);
        }
        return config;
    }

    void emit(const nlohmann::ordered_json& json, const std::string& text) const {
        if (format == "json") {
            std::cout << json.dump(2) << "\n";
        } else {
            std::cout << text;
        }
    }
};

void add_common(CLI::App* sub, Cli& cli) {
    sub->add_option("config", cli.config_path, "config file (dotted keys, # comments)")
        ->required();
    sub->add_option("--out", cli.out_dir, "directory the output files are written to");
    sub->add_option("--seed", cli.seed, "overrides numerics.seed");
    sub->add_option("--resolution", cli.resolution, "overrides curve.resolution");
    sub->add_option("--format", cli.format, "stdout format")
        ->check(CLI::IsMember({"json", "text"}));
}

int run_analyze(const Cli& cli) {
    const filament::AnalysisConfig config = cli.load();
    const filament::AnalysisResult result = filament::run_analysis(config);
    const nlohmann::ordered_json json = filament::report_json(result);
    cli.emit(json, filament::human_summary(result));
    if (!cli.out_dir.empty()) {
        filament::write_text_file(cli.out_dir, "report.json", json.dump(2) + "\n");
        filament::write_text_file(cli.out_dir, "summary.csv", filament::summary_csv(result));
        filament::write_text_file(cli.out_dir, "curve.csv", filament::curve_csv(result));
        filament::write_text_file(cli.out_dir, "b0_profile.csv",
                                  filament::b0_profile_csv(result));
    }
    return 0;
}

int run_sweep_verb(const Cli& cli) {
    const filament::AnalysisConfig config = cli.load();
    const filament::SweepResult sweep = filament::run_sweep(config);
    const nlohmann::ordered_json json = filament::report_json(sweep, config);
    cli.emit(json, filament::human_summary(sweep));
    if (!cli.out_dir.empty()) {
        filament::write_text_file(cli.out_dir, "report.json", json.dump(2) + "\n");
        filament::write_text_file(cli.out_dir, "summary.csv", filament::summary_csv(sweep));
    }
    return 0;
}

int run_verify_verb(const Cli& cli) {
    const filament::AnalysisConfig config = cli.load();
    const filament::VerifyOutcome outcome = filament::run_verify(config);
    const nlohmann::ordered_json json = filament::report_json(outcome);
    cli.emit(json, filament::human_summary(outcome));
    if (!cli.out_dir.empty()) {
        filament::write_text_file(cli.out_dir, "report.json", json.dump(2) + "\n");
        filament::write_text_file(cli.out_dir, "summary.csv",
                                  filament::summary_csv(outcome.result));
        filament::write_text_file(cli.out_dir, "curve.csv",
                                  filament::curve_csv(outcome.result));
        filament::write_text_file(cli.out_dir, "b0_profile.csv",
                                  filament::b0_profile_csv(outcome.result));
    }
    if (!outcome.ok()) {
        std::cerr << "verify failed\n";
        return 1;
    }
    return 0;
}

int run_dump_curve(const Cli& cli) {
    const filament::AnalysisConfig config = cli.load();

    // Geometry and background field only; no mode algebra, so amplitude
    // settings cannot make a dump fail.
    filament::AnalysisResult partial;
    partial.config = config;
    partial.curve = config.curve.build();
    filament::FrameOptions options;
    options.fallback_normal = config.curve.fallback_normal;
    partial.frame = filament::compute_frame(partial.curve, options);
    partial.coeffs = filament::materialize_coefficients(config, partial.curve);
    partial.equilibrium.B0 = filament::solve_B0(partial.coeffs, config.c0, config.b0_form);
    partial.B0_alt = filament::solve_B0(partial.coeffs, config.c0,
                                        config.b0_form == filament::B0Form::RateSum
                                            ? filament::B0Form::DivergenceBalance
                                            : filament::B0Form::RateSum);

    nlohmann::ordered_json json{
        {"schema_version", filament::kSchemaVersion},
        {"tool", {{"name", filament::kToolName}, {"version", filament::kToolVersion}}},
        {"verb", "dump-curve"},
        {"curve",
         {{"family", filament::to_string(config.curve.family)},
          {"closed", partial.curve.closed},
          {"samples", partial.curve.size()},
          {"arc_length", partial.curve.length()},
          {"spacing", partial.curve.spacing()}}}};
    std::string text = "dumped " + std::to_string(partial.curve.size()) + " samples (" +
                       filament::to_string(config.curve.family) +
                       (partial.curve.closed ? ", closed" : ", open") + ")\n";
    cli.emit(json, text);
    if (!cli.out_dir.empty()) {
        filament::write_text_file(cli.out_dir, "curve.csv", filament::curve_csv(partial));
        filament::write_text_file(cli.out_dir, "b0_profile.csv",
                                  filament::b0_profile_csv(partial));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frenet-frame linear stability analysis of thin plasma filaments"};
    app.set_version_flag("--version",
                         std::string(filament::kToolName) + " " + filament::kToolVersion);
    app.require_subcommand(1);

    Cli cli;
    CLI::App* analyze = app.add_subcommand("analyze", "full analysis of one configuration");
    CLI::App* sweep = app.add_subcommand("sweep", "cartesian sweep over the config's axes");
    CLI::App* verify = app.add_subcommand("verify", "analysis plus independent oracle checks");
    CLI::App* dump = app.add_subcommand("dump-curve", "write the sampled curve and field only");
    for (CLI::App* sub : {analyze, sweep, verify, dump}) add_common(sub, cli);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (analyze->parsed()) return run_analyze(cli);
        if (sweep->parsed()) return run_sweep_verb(cli);
        if (verify->parsed()) return run_verify_verb(cli);
        return run_dump_curve(cli);
    } catch (const filament::Error& e) {
        std::cerr << "error (" << filament::error_code_name(e.code()) << "): " << e.what()
                  << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
