#include "filament/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "filament/grid.hpp"

namespace filament {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& message) {
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& value, std::size_t line, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        if (!std::isfinite(v)) throw std::invalid_argument("not finite");
        return v;
    } catch (const std::exception&) {
        parse_fail(line, "key '" + key + "' needs a finite number, got '" + value + "'");
    }
}

unsigned long long parse_uint(const std::string& value, std::size_t line,
                              const std::string& key) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        if (!value.empty() && value.front() == '-') throw std::invalid_argument("negative");
        return v;
    } catch (const std::exception&) {
        parse_fail(line, "key '" + key + "' needs a nonnegative integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& value, std::size_t line, const std::string& key) {
    if (value == "true") return true;
    if (value == "false") return false;
    parse_fail(line, "key '" + key + "' needs true or false, got '" + value + "'");
}

std::vector<double> parse_numbers(const std::string& value, std::size_t line,
                                  const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(value);
    double v = 0.0;
    while (ss >> v) out.push_back(v);
    if (!ss.eof()) {
        parse_fail(line, "key '" + key + "' has non-numeric content: '" + value + "'");
    }
    return out;
}

Vec3 parse_vec3(const std::string& value, std::size_t line, const std::string& key) {
    const std::vector<double> v = parse_numbers(value, line, key);
    if (v.size() != 3) {
        parse_fail(line, "key '" + key + "' needs exactly three numbers 'x y z'");
    }
    return {v[0], v[1], v[2]};
}

std::vector<Vec3> parse_points(const std::string& value, std::size_t line,
                               const std::string& key) {
    std::vector<Vec3> points;
    std::stringstream ss(value);
    std::string triple;
    while (std::getline(ss, triple, ';')) {
        triple = trim(triple);
        if (triple.empty()) continue;
        points.push_back(parse_vec3(triple, line, key));
    }
    if (points.empty()) {
        parse_fail(line, "key '" + key + "' needs 'x y z; x y z; ...' triples");
    }
    return points;
}

ProfileSpec parse_profile(const std::string& value, std::size_t line, const std::string& key) {
    ProfileSpec spec;
    const std::string prefix = "table:";
    if (value.rfind(prefix, 0) == 0) {
        std::stringstream ss(value.substr(prefix.size()));
        std::string pair_text;
        while (std::getline(ss, pair_text, ',')) {
            pair_text = trim(pair_text);
            if (pair_text.empty()) continue;
            const std::vector<double> pair = parse_numbers(pair_text, line, key);
            if (pair.size() != 2) {
                parse_fail(line, "key '" + key + "' table entries are 's value' pairs");
            }
            spec.table.emplace_back(pair[0], pair[1]);
        }
        if (spec.table.size() < 2) {
            parse_fail(line, "key '" + key + "' table needs at least two knots");
        }
        for (std::size_t i = 1; i < spec.table.size(); ++i) {
            if (!(spec.table[i].first > spec.table[i - 1].first)) {
                parse_fail(line, "key '" + key + "' table knots must increase in s");
            }
        }
    } else {
        spec.constant = parse_double(value, line, key);
    }
    return spec;
}

std::vector<double> parse_sweep_values(const std::string& value, std::size_t line,
                                       const std::string& key) {
    const std::string fn = "linspace(";
    if (value.rfind(fn, 0) == 0 && value.back() == ')') {
        std::string args = value.substr(fn.size(), value.size() - fn.size() - 1);
        std::replace(args.begin(), args.end(), ',', ' ');
        const std::vector<double> v = parse_numbers(args, line, key);
        if (v.size() != 3 || v[2] < 1.0 || v[2] != std::floor(v[2])) {
            parse_fail(line, "key '" + key + "' needs linspace(start, stop, count)");
        }
        const std::size_t count = static_cast<std::size_t>(v[2]);
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = count == 1 ? v[0]
                                : v[0] + (v[1] - v[0]) * static_cast<double>(i) /
                                             static_cast<double>(count - 1);
        }
        return out;
    }
    std::string csv = value;
    std::replace(csv.begin(), csv.end(), ',', ' ');
    const std::vector<double> out = parse_numbers(csv, line, key);
    if (out.empty()) {
        parse_fail(line, "key '" + key + "' needs a value list or linspace(...)");
    }
    return out;
}

ProfileSpec* profile_slot(AnalysisConfig& config, const std::string& key) {
    if (key == "congruence.theta_ns") return &config.theta_ns;
    if (key == "congruence.theta_bs") return &config.theta_bs;
    if (key == "congruence.omega_s") return &config.omega_s;
    if (key == "congruence.omega_n") return &config.omega_n;
    if (key == "congruence.omega_b") return &config.omega_b;
    if (key == "congruence.div_n") return &config.div_n;
    if (key == "congruence.div_b") return &config.div_b;
    return nullptr;
}

}  // namespace

std::string to_string(CurveFamily family) {
    switch (family) {
        case CurveFamily::Line: return "line";
        case CurveFamily::Circle: return "circle";
        case CurveFamily::Helix: return "helix";
        case CurveFamily::Points: return "points";
    }
    return "unknown";
}

Profile ProfileSpec::materialize(std::span<const double> s) const {
    if (is_table()) {
        return interpolate_linear(std::span<const std::pair<double, double>>(table), s);
    }
    return Profile(s.size(), constant);
}

DiscreteCurve CurveConfig::build() const {
    switch (family) {
        case CurveFamily::Line: return build_line(line, resolution);
        case CurveFamily::Circle: return build_circle(circle, resolution);
        case CurveFamily::Helix: return build_helix(helix, resolution);
        case CurveFamily::Points:
            return build_polyline(std::span<const Vec3>(points), resolution, points_closed);
    }
    fail(ErrorCode::InvalidInput, "unknown curve family");
}

void set_scalar(AnalysisConfig& config, const std::string& key, double value) {
    if (!std::isfinite(value)) {
        fail(ErrorCode::ParseError, "key '" + key + "' assigned a non-finite value");
    }
    if (ProfileSpec* slot = profile_slot(config, key)) {
        slot->table.clear();
        slot->constant = value;
        return;
    }
    if (key == "curve.radius") {
        config.curve.circle.radius = value;
    } else if (key == "curve.turns") {
        config.curve.circle.turns = value;
        config.curve.helix.turns = value;
    } else if (key == "curve.a") {
        config.curve.helix.a = value;
    } else if (key == "curve.b") {
        config.curve.helix.b = value;
    } else if (key == "equilibrium.c0") {
        config.c0 = value;
    } else if (key == "equilibrium.rho0") {
        config.rho0 = value;
    } else if (key == "equilibrium.p0") {
        config.p0 = value;
    } else if (key == "equilibrium.gamma") {
        config.gamma = value;
    } else if (key == "equilibrium.mu0") {
        config.mu0 = value;
    } else if (key == "mode.B1_0") {
        config.B1_0 = value;
    } else if (key == "mode.J1_0") {
        config.J1_0 = value;
    } else if (key == "mode.v1_0") {
        config.v1_0 = value;
    } else if (key == "mode.rho1_0") {
        config.rho1_0 = value;
    } else if (key == "numerics.tol") {
        if (!(value > 0.0)) {
            fail(ErrorCode::ParseError, "key 'numerics.tol' must be positive");
        }
        config.numerics.tol = value;
    } else {
        fail(ErrorCode::ParseError, "key '" + key + "' is not a sweepable scalar");
    }
}

AnalysisConfig parse_config_text(const std::string& text) {
    AnalysisConfig config;
    std::set<std::string> seen;
    std::set<std::string> swept;

    std::stringstream stream(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string entry = trim(raw);
        if (entry.empty()) continue;

        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos) {
            parse_fail(line_no, "expected 'key = value', got '" + entry + "'");
        }
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        if (key.empty() || value.empty()) {
            parse_fail(line_no, "expected 'key = value', got '" + entry + "'");
        }

        if (key.rfind("sweep.", 0) == 0) {
            const std::string target = key.substr(6);
            if (!swept.insert(target).second) {
                parse_fail(line_no, "duplicate sweep axis '" + target + "'");
            }
            AnalysisConfig probe = config;
            try {
                set_scalar(probe, target, 0.0);
            } catch (const Error&) {
                parse_fail(line_no, "sweep target '" + target + "' is not a sweepable scalar");
            }
            config.sweep.emplace_back(target, parse_sweep_values(value, line_no, key));
            continue;
        }

        if (!seen.insert(key).second) {
            parse_fail(line_no, "duplicate key '" + key + "'");
        }

        if (key == "curve.family") {
            if (value == "line") {
                config.curve.family = CurveFamily::Line;
            } else if (value == "circle") {
                config.curve.family = CurveFamily::Circle;
            } else if (value == "helix") {
                config.curve.family = CurveFamily::Helix;
            } else if (value == "points") {
                config.curve.family = CurveFamily::Points;
            } else {
                parse_fail(line_no, "curve.family must be line, circle, helix or points");
            }
        } else if (key == "curve.from") {
            config.curve.line.from = parse_vec3(value, line_no, key);
        } else if (key == "curve.to") {
            config.curve.line.to = parse_vec3(value, line_no, key);
        } else if (key == "curve.points") {
            config.curve.points = parse_points(value, line_no, key);
        } else if (key == "curve.closed") {
            config.curve.points_closed = parse_bool(value, line_no, key);
        } else if (key == "curve.fallback_normal") {
            config.curve.fallback_normal = parse_vec3(value, line_no, key);
        } else if (key == "curve.resolution") {
            const unsigned long long r = parse_uint(value, line_no, key);
            if (r < 4) parse_fail(line_no, "curve.resolution must be at least 4");
            config.curve.resolution = static_cast<std::size_t>(r);
        } else if (key == "congruence.frame_reading") {
            if (value == "antisymmetric") {
                config.frame_reading = FrameDerivativeReading::Antisymmetric;
            } else if (value == "literal") {
                config.frame_reading = FrameDerivativeReading::Literal;
            } else {
                parse_fail(line_no, "congruence.frame_reading must be antisymmetric or literal");
            }
        } else if (profile_slot(config, key) != nullptr) {
            *profile_slot(config, key) = parse_profile(value, line_no, key);
        } else if (key == "equilibrium.b0_form") {
            if (value == "rate_sum") {
                config.b0_form = B0Form::RateSum;
            } else if (value == "divergence_balance") {
                config.b0_form = B0Form::DivergenceBalance;
            } else {
                parse_fail(line_no, "equilibrium.b0_form must be rate_sum or divergence_balance");
            }
        } else if (key == "mode.branch") {
            if (value == "+" || value == "plus") {
                config.branch = Branch::Plus;
            } else if (value == "-" || value == "minus") {
                config.branch = Branch::Minus;
            } else {
                parse_fail(line_no, "mode.branch must be + or -");
            }
        } else if (key == "mode.mass_interpretation") {
            if (value == "drop_div_b") {
                config.mass_interpretation = MassInterpretation::DropDivB;
            } else if (value == "keep_div_b") {
                config.mass_interpretation = MassInterpretation::KeepDivB;
            } else {
                parse_fail(line_no,
                           "mode.mass_interpretation must be drop_div_b or keep_div_b");
            }
        } else if (key == "length.convention") {
            if (value == "full") {
                config.length_convention = LengthConvention::Full;
            } else if (value == "solar_half_loop") {
                config.length_convention = LengthConvention::SolarHalfLoop;
            } else {
                parse_fail(line_no, "length.convention must be full or solar_half_loop");
            }
        } else if (key == "numerics.seed") {
            config.numerics.seed = parse_uint(value, line_no, key);
        } else if (key == "numerics.scan_min") {
            config.numerics.scan.im_min = parse_double(value, line_no, key);
        } else if (key == "numerics.scan_max") {
            config.numerics.scan.im_max = parse_double(value, line_no, key);
        } else if (key == "numerics.scan_steps") {
            const unsigned long long steps = parse_uint(value, line_no, key);
            if (steps < 3) parse_fail(line_no, "numerics.scan_steps must be at least 3");
            config.numerics.scan.steps = static_cast<std::size_t>(steps);
        } else if (key == "numerics.sweep_cap") {
            const unsigned long long cap = parse_uint(value, line_no, key);
            if (cap == 0) parse_fail(line_no, "numerics.sweep_cap must be positive");
            config.numerics.sweep_cap = static_cast<std::size_t>(cap);
        } else {
            try {
                set_scalar(config, key, parse_double(value, line_no, key));
            } catch (const Error& e) {
                if (e.code() == ErrorCode::ParseError &&
                    std::string(e.what()).find("sweepable") != std::string::npos) {
                    parse_fail(line_no, "unknown key '" + key + "'");
                }
                throw;
            }
        }
    }

    std::vector<std::string> required = {"curve.family",      "equilibrium.c0",
                                         "equilibrium.rho0",  "equilibrium.p0",
                                         "mode.B1_0",         "mode.J1_0",
                                         "mode.v1_0",         "mode.rho1_0"};
    switch (config.curve.family) {
        case CurveFamily::Line:
            required.push_back("curve.from");
            required.push_back("curve.to");
            break;
        case CurveFamily::Circle: required.push_back("curve.radius"); break;
        case CurveFamily::Helix:
            required.push_back("curve.a");
            required.push_back("curve.b");
            break;
        case CurveFamily::Points: required.push_back("curve.points"); break;
    }
    for (const std::string& key : required) {
        if (!seen.count(key)) {
            fail(ErrorCode::ParseError, "missing required key '" + key + "'");
        }
    }
    if (!(config.numerics.scan.im_min < config.numerics.scan.im_max)) {
        fail(ErrorCode::ParseError, "numerics.scan_min must be below numerics.scan_max");
    }
    return config;
}

CongruenceCoefficients materialize_coefficients(const AnalysisConfig& config,
                                                const DiscreteCurve& curve) {
    CongruenceCoefficients coeffs;
    coeffs.s = curve.arc_length;
    const std::span<const double> s(curve.arc_length);
    coeffs.theta_ns = config.theta_ns.materialize(s);
    coeffs.theta_bs = config.theta_bs.materialize(s);
    coeffs.omega_s = config.omega_s.materialize(s);
    coeffs.omega_n = config.omega_n.materialize(s);
    coeffs.omega_b = config.omega_b.materialize(s);
    coeffs.div_n = config.div_n.materialize(s);
    coeffs.div_b = config.div_b.materialize(s);
    coeffs.validate();
    return coeffs;
}

AnalysisConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::ParseError, "cannot open config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

}  // namespace filament
