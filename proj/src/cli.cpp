#include "cavityshare/cli.hpp"

#include "cavityshare/analysis.hpp"
#include "cavityshare/entanglement.hpp"
#include "cavityshare/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace cavityshare::cli {

namespace {

using nlohmann::json;
using std::numbers::pi;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_real(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

// Coefficient of a bare imaginary term: "", "+", "-" stand for 1, 1, -1.
bool parse_imag_coefficient(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty() || s == "+") {
        out = 1.0;
        return true;
    }
    if (s == "-") {
        out = -1.0;
        return true;
    }
    return parse_real(s, out);
}

bool parse_complex(std::string_view text, complex& out) {
    std::string_view s = trim(text);
    if (s.empty()) {
        return false;
    }
    if (s.back() != 'i' && s.back() != 'j') {
        double re = 0.0;
        if (!parse_real(s, re)) {
            return false;
        }
        out = {re, 0.0};
        return true;
    }
    s.remove_suffix(1);
    // Split at the last sign that is not leading and not an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    double re = 0.0;
    double im = 0.0;
    if (split == std::string_view::npos) {
        if (!parse_imag_coefficient(s, im)) {
            return false;
        }
    } else if (!parse_real(s.substr(0, split), re) || !parse_imag_coefficient(s.substr(split), im)) {
        return false;
    }
    out = {re, im};
    return true;
}

[[noreturn]] void bad_init(std::string_view spec, std::string_view why) {
    throw UsageError("invalid --init value '" + std::string(spec) + "': " + std::string(why) +
                     " (expected class1, bell:<theta/pi> or general:<a0>,<a1>,<a2>)");
}

json params_json(const RunConfig& config, const ModelParams& params) {
    return {{"g", params.g()},
            {"omega", params.omega()},
            {"omega0", params.omega0()},
            {"detuning", params.detuning()},
            {"detuning_over_g", config.detuning_over_g}};
}

RunConfig with_command(RunConfig config, Command command) {
    config.command = command;
    return config;
}

std::vector<double> time_axis(const RunConfig& config) {
    return uniform_axis(config.tau_min, config.tau_max, config.samples, true);
}

} // namespace

InitialCondition parse_init_spec(std::string_view spec) {
    const std::string_view s = trim(spec);
    if (s == "class1") {
        return CavityExcited{};
    }
    if (s.starts_with("bell:")) {
        double theta_over_pi = 0.0;
        if (!parse_real(s.substr(5), theta_over_pi)) {
            bad_init(spec, "theta/pi is not a finite number");
        }
        return BellTheta{pi * theta_over_pi};
    }
    if (s.starts_with("general:")) {
        std::string_view rest = s.substr(8);
        Amplitudes a{};
        for (std::size_t i = 0; i < 3; ++i) {
            const auto comma = rest.find(',');
            const bool last = i == 2;
            if (last != (comma == std::string_view::npos)) {
                bad_init(spec, "general state needs exactly three amplitudes");
            }
            const auto field = last ? rest : rest.substr(0, comma);
            if (!parse_complex(field, a[i])) {
                bad_init(spec, "amplitude a" + std::to_string(i) + " = '" + std::string(field) +
                                   "' is not a complex number");
            }
            rest = last ? std::string_view{} : rest.substr(comma + 1);
        }
        try {
            initial_amplitudes(GeneralState{a});
        } catch (const std::invalid_argument& e) {
            bad_init(spec, e.what());
        }
        return GeneralState{a};
    }
    bad_init(spec, "unknown initial-state kind");
}

void validate(const RunConfig& config) {
    if (!std::isfinite(config.g) || config.g <= 0.0) {
        throw UsageError("--g must be finite and > 0");
    }
    if (!std::isfinite(config.detuning_over_g) || !std::isfinite(config.omega_over_g)) {
        throw UsageError("--detuning and --omega must be finite");
    }
    if (config.command == Command::verify) {
        return;
    }
    if (!std::isfinite(config.tau_min) || !std::isfinite(config.tau_max) || config.tau_min < 0.0 ||
        !(config.tau_max > config.tau_min)) {
        throw UsageError("time range must satisfy 0 <= --tau-min < --tau-max");
    }
    if (config.command != Command::detect && config.samples < 2) {
        throw UsageError("--samples must be >= 2");
    }
    if (config.command == Command::sweep) {
        if (config.theta_samples == 0) {
            throw UsageError("--theta-samples must be >= 1");
        }
        if (!std::isfinite(config.theta_min) || !std::isfinite(config.theta_max) ||
            (config.theta_samples > 1 && !(config.theta_max > config.theta_min))) {
            throw UsageError("theta range must satisfy --theta-min < --theta-max");
        }
    }
    if (config.command == Command::detect &&
        (!(config.freeze_tol > 0.0) || !(config.scan_step > 0.0))) {
        throw UsageError("--freeze-tol and --scan-step must be > 0");
    }
}

ModelParams params_from(const RunConfig& config) {
    const double omega = config.omega_over_g * config.g;
    return build_params(config.g, omega, omega + config.detuning_over_g * config.g);
}

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string run_simulate(const RunConfig& config) {
    validate(with_command(config, Command::simulate));
    const auto init = parse_init_spec(config.init_spec);
    const auto params = params_from(config);
    const DynamicCurve curve(init, params);
    const auto taus = time_axis(config);

    static const char* const columns[] = {"tau",   "re_a0", "im_a0", "re_a1", "im_a1", "re_a2",
                                          "im_a2", "Y0",    "Y1",    "Y2",    "YS"};
    std::vector<std::array<double, 11>> rows;
    rows.reserve(taus.size());
    for (const double tau : taus) {
        const auto full = slow_to_full(curve.state(tau), params);
        const auto y = one_to_other(full);
        rows.push_back({tau, full.a[0].real(), full.a[0].imag(), full.a[1].real(), full.a[1].imag(),
                        full.a[2].real(), full.a[2].imag(), y.y0, y.y1, y.y2, y.sum()});
    }

    if (config.format == Format::json) {
        json doc = {{"schema_version", schema_version},
                    {"command", "simulate"},
                    {"init", config.init_spec},
                    {"params", params_json(config, params)},
                    {"columns", columns},
                    {"rows", rows}};
        return doc.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t c = 0; c < std::size(columns); ++c) {
        out += c ? "," : "";
        out += columns[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += c ? "," : "";
            out += format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string run_sweep(const RunConfig& config) {
    validate(with_command(config, Command::sweep));
    const auto params = params_from(config);
    const auto thetas =
        uniform_axis(config.theta_min, config.theta_max, config.theta_samples, false);
    const auto taus = time_axis(config);
    const auto grid = sweep(thetas, taus, params, SweepOptions{config.threads});

    if (config.format == Format::json) {
        json doc = {{"schema_version", schema_version},
                    {"command", "sweep"},
                    {"params", params_json(config, params)},
                    {"theta_axis", grid.theta_axis},
                    {"time_axis", grid.time_axis},
                    {"values", grid.values}};
        return doc.dump(2) + "\n";
    }
    std::string out = "theta/pi";
    for (const double tau : grid.time_axis) {
        out += ',' + format_number(tau);
    }
    out += '\n';
    for (std::size_t r = 0; r < grid.theta_axis.size(); ++r) {
        out += format_number(grid.theta_axis[r]);
        for (std::size_t c = 0; c < grid.time_axis.size(); ++c) {
            out += ',' + format_number(grid.at(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string run_detect(const RunConfig& config) {
    validate(with_command(config, Command::detect));
    const auto init = parse_init_spec(config.init_spec);
    const auto params = params_from(config);
    DetectOptions options;
    options.freeze_tol = config.freeze_tol;
    options.scan_step = config.scan_step;
    const auto intervals =
        detect_intervals(DynamicCurve(init, params), config.tau_min, config.tau_max, options);

    if (config.format == Format::csv) {
        std::string out = "t_start,t_end,kind\n";
        for (const auto& iv : intervals) {
            out += format_number(iv.t_start) + ',' + format_number(iv.t_end) + ',' +
                   to_string(iv.kind) + '\n';
        }
        return out;
    }
    json list = json::array();
    for (const auto& iv : intervals) {
        list.push_back({{"t_start", iv.t_start}, {"t_end", iv.t_end}, {"kind", to_string(iv.kind)}});
    }
    json doc = {{"schema_version", schema_version},
                {"command", "detect"},
                {"init", config.init_spec},
                {"params", params_json(config, params)},
                {"range", {config.tau_min, config.tau_max}},
                {"freeze_tol", config.freeze_tol},
                {"intervals", list}};
    return doc.dump(2) + "\n";
}

VerifyOutcome run_verify(const RunConfig& config) {
    validate(with_command(config, Command::verify));
    std::vector<std::string_view> suites;
    if (config.suite == "all") {
        suites = verify::suite_names();
    } else {
        const auto& known = verify::suite_names();
        if (std::find(known.begin(), known.end(), config.suite) == known.end()) {
            throw UsageError("unknown suite '" + config.suite + "'");
        }
        suites.push_back(config.suite);
    }

    const verify::SuiteConfig suite_config{config.seed, config.verify_samples};
    bool passed = true;
    json results = json::array();
    for (const auto name : suites) {
        const auto r = *verify::run_suite(name, suite_config);
        passed = passed && r.passed();
        results.push_back({{"name", r.name},
                           {"checks", r.checks},
                           {"failures", r.failures},
                           {"max_deviation", r.max_deviation},
                           {"tolerance", r.tolerance},
                           {"passed", r.passed()}});
    }
    json doc = {{"schema_version", schema_version},
                {"command", "verify"},
                {"seed", config.seed},
                {"samples", config.verify_samples},
                {"suites", results},
                {"passed", passed}};
    return {doc.dump(2) + "\n", passed};
}

void write_output(const std::string& path, const std::string& content, std::ostream& stdout_stream) {
    if (path == "-") {
        stdout_stream << content;
        stdout_stream.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw UsageError("cannot open output file '" + path + "' for writing");
    }
    file << content;
    file.close();
    if (!file) {
        throw UsageError("failed writing output file '" + path + "'");
    }
}

std::size_t thread_cap(const char* env_value) {
    if (env_value == nullptr) {
        return 0;
    }
    const std::string_view s = trim(env_value);
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || n == 0) {
        throw UsageError("CAVITYSHARE_THREADS must be a positive integer, got '" +
                         std::string(env_value) + "'");
    }
    return n;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement freezing and thawing of two atoms in a cavity (one excitation)",
                 "cavityshare"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format = "csv";
    const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};

    auto add_physics = [&](CLI::App* sub) {
        sub->add_option("--g", config.g, "Coupling constant g")->capture_default_str();
        sub->add_option("--detuning", config.detuning_over_g, "Detuning Delta/g")
            ->capture_default_str();
        sub->add_option("--omega", config.omega_over_g,
                        "Cavity frequency omega/g for the full-frame phases")
            ->capture_default_str();
    };
    auto* simulate = app.add_subcommand("simulate", "Time series of amplitudes and Y_i");
    simulate->add_option("--init", config.init_spec, "class1 | bell:<theta/pi> | general:a0,a1,a2")
        ->capture_default_str();
    add_physics(simulate);
    simulate->add_option("--tau-min", config.tau_min, "First Gt/pi")->capture_default_str();
    simulate->add_option("--tau-max", config.tau_max, "Last Gt/pi")->capture_default_str();
    simulate->add_option("--samples", config.samples, "Number of time samples")
        ->capture_default_str();
    simulate->add_option("-o,--output", config.output, "Output path, '-' for stdout")
        ->capture_default_str();
    simulate->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    auto* sweep_cmd = app.add_subcommand("sweep", "Y_S over a theta x Gt/pi grid");
    add_physics(sweep_cmd);
    sweep_cmd->add_option("--theta-min", config.theta_min, "First theta/pi")->capture_default_str();
    sweep_cmd->add_option("--theta-max", config.theta_max, "Exclusive end of theta/pi axis")
        ->capture_default_str();
    sweep_cmd->add_option("--theta-samples", config.theta_samples, "Rows")->capture_default_str();
    sweep_cmd->add_option("--tau-min", config.tau_min, "First Gt/pi")->capture_default_str();
    sweep_cmd->add_option("--tau-max", config.tau_max, "Last Gt/pi")->capture_default_str();
    sweep_cmd->add_option("--samples", config.samples, "Columns (default 512)");
    sweep_cmd->add_option("-o,--output", config.output, "Output path, '-' for stdout")
        ->capture_default_str();
    sweep_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    auto* detect = app.add_subcommand("detect", "Frozen and thawing intervals of Y_S");
    detect->add_option("--init", config.init_spec, "class1 | bell:<theta/pi> | general:a0,a1,a2")
        ->capture_default_str();
    add_physics(detect);
    detect->add_option("--tau-min", config.tau_min, "Start of scan (Gt/pi)")->capture_default_str();
    detect->add_option("--tau-max", config.tau_max, "End of scan (Gt/pi, default 2)");
    detect->add_option("--freeze-tol", config.freeze_tol, "|Y_S - 2| threshold for Frozen")
        ->capture_default_str();
    detect->add_option("--scan-step", config.scan_step, "Scan spacing in Gt/pi")
        ->capture_default_str();
    detect->add_option("-o,--output", config.output, "Output path, '-' for stdout")
        ->capture_default_str();
    detect->add_option("--format", format, "json (default) or csv")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suites");
    verify_cmd->add_option("--suite", config.suite, "all or one suite name")->capture_default_str();
    verify_cmd->add_option("--samples", config.verify_samples, "Random states per suite")
        ->capture_default_str();
    verify_cmd->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
    verify_cmd->add_option("-o,--output", config.output, "Output path, '-' for stdout")
        ->capture_default_str();

    // Per-command defaults that differ from RunConfig's.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!args.empty() && args.front() == "sweep") {
        config.samples = 512;
    }
    if (!args.empty() && args.front() == "detect") {
        config.tau_max = 2.0;
        format = "json";
    }

    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }
    config.format = formats.at(format);

    try {
        config.threads = thread_cap(std::getenv("CAVITYSHARE_THREADS"));
        if (simulate->parsed()) {
            config.command = Command::simulate;
            write_output(config.output, run_simulate(config), out);
        } else if (sweep_cmd->parsed()) {
            config.command = Command::sweep;
            write_output(config.output, run_sweep(config), out);
        } else if (detect->parsed()) {
            config.command = Command::detect;
            write_output(config.output, run_detect(config), out);
        } else {
            config.command = Command::verify;
            const auto outcome = run_verify(config);
            write_output(config.output, outcome.report, out);
            if (!outcome.passed) {
                err << "verification failed\n";
                return exit_verification_failed;
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_ok;
}

} // namespace cavityshare::cli
