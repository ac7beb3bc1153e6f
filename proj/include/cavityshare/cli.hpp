// cli.hpp: command-line front end (simulate, sweep, detect, verify).
#pragma once

#include "cavityshare/dynamics.hpp"
#include "cavityshare/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cavityshare::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failed = 1;
inline constexpr int exit_usage = 2;

inline constexpr int schema_version = 1;

/// Bad flags, bad init specs, unwritable outputs. Maps to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { simulate, sweep, detect, verify };
enum class Format { csv, json };

struct RunConfig {
    Command command{Command::simulate};
    std::string init_spec{"class1"};
    double g{1.0};
    double detuning_over_g{0.0};
    double omega_over_g{0.0};

    double tau_min{0.0};
    double tau_max{4.0};
    std::size_t samples{4001};

    double theta_min{0.0};
    double theta_max{1.0};
    std::size_t theta_samples{512};

    double freeze_tol{1e-9};
    double scan_step{2.0 / 2048.0};

    std::string suite{"all"};
    std::size_t verify_samples{10000};
    std::uint64_t seed{20190717};

    std::size_t threads{0};
    std::string output{"-"};
    Format format{Format::csv};
};

/// class1 | bell:<theta/pi> | general:<a0>,<a1>,<a2>, where each amplitude is
/// a complex literal such as 0.5, -0.25i or 0.5-0.5i.
InitialCondition parse_init_spec(std::string_view spec);

/// Checks the invariants every command relies on; throws UsageError.
void validate(const RunConfig& config);

ModelParams params_from(const RunConfig& config);

/// 17 significant digits, '.' decimal point, independent of the C locale.
std::string format_number(double value);

std::string run_simulate(const RunConfig& config);
std::string run_sweep(const RunConfig& config);
std::string run_detect(const RunConfig& config);

struct VerifyOutcome {
    std::string report;
    bool passed{false};
};
VerifyOutcome run_verify(const RunConfig& config);

/// Writes to stdout when path is "-", otherwise to the file; throws
/// UsageError if the file cannot be written.
void write_output(const std::string& path, const std::string& content, std::ostream& stdout_stream);

/// Parses CAVITYSHARE_THREADS; nullptr means unset (0 = no cap).
std::size_t thread_cap(const char* env_value);

/// Full program: parses `args` (without argv[0]) and returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cavityshare::cli
