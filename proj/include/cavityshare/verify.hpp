// verify.hpp: invariant suites exposed through `cavityshare verify`.
#pragma once

#include "cavityshare/dynamics.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace cavityshare::verify {

struct SuiteResult {
    std::string name;
    std::size_t checks{0};
    std::size_t failures{0};
    double max_deviation{0.0};
    double tolerance{0.0};

    bool passed() const noexcept { return failures == 0; }
};

struct SuiteConfig {
    std::uint64_t seed{20190717};
    /// Random single-excitation states for the state-based suites.
    std::size_t samples{10000};
};

/// Haar-random normalized triple (complex Gaussian, rescaled).
Amplitudes random_amplitudes(std::mt19937_64& rng);

const std::vector<std::string_view>& suite_names();

/// Runs one named suite, or std::nullopt if the name is unknown.
std::optional<SuiteResult> run_suite(std::string_view name, const SuiteConfig& config);

} // namespace cavityshare::verify
