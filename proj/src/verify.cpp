#include "cavityshare/verify.hpp"

#include "cavityshare/analysis.hpp"
#include "cavityshare/entanglement.hpp"
#include "cavityshare/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace cavityshare::verify {

namespace {

using std::numbers::pi;

// Accumulates |deviation| <= tol checks.
class Tally {
public:
    Tally(std::string name, double tol) {
        result_.name = std::move(name);
        result_.tolerance = tol;
    }

    void check(double deviation) {
        ++result_.checks;
        const double d = std::isnan(deviation) ? INFINITY : std::abs(deviation);
        result_.max_deviation = std::max(result_.max_deviation, d);
        if (d > result_.tolerance) {
            ++result_.failures;
        }
    }
    // One-sided: value must not exceed bound + tol.
    void at_most(double value, double bound) { check(std::max(0.0, value - bound)); }

    SuiteResult result() const { return result_; }

private:
    SuiteResult result_;
};

AmplitudeState as_state(const Amplitudes& a) {
    return {a, Frame::full, 0.0};
}

SuiteResult normalization(const SuiteConfig& cfg) {
    Tally tally("normalization", 1e-10);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> detuning(-3.0, 3.0);
    std::uniform_real_distribution<double> time(0.0, 50.0);
    for (std::size_t n = 0; n < cfg.samples; ++n) {
        const auto params = build_params(1.0, 0.0, detuning(rng));
        const auto state = evolve_analytic(GeneralState{random_amplitudes(rng)}, params, time(rng));
        tally.check(state.norm_squared() - 1.0);
    }
    return tally.result();
}

SuiteResult oracle(const SuiteConfig& cfg) {
    Tally tally("oracle", 1e-7);
    std::mt19937_64 rng(cfg.seed);
    const auto taus = uniform_axis(0.0, 8.0, 161, true);
    for (const double detuning : {0.0, 0.5, 2.0}) {
        const auto params = build_params(1.0, 0.0, detuning);
        std::vector<double> times;
        for (const double tau : taus) {
            times.push_back(time_from_tau(params, tau));
        }
        for (int n = 0; n < 20; ++n) {
            const InitialCondition init = GeneralState{random_amplitudes(rng)};
            const AnalyticSolution exact(init, params);
            const auto numeric = evolve_numeric_series(init, params, times, default_step(params));
            for (std::size_t k = 0; k < times.size(); ++k) {
                const auto ref = exact.at(times[k]);
                for (std::size_t i = 0; i < 3; ++i) {
                    tally.check(std::abs(numeric[k].a[i] - ref.a[i]));
                }
            }
        }
    }
    return tally.result();
}

SuiteResult measure(const SuiteConfig& cfg) {
    Tally tally("measure", 1e-12);
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t n = 0; n < cfg.samples; ++n) {
        const auto state = as_state(random_amplitudes(rng));
        const auto fast = one_to_other(state);
        for (int p = 0; p < 3; ++p) {
            const double slow = y_from_k(schmidt_weight(reduced_eigenvalues(state, p)));
            tally.check(slow - fast[static_cast<std::size_t>(p)]);
        }
    }
    return tally.result();
}

SuiteResult monogamy(const SuiteConfig& cfg) {
    Tally tally("monogamy", 1e-12);
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t n = 0; n < cfg.samples; ++n) {
        const auto report = check_monogamy(as_state(random_amplitudes(rng)));
        for (const auto& c : report.checks) {
            tally.check(std::min(0.0, c.slack));
        }
    }
    return tally.result();
}

SuiteResult sharing(const SuiteConfig& cfg) {
    Tally tally("sharing", inequality_tolerance);
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t n = 0; n < cfg.samples; ++n) {
        const auto y = one_to_other(as_state(random_amplitudes(rng)));
        tally.at_most(y.sum(), 2.0);
        for (std::size_t i = 0; i < 3; ++i) {
            tally.at_most(y[i], 1.0);
            tally.at_most(y[i], y[(i + 1) % 3] + y[(i + 2) % 3]);
        }
    }
    return tally.result();
}

SuiteResult ratio(const SuiteConfig& cfg) {
    Tally tally("ratio", 1e-10);
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t n = 0; n < cfg.samples; ++n) {
        const auto a = random_amplitudes(rng);
        const auto y = one_to_other(as_state(a));
        if (std::abs(y.sum() - 2.0) > 1e-9) {
            continue;
        }
        for (std::size_t i = 0; i < 3; ++i) {
            tally.check(y[i] / y.sum() - std::norm(a[i]));
        }
    }
    return tally.result();
}

SuiteResult closed_form(const SuiteConfig&) {
    Tally tally("closed-form", 1e-10);
    const auto params = build_params(1.0, 0.0, 0.0);
    const auto taus = uniform_axis(0.0, 4.0, 4001, true);
    const DynamicCurve cavity(CavityExcited{}, params);
    for (const double tau : taus) {
        tally.check(ys_class1(tau) - cavity(tau));
    }
    for (int k = 0; k <= 20; ++k) {
        const double theta = pi * 0.05 * k;
        const DynamicCurve bell(BellTheta{theta}, params);
        for (const double tau : taus) {
            tally.check(ys_class2(theta, tau) - bell(tau));
        }
    }
    for (const double tau : uniform_axis(0.0, 2.0, 2001, true)) {
        tally.check(ys_theta0_piecewise(tau) - ys_class2(0.0, tau));
    }
    return tally.result();
}

SuiteResult freezing(const SuiteConfig&) {
    Tally tally("freezing", 1e-9);
    const auto params = build_params(1.0, 0.0, 0.0);

    const auto class1 = detect_intervals(DynamicCurve(CavityExcited{}, params), 0.0, 2.0);
    const bool class1_shape = class1.size() == 3 && class1[1].kind == IntervalKind::frozen;
    tally.check(class1_shape ? 0.0 : INFINITY);
    if (class1_shape) {
        tally.check(class1[1].t_start - 0.5);
        tally.check(class1[1].t_end - 1.5);
    }

    const auto window = theta0_freeze_window();
    const auto theta0 = detect_intervals(DynamicCurve(BellTheta{0.0}, params), 0.0, 2.0);
    const bool theta0_shape = theta0.size() == 3 && theta0[1].kind == IntervalKind::frozen;
    tally.check(theta0_shape ? 0.0 : INFINITY);
    if (theta0_shape) {
        tally.check(theta0[1].t_start - window.begin);
        tally.check(theta0[1].t_end - window.end);
    }

    const DynamicCurve cold(BellTheta{0.75 * pi}, params);
    const auto permanent = detect_intervals(cold, 0.0, 4.0);
    tally.check(permanent.size() == 1 && permanent[0].kind == IntervalKind::frozen ? 0.0 : INFINITY);
    for (const double tau : uniform_axis(0.0, 4.0, 4001, true)) {
        tally.check(cold(tau) - 2.0);
    }
    return tally.result();
}

SuiteResult period(const SuiteConfig&) {
    Tally tally("period", 1e-10);
    const auto params = build_params(1.0, 0.0, 0.0);
    std::vector<InitialCondition> inits{CavityExcited{}};
    for (int k = 0; k <= 20; ++k) {
        inits.emplace_back(BellTheta{pi * 0.05 * k});
    }
    for (const auto& init : inits) {
        const auto r = period_report(init, params);
        tally.check(r.ys_deviation);
        tally.check(r.swap_deviation);
        tally.check(r.individual_swap_deviation);
    }
    return tally.result();
}

SuiteResult conservation(const SuiteConfig& cfg) {
    Tally tally("conservation", 0.0);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coupling(0.1, 5.0);
    std::uniform_real_distribution<double> frequency(-10.0, 10.0);
    for (int seed = 0; seed < 100; ++seed) {
        const auto params = build_params(coupling(rng), frequency(rng), frequency(rng));
        for (int m = 0; m <= 10; ++m) {
            tally.check(verify_excitation_conservation(m, params) ? 0.0 : 1.0);
        }
    }
    return tally.result();
}

struct Entry {
    std::string_view name;
    SuiteResult (*run)(const SuiteConfig&);
};

constexpr Entry registry[] = {
    {"conservation", conservation}, {"normalization", normalization},
    {"oracle", oracle},             {"measure", measure},
    {"monogamy", monogamy},         {"sharing", sharing},
    {"ratio", ratio},               {"closed-form", closed_form},
    {"freezing", freezing},         {"period", period},
};

} // namespace

Amplitudes random_amplitudes(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Amplitudes a;
    double n2 = 0.0;
    do {
        for (auto& z : a) {
            z = {normal(rng), normal(rng)};
        }
        n2 = std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
    } while (n2 == 0.0);
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& z : a) {
        z *= scale;
    }
    return a;
}

const std::vector<std::string_view>& suite_names() {
    static const std::vector<std::string_view> names = [] {
        std::vector<std::string_view> v;
        for (const auto& e : registry) {
            v.push_back(e.name);
        }
        return v;
    }();
    return names;
}

std::optional<SuiteResult> run_suite(std::string_view name, const SuiteConfig& config) {
    for (const auto& e : registry) {
        if (e.name == name) {
            return e.run(config);
        }
    }
    return std::nullopt;
}

} // namespace cavityshare::verify
