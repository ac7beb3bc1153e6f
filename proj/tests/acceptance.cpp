// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
#include "cavityshare/analysis.hpp"
#include "cavityshare/entanglement.hpp"
#include "cavityshare/verify.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

using namespace cavityshare;
using std::numbers::pi;

namespace {

struct Outcome {
    bool ok{false};
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = limit_seconds <= 0.0 || secs < limit_seconds;
    const bool ok = r.ok && in_time;
    failures += ok ? 0 : 1;
    std::string timing = std::to_string(secs).substr(0, 6) + " s";
    if (limit_seconds > 0.0) {
        timing += " (limit " + std::to_string(static_cast<int>(limit_seconds)) + " s)";
    }
    std::printf("%s %2d %s: %s; %s\n", ok ? "PASS" : "FAIL", id, name, r.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

const ModelParams resonant = build_params(1.0, 0.0, 0.0);

std::vector<double> theta_grid() {
    std::vector<double> t;
    for (int k = 0; k <= 20; ++k) {
        t.push_back(0.05 * k);
    }
    return t;
}

} // namespace

int main() {
    const auto taus = uniform_axis(0.0, 4.0, 4001, true);

    criterion(1, "class-1 closed form vs dynamics", 1.0, [&] {
        const DynamicCurve curve(CavityExcited{}, resonant);
        double worst = 0.0;
        for (const double tau : taus) {
            worst = std::max(worst, std::abs(ys_class1(tau) - curve(tau)));
        }
        return Outcome{worst <= 1e-10, "max dev " + sci(worst) + " <= 1e-10 over 4001 points"};
    });

    criterion(2, "class-2 closed form vs dynamics", 5.0, [&] {
        double worst = 0.0;
        for (const double t : theta_grid()) {
            const DynamicCurve curve(BellTheta{t * pi}, resonant);
            for (const double tau : taus) {
                worst = std::max(worst, std::abs(ys_class2(t * pi, tau) - curve(tau)));
            }
        }
        return Outcome{worst <= 1e-10, "max dev " + sci(worst) + " <= 1e-10 over 21 thetas x 4001"};
    });

    criterion(3, "analytic amplitudes vs RK4", 30.0, [&] {
        std::mt19937_64 rng(7);
        const auto grid = uniform_axis(0.0, 8.0, 161, true);
        double worst = 0.0;
        double worst_full = 0.0;
        for (int s = 0; s < 20; ++s) {
            const GeneralState init{oracle::random_state(rng)};
            for (const double delta : {0.0, 0.5, 2.0}) {
                const auto p = build_params(1.0, 1.0, 1.0 + delta);
                std::vector<double> times;
                for (const double tau : grid) {
                    times.push_back(time_from_tau(p, tau));
                }
                const auto numeric = evolve_numeric_series(init, p, times, default_step(p));
                for (std::size_t k = 0; k < times.size(); ++k) {
                    const auto exact = evolve_analytic(init, p, times[k]);
                    for (std::size_t i = 0; i < 3; ++i) {
                        worst = std::max(worst, std::abs(exact.a[i] - numeric[k].a[i]));
                    }
                    // Full frame against direct exponentiation of the block.
                    const auto full = slow_to_full(exact, p);
                    const auto ref = oracle::propagate_by_exponential(p, init.a, times[k]);
                    for (std::size_t i = 0; i < 3; ++i) {
                        worst_full = std::max(worst_full, std::abs(full.a[i] - ref[i]));
                    }
                }
            }
        }
        return Outcome{worst <= 1e-7 && worst_full <= 1e-7,
                       "max component dev " + sci(worst) + " vs RK4, " + sci(worst_full) +
                           " vs exponential (<= 1e-7; 20 states x 3 detunings x 161 times)"};
    });

    criterion(4, "freezing boundaries", 0.0, [&] {
        const double tau1 = 2.0 * std::acos(std::sqrt(2.0) - 1.0) / pi;
        const double tau2 = 2.0 - tau1;
        const auto c1 = detect_intervals(DynamicCurve(CavityExcited{}, resonant), 0.0, 2.0);
        const auto c2 = detect_intervals(DynamicCurve(BellTheta{0.0}, resonant), 0.0, 2.0);
        auto dev = [](const std::vector<FreezeInterval>& iv, double a, double b) {
            if (iv.size() != 3 || iv[1].kind != IntervalKind::frozen) {
                return 1.0;
            }
            return std::max(std::abs(iv[1].t_start - a), std::abs(iv[1].t_end - b));
        };
        const double d1 = dev(c1, 0.5, 1.5);
        const double d2 = dev(c2, tau1, tau2);
        return Outcome{d1 <= 1e-9 && d2 <= 1e-9,
                       "class 1 dev " + sci(d1) + ", theta=0 dev " + sci(d2) + " (<= 1e-9)"};
    });

    criterion(5, "permanent freezing at theta = 3pi/4", 0.0, [&] {
        const DynamicCurve curve(BellTheta{0.75 * pi}, resonant);
        double worst = 0.0;
        for (const double tau : taus) {
            worst = std::max(worst, std::abs(curve(tau) - 2.0));
        }
        return Outcome{worst <= 1e-12, "max |Y_S - 2| " + sci(worst) + " <= 1e-12"};
    });

    criterion(6, "time shift theta = pi/4 vs class 1", 0.0, [&] {
        const DynamicCurve curve(BellTheta{0.25 * pi}, resonant);
        double worst = 0.0;
        for (const double tau : uniform_axis(1.0, 4.0, 3001, true)) {
            worst = std::max(worst, std::abs(curve(tau) - ys_class1(tau - 1.0)));
        }
        return Outcome{worst <= 1e-10, "max dev " + sci(worst) + " <= 1e-10 on [1,4]"};
    });

    criterion(7, "period 2 and atom swap", 0.0, [&] {
        double ys_dev = 0.0;
        double swap_dev = 0.0;
        for (const double t : theta_grid()) {
            const auto r = period_report(BellTheta{t * pi}, resonant);
            ys_dev = std::max(ys_dev, r.ys_deviation);
            swap_dev = std::max(swap_dev, r.swap_deviation);
        }
        std::mt19937_64 rng(11);
        for (int s = 0; s < 20; ++s) {
            const auto r = period_report(GeneralState{oracle::random_state(rng)}, resonant);
            ys_dev = std::max(ys_dev, r.ys_deviation);
            swap_dev = std::max(swap_dev, r.swap_deviation);
        }
        return Outcome{ys_dev <= 1e-10 && swap_dev <= 1e-10,
                       "Y_S dev " + sci(ys_dev) + ", swap dev " + sci(swap_dev) +
                           " (<= 1e-10; 21 thetas + 20 random states)"};
    });

    criterion(8, "inequality suite on 10000 states", 10.0, [&] {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> tau_dist(0.0, 8.0);
        std::uniform_int_distribution<int> pick(0, 2);
        const double deltas[] = {0.0, 0.5, 2.0};
        double norm_dev = 0.0;
        double excess = -1.0;
        double polygon = -1.0;
        double slack = 1.0;
        double ratio_dev = 0.0;
        std::size_t frozen = 0;
        for (int s = 0; s < 10000; ++s) {
            const auto p = build_params(1.0, 0.0, deltas[pick(rng)]);
            const GeneralState init{oracle::random_state(rng)};
            const auto state = evolve_analytic(init, p, time_from_tau(p, tau_dist(rng)));
            norm_dev = std::max(norm_dev, std::abs(state.norm_squared() - 1.0));
            const auto y = one_to_other(state);
            excess = std::max(excess, y.sum() - 2.0);
            for (std::size_t i = 0; i < 3; ++i) {
                polygon = std::max(polygon, y[i] - y[(i + 1) % 3] - y[(i + 2) % 3]);
            }
            for (const auto& c : check_monogamy(state).checks) {
                slack = std::min(slack, c.slack);
            }
            if (std::abs(y.sum() - 2.0) <= 1e-9) {
                ++frozen;
                for (std::size_t i = 0; i < 3; ++i) {
                    ratio_dev = std::max(ratio_dev, std::abs(y[i] / y.sum() - std::norm(state.a[i])));
                }
            }
        }
        const bool ok = norm_dev <= 1e-10 && excess <= 1e-12 && polygon <= 1e-12 &&
                        slack >= -1e-12 && ratio_dev <= 1e-9 && frozen > 0;
        return Outcome{ok, "norm dev " + sci(norm_dev) + ", max Y_S-2 " + sci(excess) +
                               ", max polygon excess " + sci(polygon) + ", min CKW slack " +
                               sci(slack) + ", ratio dev " + sci(ratio_dev) + " on " +
                               std::to_string(frozen) + " frozen states"};
    });

    criterion(9, "fast measure vs partial trace", 0.0, [&] {
        std::mt19937_64 rng(17);
        double worst = 0.0;
        for (int s = 0; s < 1000; ++s) {
            const AmplitudeState state{oracle::random_state(rng), Frame::slow, 0.0};
            const auto fast = one_to_other(state);
            const auto rho = oracle::density(state.a);
            for (int party = 0; party < 3; ++party) {
                const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(
                    oracle::reduce_to_one(rho, party));
                const long double m1 = es.eigenvalues()[0];
                const long double m2 = es.eigenvalues()[1];
                const long double tr = m1 + m2;
                const long double purity = (m1 * m1 + m2 * m2) / (tr * tr);
                const long double y = 1.0L - std::sqrt(std::max(0.0L, 2.0L * purity - 1.0L));
                worst = std::max(worst, static_cast<double>(std::abs(fast[party] - y)));
            }
        }
        return Outcome{worst <= 1e-12, "max per-party dev " + sci(worst) + " <= 1e-12"};
    });

    criterion(10, "512 x 512 theta-time map", 10.0, [&] {
        const auto thetas = uniform_axis(0.0, 1.0, 512, false);
        const auto grid = sweep(thetas, uniform_axis(0.0, 4.0, 512, true), resonant);
        double row_dev = 0.0;
        for (std::size_t c = 0; c < grid.time_axis.size(); ++c) {
            row_dev = std::max(row_dev, std::abs(grid.at(384, c) - 2.0));
        }
        const auto profile = frozen_fraction_profile(thetas, 0.0, 4.0, resonant);
        const auto best = minimizers(profile, 1e-9);
        std::string where;
        bool in_band = false;
        for (const auto i : best) {
            where += (where.empty() ? "" : ",") + sci(thetas[i]);
            in_band = in_band || (thetas[i] >= 0.35 && thetas[i] <= 0.45);
        }
        return Outcome{row_dev <= 1e-12 && in_band,
                       "row 0.75 max |Y_S - 2| " + sci(row_dev) + ", frozen-fraction minimum " +
                           sci(profile[best.front()]) + " at theta/pi {" + where + "}"};
    });

    criterion(11, "pairwise concurrence vs mixed-state oracle", 0.0, [&] {
        std::mt19937_64 rng(19);
        double worst = 0.0;
        for (int s = 0; s < 100; ++s) {
            const AmplitudeState state{oracle::random_state(rng), Frame::slow, 0.0};
            const auto rho = oracle::density(state.a);
            for (int i = 0; i < 3; ++i) {
                for (int j = i + 1; j < 3; ++j) {
                    const double ref = oracle::mixed_state_concurrence(oracle::reduce_to_two(rho, i, j));
                    worst = std::max(worst, std::abs(pairwise_concurrence(state, i, j) - ref));
                }
            }
        }
        return Outcome{worst <= 1e-10, "max dev " + sci(worst) + " <= 1e-10 over 100 states x 3 pairs"};
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
