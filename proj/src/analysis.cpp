#include "cavityshare/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace cavityshare {

namespace {

using std::numbers::pi;

// Phase of tau within one period of Y_S, in [0, 2).
double cycle_phase(double tau) {
    const double x = std::fmod(tau, 2.0);
    return x < 0.0 ? x + 2.0 : x;
}

std::size_t worker_count(const SweepOptions& options, std::size_t jobs) {
    std::size_t n = options.threads;
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
    }
    return std::max<std::size_t>(1, std::min(n, jobs));
}

// Runs body(i) for i in [0, jobs) on up to `workers` threads.
template <class Body>
void parallel_for(std::size_t jobs, std::size_t workers, Body&& body) {
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < jobs; i = next++) {
                body(i);
            }
        });
    }
}

double reduce_theta_over_pi(double theta_over_pi) {
    const double x = std::fmod(theta_over_pi, 2.0);
    return x < 0.0 ? x + 2.0 : x;
}

} // namespace

double ys_class1(double tau) {
    const double x = cycle_phase(tau);
    if (x >= 0.5 && x <= 1.5) {
        return 2.0;
    }
    return 2.0 - 2.0 * std::cos(pi * tau);
}

double ys_class2(double theta, double tau) {
    const double s2 = std::sin(2.0 * theta);
    const double c2 = std::cos(2.0 * theta);
    const double c = std::cos(0.5 * pi * tau);
    const double s = std::sin(0.5 * pi * tau);
    const double cc = c * c;
    const double ss = s * s;
    const double sym = 1.0 + s2;
    const double anti = 1.0 - s2;

    const double cavity = std::min(0.5 * sym * cc + 0.5 * anti, 0.5 * sym * ss);
    const double atom1 = std::min(0.25 * sym * cc + 0.5 * sym * ss + 0.5 * c2 * c + 0.25 * anti,
                                  0.25 * sym * cc - 0.5 * c2 * c + 0.25 * anti);
    const double atom2 = std::min(0.25 * sym * cc + 0.5 * sym * ss - 0.5 * c2 * c + 0.25 * anti,
                                  0.25 * sym * cc + 0.5 * c2 * c + 0.25 * anti);
    return 2.0 * (cavity + atom1 + atom2);
}

FreezeWindow theta0_freeze_window() {
    return {2.0 * std::acos(std::numbers::sqrt2 - 1.0) / pi,
            2.0 * std::acos(1.0 - std::numbers::sqrt2) / pi};
}

double ys_theta0_piecewise(double tau) {
    const auto window = theta0_freeze_window();
    const double x = cycle_phase(tau);
    const double gt = pi * x;
    if (x <= window.begin) {
        return -0.5 * std::cos(gt) - 2.0 * std::cos(0.5 * gt) + 2.5;
    }
    if (x <= window.end) {
        return 2.0;
    }
    return -0.5 * std::cos(gt) + 2.0 * std::cos(0.5 * gt) + 2.5;
}

DynamicCurve::DynamicCurve(const InitialCondition& init, const ModelParams& params)
    : solution_(init, params), params_(params) {}

AmplitudeState DynamicCurve::state(double tau) const {
    return solution_.at(time_from_tau(params_, tau));
}

double ys_dynamic(const InitialCondition& init, const ModelParams& params, double tau) {
    return DynamicCurve(init, params)(tau);
}

const char* to_string(IntervalKind kind) noexcept {
    return kind == IntervalKind::frozen ? "Frozen" : "Thawing";
}

std::vector<FreezeInterval> detect_intervals(const Curve& curve, double lo, double hi,
                                             const DetectOptions& options) {
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("detect_intervals: range must be non-empty and finite");
    }
    if (!(options.scan_step > 0.0) || !(options.freeze_tol > 0.0) || !(options.precision > 0.0)) {
        throw std::invalid_argument(
            "detect_intervals: scan_step, freeze_tol and precision must be > 0");
    }

    auto frozen = [&](double tau) { return std::abs(curve(tau) - 2.0) <= options.freeze_tol; };

    const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / options.scan_step));
    const double h = (hi - lo) / static_cast<double>(steps);
    auto sample = [&](std::size_t k) { return k == steps ? hi : lo + static_cast<double>(k) * h; };

    // Runs of equal classification, separated by refined edges.
    std::vector<bool> runs{frozen(lo)};
    std::vector<double> edges;
    double prev = lo;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double tau = sample(k);
        const bool now = frozen(tau);
        if (now != runs.back()) {
            // Bisection on the predicate: the slope of Y_S jumps at these
            // points, so there is no derivative to lean on.
            double a = prev;
            double b = tau;
            while (b - a > options.precision) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) {
                    break;
                }
                (frozen(mid) == runs.back() ? a : b) = mid;
            }
            edges.push_back(0.5 * (a + b));
            runs.push_back(now);
        }
        prev = tau;
    }

    std::vector<FreezeInterval> out;
    double start = lo;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const double end = i < edges.size() ? edges[i] : hi;
        if (end <= start) {
            continue;
        }
        const auto kind = runs[i] ? IntervalKind::frozen : IntervalKind::thawing;
        if (!out.empty() && out.back().kind == kind) {
            out.back().t_end = end;
        } else {
            out.push_back({start, end, kind});
        }
        start = end;
    }
    return out;
}

double frozen_length(std::span<const FreezeInterval> intervals) noexcept {
    double total = 0.0;
    for (const auto& iv : intervals) {
        if (iv.kind == IntervalKind::frozen) {
            total += iv.t_end - iv.t_start;
        }
    }
    return total;
}

std::vector<double> uniform_axis(double lo, double hi, std::size_t n, bool include_end) {
    std::vector<double> axis(n);
    if (n == 0) {
        return axis;
    }
    if (n == 1) {
        axis[0] = lo;
        return axis;
    }
    const double denom = static_cast<double>(include_end ? n - 1 : n);
    for (std::size_t i = 0; i < n; ++i) {
        axis[i] = lo + (hi - lo) * (static_cast<double>(i) / denom);
    }
    if (include_end) {
        axis.back() = hi;
    }
    return axis;
}

SweepGrid sweep(std::span<const double> theta_points, std::span<const double> tau_points,
                const ModelParams& params, const SweepOptions& options) {
    if (theta_points.empty() || tau_points.empty()) {
        throw std::invalid_argument("sweep: both axes must be non-empty");
    }
    SweepGrid grid;
    grid.theta_axis.assign(theta_points.begin(), theta_points.end());
    grid.time_axis.assign(tau_points.begin(), tau_points.end());
    grid.values.resize(theta_points.size() * tau_points.size());

    const std::size_t cols = tau_points.size();
    auto fill_row = [&](std::size_t row) {
        const double theta = pi * reduce_theta_over_pi(theta_points[row]);
        double* out = grid.values.data() + row * cols;
        if (params.resonant()) {
            for (std::size_t j = 0; j < cols; ++j) {
                out[j] = ys_class2(theta, tau_points[j]);
            }
        } else {
            const DynamicCurve curve(BellTheta{theta}, params);
            for (std::size_t j = 0; j < cols; ++j) {
                out[j] = curve(tau_points[j]);
            }
        }
    };
    parallel_for(theta_points.size(), worker_count(options, theta_points.size()), fill_row);
    return grid;
}

std::vector<double> frozen_fraction_profile(std::span<const double> theta_points, double tau_lo,
                                            double tau_hi, const ModelParams& params,
                                            const DetectOptions& detect,
                                            const SweepOptions& options) {
    std::vector<double> profile(theta_points.size());
    auto row = [&](std::size_t i) {
        const double theta = pi * reduce_theta_over_pi(theta_points[i]);
        Curve curve;
        if (params.resonant()) {
            curve = [theta](double tau) { return ys_class2(theta, tau); };
        } else {
            curve = DynamicCurve(BellTheta{theta}, params);
        }
        const auto intervals = detect_intervals(curve, tau_lo, tau_hi, detect);
        profile[i] = frozen_length(intervals) / (tau_hi - tau_lo);
    };
    parallel_for(theta_points.size(), worker_count(options, theta_points.size()), row);
    return profile;
}

std::vector<std::size_t> minimizers(std::span<const double> values, double tie_tol) {
    std::vector<std::size_t> out;
    if (values.empty()) {
        return out;
    }
    const double lowest = *std::min_element(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] - lowest <= tie_tol) {
            out.push_back(i);
        }
    }
    return out;
}

double phase_aligned_distance(const Amplitudes& u, const Amplitudes& v) noexcept {
    complex overlap = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        overlap += std::conj(u[k]) * v[k];
    }
    const complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : complex{1.0};
    double worst = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        worst = std::max(worst, std::abs(v[k] - phase * u[k]));
    }
    return worst;
}

PeriodReport period_report(const InitialCondition& init, const ModelParams& params,
                           double tau_period_guess, const PeriodOptions& options) {
    if (!params.resonant()) {
        throw std::invalid_argument("period_report: requires resonant parameters (Delta = 0)");
    }
    if (!(tau_period_guess > 0.0) || options.samples < 2) {
        throw std::invalid_argument("period_report: period must be > 0 and samples >= 2");
    }
    const DynamicCurve curve(init, params);
    PeriodReport r;
    r.period = tau_period_guess;

    const auto taus = uniform_axis(0.0, 2.0 * tau_period_guess, options.samples, true);
    for (const double tau : taus) {
        const auto now = slow_to_full(curve.state(tau), params);
        const auto later = slow_to_full(curve.state(tau + tau_period_guess), params);
        const auto y_now = one_to_other(now);
        const auto y_later = one_to_other(later);

        r.ys_deviation = std::max(r.ys_deviation, std::abs(y_later.sum() - y_now.sum()));
        const Amplitudes swapped{now.a[0], now.a[2], now.a[1]};
        r.swap_deviation = std::max(r.swap_deviation, phase_aligned_distance(swapped, later.a));
        r.state_repeat_deviation =
            std::max(r.state_repeat_deviation, phase_aligned_distance(now.a, later.a));
        r.individual_swap_deviation =
            std::max({r.individual_swap_deviation, std::abs(y_later.y1 - y_now.y2),
                      std::abs(y_later.y2 - y_now.y1)});
    }
    r.ys_periodic = r.ys_deviation <= options.tol;
    r.state_swaps = r.swap_deviation <= options.tol;
    r.state_repeats = r.state_repeat_deviation <= options.tol;
    r.individuals_swap = r.individual_swap_deviation <= options.tol;
    return r;
}

} // namespace cavityshare
