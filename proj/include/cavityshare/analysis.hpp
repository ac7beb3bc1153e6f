// analysis.hpp: closed-form Y_S(t) curves, freeze/thaw interval detection,
// theta x time sweeps and periodicity reports.
//
// Every time argument here is the dimensionless tau = G t / pi; every theta
// on a sweep axis is theta / pi.
#pragma once

#include "cavityshare/dynamics.hpp"
#include "cavityshare/entanglement.hpp"
#include "cavityshare/model.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cavityshare {

/// Y_S for |1,g,g>: frozen at 2 on [2k + 1/2, 2k + 3/2], 2 - 2 cos(G t) elsewhere.
double ys_class1(double tau);

/// Y_S for cos(theta)|0,e,g> + sin(theta)|0,g,e> as a sum of three 2 min{..}
/// terms (cavity, atom 1, atom 2). theta in radians.
double ys_class2(double theta, double tau);

/// Edges [tau1, tau2] of the frozen window of the theta = 0 curve within one
/// cycle [0, 2]: tau1 = 2 arccos(sqrt 2 - 1) / pi, tau2 = 2 arccos(1 - sqrt 2) / pi.
struct FreezeWindow {
    double begin;
    double end;
};
FreezeWindow theta0_freeze_window();

/// Three-branch form of Y_S for theta = 0, evaluated on the in-cycle phase
/// tau - 2k.
double ys_theta0_piecewise(double tau);

/// Y_S and the individual Y_i computed from the closed-form amplitudes for
/// any initial condition and detuning.
class DynamicCurve {
public:
    DynamicCurve(const InitialCondition& init, const ModelParams& params);

    AmplitudeState state(double tau) const;
    EntanglementTriple triple(double tau) const { return one_to_other(state(tau)); }
    double operator()(double tau) const { return triple(tau).sum(); }

private:
    AnalyticSolution solution_;
    ModelParams params_;
};

double ys_dynamic(const InitialCondition& init, const ModelParams& params, double tau);

enum class IntervalKind { frozen, thawing };

const char* to_string(IntervalKind kind) noexcept;

struct FreezeInterval {
    double t_start{0.0};
    double t_end{0.0};
    IntervalKind kind{IntervalKind::thawing};
};

struct DetectOptions {
    /// |Y_S - 2| <= freeze_tol counts as frozen. Use 1e-6 for curves sampled
    /// from the numerical propagator.
    double freeze_tol{1e-9};
    /// One period (tau = 2) over 2048 samples.
    double scan_step{2.0 / 2048.0};
    /// Bisection stops once the bracket is narrower than this.
    double precision{1e-11};
};

using Curve = std::function<double(double)>;

/// Classifies uniform samples of `curve` on [lo, hi], merges runs into
/// intervals and bisects every frozen/thawing transition. The result is
/// ordered, disjoint and tiles [lo, hi]. Throws std::invalid_argument for an
/// empty range or non-positive tolerances.
std::vector<FreezeInterval> detect_intervals(const Curve& curve, double lo, double hi,
                                             const DetectOptions& options = {});

double frozen_length(std::span<const FreezeInterval> intervals) noexcept;

/// Dense theta x tau grid of Y_S, row-major with theta as the slow axis.
struct SweepGrid {
    std::vector<double> theta_axis; // theta / pi
    std::vector<double> time_axis;  // tau
    std::vector<double> values;

    double at(std::size_t row, std::size_t col) const {
        return values[row * time_axis.size() + col];
    }
};

struct SweepOptions {
    /// Worker threads; 0 means std::thread::hardware_concurrency().
    std::size_t threads{0};
};

/// n evenly spaced points from lo. With include_end the last point is hi,
/// otherwise the axis is the half-open [lo, hi).
std::vector<double> uniform_axis(double lo, double hi, std::size_t n, bool include_end);

/// Fills a grid with Y_S of the Bell-theta initial state. At resonance the
/// closed form is used; off resonance the grid comes from the propagated
/// amplitudes. Rows are evaluated in parallel; the output does not depend on
/// the thread count.
SweepGrid sweep(std::span<const double> theta_points, std::span<const double> tau_points,
                const ModelParams& params, const SweepOptions& options = {});

/// Frozen length of every theta row over [tau_lo, tau_hi], divided by the
/// range length. Uses detect_intervals on the continuous curve.
std::vector<double> frozen_fraction_profile(std::span<const double> theta_points, double tau_lo,
                                            double tau_hi, const ModelParams& params,
                                            const DetectOptions& detect = {},
                                            const SweepOptions& options = {});

/// Indices whose value is within `tie_tol` of the minimum.
std::vector<std::size_t> minimizers(std::span<const double> values, double tie_tol);

struct PeriodOptions {
    std::size_t samples{2001};
    double tol{1e-10};
};

struct PeriodReport {
    double period{2.0};
    /// max |Y_S(tau + period) - Y_S(tau)|
    double ys_deviation{0.0};
    bool ys_periodic{false};
    /// max |a(tau + period) - e^{i phi} swap(a(tau))| with phi fitted per sample
    double swap_deviation{0.0};
    bool state_swaps{false};
    /// Same without the atom swap; only symmetric states repeat after one period.
    double state_repeat_deviation{0.0};
    bool state_repeats{false};
    /// max |Y_1(tau + period) - Y_2(tau)| and |Y_2(tau + period) - Y_1(tau)|
    double individual_swap_deviation{0.0};
    bool individuals_swap{false};
};

/// Samples tau on [0, 2 * period] and compares each point with its shift by
/// one period. Throws std::invalid_argument off resonance.
PeriodReport period_report(const InitialCondition& init, const ModelParams& params,
                           double tau_period_guess = 2.0, const PeriodOptions& options = {});

/// Largest component of |v - e^{i phi} u| over the best global phase phi.
double phase_aligned_distance(const Amplitudes& u, const Amplitudes& v) noexcept;

} // namespace cavityshare
