// dynamics.hpp: one-excitation amplitudes a0 (cavity), a1, a2 (atoms).
#pragma once

#include "cavityshare/model.hpp"

#include <array>
#include <complex>
#include <span>
#include <variant>
#include <vector>

namespace cavityshare {

using complex = std::complex<double>;

/// Amplitudes of |1,g,g>, |0,e,g>, |0,g,e>, indexed by party
/// (0 = cavity, 1 = atom 1, 2 = atom 2).
using Amplitudes = std::array<complex, 3>;

/// Full: a_i(t). Slow: a~_i(t), with the free phases e^{-i w0 t} (atoms)
/// and e^{-i w t} (cavity) removed.
enum class Frame { full, slow };

struct AmplitudeState {
    Amplitudes a{};
    Frame frame{Frame::slow};
    double t{0.0};

    double norm_squared() const noexcept;
};

/// |1,g,g>.
struct CavityExcited {};

/// cos(theta)|0,e,g> + sin(theta)|0,g,e>.
struct BellTheta {
    double theta{0.0};
};

/// Arbitrary normalized triple (a0, a1, a2).
struct GeneralState {
    Amplitudes a{};
};

using InitialCondition = std::variant<CavityExcited, BellTheta, GeneralState>;

inline constexpr double initial_norm_tolerance = 1e-10;

/// Expands an initial condition to its amplitude triple. GeneralState must be
/// normalized to `initial_norm_tolerance`, otherwise std::invalid_argument.
Amplitudes initial_amplitudes(const InitialCondition& init);

struct SolutionCoefficients {
    complex alpha;
    complex beta;
    complex gamma;
};

SolutionCoefficients coefficients(const InitialCondition& init, const ModelParams& params);

/// Closed-form slow-frame solution for one initial condition. Holds the
/// coefficients so that repeated evaluation in a sweep costs a few sincos.
class AnalyticSolution {
public:
    AnalyticSolution(const InitialCondition& init, const ModelParams& params);

    AmplitudeState at(double t) const;
    const SolutionCoefficients& coefficients() const noexcept { return coeffs_; }
    const Amplitudes& initial() const noexcept { return initial_; }

private:
    Amplitudes initial_;
    SolutionCoefficients coeffs_;
    double half_rabi_;
    double half_detuning_;
};

AmplitudeState evolve_analytic(const InitialCondition& init, const ModelParams& params, double t);

/// Restores the free phases. Throws std::invalid_argument unless the input is
/// in the slow frame.
AmplitudeState slow_to_full(const AmplitudeState& state, const ModelParams& params);

/// Default integrator step, 1e-4 / g.
double default_step(const ModelParams& params) noexcept;

/// Classical RK4 on the slow-frame amplitude equations from 0 to t. The step
/// actually used is t / ceil(t / dt), never larger than dt.
AmplitudeState evolve_numeric(const InitialCondition& init, const ModelParams& params, double t,
                              double dt);

/// Same integrator sampled at each of `times` (ascending, >= 0) in one pass.
std::vector<AmplitudeState> evolve_numeric_series(const InitialCondition& init,
                                                  const ModelParams& params,
                                                  std::span<const double> times, double dt);

} // namespace cavityshare
