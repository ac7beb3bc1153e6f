#include "cavityshare/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cavityshare {

namespace {

constexpr complex I{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// Right-hand side of the slow-frame amplitude equations.
Amplitudes slow_rhs(const Amplitudes& a, double t, double g, double delta) {
    const complex up = std::exp(I * (delta * t));
    const complex down = std::conj(up);
    return {-I * g * (a[1] + a[2]) * down, -I * g * a[0] * up, -I * g * a[0] * up};
}

Amplitudes axpy(const Amplitudes& x, double h, const Amplitudes& k) {
    return {x[0] + h * k[0], x[1] + h * k[1], x[2] + h * k[2]};
}

Amplitudes rk4_step(const Amplitudes& a, double t, double h, double g, double delta) {
    const Amplitudes k1 = slow_rhs(a, t, g, delta);
    const Amplitudes k2 = slow_rhs(axpy(a, 0.5 * h, k1), t + 0.5 * h, g, delta);
    const Amplitudes k3 = slow_rhs(axpy(a, 0.5 * h, k2), t + 0.5 * h, g, delta);
    const Amplitudes k4 = slow_rhs(axpy(a, h, k3), t + h, g, delta);
    Amplitudes out;
    for (std::size_t i = 0; i < 3; ++i) {
        out[i] = a[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

// Integrates from t0 to t1 with uniform steps no larger than dt.
Amplitudes integrate(Amplitudes a, double t0, double t1, double dt, double g, double delta) {
    const double span = t1 - t0;
    if (span <= 0.0) {
        return a;
    }
    const auto steps = static_cast<long long>(std::ceil(span / dt));
    const double h = span / static_cast<double>(steps);
    for (long long n = 0; n < steps; ++n) {
        a = rk4_step(a, t0 + static_cast<double>(n) * h, h, g, delta);
    }
    return a;
}

void check_step(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("evolve_numeric: step dt must be finite and > 0");
    }
}

} // namespace

double AmplitudeState::norm_squared() const noexcept {
    return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
}

Amplitudes initial_amplitudes(const InitialCondition& init) {
    return std::visit(
        overloaded{
            [](const CavityExcited&) { return Amplitudes{1.0, 0.0, 0.0}; },
            [](const BellTheta& b) {
                return Amplitudes{0.0, std::cos(b.theta), std::sin(b.theta)};
            },
            [](const GeneralState& s) {
                const double n2 = std::norm(s.a[0]) + std::norm(s.a[1]) + std::norm(s.a[2]);
                if (!std::isfinite(n2) || std::abs(n2 - 1.0) > initial_norm_tolerance) {
                    throw std::invalid_argument(
                        "initial state is not normalized: |a0|^2+|a1|^2+|a2|^2 = " +
                        std::to_string(n2));
                }
                return s.a;
            },
        },
        init);
}

SolutionCoefficients coefficients(const InitialCondition& init, const ModelParams& params) {
    const Amplitudes a = initial_amplitudes(init);
    const double g = params.g();
    const double delta = params.detuning();
    const double omega = params.rabi();
    // Omega^2 - Delta^2 = G^2 = 8 g^2, strictly positive for a valid ModelParams.
    const double gap = omega * omega - delta * delta;
    const complex atoms = a[1] + a[2];

    SolutionCoefficients c;
    c.alpha = 4.0 * g * g * atoms / gap;
    c.beta = (4.0 * g * g * delta * atoms + 2.0 * g * gap * a[0]) / (omega * gap);
    c.gamma = (2.0 * g * atoms - delta * a[0]) / omega;
    return c;
}

AnalyticSolution::AnalyticSolution(const InitialCondition& init, const ModelParams& params)
    : initial_(initial_amplitudes(init)),
      coeffs_(cavityshare::coefficients(init, params)),
      half_rabi_(0.5 * params.rabi()),
      half_detuning_(0.5 * params.detuning()) {}

AmplitudeState AnalyticSolution::at(double t) const {
    if (t == 0.0) {
        return {initial_, Frame::slow, 0.0};
    }
    const double c = std::cos(half_rabi_ * t);
    const double s = std::sin(half_rabi_ * t);
    const complex phase = std::exp(I * (half_detuning_ * t));
    const complex atomic = (coeffs_.alpha * c - I * coeffs_.beta * s) * phase;

    AmplitudeState out;
    out.frame = Frame::slow;
    out.t = t;
    out.a[0] = (initial_[0] * c - I * coeffs_.gamma * s) * std::conj(phase);
    out.a[1] = initial_[1] - coeffs_.alpha + atomic;
    out.a[2] = initial_[2] - coeffs_.alpha + atomic;
    return out;
}

AmplitudeState evolve_analytic(const InitialCondition& init, const ModelParams& params, double t) {
    return AnalyticSolution(init, params).at(t);
}

AmplitudeState slow_to_full(const AmplitudeState& state, const ModelParams& params) {
    if (state.frame != Frame::slow) {
        throw std::invalid_argument("slow_to_full: input state is not in the slow frame");
    }
    const complex atom_phase = std::exp(-I * (params.omega0() * state.t));
    const complex cavity_phase = std::exp(-I * (params.omega() * state.t));
    AmplitudeState out = state;
    out.frame = Frame::full;
    out.a[0] = state.a[0] * cavity_phase;
    out.a[1] = state.a[1] * atom_phase;
    out.a[2] = state.a[2] * atom_phase;
    return out;
}

double default_step(const ModelParams& params) noexcept {
    return 1e-4 / params.g();
}

AmplitudeState evolve_numeric(const InitialCondition& init, const ModelParams& params, double t,
                              double dt) {
    check_step(dt);
    if (t < 0.0) {
        throw std::invalid_argument("evolve_numeric: t must be >= 0");
    }
    const Amplitudes a =
        integrate(initial_amplitudes(init), 0.0, t, dt, params.g(), params.detuning());
    return {a, Frame::slow, t};
}

std::vector<AmplitudeState> evolve_numeric_series(const InitialCondition& init,
                                                  const ModelParams& params,
                                                  std::span<const double> times, double dt) {
    check_step(dt);
    std::vector<AmplitudeState> out;
    out.reserve(times.size());
    Amplitudes a = initial_amplitudes(init);
    double now = 0.0;
    for (const double t : times) {
        if (t < now) {
            throw std::invalid_argument("evolve_numeric_series: times must be ascending and >= 0");
        }
        a = integrate(a, now, t, dt, params.g(), params.detuning());
        now = t;
        out.push_back({a, Frame::slow, t});
    }
    return out;
}

} // namespace cavityshare
