// entanglement.hpp: normalized Schmidt-weight measure Y and the sharing
// inequalities for one-excitation three-qubit states.
#pragma once

#include "cavityshare/dynamics.hpp"

#include <array>

namespace cavityshare {

/// Eigenvalues of a qubit reduced density matrix, mu1 >= mu2 when produced
/// by `reduced_eigenvalues`.
struct SchmidtPair {
    double mu1{1.0};
    double mu2{0.0};
};

/// Accepted drift of |a0|^2+|a1|^2+|a2|^2 from 1 before measures refuse a
/// state; accepted states are renormalized first.
inline constexpr double state_norm_tolerance = 1e-8;

/// Tolerance used by the sharing inequality checks.
inline constexpr double inequality_tolerance = 1e-12;

/// K = 1 / (mu1^2 + mu2^2), in [1, 2], with the pair rescaled to unit sum.
/// Throws std::invalid_argument if the pair is not a probability
/// distribution to 1e-10.
///
/// Y depends on K through sqrt(2/K - 1), whose slope diverges at K = 2, so K
/// is carried in extended precision; a double K alone costs up to ~1e-8 in Y
/// near maximal entanglement.
long double schmidt_weight(SchmidtPair pair);

/// Y = 1 - sqrt(2/K - 1). Throws std::invalid_argument for k outside [1, 2].
double y_from_k(long double k);

/// Y = 1 - sqrt(1 - C^2). Throws std::invalid_argument for c outside [0, 1].
double y_from_concurrence(double c);

struct EntanglementTriple {
    double y0{0.0};
    double y1{0.0};
    double y2{0.0};

    double sum() const noexcept { return y0 + y1 + y2; }
    double operator[](std::size_t party) const noexcept {
        return party == 0 ? y0 : (party == 1 ? y1 : y2);
    }
};

/// Returns the amplitudes rescaled to unit norm, or throws
/// std::invalid_argument if the norm is off by more than state_norm_tolerance.
Amplitudes normalized_amplitudes(const AmplitudeState& state);

/// One-to-other entanglements Y_i = 2 min(|a_i|^2, 1 - |a_i|^2).
EntanglementTriple one_to_other(const AmplitudeState& state);

/// Partial-trace path: expands the state in the 8-dimensional three-qubit
/// space, traces out the other two parties and diagonalizes the 2x2 result.
SchmidtPair reduced_eigenvalues(const AmplitudeState& state, int party);

/// Concurrence of the two-qubit reduced state of parties i and j,
/// 2 |a_i| |a_j| for one-excitation pure states.
double pairwise_concurrence(const AmplitudeState& state, int i, int j);

/// Concurrence between party i and the other two as one block,
/// 2 |a_i| sqrt(|a_j|^2 + |a_k|^2).
double one_to_other_concurrence(const AmplitudeState& state, int party);

struct MonogamyCheck {
    int party{0};
    double pairwise_sum{0.0};   // C_ij^2 + C_ik^2
    double one_to_other{0.0};   // C_i(jk)^2
    double slack{0.0};          // one_to_other - pairwise_sum
    bool holds{true};
};

struct MonogamyReport {
    std::array<MonogamyCheck, 3> checks{};
    bool all_hold() const noexcept {
        return checks[0].holds && checks[1].holds && checks[2].holds;
    }
};

MonogamyReport check_monogamy(const AmplitudeState& state);

/// Individual bound Y_i <= 1, shrunken volume Y_S <= 2 and polygon
/// Y_i <= Y_j + Y_k, each to inequality_tolerance.
struct SharingReport {
    bool individual{true};
    bool volume{true};
    bool polygon{true};
    bool all_hold() const noexcept { return individual && volume && polygon; }
};

SharingReport check_sharing(const EntanglementTriple& y);

} // namespace cavityshare
