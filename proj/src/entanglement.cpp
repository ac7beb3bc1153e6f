#include "cavityshare/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cavityshare {

namespace {

void check_party(int party) {
    if (party < 0 || party > 2) {
        throw std::invalid_argument("party index must be 0 (cavity), 1 or 2 (atoms), got " +
                                    std::to_string(party));
    }
}

// Bit of `party` in the 8-dimensional basis index; cavity is the high bit.
constexpr unsigned party_bit(int party) {
    return 1u << (2 - party);
}

} // namespace

long double schmidt_weight(SchmidtPair pair) {
    const bool in_range = pair.mu1 >= -1e-10 && pair.mu1 <= 1.0 + 1e-10 &&
                          pair.mu2 >= -1e-10 && pair.mu2 <= 1.0 + 1e-10;
    if (!in_range || std::abs(pair.mu1 + pair.mu2 - 1.0) > 1e-10) {
        throw std::invalid_argument("schmidt_weight: eigenvalues must be probabilities summing to 1");
    }
    // Normalize by the computed trace: a residual (mu1 + mu2)^2 - 1 of one
    // ulp otherwise lands inside sqrt(2/K - 1) at full size.
    const long double total = static_cast<long double>(pair.mu1) + pair.mu2;
    const long double mu1 = pair.mu1 / total;
    const long double mu2 = pair.mu2 / total;
    return 1.0L / (mu1 * mu1 + mu2 * mu2);
}

double y_from_k(long double k) {
    if (!(k >= 1.0L && k <= 2.0L)) {
        throw std::invalid_argument("y_from_k: Schmidt weight must lie in [1, 2]");
    }
    return static_cast<double>(1.0L - std::sqrt(std::max(0.0L, 2.0L / k - 1.0L)));
}

double y_from_concurrence(double c) {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw std::invalid_argument("y_from_concurrence: concurrence must lie in [0, 1]");
    }
    return 1.0 - std::sqrt(1.0 - c * c);
}

Amplitudes normalized_amplitudes(const AmplitudeState& state) {
    const double n2 = state.norm_squared();
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > state_norm_tolerance) {
        throw std::invalid_argument("state is not normalized: |a0|^2+|a1|^2+|a2|^2 = " +
                                    std::to_string(n2));
    }
    const double scale = 1.0 / std::sqrt(n2);
    return {state.a[0] * scale, state.a[1] * scale, state.a[2] * scale};
}

EntanglementTriple one_to_other(const AmplitudeState& state) {
    const Amplitudes a = normalized_amplitudes(state);
    const double p0 = std::norm(a[0]);
    const double p1 = std::norm(a[1]);
    const double p2 = std::norm(a[2]);
    return {2.0 * std::min(p1 + p2, p0), 2.0 * std::min(p0 + p2, p1), 2.0 * std::min(p1 + p0, p2)};
}

SchmidtPair reduced_eigenvalues(const AmplitudeState& state, int party) {
    check_party(party);
    const Amplitudes a = normalized_amplitudes(state);

    std::array<complex, 8> psi{};
    psi[party_bit(0)] = a[0];
    psi[party_bit(1)] = a[1];
    psi[party_bit(2)] = a[2];

    // rho[x][y] = sum over the other parties r of psi(x, r) psi*(y, r).
    const unsigned bit = party_bit(party);
    complex rho[2][2]{};
    for (unsigned idx = 0; idx < 8; ++idx) {
        if (idx & bit) {
            continue;
        }
        const complex v[2] = {psi[idx], psi[idx | bit]};
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                rho[x][y] += v[x] * std::conj(v[y]);
            }
        }
    }

    const double d0 = rho[0][0].real();
    const double d1 = rho[1][1].real();
    const double mean = 0.5 * (d0 + d1);
    const double radius = std::hypot(0.5 * (d0 - d1), std::abs(rho[0][1]));
    return {mean + radius, std::max(0.0, mean - radius)};
}

double pairwise_concurrence(const AmplitudeState& state, int i, int j) {
    check_party(i);
    check_party(j);
    if (i == j) {
        throw std::invalid_argument("pairwise_concurrence: parties must differ");
    }
    const Amplitudes a = normalized_amplitudes(state);
    return 2.0 * std::abs(a[static_cast<std::size_t>(i)]) * std::abs(a[static_cast<std::size_t>(j)]);
}

double one_to_other_concurrence(const AmplitudeState& state, int party) {
    check_party(party);
    const Amplitudes a = normalized_amplitudes(state);
    const auto p = static_cast<std::size_t>(party);
    const double rest = std::norm(a[(p + 1) % 3]) + std::norm(a[(p + 2) % 3]);
    return 2.0 * std::abs(a[p]) * std::sqrt(rest);
}

MonogamyReport check_monogamy(const AmplitudeState& state) {
    MonogamyReport report;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const int k = (i + 2) % 3;
        const double cij = pairwise_concurrence(state, i, j);
        const double cik = pairwise_concurrence(state, i, k);
        const double cio = one_to_other_concurrence(state, i);
        auto& check = report.checks[static_cast<std::size_t>(i)];
        check.party = i;
        check.pairwise_sum = cij * cij + cik * cik;
        check.one_to_other = cio * cio;
        check.slack = check.one_to_other - check.pairwise_sum;
        check.holds = check.slack >= -inequality_tolerance;
    }
    return report;
}

SharingReport check_sharing(const EntanglementTriple& y) {
    SharingReport r;
    const double v[3] = {y.y0, y.y1, y.y2};
    for (int i = 0; i < 3; ++i) {
        const double others = v[(i + 1) % 3] + v[(i + 2) % 3];
        r.individual = r.individual && v[i] <= 1.0 + inequality_tolerance;
        r.polygon = r.polygon && v[i] <= others + inequality_tolerance;
    }
    r.volume = y.sum() <= 2.0 + inequality_tolerance;
    return r;
}

} // namespace cavityshare
