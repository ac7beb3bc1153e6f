// model.hpp: physical parameters and the excitation-number block Hamiltonian
// for two identical two-level atoms in a single-mode cavity (RWA).
#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace cavityshare {

/// Physical constants of the two-atom cavity model (hbar = 1).
///
/// All frequencies share one arbitrary unit; times elsewhere in the library
/// are in the reciprocal unit. Only `build_params` constructs a value, so a
/// ModelParams always has g > 0 and finite frequencies.
class ModelParams {
public:
    double g() const noexcept { return g_; }
    double omega() const noexcept { return omega_; }
    double omega0() const noexcept { return omega0_; }
    /// Delta = omega0 - omega.
    double detuning() const noexcept { return delta_; }
    /// G = sqrt(8) g, the resonant collective Rabi frequency.
    double rabi_resonant() const noexcept { return big_g_; }
    /// Omega = sqrt(Delta^2 + G^2).
    double rabi() const noexcept { return big_omega_; }
    bool resonant() const noexcept { return delta_ == 0.0; }

    friend ModelParams build_params(double g, double omega, double omega0);

private:
    ModelParams(double g, double omega, double omega0);

    double g_;
    double omega_;
    double omega0_;
    double delta_;
    double big_g_;
    double big_omega_;
};

/// Throws std::invalid_argument unless g > 0 and every value is finite.
ModelParams build_params(double g, double omega, double omega0);

// The user-facing time axis is the dimensionless tau = G t / pi.
double time_from_tau(const ModelParams& params, double tau) noexcept;
double tau_from_time(const ModelParams& params, double t) noexcept;

/// A product basis ket |n, s1, s2> with slots (cavity, atom 1, atom 2).
struct BasisKet {
    int photons{0};
    bool atom1_excited{false};
    bool atom2_excited{false};

    int excitations() const noexcept {
        return photons + static_cast<int>(atom1_excited) + static_cast<int>(atom2_excited);
    }
    std::string label() const;
    bool operator==(const BasisKet&) const = default;
};

/// One diagonal block of the total Hamiltonian at fixed excitation number m.
///
/// Basis order for m >= 2 is |m-2,e,e>, |m-1,e,g>, |m-1,g,e>, |m,g,g>;
/// m = 1 drops the first ket and m = 0 keeps only |0,g,g>.
struct ExcitationBlock {
    int m{0};
    Eigen::MatrixXd matrix;
    std::vector<BasisKet> basis;
};

ExcitationBlock build_block(int m, const ModelParams& params);

/// Direct sum of blocks 0..m_max together with the excitation number of
/// every basis state (the diagonal of the operator M).
struct TruncatedHamiltonian {
    Eigen::MatrixXd matrix;
    std::vector<int> excitation;
    std::vector<BasisKet> basis;
};

TruncatedHamiltonian assemble_hamiltonian(int m_max, const ModelParams& params);

/// True iff [H, M] vanishes entry-wise to `tol`, with M = diag(excitation).
bool commutes_with_excitation_number(const Eigen::MatrixXd& hamiltonian,
                                     std::span<const int> excitation,
                                     double tol = 1e-12);

bool verify_excitation_conservation(int m, const ModelParams& params);

} // namespace cavityshare
