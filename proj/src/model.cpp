#include "cavityshare/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cavityshare {

ModelParams::ModelParams(double g, double omega, double omega0)
    : g_(g),
      omega_(omega),
      omega0_(omega0),
      delta_(omega0 - omega),
      big_g_(std::sqrt(8.0) * g),
      big_omega_(std::hypot(omega0 - omega, std::sqrt(8.0) * g)) {}

ModelParams build_params(double g, double omega, double omega0) {
    if (!std::isfinite(g) || g <= 0.0) {
        throw std::invalid_argument("build_params: coupling g must be finite and > 0");
    }
    if (!std::isfinite(omega) || !std::isfinite(omega0)) {
        throw std::invalid_argument("build_params: frequencies must be finite");
    }
    return ModelParams(g, omega, omega0);
}

double time_from_tau(const ModelParams& params, double tau) noexcept {
    return std::numbers::pi * tau / params.rabi_resonant();
}

double tau_from_time(const ModelParams& params, double t) noexcept {
    return params.rabi_resonant() * t / std::numbers::pi;
}

std::string BasisKet::label() const {
    std::string s = "|" + std::to_string(photons) + ",";
    s += atom1_excited ? "e," : "g,";
    s += atom2_excited ? "e>" : "g>";
    return s;
}

ExcitationBlock build_block(int m, const ModelParams& params) {
    if (m < 0) {
        throw std::invalid_argument("build_block: excitation number must be >= 0");
    }
    const double g = params.g();
    const double w = params.omega();
    const double w0 = params.omega0();

    ExcitationBlock block;
    block.m = m;
    if (m == 0) {
        block.matrix = Eigen::MatrixXd::Zero(1, 1);
        block.basis = {{0, false, false}};
        return block;
    }
    if (m == 1) {
        block.matrix = Eigen::MatrixXd::Zero(3, 3);
        block.basis = {{0, true, false}, {0, false, true}, {1, false, false}};
        block.matrix(0, 0) = w0;
        block.matrix(1, 1) = w0;
        block.matrix(2, 2) = w;
        block.matrix(0, 2) = block.matrix(2, 0) = g;
        block.matrix(1, 2) = block.matrix(2, 1) = g;
        return block;
    }

    const double md = static_cast<double>(m);
    const double lower = std::sqrt(md - 1.0) * g;
    const double upper = std::sqrt(md) * g;
    block.matrix = Eigen::MatrixXd::Zero(4, 4);
    block.basis = {{m - 2, true, true}, {m - 1, true, false}, {m - 1, false, true}, {m, false, false}};
    block.matrix(0, 0) = (md - 2.0) * w + 2.0 * w0;
    block.matrix(1, 1) = (md - 1.0) * w + w0;
    block.matrix(2, 2) = (md - 1.0) * w + w0;
    block.matrix(3, 3) = md * w;
    block.matrix(0, 1) = block.matrix(1, 0) = lower;
    block.matrix(0, 2) = block.matrix(2, 0) = lower;
    block.matrix(1, 3) = block.matrix(3, 1) = upper;
    block.matrix(2, 3) = block.matrix(3, 2) = upper;
    return block;
}

TruncatedHamiltonian assemble_hamiltonian(int m_max, const ModelParams& params) {
    if (m_max < 0) {
        throw std::invalid_argument("assemble_hamiltonian: excitation number must be >= 0");
    }
    std::vector<ExcitationBlock> blocks;
    Eigen::Index dim = 0;
    for (int m = 0; m <= m_max; ++m) {
        blocks.push_back(build_block(m, params));
        dim += blocks.back().matrix.rows();
    }

    TruncatedHamiltonian h;
    h.matrix = Eigen::MatrixXd::Zero(dim, dim);
    h.excitation.reserve(static_cast<std::size_t>(dim));
    Eigen::Index offset = 0;
    for (const auto& b : blocks) {
        const Eigen::Index n = b.matrix.rows();
        h.matrix.block(offset, offset, n, n) = b.matrix;
        for (const auto& ket : b.basis) {
            h.excitation.push_back(b.m);
            h.basis.push_back(ket);
        }
        offset += n;
    }
    return h;
}

bool commutes_with_excitation_number(const Eigen::MatrixXd& hamiltonian,
                                     std::span<const int> excitation,
                                     double tol) {
    const Eigen::Index n = hamiltonian.rows();
    if (hamiltonian.cols() != n || static_cast<std::size_t>(n) != excitation.size()) {
        throw std::invalid_argument("commutes_with_excitation_number: dimension mismatch");
    }
    Eigen::VectorXd diag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        diag(i) = excitation[static_cast<std::size_t>(i)];
    }
    const Eigen::MatrixXd number = diag.asDiagonal();
    const Eigen::MatrixXd commutator = hamiltonian * number - number * hamiltonian;
    return commutator.cwiseAbs().maxCoeff() <= tol;
}

bool verify_excitation_conservation(int m, const ModelParams& params) {
    const auto h = assemble_hamiltonian(m, params);
    return commutes_with_excitation_number(h.matrix, h.excitation);
}

} // namespace cavityshare
