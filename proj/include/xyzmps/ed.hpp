#pragma once

// Dense exact diagonalization used as the ground-truth oracle for small rings.

#include <cmath>
#include <utility>
#include <vector>

#include "hamiltonian.hpp"
#include "model.hpp"
#include "state.hpp"
#include "types.hpp"

namespace xyzmps {

struct SpectrumResult {
    Eigen::VectorXd eigenvalues;
    int groundSpaceDim = 0;
    /// Columns form an orthonormal basis of the ground space.
    MatX groundVectors;
};

inline constexpr double kDefaultDegeneracyTol = 1e-8;

inline SpectrumResult dense_spectrum(const MatX& H, double degeneracyTol = kDefaultDegeneracyTol)
{
    if (H.rows() != H.cols()) throw InvalidInput("dense_spectrum: matrix is not square");
    if (H.rows() > (Eigen::Index{1} << kMaxDenseSites)) throw InvalidInput("dense_spectrum: matrix exceeds dense cap");
    if (H.size() > 0 && !is_hermitian(H, 1e-10)) throw InvalidInput("dense_spectrum: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<MatX> solver(H);
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense_spectrum: eigensolver failed");

    SpectrumResult out;
    out.eigenvalues = solver.eigenvalues();
    const double e0 = out.eigenvalues(0);
    while (out.groundSpaceDim < out.eigenvalues.size() &&
           out.eigenvalues(out.groundSpaceDim) - e0 <= degeneracyTol)
        ++out.groundSpaceDim;
    out.groundVectors = solver.eigenvectors().leftCols(out.groundSpaceDim);
    return out;
}

struct GroundMembership {
    /// || H psi - <psi|H|psi> psi ||
    double residualNorm = 0.0;
    /// || P_ground psi ||
    double overlapWithGroundSpace = 0.0;
    double energy = 0.0;
};

inline GroundMembership ground_membership(const MatX& H, const PureState& psi, const SpectrumResult& spectrum)
{
    if (H.rows() != psi.amplitudes.size()) throw InvalidInput("ground_membership: dimension mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-10) throw InvalidInput("ground_membership: state is not normalized");
    const VecX Hpsi = H * psi.amplitudes;
    GroundMembership out;
    const Complex e = psi.amplitudes.dot(Hpsi);
    out.energy = e.real();
    out.residualNorm = (Hpsi - e * psi.amplitudes).norm();
    out.overlapWithGroundSpace = (spectrum.groundVectors.adjoint() * psi.amplitudes).norm();
    return out;
}

inline GroundMembership ground_membership(const MatX& H, const PureState& psi,
                                          double degeneracyTol = kDefaultDegeneracyTol)
{
    return ground_membership(H, psi, dense_spectrum(H, degeneracyTol));
}

/// Ground-space dimension of the projector-form Hamiltonian along a g grid.
inline std::vector<std::pair<double, int>> ground_degeneracy_scan(const ModelParams& p, std::span<const double> gGrid,
                                                                  double degeneracyTol = kDefaultDegeneracyTol)
{
    if (p.N > 10) throw InvalidInput("ground_degeneracy_scan: N must be at most 10");
    std::vector<std::pair<double, int>> out;
    for (double g : gGrid) {
        ModelParams q = p;
        q.g = g;
        out.emplace_back(g, dense_spectrum(assemble_chain_H(q, HamiltonianForm::Projector), degeneracyTol).groundSpaceDim);
    }
    return out;
}

} // namespace xyzmps
