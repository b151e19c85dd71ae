#pragma once

// Two-spin reduced states of the ground state, Wootters concurrence, and the
// closed-form concurrence with its large-N scaling limit.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "model.hpp"
#include "mps.hpp"
#include "pauli.hpp"
#include "state.hpp"
#include "types.hpp"

namespace xyzmps {

class PairDensityMatrix {
public:
    /// Validates Hermiticity, unit trace, and positivity within tol.
    explicit PairDensityMatrix(Mat4 rho, double tol = 1e-10) : rho_(std::move(rho))
    {
        if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol)
            throw InvalidInput("density matrix is not Hermitian");
        if (std::abs(rho_.trace() - Complex(1.0)) > tol) throw InvalidInput("density matrix trace is not 1");
        rho_ = (rho_ + rho_.adjoint()).eval() / 2.0;
        eig_.compute(rho_);
        if (eig_.eigenvalues().minCoeff() < -tol) throw InvalidInput("density matrix is not positive semidefinite");
    }

    const Mat4& matrix() const { return rho_; }
    const Eigen::SelfAdjointEigenSolver<Mat4>& eigen() const { return eig_; }

private:
    Mat4 rho_;
    Eigen::SelfAdjointEigenSolver<Mat4> eig_;
};

/// Overlap <phi_+|phi_-> of the unnormalized eta = 1 product factors.
inline Complex factor_overlap(double g)
{
    const auto [plus, minus] = product_factors(g);
    return plus.dot(minus);
}

namespace detail {

/// rho of any pair for |phi+>^N + |phi->^N (eps = +1): sum over alpha, beta of
/// <phi_b|phi_a>^(N-2) |phi_a phi_a><phi_b phi_b|, unit trace.
inline Mat4 generalized_ghz_pair(double g, int N)
{
    const auto factors = product_factors(g);
    // Overlaps rescaled by the largest norm so the (N-2)th powers stay finite.
    const double scale = std::max(factors[0].squaredNorm(), factors[1].squaredNorm());
    Mat4 rho = Mat4::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const Complex w = std::pow(factors[b].dot(factors[a]) / scale, N - 2);
            rho += w * kron(factors[a], factors[a]) * kron(factors[b], factors[b]).adjoint();
        }
    return rho / rho.trace();
}

} // namespace detail

inline PairDensityMatrix pair_density(const ModelParams& p, int i, int j)
{
    p.validate();
    if (i == j) throw InvalidInput("pair_density: sites must be distinct");
    if (i < 1 || j < 1 || i > p.N || j > p.N) throw InvalidInput("pair_density: site index out of range");
    if (p.N < 4) throw InvalidInput("pair_density: closed form needs N >= 4");

    if (p.eta == Sign::Minus && p.N % 2 != 0)
        throw InvalidInput("pair_density: the eta = -1 state vanishes on odd rings");

    Mat4 rho = detail::generalized_ghz_pair(p.g, p.N);
    if (p.epsilon == Sign::Minus) {
        const Mat4 zz = kron(sigma_z(), sigma_z());
        rho = zz * rho * zz;
    }
    if (p.eta == Sign::Minus) {
        const double theta = std::numbers::pi / 2.0;
        const Mat2 Ri = rx(i % 2 == 1 ? theta : -theta);
        const Mat2 Rj = rx(j % 2 == 1 ? theta : -theta);
        const Mat4 R = kron(Ri, Rj);
        rho = R * rho * R.adjoint();
    }
    return PairDensityMatrix(rho);
}

struct ConcurrenceResult {
    double C = 0.0;
    /// sqrt of the eigenvalues of rho (sy sy) rho* (sy sy), decreasing.
    std::array<double, 4> sqrtEigenvalues{};
};

/// The square roots of the eigenvalues of rho rho~ are the singular values of
/// tau = W^T (sy (x) sy) W with rho = W W^dagger; W keeps eigenvalues above dropTol.
inline ConcurrenceResult wootters_concurrence(const PairDensityMatrix& rho, double dropTol = 1e-13)
{
    const auto& eig = rho.eigen();
    std::vector<Eigen::Index> kept;
    for (Eigen::Index k = 0; k < 4; ++k)
        if (eig.eigenvalues()(k) > dropTol) kept.push_back(k);

    Eigen::Matrix<Complex, 4, Eigen::Dynamic> W(4, static_cast<Eigen::Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c)
        W.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(kept[c]) * std::sqrt(eig.eigenvalues()(kept[c]));

    ConcurrenceResult out;
    if (!kept.empty()) {
        const Mat4 YY = kron(sigma_y(), sigma_y());
        const MatX tau = W.transpose() * YY * W;
        const Eigen::VectorXd sv = Eigen::JacobiSVD<MatX>(tau).singularValues();
        for (Eigen::Index k = 0; k < sv.size(); ++k) out.sqrtEigenvalues[k] = sv(k);
    }
    const auto& s = out.sqrtEigenvalues;
    out.C = std::max(0.0, s[0] - s[1] - s[2] - s[3]);
    return out;
}

/// 4|g| |1-|g||^(N-2) / |(1+g)^N + (1-g)^N|, evaluated with logarithms.
inline double concurrence_closed(double g, int N)
{
    if (N < 3) throw InvalidInput("concurrence_closed needs N >= 3");
    const double a = std::abs(g);
    const double base = std::abs(1.0 - a);
    if (a == 0.0 || base == 0.0) return 0.0;
    const double p = 1.0 + g;
    const double q = 1.0 - g;
    const double big = std::max(std::abs(p), std::abs(q));
    const double smallRatio = (std::abs(p) >= std::abs(q) ? q / p : p / q);
    // |(1+g)^N + (1-g)^N| = big^N |1 + ratio^N| up to a sign of big^N.
    const double tail = 1.0 + (smallRatio < 0.0 && N % 2 != 0 ? -1.0 : 1.0) *
                                  std::exp(N * std::log(std::abs(smallRatio)));
    const double logC = std::log(4.0 * a) + (N - 2) * std::log(base) - N * std::log(big) - std::log(std::abs(tail));
    return std::exp(logC);
}

/// 2|g| e^{-|g|} / cosh g
inline double scaling_limit(double g)
{
    const double a = std::abs(g);
    return 2.0 * a * std::exp(-a) / std::cosh(g);
}

/// Pairs (g, N C(g/N, N)).
inline std::vector<std::pair<double, double>> scaled_concurrence_curve(int N, std::span<const double> gGrid)
{
    std::vector<std::pair<double, double>> out;
    out.reserve(gGrid.size());
    for (double g : gGrid) out.emplace_back(g, N * concurrence_closed(g / N, N));
    return out;
}

} // namespace xyzmps
