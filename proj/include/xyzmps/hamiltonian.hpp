#pragma once

// Parent Hamiltonian: two-site null space of the MPS, the local projector
// Hamiltonian, its Pauli expansion, and dense ring assembly.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "model.hpp"
#include "pauli.hpp"
#include "state.hpp"
#include "types.hpp"

namespace xyzmps {

/// M C = 0 for C = (c00, c01, c10, c11); column j1 j2 of M is the row-major
/// vectorization of A_j1 A_j2.
struct NullSpaceProblem {
    Mat4 M;
    /// Orthonormal kernel basis; entry 2*j1 + j2 is the coefficient c_{j1 j2}.
    std::vector<Vec4> solutions;
    double tolerance = 0.0;
};

inline NullSpaceProblem null_space_k2(const Mat2& A0, const Mat2& A1, double relTol = 1e-10)
{
    const std::array<const Mat2*, 2> A = {&A0, &A1};
    NullSpaceProblem out;
    for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) {
            const Mat2 prod = *A[j1] * *A[j2];
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) out.M(2 * r + c, 2 * j1 + j2) = prod(r, c);
        }

    Eigen::JacobiSVD<Mat4> svd(out.M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    out.tolerance = relTol * sv(0);
    for (int k = 0; k < 4; ++k)
        if (sv(k) <= out.tolerance) out.solutions.push_back(svd.matrixV().col(k));
    return out;
}

inline NullSpaceProblem null_space_k2(const MpsTensors& t, double relTol = 1e-10)
{
    return null_space_k2(t.A0, t.A1, relTol);
}

/// 16 b^2 c^2 (a - d)^2 (a + d)^2
inline Complex null_space_determinant(const GeneralForm& f)
{
    const Complex amd = f.a - f.d;
    const Complex apd = f.a + f.d;
    return 16.0 * f.b * f.b * f.c * f.c * amd * amd * apd * apd;
}

/// Orthogonal projector onto the span of the given (not necessarily orthonormal) vectors.
inline Mat4 span_projector(std::span<const Vec4> vectors, double relTol = 1e-10)
{
    if (vectors.empty()) return Mat4::Zero();
    Eigen::Matrix<Complex, 4, Eigen::Dynamic> cols(4, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = vectors[k];
    Eigen::JacobiSVD<decltype(cols)> svd(cols, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Mat4 P = Mat4::Zero();
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > relTol * sv(0)) P += svd.matrixU().col(k) * svd.matrixU().col(k).adjoint();
    return P;
}

struct EVectors {
    Vec4 e1;
    Vec4 e2;
};

/// Unnormalized: e1 = (1+eta)|psi-> + (1-eta)|phi->, e2 = (1+g)|psi+> - eps(1-g)|phi+>.
inline EVectors e_vectors(const ModelParams& p)
{
    const double eta = value(p.eta);
    const double eps = value(p.epsilon);
    return EVectors{
        .e1 = (1.0 + eta) * psi_minus() + (1.0 - eta) * phi_minus(),
        .e2 = (1.0 + p.g) * psi_plus() - eps * (1.0 - p.g) * phi_plus(),
    };
}

/// Real coefficients of sigma_a (x) sigma_b, indexed 4*a + b with a, b in {I, X, Y, Z}.
struct PauliCoefficients {
    std::array<double, 16> c{};

    double at(Pauli a, Pauli b) const { return c[4 * static_cast<int>(a) + static_cast<int>(b)]; }
    double& at(Pauli a, Pauli b) { return c[4 * static_cast<int>(a) + static_cast<int>(b)]; }
};

inline bool is_hermitian(const MatX& H, double tol)
{
    return H.rows() == H.cols() && (H - H.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline PauliCoefficients pauli_decompose(const Mat4& H2, double tol = 1e-12)
{
    const double scale = std::max(1.0, H2.cwiseAbs().maxCoeff());
    if (!is_hermitian(H2, tol * scale)) throw InvalidInput("pauli_decompose: operator is not Hermitian");
    PauliCoefficients out;
    for (Pauli a : kPaulis)
        for (Pauli b : kPaulis) out.at(a, b) = (H2 * kron(pauli(a), pauli(b))).trace().real() / 4.0;
    return out;
}

inline Mat4 pauli_reconstruct(const PauliCoefficients& pc)
{
    Mat4 H = Mat4::Zero();
    for (Pauli a : kPaulis)
        for (Pauli b : kPaulis) H += pc.at(a, b) * kron(pauli(a), pauli(b));
    return H;
}

struct TwoSiteOperator {
    Mat4 H2;
    PauliCoefficients pauliCoefficients;
};

/// h = J |e1><e1| + |e2><e2|
inline TwoSiteOperator local_h(const ModelParams& p)
{
    const EVectors e = e_vectors(p);
    TwoSiteOperator out;
    out.H2 = p.J * e.e1 * e.e1.adjoint() + e.e2 * e.e2.adjoint();
    out.pauliCoefficients = pauli_decompose(out.H2);
    return out;
}

/// Sum over ring bonds (l, l+1), site N+1 = site 1, of a two-site operator.
inline MatX embed_bond_sum(const Mat4& h, int N)
{
    check_dense_size(N, kMaxDenseSites);
    if (N < 2) throw InvalidInput("ring needs at least two sites");
    const std::uint64_t dim = std::uint64_t{1} << N;
    MatX H = MatX::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (int l = 1; l <= N; ++l) {
        const int m = l % N + 1;
        const std::uint64_t ml = std::uint64_t{1} << (N - l);
        const std::uint64_t mm = std::uint64_t{1} << (N - m);
        for (std::uint64_t in = 0; in < dim; ++in) {
            const int col = 2 * site_bit(in, l, N) + site_bit(in, m, N);
            const std::uint64_t rest = in & ~(ml | mm);
            for (int row = 0; row < 4; ++row) {
                const Complex v = h(row, col);
                if (v == Complex(0.0)) continue;
                const std::uint64_t out = rest | ((row >> 1) ? ml : 0) | ((row & 1) ? mm : 0);
                H(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) += v;
            }
        }
    }
    return H;
}

/// Sum over all sites of a one-site operator.
inline MatX embed_site_sum(const Mat2& o, int N)
{
    check_dense_size(N, kMaxDenseSites);
    const std::uint64_t dim = std::uint64_t{1} << N;
    MatX H = MatX::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (int k = 1; k <= N; ++k) {
        const std::uint64_t mk = std::uint64_t{1} << (N - k);
        for (std::uint64_t in = 0; in < dim; ++in) {
            const int col = site_bit(in, k, N);
            for (int row = 0; row < 2; ++row) {
                const std::uint64_t out = row ? (in | mk) : (in & ~mk);
                H(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) += o(row, col);
            }
        }
    }
    return H;
}

enum class HamiltonianForm {
    /// XYZ couplings plus transverse field, no constant.
    Xyz,
    /// Sum of local projector Hamiltonians h; positive semidefinite.
    Projector,
};

inline MatX assemble_chain_H(const ModelParams& p, HamiltonianForm form)
{
    p.validate();
    if (p.N > kMaxDenseSites)
        throw InvalidInput("assemble_chain_H: N = " + std::to_string(p.N) + " exceeds dense cap " +
                           std::to_string(kMaxDenseSites));
    if (form == HamiltonianForm::Projector) return embed_bond_sum(local_h(p).H2, p.N);

    const Couplings c = couplings_from_params(p);
    const Mat4 bond = c.Jx * kron(sigma_x(), sigma_x()) + c.Jy * kron(sigma_y(), sigma_y()) +
                      c.Jz * kron(sigma_z(), sigma_z());
    return embed_bond_sum(bond, p.N) + c.B * embed_site_sum(sigma_x(), p.N);
}

/// Applies U_k on site k to rows and U_k^dagger to columns: (prod U_k) H (prod U_k)^dagger.
inline MatX conjugate_by_site_unitaries(MatX H, std::span<const Mat2> unitaries)
{
    const int N = static_cast<int>(unitaries.size());
    if (H.rows() != (Eigen::Index{1} << N)) throw InvalidInput("unitary count does not match operator size");
    for (int k = 1; k <= N; ++k) {
        const Mat2& U = unitaries[k - 1];
        const std::uint64_t mk = std::uint64_t{1} << (N - k);
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(H.rows()); ++i) {
            if (i & mk) continue;
            const auto i0 = static_cast<Eigen::Index>(i);
            const auto i1 = static_cast<Eigen::Index>(i | mk);
            const Eigen::RowVectorXcd r0 = H.row(i0);
            const Eigen::RowVectorXcd r1 = H.row(i1);
            H.row(i0) = U(0, 0) * r0 + U(0, 1) * r1;
            H.row(i1) = U(1, 0) * r0 + U(1, 1) * r1;
        }
        const Mat2 Ud = U.adjoint();
        for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(H.cols()); ++j) {
            if (j & mk) continue;
            const auto j0 = static_cast<Eigen::Index>(j);
            const auto j1 = static_cast<Eigen::Index>(j | mk);
            const VecX c0 = H.col(j0);
            const VecX c1 = H.col(j1);
            H.col(j0) = c0 * Ud(0, 0) + c1 * Ud(1, 0);
            H.col(j1) = c0 * Ud(0, 1) + c1 * Ud(1, 1);
        }
    }
    return H;
}

/// R_x(theta) on odd sites, R_x(-theta) on even sites, theta = +-pi/2.
inline std::vector<Mat2> eta_rotation_unitaries(int N, double thetaSign = 1.0)
{
    if (N % 2 != 0) throw InvalidInput("eta rotation requires even N");
    const double theta = thetaSign * std::numbers::pi / 2.0;
    std::vector<Mat2> u(N);
    for (int k = 0; k < N; ++k) u[k] = rx(k % 2 == 0 ? theta : -theta);
    return u;
}

inline std::vector<Mat2> sigma_z_unitaries(int N) { return std::vector<Mat2>(N, sigma_z()); }

} // namespace xyzmps
