#pragma once

// Trace-formula MPS machinery on a ring: amplitudes, dense states, transfer
// matrices, correlators, and the closed-form ground states.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "model.hpp"
#include "pauli.hpp"
#include "state.hpp"
#include "types.hpp"

namespace xyzmps {

inline Complex amplitude(const MpsTensors& t, std::span<const int> bits)
{
    if (bits.size() < 3) throw InvalidInput("amplitude needs N >= 3");
    Mat2 prod = Mat2::Identity();
    for (int b : bits) {
        if (b != 0 && b != 1) throw InvalidInput("bit values must be 0 or 1");
        prod = prod * t[b];
    }
    return prod.trace();
}

inline constexpr double kVanishingStateRatio = 1e-24;

struct BuiltState {
    PureState state;
    /// Sum of squared trace amplitudes.
    double Z = 0.0;
    /// tr(E^N); equals Z up to rounding.
    double ZTransfer = 0.0;
};

struct TransferMatrix {
    Mat4 E;

    Vec4 eigenvalues() const { return Eigen::ComplexEigenSolver<Mat4>(E, false).eigenvalues(); }
};

inline TransferMatrix transfer_with_operator(const MpsTensors& t, const Mat2& O)
{
    TransferMatrix tm{Mat4::Zero()};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (O(i, j) != Complex(0.0)) tm.E += O(i, j) * kron(t[i].conjugate(), t[j]);
    return tm;
}

inline TransferMatrix transfer_matrix(const MpsTensors& t)
{
    return transfer_with_operator(t, Mat2::Identity());
}

inline Mat4 matrix_power(Mat4 base, int n)
{
    if (n < 0) throw InvalidInput("negative matrix power");
    Mat4 result = Mat4::Identity();
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

/// Eigenvalues of E on the g-independent vectors (|01> + |10>)/sqrt2 and
/// (|01> - |10>)/sqrt2, which carry 2(eta + g) and 2(eta - g).
struct BranchEigenvalues {
    Complex symmetric;
    Complex antisymmetric;
    double residual = 0.0;
};

inline BranchEigenvalues tracked_branch_eigenvalues(const TransferMatrix& tm)
{
    const Vec4 vs = psi_plus();
    const Vec4 va = psi_minus();
    BranchEigenvalues out;
    out.symmetric = vs.dot(tm.E * vs);
    out.antisymmetric = va.dot(tm.E * va);
    out.residual = std::max((tm.E * vs - out.symmetric * vs).norm(), (tm.E * va - out.antisymmetric * va).norm());
    return out;
}

inline BuiltState build_state(const MpsTensors& t, int N)
{
    if (N < 3) throw InvalidInput("build_state needs N >= 3");
    check_dense_size(N, kMaxStateSites);
    const std::uint64_t dim = std::uint64_t{1} << N;

    // Amplitudes via prefix products: prefix[k] holds the product over sites 1..k.
    BuiltState out;
    out.state.N = N;
    out.state.amplitudes.resize(static_cast<Eigen::Index>(dim));
    std::vector<Mat2> prefix(N + 1, Mat2::Identity());
    std::uint64_t previous = 0;
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        // Sites that did not change since the previous index keep their prefix.
        int first = 1;
        if (idx != 0) {
            const std::uint64_t changed = idx ^ previous;
            first = N - (63 - std::countl_zero(changed));
        }
        for (int k = first; k <= N; ++k) prefix[k] = prefix[k - 1] * t[site_bit(idx, k, N)];
        out.state.amplitudes(static_cast<Eigen::Index>(idx)) = prefix[N].trace();
        previous = idx;
    }

    out.Z = out.state.amplitudes.squaredNorm();
    out.ZTransfer = matrix_power(transfer_matrix(t).E, N).trace().real();
    // Z <= (|A0|^2 + |A1|^2)^N; far below that bound the amplitudes are rounding noise
    // (e.g. eta = -1 on odd rings, where tr(E^N) vanishes identically).
    const double bound = std::pow(t.A0.squaredNorm() + t.A1.squaredNorm(), N);
    if (!(out.Z > kVanishingStateRatio * bound)) throw InvalidInput("all MPS amplitudes vanish for this tensor choice");
    out.state.amplitudes /= std::sqrt(out.Z);
    return out;
}

inline Complex expectation_one_point(const MpsTensors& t, const Mat2& O, int k, int N)
{
    if (k < 1 || k > N) throw InvalidInput("site index out of range");
    const Mat4 E = transfer_matrix(t).E;
    const Mat4 EO = transfer_with_operator(t, O).E;
    return (matrix_power(E, k - 1) * EO * matrix_power(E, N - k)).trace() / matrix_power(E, N).trace();
}

/// <O_a(1) O_b(r)> for 2 <= r <= N.
inline Complex expectation_two_point(const MpsTensors& t, const Mat2& Oa, const Mat2& Ob, int r, int N)
{
    if (r < 2 || r > N) throw InvalidInput("second site must satisfy 2 <= r <= N");
    const Mat4 E = transfer_matrix(t).E;
    const Mat4 Ea = transfer_with_operator(t, Oa).E;
    const Mat4 Eb = transfer_with_operator(t, Ob).E;
    return (Ea * matrix_power(E, r - 2) * Eb * matrix_power(E, N - r)).trace() / matrix_power(E, N).trace();
}

/// sqrt(g) on the principal branch, i sqrt(-g) for g < 0.
inline Complex continued_sqrt(double g)
{
    return g >= 0.0 ? Complex(std::sqrt(g), 0.0) : Complex(0.0, std::sqrt(-g));
}

/// Unnormalized product factors (1 +- sqrt g)|0> + (1 -+ sqrt g)|1> of the eta = 1 state (eps = +1).
inline std::array<Vec2, 2> product_factors(double g)
{
    const Complex s = continued_sqrt(g);
    Vec2 plus, minus;
    plus << 1.0 + s, 1.0 - s;
    minus << 1.0 - s, 1.0 + s;
    return {plus, minus};
}

/// The sigma_y-basis factors (1 + sqrt g)|y,+-> +- i(1 - sqrt g)|y,-+> of the eta = -1 state.
inline std::array<Vec2, 2> chi_factors(double g)
{
    using namespace std::complex_literals;
    const Complex s = continued_sqrt(g);
    const Vec2 yp = y_ket(Sign::Plus);
    const Vec2 ym = y_ket(Sign::Minus);
    Vec2 plus = (1.0 + s) * yp + 1.0i * (1.0 - s) * ym;
    Vec2 minus = (1.0 + s) * ym - 1.0i * (1.0 - s) * yp;
    return {plus, minus};
}

inline double closed_form_norm(double g, int N)
{
    return std::pow(2.0, N + 1) * (std::pow(1.0 + g, N) + std::pow(1.0 - g, N));
}

inline PureState explicit_ground_state(const ModelParams& p)
{
    p.validate();
    p.require_even_ring_for_eta_minus();
    check_dense_size(p.N, kMaxStateSites);

    std::vector<Vec2> first(p.N), second(p.N);
    if (p.eta == Sign::Plus) {
        const auto [plus, minus] = product_factors(p.g);
        std::fill(first.begin(), first.end(), plus);
        std::fill(second.begin(), second.end(), minus);
    } else {
        const auto [plus, minus] = chi_factors(p.g);
        for (int k = 0; k < p.N; ++k) {
            first[k] = k % 2 == 0 ? plus : minus;
            second[k] = k % 2 == 0 ? minus : plus;
        }
    }

    PureState s;
    s.N = p.N;
    s.amplitudes = (product_state(first) + product_state(second)) / std::sqrt(closed_form_norm(p.g, p.N));
    if (p.epsilon == Sign::Minus) s.amplitudes = sigma_z_string(std::move(s.amplitudes));
    return s;
}

/// Phi_mn = (A0 A_m + (-1)^n A1 A_{m+1 mod 2}) / sqrt2, ordered 00, 01, 10, 11.
inline std::array<Mat2, 4> bell_pair_matrices(const MpsTensors& t)
{
    std::array<Mat2, 4> out;
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
            const double sign = n == 0 ? 1.0 : -1.0;
            out[2 * m + n] = (t.A0 * t[m] + sign * t.A1 * t[(m + 1) % 2]) / std::sqrt(2.0);
        }
    return out;
}

} // namespace xyzmps
