#pragma once

// Dense ring states and the brute-force operations on them.
// Site k (1-based) is stored at bit position N - k of the basis index.

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pauli.hpp"
#include "types.hpp"

namespace xyzmps {

struct PureState {
    int N = 0;
    VecX amplitudes;

    double norm() const { return amplitudes.norm(); }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }
};

inline void check_dense_size(int N, int cap)
{
    if (N < 1 || N > cap)
        throw InvalidInput("ring size " + std::to_string(N) + " outside dense cap [1, " +
                           std::to_string(cap) + "]");
}

inline constexpr int site_bit(std::uint64_t index, int site, int N) noexcept
{
    return static_cast<int>((index >> (N - site)) & 1u);
}

inline std::vector<int> bits_of_index(std::uint64_t index, int N)
{
    std::vector<int> bits(N);
    for (int k = 1; k <= N; ++k) bits[k - 1] = site_bit(index, k, N);
    return bits;
}

inline std::uint64_t index_of_bits(std::span<const int> bits)
{
    std::uint64_t idx = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw InvalidInput("bit values must be 0 or 1");
        idx = (idx << 1) | static_cast<std::uint64_t>(b);
    }
    return idx;
}

inline std::vector<int> bits_from_string(const std::string& s)
{
    std::vector<int> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw InvalidInput("bit string must contain only 0 and 1");
        bits.push_back(c - '0');
    }
    return bits;
}

/// Tensor product of single-site kets, site 1 first.
inline VecX product_state(std::span<const Vec2> kets)
{
    VecX out = VecX::Ones(1);
    for (const Vec2& k : kets) {
        VecX next(out.size() * 2);
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            next(2 * i) = out(i) * k(0);
            next(2 * i + 1) = out(i) * k(1);
        }
        out = std::move(next);
    }
    return out;
}

/// O acting on one site (1-based).
inline VecX apply_site_operator(const VecX& psi, const Mat2& O, int site, int N)
{
    VecX out(psi.size());
    const std::uint64_t mask = std::uint64_t{1} << (N - site);
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(psi.size()); ++i) {
        if (i & mask) continue;
        const Complex a0 = psi(i);
        const Complex a1 = psi(i | mask);
        out(i) = O(0, 0) * a0 + O(0, 1) * a1;
        out(i | mask) = O(1, 0) * a0 + O(1, 1) * a1;
    }
    return out;
}

inline VecX apply_on_all_sites(VecX psi, const Mat2& O, int N)
{
    for (int k = 1; k <= N; ++k) psi = apply_site_operator(psi, O, k, N);
    return psi;
}

/// Multiplies each amplitude by (-1)^(number of ones): sigma_z on every site.
inline VecX sigma_z_string(VecX psi)
{
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(psi.size()); ++i)
        if (std::popcount(i) % 2 != 0) psi(i) = -psi(i);
    return psi;
}

inline Complex dense_expectation(const PureState& s, const Mat2& O, int site)
{
    return s.amplitudes.dot(apply_site_operator(s.amplitudes, O, site, s.N));
}

inline Complex dense_expectation(const PureState& s, const Mat2& Oa, int siteA, const Mat2& Ob, int siteB)
{
    const VecX v = apply_site_operator(apply_site_operator(s.amplitudes, Ob, siteB, s.N), Oa, siteA, s.N);
    return s.amplitudes.dot(v);
}

/// Reduced state of sites i and j (1-based, distinct), indexed 2*b_i + b_j.
inline Mat4 partial_trace_pair(const PureState& s, int i, int j)
{
    if (i == j) throw InvalidInput("pair sites must be distinct");
    if (i < 1 || j < 1 || i > s.N || j > s.N) throw InvalidInput("site index out of range");
    const int N = s.N;
    const std::uint64_t mi = std::uint64_t{1} << (N - i);
    const std::uint64_t mj = std::uint64_t{1} << (N - j);
    Mat4 rho = Mat4::Zero();
    for (std::uint64_t rest = 0; rest < s.dim(); ++rest) {
        if (rest & (mi | mj)) continue;
        Vec4 v;
        for (int bi = 0; bi < 2; ++bi)
            for (int bj = 0; bj < 2; ++bj)
                v(2 * bi + bj) = s.amplitudes(rest | (bi ? mi : 0) | (bj ? mj : 0));
        rho += v * v.adjoint();
    }
    return rho;
}

inline double overlap_magnitude(const PureState& a, const PureState& b)
{
    if (a.dim() != b.dim()) throw InvalidInput("state dimensions differ");
    return std::abs(a.amplitudes.dot(b.amplitudes));
}

/// Rotates the global phase so the first non-negligible amplitude is real positive.
inline PureState with_canonical_phase(PureState s, double relTol = 1e-12)
{
    const double scale = s.amplitudes.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
        const Complex a = s.amplitudes(i);
        if (std::abs(a) > relTol * scale) {
            s.amplitudes *= std::conj(a) / std::abs(a);
            break;
        }
    }
    return s;
}

} // namespace xyzmps
