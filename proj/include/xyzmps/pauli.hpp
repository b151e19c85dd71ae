#pragma once

// Single-qubit operators and two-qubit Bell states.
// Basis convention: sigma_z|0> = +|0>; two-site index = 2*b_first + b_second.

#include <array>
#include <cmath>

#include "types.hpp"

namespace xyzmps {

enum class Pauli : int { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<Pauli, 4> kPaulis = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

inline Mat2 pauli(Pauli p)
{
    using namespace std::complex_literals;
    Mat2 m;
    switch (p) {
    case Pauli::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::Y: m << 0.0, -1.0i, 1.0i, 0.0; break;
    case Pauli::Z: m << 1.0, 0.0, 0.0, -1.0; break;
    }
    return m;
}

inline Mat2 sigma_x() { return pauli(Pauli::X); }
inline Mat2 sigma_y() { return pauli(Pauli::Y); }
inline Mat2 sigma_z() { return pauli(Pauli::Z); }

inline Mat4 kron(const Mat2& a, const Mat2& b)
{
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

inline Vec4 kron(const Vec2& a, const Vec2& b)
{
    Vec4 out;
    out << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    return out;
}

/// exp(-i theta sigma_x / 2)
inline Mat2 rx(double theta)
{
    using namespace std::complex_literals;
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Mat2 m;
    m << c, -1.0i * s, -1.0i * s, c;
    return m;
}

inline Vec2 basis_ket(int bit)
{
    Vec2 v = Vec2::Zero();
    v(bit) = 1.0;
    return v;
}

/// sigma_y eigenstates, |y,+> = (|0> + i|1>)/sqrt2.
inline Vec2 y_ket(Sign s)
{
    using namespace std::complex_literals;
    Vec2 v;
    v << 1.0, value(s) * 1.0i;
    return v / std::sqrt(2.0);
}

// Bell states
inline Vec4 psi_plus() { return Vec4(0.0, 1.0, 1.0, 0.0) / std::sqrt(2.0); }
inline Vec4 psi_minus() { return Vec4(0.0, 1.0, -1.0, 0.0) / std::sqrt(2.0); }
inline Vec4 phi_plus() { return Vec4(1.0, 0.0, 0.0, 1.0) / std::sqrt(2.0); }
inline Vec4 phi_minus() { return Vec4(1.0, 0.0, 0.0, -1.0) / std::sqrt(2.0); }

} // namespace xyzmps
