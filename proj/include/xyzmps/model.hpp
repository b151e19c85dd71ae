#pragma once

// Model family: parameters, the coupling surface, and the fixed-gauge MPS tensors.

#include <cmath>
#include <optional>
#include <string>

#include "pauli.hpp"
#include "types.hpp"

namespace xyzmps {

struct ModelParams {
    Sign epsilon = Sign::Plus;
    Sign eta = Sign::Plus;
    double g = 0.0;
    double J = 0.0;
    int N = 4;

    void validate() const
    {
        if (!std::isfinite(g)) throw InvalidInput("g must be finite");
        if (!std::isfinite(J) || J < 0.0) throw InvalidInput("J must be non-negative");
        if (N < 3) throw InvalidInput("ring size N must be at least 3");
    }

    /// The eta = -1 ground state is only obtained from the eta = 1 one on even rings.
    void require_even_ring_for_eta_minus() const
    {
        if (eta == Sign::Minus && N % 2 != 0)
            throw InvalidInput("eta = -1 ground state requires even N, got N = " + std::to_string(N));
    }
};

struct Couplings {
    double Jx = 0.0;
    double Jy = 0.0;
    double Jz = 0.0;
    double B = 0.0;
};

inline Couplings couplings_from_params(const ModelParams& p)
{
    const double eta = value(p.eta);
    return Couplings{
        .Jx = -p.J + (1.0 + p.g * p.g) / 2.0,
        .Jy = -eta * p.J + p.g,
        .Jz = -eta * p.J - p.g,
        .B = value(p.epsilon) * (p.g * p.g - 1.0),
    };
}

/// Constant dropped from the projector Hamiltonian per bond.
inline double bond_constant(const ModelParams& p) { return p.J + (1.0 + p.g * p.g) / 2.0; }

/// Spin-flip symmetric form before gauge fixing:
/// A0 = [[a, b], [c, d]], A1 = eps [[a, -b], [-c, d]].
struct GeneralForm {
    Complex a, b, c, d;
};

struct MpsTensors {
    Mat2 A0;
    Mat2 A1;
    std::optional<GeneralForm> generalForm;

    const Mat2& operator[](int i) const { return i == 0 ? A0 : A1; }
};

inline MpsTensors general_tensors(const GeneralForm& f, Sign epsilon)
{
    MpsTensors t;
    t.A0 << f.a, f.b, f.c, f.d;
    t.A1 << f.a, -f.b, -f.c, f.d;
    t.A1 *= value(epsilon);
    t.generalForm = f;
    return t;
}

inline MpsTensors mps_matrices(const ModelParams& p)
{
    MpsTensors t;
    const double eta = value(p.eta);
    t.A0 << 1.0, p.g, 1.0, eta;
    t.A1 << 1.0, -p.g, -1.0, eta;
    t.A1 *= value(p.epsilon);
    return t;
}

struct SymmetryReport {
    bool spinFlip = false;
    /// nullopt when the parity matrix diag(b, c) is singular.
    std::optional<bool> parity;
    /// All entries real, so V = identity realizes time reversal.
    bool timeReversal = false;
};

inline SymmetryReport check_symmetries(const MpsTensors& t, Sign epsilon, double tol = 1e-12)
{
    SymmetryReport r;
    const Mat2 X = sigma_z();
    const double eps = value(epsilon);
    const double scale = std::max({1.0, t.A0.norm(), t.A1.norm()});
    r.spinFlip = (X * t.A0 * X - eps * t.A1).norm() <= tol * scale &&
                 (X * t.A1 * X - eps * t.A0).norm() <= tol * scale;

    const Complex b = t.A0(0, 1);
    const Complex c = t.A0(1, 0);
    if (std::abs(b) > tol && std::abs(c) > tol) {
        Mat2 Pi = Mat2::Zero();
        Pi(0, 0) = b;
        Pi(1, 1) = c;
        const Mat2 PiInv = Pi.inverse();
        r.parity = (Pi * t.A0.transpose() * PiInv - t.A0).norm() <= tol * scale &&
                   (Pi * t.A1.transpose() * PiInv - t.A1).norm() <= tol * scale;
    }

    r.timeReversal = t.A0.imag().norm() <= tol * scale && t.A1.imag().norm() <= tol * scale;
    return r;
}

} // namespace xyzmps
