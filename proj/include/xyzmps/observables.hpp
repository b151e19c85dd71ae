#pragma once

// Closed-form magnetization and correlators, their thermodynamic limits, and
// the g = 0 discontinuity.
//
// Every finite-N ratio is symmetric under u -> 1/u, so it is evaluated with
// w = u when |u| <= 1 and w = 1/u otherwise; powers of w never overflow.

#include <cmath>
#include <string>

#include "types.hpp"

namespace xyzmps {

inline double u_param(double g)
{
    if (g == -1.0) throw SingularParameter("u = (1-g)/(1+g) is singular at g = -1");
    return (1.0 - g) / (1.0 + g);
}

namespace detail {

/// Bounded ratio variable: u or 1/u, whichever has modulus <= 1.
inline double folded_u(double g)
{
    const double u = u_param(g);
    return std::abs(u) <= 1.0 ? u : 1.0 / u;
}

/// w^n through exp(n log|w|) with the sign tracked separately.
inline double signed_power(double w, int n)
{
    if (n == 0) return 1.0;
    if (w == 0.0) return 0.0;
    const double mag = std::exp(static_cast<double>(n) * std::log(std::abs(w)));
    return (w < 0.0 && n % 2 != 0) ? -mag : mag;
}

inline double checked_denominator(double w, int N)
{
    const double den = 1.0 + signed_power(w, N);
    if (den == 0.0) throw SingularParameter("1 + u^N vanishes");
    return den;
}

inline void require_ring(int N)
{
    if (N < 3) throw InvalidInput("closed forms need N >= 3");
}

} // namespace detail

inline double magnetization_x(Sign epsilon, double g, int N)
{
    detail::require_ring(N);
    const double w = detail::folded_u(g);
    const double den = detail::checked_denominator(w, N);
    return value(epsilon) * (w + detail::signed_power(w, N - 1)) / den;
}

struct Correlators {
    double Gx = 0.0;
    double Gy = 0.0;
    double Gz = 0.0;
};

/// G_a(1, r) for the eta = 1 ground state; independent of r.
inline Correlators correlations(double g, int N)
{
    detail::require_ring(N);
    const double u = u_param(g);
    const double w = detail::folded_u(g);
    const double den = detail::checked_denominator(w, N);
    const double wN = detail::signed_power(w, N);
    const double wN2 = detail::signed_power(w, N - 2);
    const double w2 = w * w;
    Correlators c;
    c.Gx = (w2 + wN2) / den;
    if (std::abs(u) <= 1.0) {
        c.Gy = wN2 * (w2 - 1.0) / den;
        c.Gz = (1.0 - w2) / den;
    } else {
        c.Gy = (1.0 - w2) / den;
        c.Gz = (wN - wN2) / den;
    }
    return c;
}

/// Correlators for either eta sector. For eta = -1 the alternating rotation
/// exchanges y and z with sign (-1)^(r-1); r is the site of the second spin.
inline Correlators correlations(Sign eta, double g, int N, int r)
{
    if (r < 2 || r > N) throw InvalidInput("second site must satisfy 2 <= r <= N");
    const Correlators c = correlations(g, N);
    if (eta == Sign::Plus) return c;
    const double s = (r - 1) % 2 == 0 ? 1.0 : -1.0;
    return Correlators{c.Gx, s * c.Gz, s * c.Gy};
}

struct ObservableRecord {
    double g = 0.0;
    int N = 0;
    double u = 0.0;
    double mx = 0.0;
    double Gx = 0.0;
    double Gy = 0.0;
    double Gz = 0.0;
};

inline ObservableRecord observables(Sign epsilon, double g, int N)
{
    const Correlators c = correlations(g, N);
    return ObservableRecord{g, N, u_param(g), magnetization_x(epsilon, g, N), c.Gx, c.Gy, c.Gz};
}

inline void require_off_transition(double g)
{
    if (g == 0.0)
        throw SingularParameter("thermodynamic limit is discontinuous at g = 0; see thermodynamic_discontinuity()");
    if (g == -1.0) throw SingularParameter("thermodynamic limit undefined at g = -1");
}

/// N -> infinity limit of magnetization_x: eps (1 - |g|) / (1 + |g|).
inline double thermodynamic_magnetization(Sign epsilon, double g)
{
    require_off_transition(g);
    const double a = std::abs(g);
    return value(epsilon) * (1.0 - a) / (1.0 + a);
}

/// eps (1 + |g|) / (1 - |g|), the reciprocal of the limit; reported for comparison only.
inline double reciprocal_thermodynamic_magnetization(Sign epsilon, double g)
{
    const double a = std::abs(g);
    if (a == 1.0) return std::copysign(HUGE_VAL, value(epsilon));
    return value(epsilon) * (1.0 + a) / (1.0 - a);
}

inline Correlators thermodynamic_correlations(double g)
{
    require_off_transition(g);
    const double u = u_param(g);
    if (std::abs(u) < 1.0) return Correlators{u * u, 0.0, 1.0 - u * u};
    const double v = 1.0 / (u * u);
    return Correlators{v, 1.0 - v, 0.0};
}

/// One-sided limits and slopes of the thermodynamic quantities at g = 0.
struct DiscontinuityReport {
    double mxLeft = 0.0, mxRight = 0.0;
    double dmxLeft = 0.0, dmxRight = 0.0;
    Correlators left, right;
    Correlators slopeLeft, slopeRight;
};

inline DiscontinuityReport thermodynamic_discontinuity(Sign epsilon, double h = 1e-7)
{
    DiscontinuityReport r;
    const double mL = thermodynamic_magnetization(epsilon, -h);
    const double mL2 = thermodynamic_magnetization(epsilon, -2.0 * h);
    const double mR = thermodynamic_magnetization(epsilon, h);
    const double mR2 = thermodynamic_magnetization(epsilon, 2.0 * h);
    // Linear extrapolation to the one-sided limit and forward/backward slopes.
    r.mxLeft = 2.0 * mL - mL2;
    r.mxRight = 2.0 * mR - mR2;
    r.dmxLeft = (mL - mL2) / h;
    r.dmxRight = (mR2 - mR) / h;

    const Correlators cL = thermodynamic_correlations(-h), cL2 = thermodynamic_correlations(-2.0 * h);
    const Correlators cR = thermodynamic_correlations(h), cR2 = thermodynamic_correlations(2.0 * h);
    r.left = {2.0 * cL.Gx - cL2.Gx, 2.0 * cL.Gy - cL2.Gy, 2.0 * cL.Gz - cL2.Gz};
    r.right = {2.0 * cR.Gx - cR2.Gx, 2.0 * cR.Gy - cR2.Gy, 2.0 * cR.Gz - cR2.Gz};
    r.slopeLeft = {(cL.Gx - cL2.Gx) / h, (cL.Gy - cL2.Gy) / h, (cL.Gz - cL2.Gz) / h};
    r.slopeRight = {(cR2.Gx - cR.Gx) / h, (cR2.Gy - cR.Gy) / h, (cR2.Gz - cR.Gz) / h};
    return r;
}

} // namespace xyzmps
