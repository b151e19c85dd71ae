#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace xyzmps {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;
using VecX = Eigen::VectorXcd;
using MatX = Eigen::MatrixXcd;

/// Largest ring for which a dense 2^N state vector is built.
inline constexpr int kMaxStateSites = 20;
/// Largest ring for which a dense 2^N x 2^N Hamiltonian is assembled.
inline constexpr int kMaxDenseSites = 12;

/// Precondition violated by the caller (bad ring size, non-Hermitian input, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A closed form is undefined at this parameter (g = -1, the g = 0 limit, ...).
class SingularParameter : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The discrete signs epsilon and eta.
enum class Sign : int { Plus = 1, Minus = -1 };

constexpr double value(Sign s) noexcept { return static_cast<double>(static_cast<int>(s)); }
constexpr Sign flip(Sign s) noexcept { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

inline Sign sign_from_int(int v)
{
    if (v == 1) return Sign::Plus;
    if (v == -1) return Sign::Minus;
    throw InvalidInput("sign must be +1 or -1, got " + std::to_string(v));
}

inline std::string to_string(Sign s) { return s == Sign::Plus ? "+1" : "-1"; }

} // namespace xyzmps
