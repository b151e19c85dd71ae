#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <xyzmps/xyzmps.hpp>

#include "oracles.hpp"

using namespace xyzmps;

namespace {

ModelParams params(int eps, int eta, double g, int N = 4, double J = 1.0)
{
    return ModelParams{sign_from_int(eps), sign_from_int(eta), g, J, N};
}

std::vector<double> sorted_real(const Vec4& v)
{
    std::vector<double> out;
    for (int k = 0; k < 4; ++k) out.push_back(v(k).real());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST(Amplitude, GhzPointValues)
{
    const MpsTensors t = mps_matrices(params(1, 1, 1.0));
    EXPECT_EQ(amplitude(t, bits_from_string("0000")), Complex(16.0));
    EXPECT_EQ(amplitude(t, bits_from_string("0001")), Complex(0.0));
    EXPECT_THROW(amplitude(t, bits_from_string("01")), InvalidInput);
}

TEST(Amplitude, CyclicReflectionAndFlipInvariance)
{
    std::mt19937_64 rng(7);
    for (int eps : {1, -1})
        for (int eta : {1, -1})
            for (double g : {-1.3, 0.4, 2.2}) {
                const MpsTensors t = mps_matrices(params(eps, eta, g));
                for (int N : {3, 6, 10}) {
                    for (int trial = 0; trial < 20; ++trial) {
                        std::vector<int> bits(N);
                        for (int& b : bits) b = static_cast<int>(rng() & 1u);
                        const Complex a = amplitude(t, bits);
                        const double tol = 1e-12 * std::max(1.0, std::abs(a));

                        std::vector<int> shifted = bits;
                        std::rotate(shifted.begin(), shifted.begin() + 1, shifted.end());
                        EXPECT_LT(std::abs(amplitude(t, shifted) - a), tol);

                        std::vector<int> reversed(bits.rbegin(), bits.rend());
                        EXPECT_LT(std::abs(amplitude(t, reversed) - a), tol);

                        std::vector<int> flipped = bits;
                        for (int& b : flipped) b ^= 1;
                        const double sign = (eps == -1 && N % 2 != 0) ? -1.0 : 1.0;
                        EXPECT_LT(std::abs(amplitude(t, flipped) - sign * a), tol);
                    }
                }
            }
}

TEST(BuildState, GhzAtGEqualsOne)
{
    const BuiltState b = build_state(mps_matrices(params(1, 1, 1.0)), 4);
    VecX ghz = VecX::Zero(16);
    ghz(0) = ghz(15) = 1.0 / std::sqrt(2.0);
    EXPECT_LT((b.state.amplitudes - ghz).norm(), 1e-14);
    int nonzero = 0;
    for (int N : {3, 5, 8}) {
        const BuiltState s = build_state(mps_matrices(params(1, 1, 1.0)), N);
        nonzero = static_cast<int>((s.state.amplitudes.array().abs() > 1e-14).count());
        EXPECT_EQ(nonzero, 2);
    }
}

TEST(BuildState, ProductStateAtGZero)
{
    const BuiltState b = build_state(mps_matrices(params(1, 1, 0.0)), 4);
    EXPECT_LT((b.state.amplitudes - VecX::Constant(16, 0.25)).norm(), 1e-14);
}

TEST(BuildState, MatchesPlainTraceLoopAndNormalization)
{
    for (int eps : {1, -1})
        for (int eta : {1, -1})
            for (double g : {-2.0, -0.5, 0.3, 1.5})
                for (int N : {3, 4, 7, 10, 12}) {
                    const MpsTensors t = mps_matrices(params(eps, eta, g));
                    if (eta == -1 && N % 2 != 0) {
                        EXPECT_THROW(build_state(t, N), InvalidInput);
                        continue;
                    }
                    const BuiltState b = build_state(t, N);
                    const VecX raw = oracle::trace_amplitudes(t, N);
                    EXPECT_NEAR(b.state.norm(), 1.0, 1e-12);
                    EXPECT_NEAR(b.Z / raw.squaredNorm(), 1.0, 1e-12);
                    EXPECT_NEAR(b.ZTransfer / b.Z, 1.0, 1e-10);
                    EXPECT_LT((b.state.amplitudes - raw / raw.norm()).norm(), 1e-12);
                }
}

TEST(BuildState, EtaMinusVanishesOnOddRings)
{
    // tr(E^N) = sum of (2(-1 +- g))^N + (2(1 +- g))^N cancels for odd N.
    for (double g : {-0.5, 0.3, 1.5})
        for (int N : {3, 5, 9}) {
            const MpsTensors t = mps_matrices(params(1, -1, g));
            EXPECT_LT(oracle::trace_amplitudes(t, N).norm(), 1e-10);
            EXPECT_THROW(build_state(t, N), InvalidInput);
        }
}

TEST(BuildState, RejectsVanishingTensorsAndOversizedRings)
{
    const MpsTensors zero = general_tensors({0.0, 0.0, 0.0, 0.0}, Sign::Plus);
    EXPECT_THROW(build_state(zero, 4), InvalidInput);
    EXPECT_THROW(build_state(mps_matrices(params(1, 1, 0.5)), kMaxStateSites + 1), InvalidInput);
}

TEST(TransferMatrix, SpectrumWorkedPoints)
{
    const auto ev1 = sorted_real(transfer_matrix(mps_matrices(params(1, 1, 0.5))).eigenvalues());
    const std::vector<double> want1 = {1.0, 1.0, 3.0, 3.0};
    const auto ev2 = sorted_real(transfer_matrix(mps_matrices(params(1, -1, 0.5))).eigenvalues());
    const std::vector<double> want2 = {-3.0, -1.0, 1.0, 3.0};
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(ev1[k], want1[k], 1e-12);
        EXPECT_NEAR(ev2[k], want2[k], 1e-12);
    }
}

TEST(TransferMatrix, IdentityDressingAndRealEntries)
{
    const MpsTensors t = mps_matrices(params(-1, 1, 0.7));
    EXPECT_LT((transfer_with_operator(t, Mat2::Identity()).E - transfer_matrix(t).E).norm(), 1e-15);
    EXPECT_LT(transfer_matrix(t).E.imag().norm(), 1e-15);
}

TEST(TransferMatrix, TrackedBranchesCrossAtZero)
{
    for (int eta : {1, -1}) {
        const auto lo = tracked_branch_eigenvalues(transfer_matrix(mps_matrices(params(1, eta, -1e-3))));
        const auto hi = tracked_branch_eigenvalues(transfer_matrix(mps_matrices(params(1, eta, 1e-3))));
        EXPECT_LT(lo.residual, 1e-14);
        EXPECT_LT(hi.residual, 1e-14);
        EXPECT_LT((lo.symmetric - lo.antisymmetric).real(), 0.0);
        EXPECT_GT((hi.symmetric - hi.antisymmetric).real(), 0.0);
        EXPECT_NEAR(hi.symmetric.real(), 2.0 * (eta + 1e-3), 1e-14);
    }
}

TEST(Expectation, OnePointWorkedValues)
{
    const MpsTensors t = mps_matrices(params(1, 1, 1.0 / 3.0));
    for (int k = 1; k <= 4; ++k) {
        EXPECT_NEAR(expectation_one_point(t, sigma_x(), k, 4).real(), 10.0 / 17.0, 1e-14);
        EXPECT_NEAR(std::abs(expectation_one_point(t, sigma_z(), k, 4)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(expectation_one_point(t, sigma_y(), k, 4)), 0.0, 1e-14);
        EXPECT_NEAR(expectation_one_point(t, Mat2::Identity(), k, 4).real(), 1.0, 1e-14);
    }
    EXPECT_THROW(expectation_one_point(t, sigma_x(), 5, 4), InvalidInput);
}

TEST(Expectation, TwoPointWorkedValues)
{
    const MpsTensors t = mps_matrices(params(1, 1, 1.0 / 3.0));
    for (int r = 2; r <= 4; ++r) {
        EXPECT_NEAR(expectation_two_point(t, sigma_x(), sigma_x(), r, 4).real(), 8.0 / 17.0, 1e-14);
        EXPECT_NEAR(expectation_two_point(t, sigma_y(), sigma_y(), r, 4).real(), -3.0 / 17.0, 1e-14);
        EXPECT_NEAR(expectation_two_point(t, sigma_z(), sigma_z(), r, 4).real(), 12.0 / 17.0, 1e-14);
        EXPECT_NEAR(expectation_two_point(t, Mat2::Identity(), Mat2::Identity(), r, 4).real(), 1.0, 1e-14);
    }
    EXPECT_THROW(expectation_two_point(t, sigma_x(), sigma_x(), 1, 4), InvalidInput);
}

TEST(Expectation, TransferFormulasMatchKroneckerOracle)
{
    const std::array<Mat2, 3> ops = {sigma_x(), sigma_y(), sigma_z()};
    for (int eps : {1, -1})
        for (int eta : {1, -1})
            for (double g : {-0.8, 0.45, 1.7})
                for (int N : {4, 5, 7}) {
                    if (eta == -1 && N % 2 != 0) continue;
                    const MpsTensors t = mps_matrices(params(eps, eta, g));
                    const VecX psi = build_state(t, N).state.amplitudes;
                    for (const Mat2& O : ops) {
                        for (int k = 1; k <= N; ++k) {
                            const Complex want = psi.dot(oracle::local_operator(O, k, N) * psi);
                            EXPECT_LT(std::abs(expectation_one_point(t, O, k, N) - want), 1e-12);
                        }
                        for (int r = 2; r <= N; ++r) {
                            const Complex want = psi.dot(oracle::pair_operator(O, 1, O, r, N) * psi);
                            EXPECT_LT(std::abs(expectation_two_point(t, O, O, r, N) - want), 1e-12);
                        }
                    }
                }
}

TEST(ExplicitGroundState, GhzAtGEqualsOne)
{
    const PureState s = explicit_ground_state(params(1, 1, 1.0, 3));
    VecX ghz = VecX::Zero(8);
    ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
    EXPECT_LT((s.amplitudes - ghz).norm(), 1e-14);
}

TEST(ExplicitGroundState, MatchesTraceConstructionAllClasses)
{
    for (int eps : {1, -1})
        for (int eta : {1, -1})
            for (double g : {-2.0, -0.5, 0.3, 1.0, 1.5})
                for (int N : {4, 6, 8}) {
                    const ModelParams p = params(eps, eta, g, N);
                    const PureState e = explicit_ground_state(p);
                    const PureState b = build_state(mps_matrices(p), N).state;
                    EXPECT_NEAR(e.norm(), 1.0, 1e-12) << "closed-form Z";
                    EXPECT_GT(overlap_magnitude(e, b), 1.0 - 1e-12);
                    EXPECT_LT((with_canonical_phase(e).amplitudes - with_canonical_phase(b).amplitudes).norm(), 1e-10);
                }
    // eta = 1 also holds on odd rings.
    const ModelParams odd = params(-1, 1, 0.6, 5);
    EXPECT_GT(overlap_magnitude(explicit_ground_state(odd), build_state(mps_matrices(odd), 5).state), 1.0 - 1e-12);
}

TEST(ExplicitGroundState, NegativeGIsRealUpToPhase)
{
    const PureState s = with_canonical_phase(explicit_ground_state(params(1, 1, -0.5, 4)));
    EXPECT_LT(s.amplitudes.imag().norm(), 1e-14);
}

TEST(ExplicitGroundState, OddRingEtaMinusRejected)
{
    EXPECT_THROW(explicit_ground_state(params(1, -1, 0.5, 5)), InvalidInput);
}

TEST(ExplicitGroundState, SpinFlipEigenstate)
{
    for (int N : {4, 6, 8})
        for (double g : {-0.5, 0.3, 1.5}) {
            const PureState s = explicit_ground_state(params(1, 1, g, N));
            EXPECT_LT((apply_on_all_sites(s.amplitudes, sigma_x(), N) - s.amplitudes).norm(), 1e-10);
        }
}

TEST(BellPairMatrices, CommuteForEtaMinus)
{
    for (double g : {-1.0, 0.0, 0.4, 2.0}) {
        const auto phi = bell_pair_matrices(mps_matrices(params(1, -1, g)));
        for (const Mat2& a : phi)
            for (const Mat2& b : phi) EXPECT_LT((a * b - b * a).norm(), 1e-12);
    }
}

TEST(BellPairMatrices, WorkedEntries)
{
    const auto ghz = bell_pair_matrices(mps_matrices(params(1, 1, 1.0)));
    // A0 A1 = A1 A0 = 0 at g = 1, so both m = 1 combinations vanish.
    EXPECT_LT(ghz[2].norm(), 1e-15);
    EXPECT_LT(ghz[3].norm(), 1e-15);
    EXPECT_GT(ghz[1].norm(), 1.0);
    const auto zero = bell_pair_matrices(mps_matrices(params(1, -1, 0.0)));
    // A0^2 + A1^2 at eta = -1, g = 0: [[1,0],[0,1]] + [[1,0],[0,1]].
    EXPECT_LT((zero[0] - std::sqrt(2.0) * Mat2::Identity()).norm(), 1e-15);
}

TEST(CanonicalPhase, RemovesGlobalPhase)
{
    using namespace std::complex_literals;
    std::mt19937_64 rng(3);
    PureState s{3, oracle::random_state(rng, 8)};
    PureState r = s;
    r.amplitudes *= std::exp(0.83i);
    EXPECT_LT((with_canonical_phase(s).amplitudes - with_canonical_phase(r).amplitudes).norm(), 1e-14);
    EXPECT_GT(with_canonical_phase(s).amplitudes(0).real(), 0.0);
}
