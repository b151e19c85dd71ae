#include <gtest/gtest.h>

#include <xyzmps/xyzmps.hpp>

#include "oracles.hpp"

using namespace xyzmps;

namespace {

ModelParams params(int eps, int eta, double g, double J, int N = 4)
{
    return ModelParams{sign_from_int(eps), sign_from_int(eta), g, J, N};
}

void expect_couplings(const Couplings& c, double Jx, double Jy, double Jz, double B)
{
    EXPECT_DOUBLE_EQ(c.Jx, Jx);
    EXPECT_DOUBLE_EQ(c.Jy, Jy);
    EXPECT_DOUBLE_EQ(c.Jz, Jz);
    EXPECT_DOUBLE_EQ(c.B, B);
}

} // namespace

TEST(Couplings, WorkedPoints)
{
    expect_couplings(couplings_from_params(params(1, 1, 1.0, 0.0)), 1.0, 1.0, -1.0, 0.0);
    expect_couplings(couplings_from_params(params(1, 1, 0.0, 0.0)), 0.5, 0.0, 0.0, -1.0);
    expect_couplings(couplings_from_params(params(-1, -1, 2.0, 1.0)), 1.5, 3.0, -1.0, -3.0);
}

TEST(Couplings, SumAndDifferenceInvariants)
{
    for (int eta : {1, -1})
        for (double g : {-2.0, -0.3, 0.0, 0.7, 3.5})
            for (double J : {0.0, 0.5, 2.0}) {
                const Couplings c = couplings_from_params(params(1, eta, g, J));
                EXPECT_NEAR(c.Jy + c.Jz, -2.0 * eta * J, 1e-15);
                EXPECT_NEAR(c.Jy - c.Jz, 2.0 * g, 1e-15);
            }
}

TEST(Couplings, LinearInJQuadraticInG)
{
    // Second differences in J vanish; in g they equal 2h^2 times the quadratic coefficient.
    const double h = 0.25;
    for (double g : {-1.0, 0.4}) {
        const auto c0 = couplings_from_params(params(1, 1, g, 0.5));
        const auto c1 = couplings_from_params(params(1, 1, g, 0.5 + h));
        const auto c2 = couplings_from_params(params(1, 1, g, 0.5 + 2 * h));
        EXPECT_NEAR(c2.Jx - 2 * c1.Jx + c0.Jx, 0.0, 1e-14);
        EXPECT_NEAR(c2.Jy - 2 * c1.Jy + c0.Jy, 0.0, 1e-14);
        const auto d0 = couplings_from_params(params(1, 1, g, 1.0));
        const auto d1 = couplings_from_params(params(1, 1, g + h, 1.0));
        const auto d2 = couplings_from_params(params(1, 1, g + 2 * h, 1.0));
        EXPECT_NEAR(d2.Jx - 2 * d1.Jx + d0.Jx, h * h, 1e-14);
        EXPECT_NEAR(d2.B - 2 * d1.B + d0.B, 2 * h * h, 1e-14);
    }
}

TEST(ModelParams, Validation)
{
    EXPECT_THROW(params(1, 1, 0.5, -0.1).validate(), InvalidInput);
    EXPECT_THROW(params(1, 1, 0.5, 1.0, 2).validate(), InvalidInput);
    EXPECT_NO_THROW(params(1, -1, 0.5, 1.0, 5).validate());
    EXPECT_THROW(params(1, -1, 0.5, 1.0, 5).require_even_ring_for_eta_minus(), InvalidInput);
    EXPECT_THROW(sign_from_int(0), InvalidInput);
}

TEST(MpsMatrices, GhzPointAndEtaMinus)
{
    const MpsTensors t = mps_matrices(params(1, 1, 1.0, 0.0));
    Mat2 A0, A1;
    A0 << 1, 1, 1, 1;
    A1 << 1, -1, -1, 1;
    EXPECT_EQ(t.A0, A0);
    EXPECT_EQ(t.A1, A1);

    const MpsTensors s = mps_matrices(params(1, -1, 0.0, 0.0));
    A0 << 1, 0, 1, -1;
    A1 << 1, 0, -1, -1;
    EXPECT_EQ(s.A0, A0);
    EXPECT_EQ(s.A1, A1);
}

TEST(MpsMatrices, SpinFlipConjugation)
{
    const Mat2 Z = sigma_z();
    for (int eps : {1, -1})
        for (int eta : {1, -1})
            for (double g : {-1.5, 0.0, 0.3, 2.0}) {
                const MpsTensors t = mps_matrices(params(eps, eta, g, 0.0));
                EXPECT_LT((Z * t.A0 * Z - eps * t.A1).norm(), 1e-15);
                EXPECT_LT((Z * t.A1 * Z - eps * t.A0).norm(), 1e-15);
            }
}

TEST(Symmetries, ModelTensorsPassAllForNonzeroG)
{
    for (int eps : {1, -1})
        for (int eta : {1, -1})
            for (double g : {-2.0, -0.5, 0.3, 1.0}) {
                const SymmetryReport r = check_symmetries(mps_matrices(params(eps, eta, g, 0.0)), sign_from_int(eps));
                EXPECT_TRUE(r.spinFlip);
                ASSERT_TRUE(r.parity.has_value());
                EXPECT_TRUE(*r.parity);
                EXPECT_TRUE(r.timeReversal);
            }
}

TEST(Symmetries, ParityNotApplicableWhenSingular)
{
    const SymmetryReport atZero = check_symmetries(mps_matrices(params(1, 1, 0.0, 0.0)), Sign::Plus);
    EXPECT_TRUE(atZero.spinFlip);
    EXPECT_FALSE(atZero.parity.has_value());

    const MpsTensors bZero = general_tensors({1.0, 0.0, 2.0, 3.0}, Sign::Plus);
    EXPECT_FALSE(check_symmetries(bZero, Sign::Plus).parity.has_value());
}

TEST(Symmetries, DetectsBrokenTensors)
{
    using namespace std::complex_literals;
    MpsTensors t = mps_matrices(params(1, 1, 0.5, 0.0));
    t.A1(0, 0) += 0.1;
    t.A0(0, 0) += 0.2i;
    const SymmetryReport r = check_symmetries(t, Sign::Plus);
    EXPECT_FALSE(r.spinFlip);
    EXPECT_FALSE(r.timeReversal);
    // Wrong epsilon also fails the spin-flip check.
    EXPECT_FALSE(check_symmetries(mps_matrices(params(1, 1, 0.5, 0.0)), Sign::Minus).spinFlip);
}

TEST(GeneralForm, ParityHoldsForGenericEntries)
{
    const MpsTensors t = general_tensors({1.3, -0.4, 2.1, 0.7}, Sign::Minus);
    const SymmetryReport r = check_symmetries(t, Sign::Minus);
    EXPECT_TRUE(r.spinFlip);
    ASSERT_TRUE(r.parity.has_value());
    EXPECT_TRUE(*r.parity);
}

TEST(SymmetryMaps, EpsilonRelatedBySigmaZConjugation)
{
    for (int N : {3, 4, 5})
        for (double g : {-0.5, 0.7})
            for (int eta : {1, -1}) {
                const MatX Hp = assemble_chain_H(params(1, eta, g, 0.8, N), HamiltonianForm::Xyz);
                const MatX Hm = assemble_chain_H(params(-1, eta, g, 0.8, N), HamiltonianForm::Xyz);
                const auto Z = sigma_z_unitaries(N);
                EXPECT_LT((conjugate_by_site_unitaries(Hp, Z) - Hm).cwiseAbs().maxCoeff(), 1e-12);
            }
}

TEST(SymmetryMaps, EtaRelatedByAlternatingRotationEitherSign)
{
    for (int N : {4, 6})
        for (double g : {-1.2, 0.3})
            for (double thetaSign : {1.0, -1.0}) {
                const MatX Hp = assemble_chain_H(params(1, 1, g, 0.6, N), HamiltonianForm::Xyz);
                const MatX Hm = assemble_chain_H(params(1, -1, g, 0.6, N), HamiltonianForm::Xyz);
                const auto U = eta_rotation_unitaries(N, thetaSign);
                EXPECT_LT((conjugate_by_site_unitaries(Hp, U) - Hm).cwiseAbs().maxCoeff(), 1e-12);
            }
}

TEST(SymmetryMaps, ConjugationMatchesKroneckerOracle)
{
    const int N = 4;
    const MatX H = assemble_chain_H(params(1, 1, 0.4, 1.0, N), HamiltonianForm::Xyz);
    const auto U = eta_rotation_unitaries(N);
    const MatX Ufull = oracle::site_product(U);
    EXPECT_LT((conjugate_by_site_unitaries(H, U) - Ufull * H * Ufull.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_THROW(eta_rotation_unitaries(5), InvalidInput);
}
