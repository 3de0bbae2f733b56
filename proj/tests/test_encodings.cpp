#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <densecap/encodings.hpp>
#include <densecap/random.hpp>

#include "test_support.hpp"

using namespace densecap;
using densecap::testing::max_abs;

TEST(CanonicalSet, StandardFrameGivesPaulis) {
    const auto e = canonical_qubit_set(OrthonormalFrame::standard());
    ASSERT_EQ(e.size(), 4u);
    for (int k = 0; k < 4; ++k) {
        EXPECT_LT(max_abs(e.unitaries()[static_cast<std::size_t>(k)] - pauli(k)), 1e-15);
        EXPECT_DOUBLE_EQ(e.prior()[static_cast<std::size_t>(k)], 0.25);
    }
}

TEST(CanonicalSet, RotatedFramesAreTraceOrthogonal) {
    Engine rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto e = canonical_qubit_set(random_frame(rng));
        const auto check = verify_orthogonality(e);
        EXPECT_TRUE(check.orthonormal);
        EXPECT_LT(max_abs(check.gram * 2.0 - 2.0 * CMatrix::Identity(4, 4)), 1e-12);
        for (const auto& u : e.unitaries()) {
            EXPECT_NEAR(std::abs(u.determinant()), 1.0, 1e-12);
            EXPECT_LT(max_abs(u - u.adjoint()), 1e-15);
        }
    }
}

TEST(CanonicalSet, RejectsNonOrthonormalFrame) {
    OrthonormalFrame f;
    f.n2 = Eigen::Vector3d(1.0, 1.0, 0.0).normalized();
    try {
        canonical_qubit_set(f);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FrameNotOrthonormal);
    }
}

TEST(AntipodalPair, NorthPoleUsesNot) {
    const auto e = antipodal_pair({0, 0, 1});
    EXPECT_LT(max_abs(e.unitaries()[1] - pauli(1)), 1e-15);
    const CMatrix flipped = e.unitaries()[1] * from_bloch({0, 0, 1}).matrix() * e.unitaries()[1].adjoint();
    EXPECT_LT(max_abs(flipped - from_bloch({0, 0, -1}).matrix()), 1e-15);
}

TEST(AntipodalPair, XAxisUsesSigmaZ) {
    const auto e = antipodal_pair({1, 0, 0});
    EXPECT_LT(max_abs(e.unitaries()[1] - pauli(3)), 1e-15);
    const CMatrix flipped = e.unitaries()[1] * from_bloch({1, 0, 0}).matrix() * e.unitaries()[1].adjoint();
    EXPECT_LT(max_abs(flipped - from_bloch({-1, 0, 0}).matrix()), 1e-15);
}

TEST(AntipodalPair, MapsToAntipodeAndAveragesToTotalMixture) {
    Engine rng(5);
    for (int i = 0; i < 200; ++i) {
        BlochVector v = random_bloch(rng);
        if (i == 0) v = {0.0, 0.7, 0.0};  // parallel to the primary reference axis
        const auto e = antipodal_pair(v);
        EXPECT_EQ(e.prior(), (std::vector<double>{0.5, 0.5}));
        const CMatrix& u = e.unitaries()[1];
        const BlochVector minus{-v.x, -v.y, -v.z};
        EXPECT_LT(max_abs(u * from_bloch(v).matrix() * u.adjoint() - from_bloch(minus).matrix()), 1e-12);
        EXPECT_LT(max_abs(twirl(e, from_bloch(v).matrix()) - CMatrix::Identity(2, 2) / 2.0), 1e-12);
    }
}

TEST(AntipodalPair, ZeroVectorFallsBackToSigmaX) {
    const auto e = antipodal_pair({0, 0, 0});
    EXPECT_LT(max_abs(e.unitaries()[1] - pauli(1)), 1e-15);
}

TEST(GellMann, QubitBasisIsPauli) {
    const auto b = gellmann_basis(2);
    ASSERT_EQ(b.lambdas.size(), 3u);
    for (int k = 0; k < 3; ++k) EXPECT_LT(max_abs(b.lambdas[static_cast<std::size_t>(k)] - pauli(k + 1)), 1e-15);
}

TEST(GellMann, TracelessAndOrthogonal) {
    for (int d = 2; d <= 7; ++d) {
        const auto b = gellmann_basis(d);
        ASSERT_EQ(b.lambdas.size(), static_cast<std::size_t>(d * d - 1));
        for (std::size_t a = 0; a < b.lambdas.size(); ++a) {
            EXPECT_LT(std::abs(b.lambdas[a].trace()), 1e-14);
            EXPECT_LT(max_abs(b.lambdas[a] - b.lambdas[a].adjoint()), 1e-15);
            for (std::size_t c = 0; c < b.lambdas.size(); ++c) {
                const double expected = a == c ? d : 0.0;
                EXPECT_NEAR(std::abs((b.lambdas[a] * b.lambdas[c]).trace() - Complex(expected, 0.0)), 0.0, 1e-12);
            }
        }
    }
}

TEST(GellMann, QutritMatchesRescaledStandardSet) {
    // Standard Gell-Mann lambda_1 (symmetric 01) and lambda_8 (last diagonal), times sqrt(3/2).
    const auto b = gellmann_basis(3);
    CMatrix l1 = CMatrix::Zero(3, 3);
    l1(0, 1) = l1(1, 0) = 1.0;
    CMatrix l8 = CMatrix::Zero(3, 3);
    l8(0, 0) = l8(1, 1) = 1.0 / std::sqrt(3.0);
    l8(2, 2) = -2.0 / std::sqrt(3.0);
    EXPECT_LT(max_abs(b.lambdas.front() - std::sqrt(1.5) * l1), 1e-14);
    EXPECT_LT(max_abs(b.lambdas.back() - std::sqrt(1.5) * l8), 1e-14);
}

TEST(GellMann, InvalidDimension) {
    try {
        gellmann_basis(1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidDimension);
    }
}

TEST(Weyl, QubitSetIsPauliUpToPhase) {
    const auto e = weyl_set(2);
    const CMatrix expected[4] = {pauli(0), pauli(3), pauli(1), pauli(1) * pauli(3)};
    for (int a = 0; a < 4; ++a) EXPECT_LT(max_abs(e.unitaries()[static_cast<std::size_t>(a)] - expected[a]), 1e-15);
}

TEST(Weyl, GramIsScaledIdentity) {
    for (int d = 2; d <= 6; ++d) {
        const auto e = weyl_set(d);
        ASSERT_EQ(e.size(), static_cast<std::size_t>(d * d));
        const auto check = verify_orthogonality(e);
        EXPECT_TRUE(check.orthonormal) << "d = " << d;
        EXPECT_LT(max_abs(check.gram * double(d) - d * CMatrix::Identity(d * d, d * d)), 1e-12);
        for (const auto& u : e.unitaries()) EXPECT_NEAR(std::abs(u.determinant()), 1.0, 1e-12);
    }
    EXPECT_THROW(weyl_set(1), Error);
}

TEST(VerifyOrthogonality, DegenerateEnsemble) {
    const EncodingEnsemble e(2, {pauli(0), pauli(0)});
    const auto check = verify_orthogonality(e);
    EXPECT_FALSE(check.orthonormal);
    EXPECT_LT(max_abs(check.gram - CMatrix::Ones(2, 2)), 1e-15);
    EXPECT_TRUE(verify_orthogonality(canonical_qubit_set({})).orthonormal);
    EXPECT_TRUE(verify_orthogonality(weyl_set(5)).orthonormal);
}

TEST(Ensemble, Validation) {
    CMatrix not_unitary = pauli(0) * 2.0;
    EXPECT_THROW(EncodingEnsemble(2, {not_unitary}), Error);
    EXPECT_THROW(EncodingEnsemble(2, {pauli(0), pauli(1)}, {0.5}), Error);
    EXPECT_THROW(EncodingEnsemble(2, {pauli(0), pauli(1)}, {0.6, 0.6}), Error);
    EXPECT_THROW(EncodingEnsemble(2, {pauli(0), pauli(1)}, {1.5, -0.5}), Error);
    EXPECT_THROW(EncodingEnsemble(3, {pauli(0)}), Error);
    EXPECT_THROW(EncodingEnsemble(2, std::vector<CMatrix>{}), Error);
}

TEST(Twirl, FrameTwirlGivesTotalMixture) {
    Engine rng(29);
    for (int f = 0; f < 50; ++f) {
        const auto e = canonical_qubit_set(random_frame(rng));
        for (int i = 0; i < 20; ++i) {
            const auto rho = random_density_matrix(2, rng);
            EXPECT_LT((twirl(e, rho.matrix()) - CMatrix::Identity(2, 2) / 2.0).norm(), 1e-12);
        }
        for (int c = 1; c <= 3; ++c) EXPECT_LT(twirl(e, pauli(c)).norm(), 1e-12);
    }
}

TEST(Twirl, WeylTwirlGivesTotalMixtureAndKillsBasis) {
    Engine rng(31);
    for (int d = 2; d <= 5; ++d) {
        const auto e = weyl_set(d);
        for (int i = 0; i < 20; ++i) {
            const auto rho = random_density_matrix(d, rng);
            EXPECT_LT((twirl(e, rho.matrix()) - CMatrix::Identity(d, d) / double(d)).norm(), 1e-10);
        }
        // xi_alpha = sum_a U_a L_alpha U_a^dagger vanishes.
        for (const auto& l : gellmann_basis(d).lambdas) EXPECT_LT((twirl(e, l) * double(d * d)).norm(), 1e-10);
    }
}

TEST(Twirl, TwoUnitariesCannotTwirlGenericState) {
    const EncodingEnsemble pair(2, {pauli(0), pauli(1)});
    const CMatrix out = twirl(pair, from_bloch({0.3, 0.4, 0.5}).matrix());
    EXPECT_GT((out - CMatrix::Identity(2, 2) / 2.0).norm(), 0.1);
}

TEST(LocalEncodings, NoSixteenOrthogonalLocalUnitaries) {
    // Local unitaries U (x) 1 on C^2 (x) C^2 span at most the 4-dimensional
    // space of 2x2 operators, so at most 4 of them can be trace-orthogonal and
    // the joint condition Tr = 4 delta_ab fails for any 16.
    Engine rng(37);
    std::vector<CMatrix> local;
    for (int i = 0; i < 16; ++i) local.push_back(random_unitary(2, rng));
    const auto lifted = lift_to_sender(EncodingEnsemble(2, local), {2, 2}, Subsystem::A);
    const auto check = verify_orthogonality(lifted);
    EXPECT_FALSE(check.orthonormal);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(check.gram);
    int rank = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) rank += es.eigenvalues()(i) > 1e-9;
    EXPECT_LE(rank, 4);

    // |Tr (U_a (x) 1)^dagger (U_b (x) 1)| = 2 |Tr U_a^dagger U_b| and the
    // lifted Pauli set saturates the count of 4.
    EXPECT_TRUE(verify_orthogonality(lift_to_sender(weyl_set(2), {2, 2}, Subsystem::A)).orthonormal);
}

TEST(LocalEncodings, LiftDimensionMismatch) {
    EXPECT_THROW(lift_to_sender(weyl_set(3), {2, 3}, Subsystem::A), Error);
    const auto lifted = lift_to_sender(weyl_set(3), {2, 3}, Subsystem::B);
    EXPECT_EQ(lifted.dim(), 6);
}
