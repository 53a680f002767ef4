// Copyright 2026 The mubqct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mubqct/mub.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mubqct/errors.hpp"

namespace mubqct::galois {
namespace {

double max_cross_deviation(const MubFamily& family) {
    const double target = 1.0 / std::sqrt(static_cast<double>(family.d()));
    double worst = 0;
    for (std::size_t a = 0; a < family.basis_count(); ++a)
        for (std::size_t b = a + 1; b < family.basis_count(); ++b) {
            const CMatrix g = family.basis(a).adjoint() * family.basis(b);
            worst = std::max(worst, (g.cwiseAbs().array() - target).abs().maxCoeff());
        }
    return worst;
}

TEST(Dimension, Bounds) {
    EXPECT_EQ(Dimension::from_exponent(3).size(), 8u);
    EXPECT_EQ(Dimension::from_size(16).exponent(), 4);
    EXPECT_EQ(Dimension::from_size(16).half(), 8u);
    EXPECT_EQ(Dimension::from_size(16).basis_count(), 17u);
    EXPECT_THROW(Dimension::from_exponent(0), std::out_of_range);
    EXPECT_THROW(Dimension::from_exponent(17), std::out_of_range);
    EXPECT_THROW(Dimension::from_size(6), std::invalid_argument);
    EXPECT_THROW(Dimension::from_size(1), std::invalid_argument);
}

TEST(BuildMubFamily, QubitHasThreePauliBases) {
    const auto family = build_mub_family(1);
    ASSERT_EQ(family.basis_count(), 3u);
    EXPECT_TRUE(family.basis(0).isApprox(CMatrix::Identity(2, 2)));
    const double s = 1.0 / std::sqrt(2.0);
    // Each nontrivial basis diagonalizes X or Y.
    CMatrix x(2, 2), y(2, 2);
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    int saw_x = 0, saw_y = 0;
    for (std::size_t t = 1; t < 3; ++t) {
        const CMatrix& b = family.basis(t);
        const CMatrix dx = b.adjoint() * x * b, dy = b.adjoint() * y * b;
        if (std::abs(dx(0, 1)) < 1e-12 && std::abs(std::abs(dx(0, 0)) - 1) < 1e-12) ++saw_x;
        if (std::abs(dy(0, 1)) < 1e-12 && std::abs(std::abs(dy(0, 0)) - 1) < 1e-12) ++saw_y;
        EXPECT_NEAR(std::abs(family.basis(0).col(0).dot(b.col(0))), s, 1e-12);
    }
    EXPECT_EQ(saw_x, 1);
    EXPECT_EQ(saw_y, 1);
    const CMatrix same = family.basis(0).adjoint() * family.basis(0);
    EXPECT_TRUE(same.isApprox(CMatrix::Identity(2, 2)));
}

TEST(BuildMubFamily, FourDimensionalFamilyHasTenUnbiasedPairs) {
    const auto family = build_mub_family(2);
    ASSERT_EQ(family.basis_count(), 5u);
    int pairs = 0;
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = a + 1; b < 5; ++b, ++pairs) {
            const CMatrix g = family.basis(a).adjoint() * family.basis(b);
            for (Eigen::Index i = 0; i < 4; ++i)
                for (Eigen::Index j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(g(i, j)), 0.5, 1e-12);
        }
    EXPECT_EQ(pairs, 10);
}

TEST(BuildMubFamily, ValidUpToTheCap) {
    for (int k = 1; k <= 5; ++k) {
        const auto family = build_mub_family(k);
        EXPECT_EQ(family.basis_count(), family.d() + 1);
        EXPECT_LT(max_cross_deviation(family), 1e-9) << "k=" << k;
        EXPECT_TRUE(verify_unbiasedness(family, 1e-9).passed) << "k=" << k;
    }
    // Full scans are cubic in d per pair; spot-check a few pairs at the cap.
    for (int k : {7, 8}) {
        const auto family = build_mub_family(k);
        const std::size_t d = family.d();
        ASSERT_EQ(family.basis_count(), d + 1);
        const double target = 1.0 / std::sqrt(static_cast<double>(d));
        for (auto [a, b] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 2}, {3, d}, {d - 1, d}}) {
            const CMatrix g = family.basis(a).adjoint() * family.basis(b);
            EXPECT_LT((g.cwiseAbs().array() - target).abs().maxCoeff(), 1e-9) << k << ":" << a << "," << b;
        }
        const CMatrix gram = family.basis(d / 2).adjoint() * family.basis(d / 2);
        EXPECT_LT((gram - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-9);
    }
    EXPECT_THROW(build_mub_family(0), std::out_of_range);
    EXPECT_THROW(build_mub_family(9), CapabilityError);
}

TEST(BuildMubFamily, Deterministic) {
    const auto a = build_mub_family(5), b = build_mub_family(5);
    for (std::size_t t = 0; t < a.basis_count(); ++t) EXPECT_EQ(a.basis(t), b.basis(t));
}

TEST(VerifyUnbiasedness, ReportsAScaledColumn) {
    const auto good = build_mub_family(2);
    auto bases = good.bases();
    bases[2].col(1) *= 1.01;
    const MubFamily bad(good.dimension(), bases);
    const auto rep = verify_unbiasedness(bad, 1e-9);
    EXPECT_FALSE(rep.passed);
    EXPECT_NEAR(rep.max_orthonormality_deviation, 0.01, 1e-9);
    EXPECT_EQ(rep.orth_theta, 2u);
    EXPECT_EQ(rep.orth_i, 1u);
    EXPECT_EQ(rep.orth_j, 1u);
}

TEST(VerifyUnbiasedness, ReportsABiasedPair) {
    const auto good = build_mub_family(2);
    auto bases = good.bases();
    bases[3] = bases[4];  // same basis twice is orthonormal but not unbiased
    const auto rep = verify_unbiasedness(MubFamily(good.dimension(), bases), 1e-9);
    EXPECT_FALSE(rep.passed);
    EXPECT_NEAR(rep.max_unbiasedness_deviation, 0.5, 1e-12);
    EXPECT_LT(rep.max_orthonormality_deviation, 1e-12);
}

TEST(MubFamily, ShapeChecks) {
    const auto dim = Dimension::from_exponent(1);
    EXPECT_THROW(MubFamily(dim, {CMatrix::Identity(2, 2)}), std::invalid_argument);
    EXPECT_THROW(MubFamily(dim, {CMatrix::Identity(2, 2), CMatrix::Identity(2, 2),
                                 CMatrix::Identity(3, 3)}),
                 std::invalid_argument);
}

TEST(BasisState, ConventionsAndNorm) {
    const auto family = build_mub_family(3);
    const CVector e00 = basis_state(family, 0, 0);
    EXPECT_EQ(e00(0), Complex(1, 0));
    EXPECT_NEAR(e00.norm(), 1.0, 1e-12);
    for (std::size_t t = 0; t <= 8; ++t)
        for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(basis_state(family, t, i).norm(), 1.0, 1e-12);
    EXPECT_THROW(basis_state(family, 9, 0), std::out_of_range);
    EXPECT_THROW(basis_state(family, 0, 8), std::out_of_range);

    const auto qubit = build_mub_family(1);
    for (std::size_t t = 1; t < 3; ++t) {
        EXPECT_NEAR(std::abs(basis_state(qubit, 0, 0).dot(basis_state(qubit, t, 0))),
                    1.0 / std::sqrt(2.0), 1e-12);
    }
}

TEST(FamilyText, RoundTrip) {
    const auto family = build_mub_family(3);
    std::stringstream buf;
    write_family_text(buf, family);
    const auto back = read_family_text(buf);
    ASSERT_EQ(back.d(), 8u);
    for (std::size_t t = 0; t < family.basis_count(); ++t) {
        EXPECT_LT((back.basis(t) - family.basis(t)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(FamilyText, MalformedInput) {
    std::stringstream empty;
    EXPECT_THROW(read_family_text(empty), std::runtime_error);
    std::stringstream header("dimension four\n");
    EXPECT_THROW(read_family_text(header), std::runtime_error);
    std::stringstream truncated("d=2 bases=3\n0 0 1 0 0 0\n");
    EXPECT_THROW(read_family_text(truncated), std::runtime_error);
}

}  // namespace
}  // namespace mubqct::galois
