// Copyright 2026 The mubtomo Authors
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


#include "mubtomo/tomography.hpp"

#include "gtest/gtest.h"

#include "mubtomo/random.hpp"
#include "oracles.hpp"

using namespace mubtomo;

namespace {

Tomogram qubit_tomogram(std::vector<double> p) {
    return Tomogram(2, std::move(p));
}

}  // namespace

TEST(tomography, scan_maximally_mixed) {
    for (std::size_t d : {2, 3, 5}) {
        Tomogram t = scan(DensityMatrix::maximally_mixed(d), construct_mub(d));
        for (double p : t.probs()) {
            ASSERT_NEAR(p, 1.0 / d, 1e-15);
        }
    }
}

TEST(tomography, scan_z_plus) {
    Tomogram t = scan(DensityMatrix(ComplexMatrix{{1, 0}, {0, 0}}), construct_mub(2));
    std::vector<double> expected = {0.5, 0.5, 0.5, 0.5, 1, 0};
    for (std::size_t x = 0; x < 6; ++x) {
        ASSERT_NEAR(t[x], expected[x], 1e-15);
    }
}

TEST(tomography, scan_rows_are_normalized) {
    SplitMix64 rng(11);
    MubSet set = construct_mub(3);
    for (int trial = 0; trial < 10; ++trial) {
        Tomogram t = scan(random_density_matrix(3, rng), set);
        for (std::size_t a = 0; a <= 3; ++a) {
            ASSERT_NEAR(t(a, 0) + t(a, 1) + t(a, 2), 1, 1e-13);
        }
        ASSERT_TRUE(t.is_valid(1e-12));
    }
}

TEST(tomography, scan_dimension_mismatch) {
    ASSERT_THROW(scan(DensityMatrix::maximally_mixed(2), construct_mub(3)), ShapeError);
}

TEST(tomography, reconstruct_examples) {
    MubSet set2 = construct_mub(2);
    Reconstruction z = reconstruct(qubit_tomogram({0.5, 0.5, 0.5, 0.5, 1, 0}), set2);
    ASSERT_LE(oracle::max_diff(z.rho, ComplexMatrix{{1, 0}, {0, 0}}), 1e-15);
    ASSERT_FALSE(z.normalization_warning);

    for (std::size_t d : {2, 3, 5}) {
        Reconstruction mixed = reconstruct(Tomogram::uniform(d), construct_mub(d));
        ASSERT_LE(oracle::max_diff(mixed.rho, ComplexMatrix::identity(d) * Complex(1.0 / d)), 1e-15);
        ASSERT_TRUE(mixed.positive());
    }
}

TEST(tomography, reconstruct_roundtrip) {
    SplitMix64 rng(12);
    for (std::size_t d : {2, 3, 5, 7}) {
        MubSet set = construct_mub(d);
        for (int trial = 0; trial < 10; ++trial) {
            DensityMatrix rho = random_density_matrix(d, rng);
            ASSERT_LE(oracle::max_diff(reconstruct(scan(rho, set), set).rho, rho.matrix()), 1e-12);
        }
    }
}

TEST(tomography, reconstruct_is_affine) {
    SplitMix64 rng(13);
    MubSet set = construct_mub(3);
    Tomogram t1 = scan(random_density_matrix(3, rng), set);
    Tomogram t2 = scan(random_density_matrix(3, rng), set);
    for (double lambda : {0.0, 0.25, 0.5, 1.0}) {
        ComplexMatrix lhs = reconstruct(t1.mix(t2, lambda), set).rho;
        ComplexMatrix rhs = reconstruct(t1, set).rho * Complex(lambda) + reconstruct(t2, set).rho * Complex(1 - lambda);
        ASSERT_LE(oracle::max_diff(lhs, rhs), 1e-14);
    }
}

TEST(tomography, reconstruct_noisy_tomograms) {
    MubSet set = construct_mub(2);
    Tolerances tol;
    // Within 10x tolerance: accepted with a warning and unit trace.
    Tomogram slightly_off = qubit_tomogram({0.5 + 5e-10, 0.5, 0.5, 0.5, 1, 0});
    Reconstruction r = reconstruct(slightly_off, set, tol);
    ASSERT_TRUE(r.normalization_warning);
    ASSERT_NEAR(std::abs(oracle::naive_trace(r.rho) - 1.0), 0, 1e-15);
    ASSERT_LE(hermiticity_defect(r.rho), 1e-12);

    Tomogram way_off = qubit_tomogram({0.6, 0.5, 0.5, 0.5, 1, 0});
    ASSERT_THROW(reconstruct(way_off, set, tol), InvariantViolation);
}

TEST(tomography, reconstruct_reports_negativity_without_repair) {
    // Frequencies that no state can produce: every basis certain.
    MubSet set = construct_mub(2);
    Reconstruction r = reconstruct(qubit_tomogram({1, 0, 1, 0, 1, 0}), set);
    ASSERT_FALSE(r.positive());
    ASSERT_NEAR(r.min_eigenvalue, oracle::min_eigenvalue_2x2(r.rho), 1e-14);
    ASSERT_LT(r.min_eigenvalue, -0.3);
}

TEST(tomography, coefficient_examples) {
    ExpansionCoefficients mixed = coefficients_from_tomogram(Tomogram::uniform(3));
    ASSERT_NEAR(mixed.c_identity, 1.0 / 3, 1e-15);
    for (double c : mixed.c) {
        ASSERT_NEAR(c, 0, 1e-15);
    }

    ExpansionCoefficients z = coefficients_from_tomogram(qubit_tomogram({0.5, 0.5, 0.5, 0.5, 1, 0}));
    ASSERT_NEAR(z.c_identity, 0, 1e-15);
    ASSERT_EQ(z.c.size(), 3u);
    ASSERT_NEAR(z.c[0], 0, 1e-15);
    ASSERT_NEAR(z.c[1], 0, 1e-15);
    ASSERT_NEAR(z.c[2], 1, 1e-15);
}

TEST(tomography, state_from_coefficient_examples) {
    MubSet set = construct_mub(2);
    ExpansionCoefficients zero{2, 0.5, {0, 0, 0}};
    ASSERT_LE(oracle::max_diff(state_from_coefficients(zero, set), ComplexMatrix::identity(2) * Complex(0.5)), 1e-15);
    ExpansionCoefficients z{2, 0, {0, 0, 1}};
    ASSERT_LE(oracle::max_diff(state_from_coefficients(z, set), ComplexMatrix{{1, 0}, {0, 0}}), 1e-15);
}

TEST(tomography, inversion_matrix_examples) {
    InversionMatrix m2 = inversion_matrix(2);
    ASSERT_EQ(m2.block.rows(), 1);
    ASSERT_NEAR(m2.block(0, 0), 0.5, 1e-15);
    ASSERT_NEAR(m2.inverse_block(0, 0), 2, 1e-15);

    InversionMatrix m3 = inversion_matrix(3);
    Eigen::Matrix2d block;
    block << 2.0 / 3, -1.0 / 3, -1.0 / 3, 2.0 / 3;
    Eigen::Matrix2d inv;
    inv << 2, 1, 1, 2;
    ASSERT_LE((m3.block - block).cwiseAbs().maxCoeff(), 1e-15);
    ASSERT_LE((m3.inverse_block - inv).cwiseAbs().maxCoeff(), 1e-15);

    for (std::size_t d : {2, 3, 5, 7, 11, 13}) {
        InversionMatrix m = inversion_matrix(d);
        auto n = static_cast<Eigen::Index>(d - 1);
        ASSERT_LE((m.block * m.inverse_block - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
        auto full = static_cast<Eigen::Index>((d + 1) * (d - 1));
        ASSERT_EQ(m.full().rows(), full);
        ASSERT_LE((m.full() * m.full_inverse() - Eigen::MatrixXd::Identity(full, full)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(tomography, inversion_matrix_matches_projector_traces) {
    for (std::size_t d : {2, 3, 5}) {
        Eigen::MatrixXd from_traces = inversion_matrix_from_projectors(projectors(construct_mub(d)));
        ASSERT_LE((from_traces - inversion_matrix(d).full()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(tomography, solve_linear_examples) {
    ExpansionCoefficients zero = solve_coefficients_linear(Tomogram::uniform(3));
    for (double c : zero.c) {
        ASSERT_NEAR(c, 0, 1e-15);
    }
    ExpansionCoefficients x = solve_coefficients_linear(qubit_tomogram({1, 0, 0.5, 0.5, 0.5, 0.5}));
    ASSERT_NEAR(x.c[0], 1, 1e-15);
    ASSERT_NEAR(x.c[1], 0, 1e-15);
    ASSERT_NEAR(x.c[2], 0, 1e-15);
}

TEST(tomography, coefficient_routes_agree) {
    SplitMix64 rng(14);
    for (std::size_t d : {2, 3, 5}) {
        MubSet set = construct_mub(d);
        for (int trial = 0; trial < 100; ++trial) {
            Tomogram t = scan(random_density_matrix(d, rng), set);
            ExpansionCoefficients closed = coefficients_from_tomogram(t);
            ExpansionCoefficients linear = solve_coefficients_linear(t);
            ASSERT_NEAR(closed.c_identity, linear.c_identity, 1e-12);
            for (std::size_t i = 0; i < closed.c.size(); ++i) {
                ASSERT_NEAR(closed.c[i], linear.c[i], 1e-12);
            }
            ComplexMatrix direct = reconstruct(t, set).rho;
            ASSERT_LE(oracle::max_diff(state_from_coefficients(closed, set), direct), 1e-12);
        }
    }
}

TEST(tomography, tomogram_shape_checks) {
    ASSERT_THROW(Tomogram(2, {0.5, 0.5}), ShapeError);
    ASSERT_THROW(reconstruct(Tomogram::uniform(2), construct_mub(3)), ShapeError);
}
