// Copyright 2026 The dogbe Authors
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

#include "dogbe/spectral.hpp"

#include <random>

#include "dogbe/dog_operator.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace dogbe;

namespace {

KernelPair reference_pair() { return KernelPair::gaussian(build_stencil(1, 3), 0.8, 1.6); }

}  // namespace

TEST(spectral, kernel_dft_examples) {
    const auto g = GridSpec::from_points(1, 16);
    const auto kp = reference_pair();
    const auto p_hat = kernel_dft(kp.stencil, kp.p, g);
    EXPECT_NEAR(std::abs(p_hat(0) - 1.0), 0.0, 1e-15);

    const std::vector<double> delta{1.0};
    const auto one = kernel_dft(build_stencil(1, 0), delta, g);
    for (auto x : one) EXPECT_EQ(x, std::complex<double>(1.0));

    // Dense DFT oracle: pi_hat(w) = sqrt(N) (F e)(w) with e the zero-padded, wrapped kernel.
    Eigen::VectorXcd wrapped = Eigen::VectorXcd::Zero(16);
    for (int t = -3; t <= 3; ++t) wrapped((t + 16) % 16) = kp.p[static_cast<std::size_t>(t + 3)];
    const Eigen::VectorXcd dense = 4.0 * oracle::dft_matrix(16) * wrapped;
    EXPECT_LE((dense - p_hat).cwiseAbs().maxCoeff(), 1e-14);
    double alternating = 0.0;
    for (int t = -3; t <= 3; ++t) alternating += kp.p[static_cast<std::size_t>(t + 3)] * (t % 2 ? -1.0 : 1.0);
    EXPECT_NEAR(p_hat(8).real(), alternating, 1e-15);
}

TEST(spectral, transfer_function_examples) {
    const auto g = GridSpec::from_points(1, 16);
    const auto same = transfer_function(KernelPair::gaussian(build_stencil(1, 3), 1.0, 1.0), g);
    EXPECT_EQ(same.mu.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(operator_norm(same), 0.0);

    const auto tf = transfer_function(reference_pair(), g);
    EXPECT_LE(std::abs(tf.mu(0)), 1e-12);
    EXPECT_LE(tf.mu.imag().cwiseAbs().maxCoeff(), 1e-12);

    // Single interior maximum of |mu| on 0..N/2, pinned against the dense eigensolver.
    const double dense_norm = oracle::hermitian_norm(assemble_dog(reference_pair(), g));
    std::int64_t arg = 0;
    for (std::int64_t w = 0; w <= 8; ++w) {
        if (std::abs(tf.mu(w)) > std::abs(tf.mu(arg))) arg = w;
    }
    EXPECT_EQ(arg, 3);
    EXPECT_NEAR(std::abs(tf.mu(3)), dense_norm, 1e-12);
    EXPECT_NEAR(std::abs(tf.mu(3)), 0.47173472523681187, 1e-13);  // frozen from a direct cosine sum
    for (std::int64_t w = 1; w < 3; ++w) EXPECT_LT(std::abs(tf.mu(w)), std::abs(tf.mu(w + 1)));
    for (std::int64_t w = 3; w < 7; ++w) EXPECT_GT(std::abs(tf.mu(w)), std::abs(tf.mu(w + 1)));
    EXPECT_LE(operator_norm(tf), coefficient_one_norm(reference_pair().c));
}

TEST(spectral, operator_norm_matches_dense_eigensolver) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> sig(0.2, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + trial % 2;
        const auto g = GridSpec::from_points(d, d == 1 ? 16 : 8);
        const auto shape = trial % 3 ? StencilShape::hypercube : StencilShape::cross;
        const auto kp = KernelPair::gaussian(build_stencil(d, 1 + trial % 3, shape), sig(rng), sig(rng));
        const auto tf = transfer_function(kp, g);
        ASSERT_NEAR(operator_norm(tf), oracle::hermitian_norm(assemble_dog(kp, g)), 1e-10);
    }
}

TEST(spectral, fourier_basis) {
    const auto g8 = GridSpec::from_points(1, 8);
    const auto dc = fourier_basis_vector({0}, g8);
    for (auto x : dc) EXPECT_NEAR(std::abs(x - 1.0 / std::sqrt(8.0)), 0.0, 1e-15);

    Eigen::MatrixXcd basis(8, 8);
    for (int w = 0; w < 8; ++w) basis.col(w) = fourier_basis_vector({w}, g8);
    EXPECT_LE((basis.adjoint() * basis - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-15);
    // Columns are the conjugate DFT rows.
    EXPECT_LE((basis - oracle::dft_matrix(8).adjoint()).cwiseAbs().maxCoeff(), 1e-14);

    const auto g2 = GridSpec::from_points(2, 4);
    Eigen::MatrixXcd basis2(16, 16);
    for (std::int64_t f = 0; f < 16; ++f) basis2.col(f) = fourier_basis_vector(unflatten(f, g2), g2);
    EXPECT_LE((basis2.adjoint() * basis2 - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(spectral, eigenvector_residuals) {
    for (const auto &[kp, g] : {std::pair{reference_pair(), GridSpec::from_points(1, 16)},
                               std::pair{KernelPair::gaussian(build_stencil(2, 1, StencilShape::cross), 0.7, 1.5),
                                         GridSpec::from_points(2, 8)}}) {
        const auto a = assemble_dog(kp, g);
        const auto tf = transfer_function(kp, g);
        for (std::int64_t f = 0; f < g.size(); ++f) {
            const auto w = fourier_basis_vector(unflatten(f, g), g);
            ASSERT_LE((a * w - tf.mu(f) * w).norm(), 1e-10);
        }
    }
}

TEST(spectral, conjugate_symmetry) {
    const auto g = GridSpec::from_points(2, 8);
    const auto kp = KernelPair::gaussian(build_stencil(2, 2), 0.9, 2.1);
    const auto tf = transfer_function(kp, g);
    for (std::int64_t f = 0; f < g.size(); ++f) {
        auto neg = unflatten(f, g);
        for (auto &w : neg) w = wrap(-w, g.points());
        ASSERT_LE(std::abs(tf.mu(f) - std::conj(tf.at(neg))), 1e-15);
    }
}

TEST(spectral, fourier_coefficients_match_dense_dft) {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> n01;
    const auto g1 = GridSpec::from_points(1, 32);
    StateVector v(32);
    for (auto &x : v) x = {n01(rng), n01(rng)};
    EXPECT_LE((fourier_coefficients(v, g1) - oracle::dft_matrix(32) * v).cwiseAbs().maxCoeff(), 1e-13);

    const auto g2 = GridSpec::from_points(2, 4);
    StateVector u(16);
    for (auto &x : u) x = {n01(rng), n01(rng)};
    const auto f4 = oracle::dft_matrix(4);
    EXPECT_LE((fourier_coefficients(u, g2) - oracle::kron(f4, f4) * u).cwiseAbs().maxCoeff(), 1e-14);
}
