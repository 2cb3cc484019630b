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

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dogbe/errors.hpp"
#include "dogbe/grid.hpp"
#include "dogbe/kernel.hpp"

namespace dogbe {

namespace detail {

/// e^{sign * 2 pi i k / N} for k = 0..N-1, with exact values at quarter turns.
inline std::vector<std::complex<double>> roots_of_unity(std::int64_t n, int sign) {
    std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        w[static_cast<std::size_t>(k)] = {std::cos(angle), std::sin(angle)};
    }
    if (n % 4 == 0) {
        w[0] = {1.0, 0.0};
        w[static_cast<std::size_t>(n / 4)] = {0.0, static_cast<double>(sign)};
        w[static_cast<std::size_t>(n / 2)] = {-1.0, 0.0};
        w[static_cast<std::size_t>(3 * n / 4)] = {0.0, -static_cast<double>(sign)};
    }
    return w;
}

}  // namespace detail

/// pi_hat(omega) = sum_t pi_t e^{-2 pi i <omega, t> / N}, by direct summation
/// over the stencil for every frequency in Z_N^D (row-major order).
inline Eigen::VectorXcd kernel_dft(const Stencil &st, std::span<const double> weights, const GridSpec &g) {
    if (weights.size() != st.size()) throw DomainError("weight count does not match stencil");
    if (st.dim != g.dim) throw DomainError("stencil and grid dimensions differ");
    const auto n = g.points();
    const auto total = g.size();
    const auto roots = detail::roots_of_unity(n, -1);

    Eigen::VectorXcd out(total);
    MultiIndex omega(static_cast<std::size_t>(g.dim), 0);
    for (std::int64_t f = 0; f < total; ++f) {
        std::complex<double> acc = 0.0;
        for (std::size_t k = 0; k < st.size(); ++k) {
            std::int64_t phase = 0;
            for (std::size_t a = 0; a < omega.size(); ++a) phase += omega[a] * st.offsets[k][a];
            acc += weights[k] * roots[static_cast<std::size_t>(wrap(phase, n))];
        }
        out(f) = acc;
        for (int a = g.dim - 1; a >= 0; --a) {
            auto &c = omega[static_cast<std::size_t>(a)];
            if (++c < n) break;
            c = 0;
        }
    }
    return out;
}

/// Eigenvalues mu(omega) = p_hat(omega) - q_hat(omega) of the periodic DoG
/// operator, one per Fourier mode.
struct TransferFunction {
    GridSpec grid;
    Eigen::VectorXcd p_hat;
    Eigen::VectorXcd q_hat;
    Eigen::VectorXcd mu;

    std::complex<double> at(const MultiIndex &omega) const { return mu(flatten(omega, grid)); }
};

inline TransferFunction transfer_function(const KernelPair &kp, const GridSpec &g) {
    TransferFunction tf{g, kernel_dft(kp.stencil, kp.p, g), kernel_dft(kp.stencil, kp.q, g), {}};
    tf.mu = tf.p_hat - tf.q_hat;
    return tf;
}

/// max_omega |mu(omega)|.
inline double operator_norm(const TransferFunction &tf) {
    return tf.mu.size() == 0 ? 0.0 : tf.mu.cwiseAbs().maxCoeff();
}

/// Flattened frequency index attaining the operator norm (first on ties).
inline std::int64_t argmax_frequency(const TransferFunction &tf) {
    Eigen::Index idx = 0;
    tf.mu.cwiseAbs().maxCoeff(&idx);
    return idx;
}

/// |omega> = N^{-D/2} sum_j e^{+2 pi i <omega, j> / N} |j>.
inline StateVector fourier_basis_vector(const MultiIndex &omega, const GridSpec &g) {
    const auto n = g.points();
    const auto total = g.size();
    flatten(omega, g);  // validates
    const auto roots = detail::roots_of_unity(n, +1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(total));

    StateVector v(total);
    for (std::int64_t i = 0; i < total; ++i) {
        const auto j = unflatten(i, g);
        std::int64_t phase = 0;
        for (std::size_t a = 0; a < j.size(); ++a) phase += omega[a] * j[a];
        v(i) = scale * roots[static_cast<std::size_t>(wrap(phase, n))];
    }
    return v;
}

/// Fourier coefficients v_hat(omega) = <omega|v>, one separable pass per axis.
inline Eigen::VectorXcd fourier_coefficients(const StateVector &v, const GridSpec &g) {
    if (v.size() != g.size()) throw DomainError("vector length does not match grid");
    const auto n = g.points();
    const auto roots = detail::roots_of_unity(n, -1);
    const double axis_scale = 1.0 / std::sqrt(static_cast<double>(n));

    Eigen::VectorXcd cur = v;
    Eigen::VectorXcd next(v.size());
    std::vector<std::complex<double>> line(static_cast<std::size_t>(n));
    // Axis a has stride N^(D-1-a) in row-major order.
    std::int64_t stride = g.size() / n;
    for (int a = 0; a < g.dim; ++a, stride /= n) {
        const auto block = stride * n;
        for (std::int64_t base = 0; base < cur.size(); base += block) {
            for (std::int64_t off = 0; off < stride; ++off) {
                for (std::int64_t j = 0; j < n; ++j) line[static_cast<std::size_t>(j)] = cur(base + off + j * stride);
                for (std::int64_t w = 0; w < n; ++w) {
                    std::complex<double> acc = 0.0;
                    for (std::int64_t j = 0; j < n; ++j) {
                        acc += line[static_cast<std::size_t>(j)] * roots[static_cast<std::size_t>((w * j) % n)];
                    }
                    next(base + off + w * stride) = axis_scale * acc;
                }
            }
        }
        std::swap(cur, next);
    }
    return cur;
}

}  // namespace dogbe
