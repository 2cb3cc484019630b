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

// Reference computations for the tests. Nothing here calls into the code
// path it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Unitary DFT matrix F(w, j) = N^{-1/2} e^{-2 pi i w j / N}, evaluated with std::polar.
inline Eigen::MatrixXcd dft_matrix(std::int64_t n) {
    Eigen::MatrixXcd f(n, n);
    for (std::int64_t w = 0; w < n; ++w) {
        for (std::int64_t j = 0; j < n; ++j) {
            f(w, j) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                                 -2.0 * std::numbers::pi * static_cast<double>(w * j) / static_cast<double>(n));
        }
    }
    return f;
}

/// Kernel transform over integer offsets -R..R (1D), summed term by term.
inline std::complex<double> kernel_transform_1d(const std::vector<double> &w, int radius, std::int64_t omega,
                                                std::int64_t n) {
    std::complex<double> acc = 0.0;
    for (int t = -radius; t <= radius; ++t) {
        acc += w[static_cast<std::size_t>(t + radius)] *
               std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(omega * t) / static_cast<double>(n));
    }
    return acc;
}

/// exp(-t^2 / 2 sigma^2) / Z over -R..R, with Z summed directly.
inline std::vector<double> gaussian_1d(int radius, double sigma) {
    std::vector<double> w;
    double z = 0.0;
    for (int t = -radius; t <= radius; ++t) z += std::exp(-t * t / (2.0 * sigma * sigma));
    for (int t = -radius; t <= radius; ++t) w.push_back(std::exp(-t * t / (2.0 * sigma * sigma)) / z);
    return w;
}

/// Dense circulant matrix with A(i, j) = c[(i - j) mod N] for a 1D stencil -R..R.
inline Eigen::MatrixXcd circulant_1d(const std::vector<double> &c, int radius, std::int64_t n) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (std::int64_t i = 0; i < n; ++i) {
        for (int t = -radius; t <= radius; ++t) a(((i + t) % n + n) % n, i) += c[static_cast<std::size_t>(t + radius)];
    }
    return a;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
    return out;
}

/// Largest |eigenvalue| of a Hermitian matrix.
inline double hermitian_norm(const Eigen::MatrixXcd &a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(a, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

/// Least-squares slope of log2 y on log2 x via the normal equations in Eigen.
inline double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    Eigen::MatrixXd design(static_cast<Eigen::Index>(x.size()), 2);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        design(static_cast<Eigen::Index>(i), 0) = 1.0;
        design(static_cast<Eigen::Index>(i), 1) = std::log2(x[i]);
        rhs(static_cast<Eigen::Index>(i)) = std::log2(y[i]);
    }
    return design.colPivHouseholderQr().solve(rhs)(1);
}

}  // namespace oracle
