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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "dogbe/errors.hpp"
#include "dogbe/grid.hpp"
#include "dogbe/kernel.hpp"

namespace dogbe {

/// Receives human-readable warnings (aliasing stencils, unordered sigmas).
using WarningSink = std::function<void(std::string_view)>;

/// Largest data-space dimension for which dense operators are assembled.
inline constexpr std::int64_t kDefaultDenseCap = 4096;

inline void warn_if_aliasing(const Stencil &st, const GridSpec &g, const WarningSink &warn) {
    if (!warn) return;
    for (const auto &t : st.offsets) {
        if (offset_aliases(t, g)) {
            warn("stencil offsets reach |t| >= N/2 = " + std::to_string(g.points() / 2) +
                 "; periodic wrap-around aliases opposite offsets");
            return;
        }
    }
}

/// Dense A_h = sum_t c_t S_t for an arbitrary coefficient vector on `st`.
inline DenseOperator assemble_dog(const Stencil &st, std::span<const double> c, const GridSpec &g,
                                  std::int64_t dense_cap = kDefaultDenseCap,
                                  const WarningSink &warn = {}) {
    if (c.size() != st.size()) throw DomainError("coefficient count does not match stencil");
    if (st.dim != g.dim) throw DomainError("stencil and grid dimensions differ");
    const auto total = g.size();
    if (total > dense_cap) {
        throw ResourceError("dense operator dimension " + std::to_string(total) +
                            " exceeds cap " + std::to_string(dense_cap));
    }
    warn_if_aliasing(st, g, warn);
    DenseOperator a = DenseOperator::Zero(total, total);
    for (std::size_t k = 0; k < st.size(); ++k) {
        const auto perm = shift_permutation(st.offsets[k], g);
        for (std::int64_t j = 0; j < total; ++j) a(perm[static_cast<std::size_t>(j)], j) += c[k];
    }
    return a;
}

inline DenseOperator assemble_dog(const KernelPair &kp, const GridSpec &g,
                                  std::int64_t dense_cap = kDefaultDenseCap,
                                  const WarningSink &warn = {}) {
    return assemble_dog(kp.stencil, kp.c, g, dense_cap, warn);
}

/// Matrix-free A_h v: (A_h v)(j) = sum_t c_t v(j - t).
inline StateVector apply_dog(const Stencil &st, std::span<const double> c, const GridSpec &g,
                             const StateVector &v) {
    if (c.size() != st.size()) throw DomainError("coefficient count does not match stencil");
    if (v.size() != g.size()) throw DomainError("vector length does not match grid");
    StateVector out = StateVector::Zero(v.size());
    for (std::size_t k = 0; k < st.size(); ++k) {
        if (c[k] == 0.0) continue;
        const auto perm = shift_permutation(st.offsets[k], g);
        for (std::int64_t j = 0; j < v.size(); ++j) out(perm[static_cast<std::size_t>(j)]) += c[k] * v(j);
    }
    return out;
}

inline StateVector apply_dog(const KernelPair &kp, const GridSpec &g, const StateVector &v) {
    return apply_dog(kp.stencil, kp.c, g, v);
}

/// max |A - A^dagger|.
inline double hermiticity_residual(const DenseOperator &a) {
    if (a.rows() != a.cols()) throw DomainError("hermiticity needs a square matrix");
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const DenseOperator &a, double tol = 1e-12) {
    return hermiticity_residual(a) <= tol;
}

/// Largest singular value.
inline double spectral_norm(const DenseOperator &a) {
    if (a.size() == 0) return 0.0;
    Eigen::BDCSVD<DenseOperator> svd(a);
    return svd.singularValues()(0);
}

/// max |X^dagger X - I|.
inline double unitarity_residual(const DenseOperator &x) {
    return (x.adjoint() * x - DenseOperator::Identity(x.cols(), x.cols())).cwiseAbs().maxCoeff();
}

}  // namespace dogbe
