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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dogbe/errors.hpp"

namespace dogbe {

using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Integer D-tuple. Used both for grid points (coordinates in [0, N)) and
/// for stencil offsets (arbitrary sign).
using MultiIndex = std::vector<std::int64_t>;

/// Periodic grid Z_N^D with N = 2^n points per axis and spacing h = 1/N.
struct GridSpec {
    int dim = 1;
    int qubits_per_axis = 1;

    GridSpec() = default;
    GridSpec(int d, int n) : dim(d), qubits_per_axis(n) {
        if (d < 1) throw DomainError("grid dimension must be positive");
        if (n < 1 || n > 30) throw DomainError("qubits per axis must be in [1, 30]");
    }

    /// Builds the grid from a points-per-axis count, which must be a power of two >= 2.
    static GridSpec from_points(int d, std::int64_t points) {
        if (points < 2 || (points & (points - 1)) != 0) {
            throw DomainError("points per axis must be a power of two >= 2, got " +
                              std::to_string(points));
        }
        int n = 0;
        while ((std::int64_t{1} << n) < points) ++n;
        return GridSpec(d, n);
    }

    std::int64_t points() const { return std::int64_t{1} << qubits_per_axis; }
    double spacing() const { return 1.0 / static_cast<double>(points()); }
    int data_qubits() const { return dim * qubits_per_axis; }

    /// N^D; throws when it does not fit in 62 bits.
    std::int64_t size() const {
        if (data_qubits() > 62) throw ResourceError("grid too large to index");
        return std::int64_t{1} << data_qubits();
    }

    bool operator==(const GridSpec &) const = default;
};

inline std::int64_t wrap(std::int64_t x, std::int64_t n) {
    auto r = x % n;
    return r < 0 ? r + n : r;
}

/// Row-major linear index: j_1 is the most significant coordinate.
inline std::int64_t flatten(const MultiIndex &j, const GridSpec &g) {
    if (static_cast<int>(j.size()) != g.dim) {
        throw DomainError("multi-index has " + std::to_string(j.size()) +
                          " coordinates, grid dimension is " + std::to_string(g.dim));
    }
    const auto n = g.points();
    std::int64_t flat = 0;
    for (auto c : j) {
        if (c < 0 || c >= n) {
            throw DomainError("coordinate " + std::to_string(c) + " outside [0, " +
                              std::to_string(n) + ")");
        }
        flat = flat * n + c;
    }
    return flat;
}

inline MultiIndex unflatten(std::int64_t flat, const GridSpec &g) {
    const auto n = g.points();
    if (flat < 0 || flat >= g.size()) throw DomainError("linear index out of range");
    MultiIndex j(static_cast<std::size_t>(g.dim));
    for (int k = g.dim - 1; k >= 0; --k) {
        j[static_cast<std::size_t>(k)] = flat % n;
        flat /= n;
    }
    return j;
}

/// Component-wise (j + t) mod N.
inline MultiIndex shifted(const MultiIndex &j, const MultiIndex &t, const GridSpec &g) {
    if (j.size() != t.size()) throw DomainError("offset dimension mismatch");
    MultiIndex out(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) out[k] = wrap(j[k] + t[k], g.points());
    return out;
}

/// Linear index of the image of every grid point under the cyclic shift by t.
/// Entry i holds flatten(unflatten(i) + t mod N).
inline std::vector<std::int64_t> shift_permutation(const MultiIndex &t, const GridSpec &g) {
    if (static_cast<int>(t.size()) != g.dim) throw DomainError("offset dimension mismatch");
    const auto n = g.points();
    const auto total = g.size();
    std::vector<std::int64_t> perm(static_cast<std::size_t>(total));
    MultiIndex reduced(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) reduced[k] = wrap(t[k], n);

    MultiIndex j(static_cast<std::size_t>(g.dim), 0);
    for (std::int64_t i = 0; i < total; ++i) {
        std::int64_t image = 0;
        for (std::size_t k = 0; k < j.size(); ++k) image = image * n + (j[k] + reduced[k]) % n;
        perm[static_cast<std::size_t>(i)] = image;
        // odometer increment, last axis fastest
        for (int k = g.dim - 1; k >= 0; --k) {
            auto &c = j[static_cast<std::size_t>(k)];
            if (++c < n) break;
            c = 0;
        }
    }
    return perm;
}

/// Dense permutation matrix S_t with S_t|j> = |j + t mod N>.
inline DenseOperator shift_operator(const MultiIndex &t, const GridSpec &g) {
    const auto total = g.size();
    if (total > 4096) throw ResourceError("dense shift operator above 4096 x 4096");
    DenseOperator s = DenseOperator::Zero(total, total);
    const auto perm = shift_permutation(t, g);
    for (std::int64_t i = 0; i < total; ++i) s(perm[static_cast<std::size_t>(i)], i) = 1.0;
    return s;
}

/// True when some component satisfies |t_k| >= N/2, i.e. the stencil wraps
/// far enough that opposite offsets may alias on this grid.
inline bool offset_aliases(const MultiIndex &t, const GridSpec &g) {
    const auto half = g.points() / 2;
    for (auto c : t) {
        if (c >= half || -c >= half) return true;
    }
    return false;
}

}  // namespace dogbe
