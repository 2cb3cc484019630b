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
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dogbe/errors.hpp"
#include "dogbe/grid.hpp"

namespace dogbe {

enum class StencilShape {
    hypercube,  // {-R..R}^D
    cross,      // {0} U {+-r e_k}
};

inline std::string_view to_string(StencilShape s) {
    return s == StencilShape::hypercube ? "hypercube" : "cross";
}

inline StencilShape parse_stencil_shape(std::string_view s) {
    if (s == "hypercube") return StencilShape::hypercube;
    if (s == "cross") return StencilShape::cross;
    throw DomainError("unknown stencil shape '" + std::string(s) + "'");
}

inline std::int64_t squared_norm(const MultiIndex &t) {
    std::int64_t r2 = 0;
    for (auto c : t) r2 += c * c;
    return r2;
}

/// Finite symmetric offset set, enumerated lexicographically over coordinates.
struct Stencil {
    int dim = 1;
    int radius = 0;
    StencilShape shape = StencilShape::hypercube;
    std::vector<MultiIndex> offsets;

    std::size_t size() const { return offsets.size(); }

    /// Position of t in the enumeration, or -1.
    std::ptrdiff_t index_of(const MultiIndex &t) const {
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            if (offsets[i] == t) return static_cast<std::ptrdiff_t>(i);
        }
        return -1;
    }

    /// Position of -offsets[i].
    std::size_t mirror_index(std::size_t i) const {
        MultiIndex neg = offsets[i];
        for (auto &c : neg) c = -c;
        return static_cast<std::size_t>(index_of(neg));
    }

    bool operator==(const Stencil &) const = default;
};

inline Stencil build_stencil(int dim, int radius, StencilShape shape = StencilShape::hypercube) {
    if (dim < 1) throw DomainError("stencil dimension must be positive");
    if (radius < 0) throw DomainError("stencil radius must be nonnegative");
    Stencil st{dim, radius, shape, {}};

    // Walk {-R..R}^D in lexicographic order and keep the members of the shape.
    MultiIndex t(static_cast<std::size_t>(dim), -radius);
    while (true) {
        int nonzero = 0;
        for (auto c : t) nonzero += (c != 0);
        if (shape == StencilShape::hypercube || nonzero <= 1) st.offsets.push_back(t);

        int k = dim - 1;
        for (; k >= 0; --k) {
            auto &c = t[static_cast<std::size_t>(k)];
            if (++c <= radius) break;
            c = -radius;
        }
        if (k < 0) break;
    }
    return st;
}

/// Truncated Gaussian weights exp(-|t|^2 / 2 sigma^2), renormalized to sum 1
/// over the stencil.
inline std::vector<double> gaussian_weights(const Stencil &st, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("gaussian sigma must be positive and finite");
    }
    // One evaluation per distinct squared radius; t and -t share it bit for bit.
    std::map<std::int64_t, double> by_radius;
    std::vector<double> w(st.size());
    for (std::size_t i = 0; i < st.size(); ++i) {
        const auto r2 = squared_norm(st.offsets[i]);
        auto it = by_radius.find(r2);
        if (it == by_radius.end()) {
            it = by_radius.emplace(r2, std::exp(-static_cast<double>(r2) / (2.0 * sigma * sigma))).first;
        }
        w[i] = it->second;
    }
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(total > 0.0)) throw DegenerateKernelError("all gaussian weights underflowed to zero");
    for (auto &x : w) x /= total;
    return w;
}

inline std::vector<double> dog_coefficients(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw DomainError("kernels are defined over different stencils");
    std::vector<double> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = p[i] - q[i];
    return c;
}

/// A narrow/wide pair of normalized weight vectors on a shared stencil and
/// their signed difference c = p - q.
struct KernelPair {
    Stencil stencil;
    double sigma_p = 0.0;
    double sigma_q = 0.0;
    std::vector<double> p;
    std::vector<double> q;
    std::vector<double> c;

    /// Any normalized nonnegative pair; sigmas are informational only here.
    static KernelPair from_weights(Stencil st, std::vector<double> p, std::vector<double> q,
                                   double sigma_p = 0.0, double sigma_q = 0.0) {
        if (p.size() != st.size() || q.size() != st.size()) {
            throw DomainError("weight vector length does not match stencil size");
        }
        for (const auto *w : {&p, &q}) {
            double sum = 0.0;
            for (double x : *w) {
                if (!(x >= 0.0)) throw DomainError("kernel weights must be nonnegative");
                sum += x;
            }
            if (std::abs(sum - 1.0) > 1e-12) throw DomainError("kernel weights must sum to 1");
        }
        KernelPair kp{std::move(st), sigma_p, sigma_q, std::move(p), std::move(q), {}};
        kp.c = dog_coefficients(kp.p, kp.q);
        return kp;
    }

    /// Gaussian pair. sigma_p >= sigma_q is accepted (the filter flips sign);
    /// callers wanting the bandpass reading check `ordered()`.
    static KernelPair gaussian(Stencil st, double sigma_p, double sigma_q) {
        auto p = gaussian_weights(st, sigma_p);
        auto q = gaussian_weights(st, sigma_q);
        return from_weights(std::move(st), std::move(p), std::move(q), sigma_p, sigma_q);
    }

    bool ordered() const { return sigma_p < sigma_q; }
};

inline double coefficient_one_norm(std::span<const double> c) {
    double s = 0.0;
    for (double x : c) s += std::abs(x);
    return s;
}

/// C_DoG = 1/2 sum_t c_t |t|^2. Negative for a narrow-minus-wide pair.
inline double c_dog_constant(const KernelPair &kp) {
    double s = 0.0;
    for (std::size_t i = 0; i < kp.c.size(); ++i) {
        s += kp.c[i] * static_cast<double>(squared_norm(kp.stencil.offsets[i]));
    }
    return 0.5 * s;
}

/// M = sum_t c_t t t^T. Isotropic stencils give M = (2 C_DoG / D) I.
inline Eigen::MatrixXd isotropy_matrix(const KernelPair &kp) {
    const int d = kp.stencil.dim;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < kp.c.size(); ++i) {
        const auto &t = kp.stencil.offsets[i];
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                m(a, b) += kp.c[i] * static_cast<double>(t[static_cast<std::size_t>(a)] *
                                                         t[static_cast<std::size_t>(b)]);
            }
        }
    }
    return m;
}

}  // namespace dogbe
