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
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dogbe/dog_operator.hpp"
#include "dogbe/errors.hpp"
#include "dogbe/grid.hpp"
#include "dogbe/kernel.hpp"
#include "dogbe/spectral.hpp"

namespace dogbe {

using Point = std::vector<double>;

/// Periodic field on [0,1)^D with its analytic Laplacian and squared L2 norms.
struct SmoothField {
    std::string name;
    int dim = 1;
    std::function<std::complex<double>(const Point &)> value;
    std::function<std::complex<double>(const Point &)> laplacian;
    double l2_norm_sq = 0.0;
    double laplacian_l2_norm_sq = 0.0;
};

namespace fields {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Constant 1. Harmonic, so every DoG response vanishes.
inline SmoothField constant(int dim) {
    return {"constant", dim, [](const Point &) { return std::complex<double>(1.0); },
            [](const Point &) { return std::complex<double>(0.0); }, 1.0, 0.0};
}

/// prod_k sin(2 pi x_k); for D = 1 this is sin(2 pi x).
inline SmoothField sin_product(int dim) {
    auto value = [](const Point &x) {
        double v = 1.0;
        for (double xk : x) v *= std::sin(kTwoPi * xk);
        return std::complex<double>(v);
    };
    const double lap_scale = -kTwoPi * kTwoPi * dim;
    const double norm_sq = std::ldexp(1.0, -dim);
    return {dim == 1 ? "sin1d" : "sin-product", dim, value,
            [value, lap_scale](const Point &x) { return lap_scale * value(x); }, norm_sq,
            lap_scale * lap_scale * norm_sq};
}

/// prod_k exp(kappa cos(2 pi x_k)): a smooth periodic bump. Norms come from
/// trapezoidal quadrature, which is spectrally accurate for periodic integrands.
inline SmoothField gaussian_bump(int dim, double kappa = 1.0) {
    auto f = [kappa](double x) { return std::exp(kappa * std::cos(kTwoPi * x)); };
    auto f2 = [kappa, f](double x) {
        const double th = kTwoPi * x;
        return kTwoPi * kTwoPi * kappa * (kappa * std::sin(th) * std::sin(th) - std::cos(th)) * f(x);
    };
    constexpr int kNodes = 4096;
    double ff = 0.0, f2f2 = 0.0, ff2 = 0.0;
    for (int i = 0; i < kNodes; ++i) {
        const double x = static_cast<double>(i) / kNodes;
        ff += f(x) * f(x);
        f2f2 += f2(x) * f2(x);
        ff2 += f(x) * f2(x);
    }
    ff /= kNodes;
    f2f2 /= kNodes;
    ff2 /= kNodes;

    // |lap v|^2 = D A B^(D-1) + D(D-1) C^2 B^(D-2) with A = |f''|^2, B = |f|^2, C = <f, f''>.
    const double d = dim;
    double lap_sq = d * f2f2 * std::pow(ff, d - 1);
    if (dim > 1) lap_sq += d * (d - 1) * ff2 * ff2 * std::pow(ff, d - 2);

    auto value = [f](const Point &x) {
        double v = 1.0;
        for (double xk : x) v *= f(xk);
        return std::complex<double>(v);
    };
    auto laplacian = [f, f2](const Point &x) {
        double total = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            double term = f2(x[k]);
            for (std::size_t l = 0; l < x.size(); ++l) {
                if (l != k) term *= f(x[l]);
            }
            total += term;
        }
        return std::complex<double>(total);
    };
    return {"gaussian-bump", dim, value, laplacian, std::pow(ff, d), lap_sq};
}

/// Named fields: sin1d, sin-product, constant, gaussian-bump.
inline SmoothField by_name(std::string_view name, int dim) {
    if (name == "sin1d") {
        if (dim != 1) throw DomainError("field sin1d is one-dimensional");
        return sin_product(1);
    }
    if (name == "sin-product") return sin_product(dim);
    if (name == "constant") return constant(dim);
    if (name == "gaussian-bump") return gaussian_bump(dim);
    throw DomainError("unknown field '" + std::string(name) + "'");
}

}  // namespace fields

/// Grid samples v(h j) in row-major order; `norm` is their 2-norm before normalization.
struct SampledSignal {
    GridSpec grid;
    StateVector values;
    double norm = 0.0;

    StateVector normalized() const {
        if (!(norm > 0.0)) throw DomainError("cannot normalize a zero signal");
        return values / norm;
    }
};

inline SampledSignal sample(const SmoothField &field, const GridSpec &g) {
    if (field.dim != g.dim) throw DomainError("field and grid dimensions differ");
    SampledSignal s{g, StateVector(g.size()), 0.0};
    const double h = g.spacing();
    Point x(static_cast<std::size_t>(g.dim));
    for (std::int64_t i = 0; i < g.size(); ++i) {
        const auto j = unflatten(i, g);
        for (std::size_t k = 0; k < j.size(); ++k) x[k] = h * static_cast<double>(j[k]);
        s.values(i) = field.value(x);
    }
    s.norm = s.values.norm();
    return s;
}

/// 1/4 sum_omega |mu(omega)|^2 |v_hat(omega)|^2 for the normalized state.
inline double success_probability_exact(const StateVector &state, const TransferFunction &tf) {
    const auto vhat = fourier_coefficients(state, tf.grid);
    double acc = 0.0;
    for (Eigen::Index w = 0; w < vhat.size(); ++w) acc += std::norm(tf.mu(w)) * std::norm(vhat(w));
    return 0.25 * acc;
}

/// A zero signal has no state; its success probability is reported as 0.
inline double success_probability_exact(const SampledSignal &v, const TransferFunction &tf) {
    if (!(v.norm > 0.0)) return 0.0;
    return success_probability_exact(v.normalized(), tf);
}

/// |A v|^2 / 4 from a dense operator.
inline double success_probability_dense(const DenseOperator &a, const StateVector &state) {
    return 0.25 * (a * state).squaredNorm();
}

/// 1/4 max_omega |mu(omega)|^2.
inline double success_probability_bound(const TransferFunction &tf) {
    const double n = operator_norm(tf);
    return 0.25 * n * n;
}

/// Leading term C_DoG^2 / (4 D^2) h^4 |lap v|^2 / |v|^2.
inline double success_probability_asymptotic(const SmoothField &field, const KernelPair &kp, const GridSpec &g) {
    if (!(field.l2_norm_sq > 0.0)) throw DomainError("field has zero L2 norm");
    const double c = c_dog_constant(kp);
    const double d = g.dim;
    const double h = g.spacing();
    return c * c / (4.0 * d * d) * std::pow(h, 4) * field.laplacian_l2_norm_sq / field.l2_norm_sq;
}

/// max_j |(A_h v_h)(j) - (C_DoG / D) h^2 lap v(h j)| on unnormalized samples.
inline double taylor_consistency(const SmoothField &field, const KernelPair &kp, const GridSpec &g) {
    const auto s = sample(field, g);
    const StateVector av = apply_dog(kp, g, s.values);
    const double scale = c_dog_constant(kp) / g.dim * g.spacing() * g.spacing();
    const double h = g.spacing();
    Point x(static_cast<std::size_t>(g.dim));
    double worst = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        const auto j = unflatten(i, g);
        for (std::size_t k = 0; k < j.size(); ++k) x[k] = h * static_cast<double>(j[k]);
        worst = std::max(worst, std::abs(av(i) - scale * field.laplacian(x)));
    }
    return worst;
}

/// Least-squares slope of log2(y) against log2(x). Pairs with y <= 0 are skipped.
inline double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("fit inputs differ in length");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        const double lx = std::log2(x[i]), ly = std::log2(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) return std::nan("");
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) return std::nan("");
    return (m * sxy - sx * sy) / denom;
}

struct ConvergenceRow {
    std::int64_t points = 0;
    double spacing = 0.0;
    double p_exact = 0.0;
    double p_asym = 0.0;
    double ratio = 0.0;  // p_exact / p_asym; NaN when p_asym = 0
};

inline ConvergenceRow convergence_point(const SmoothField &field, const KernelPair &kp, std::int64_t points) {
    const auto g = GridSpec::from_points(field.dim, points);
    ConvergenceRow row;
    row.points = points;
    row.spacing = g.spacing();
    row.p_exact = success_probability_exact(sample(field, g), transfer_function(kp, g));
    row.p_asym = success_probability_asymptotic(field, kp, g);
    row.ratio = row.p_asym > 0.0 ? row.p_exact / row.p_asym : std::nan("");
    return row;
}

/// Exact (Parseval) versus leading-order success probability over a dyadic,
/// ascending list of grid sizes.
inline std::vector<ConvergenceRow> convergence_study(const SmoothField &field, const KernelPair &kp,
                                                     std::span<const std::int64_t> points) {
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i] <= points[i - 1]) throw DomainError("grid sizes must be strictly ascending");
    }
    std::vector<ConvergenceRow> rows;
    rows.reserve(points.size());
    for (auto n : points) rows.push_back(convergence_point(field, kp, n));
    return rows;
}

}  // namespace dogbe
