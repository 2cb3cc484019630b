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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dogbe/analysis.hpp"
#include "dogbe/circuit.hpp"
#include "dogbe/dog_operator.hpp"
#include "dogbe/kernel.hpp"
#include "dogbe/spectral.hpp"

namespace dogbe {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyOptions {
    double block_tol = 1e-10;
    double unitarity_tol = 1e-11;
    double hermiticity_tol = 1e-12;
    double probability_tol = 1e-12;
    double eigen_tol = 1e-10;
    std::int64_t max_dim_cap = std::int64_t{1} << 14;
    int random_states = 20;
    int perturbation_trials = 20;
    std::uint64_t seed = 1;
    /// Perturbs one coefficient of the operator fed to the Hermiticity check.
    bool inject_asymmetry = false;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
    }
};

template <typename Rng>
StateVector random_state(std::int64_t dim, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    StateVector v(dim);
    for (auto &x : v) x = {normal(rng), normal(rng)};
    return v / v.norm();
}

/// Runs the unitarity, block-identity, Hermiticity, spectral, Parseval,
/// bound and loader-precision checks for one kernel pair on one grid.
inline VerifyReport run_verification(const KernelPair &kp, const GridSpec &g, const VerifyOptions &opt) {
    VerifyReport report;
    auto add = [&report](std::string name, double residual, double tol) {
        report.checks.push_back({std::move(name), residual, tol, residual <= tol});
    };

    const RegisterLayout layout(kp.stencil, g);
    if (layout.total_dim() > opt.max_dim_cap) {
        throw ResourceError("full register dimension " + std::to_string(layout.total_dim()) +
                            " exceeds --max-dim-cap " + std::to_string(opt.max_dim_cap));
    }
    std::mt19937_64 rng(opt.seed);

    const auto gp = loader_from_weights(kp.p, layout.shift_qubits);
    const auto gq = loader_from_weights(kp.q, layout.shift_qubits);
    const auto prep = prepare_unitary(gp, gq);
    const SelectOperator sel(kp.stencil, layout);
    const BlockEncodingCircuit circuit(prep, sel);
    const auto a = assemble_dog(kp, g);

    add("loader G_p unitarity", unitarity_residual(gp.matrix), opt.unitarity_tol);
    add("loader G_q unitarity", unitarity_residual(gq.matrix), opt.unitarity_tol);
    add("PREPARE unitarity", unitarity_residual(prep), opt.unitarity_tol);
    if (layout.total_dim() <= kDenseUnitaryCap) {
        add("SELECT unitarity", unitarity_residual(sel.dense()), opt.unitarity_tol);
        add("U unitarity", unitarity_residual(circuit.dense()), opt.unitarity_tol);
    } else {
        double worst = 0.0;
        for (int k = 0; k < 8; ++k) {
            const auto x = random_state(layout.total_dim(), rng);
            worst = std::max(worst, std::abs(circuit.apply(x).norm() - 1.0));
        }
        add("U norm preservation (8 random states)", worst, opt.unitarity_tol);
    }

    add("block identity |block(U) - A_h/2|", spectral_norm(circuit.block() - 0.5 * a), opt.block_tol);

    if (opt.inject_asymmetry) {
        auto c = kp.c;
        c.front() += 1e-3;  // breaks c_t = c_{-t} unless the stencil is {0}
        add("Hermiticity (asymmetric injection)", hermiticity_residual(assemble_dog(kp.stencil, c, g)),
            opt.hermiticity_tol);
    } else {
        add("Hermiticity", hermiticity_residual(a), opt.hermiticity_tol);
    }

    const auto tf = transfer_function(kp, g);
    add("mu(0) = 0", std::abs(tf.mu(0)), opt.hermiticity_tol);
    double eig_res = 0.0;
    for (std::int64_t f = 0; f < g.size(); ++f) {
        const auto w = fourier_basis_vector(unflatten(f, g), g);
        eig_res = std::max(eig_res, (apply_dog(kp, g, w) - tf.mu(f) * w).norm());
    }
    add("Fourier eigen-residual", eig_res, opt.eigen_tol);
    Eigen::SelfAdjointEigenSolver<DenseOperator> eig(a, Eigen::EigenvaluesOnly);
    add("operator norm vs dense eigensolver",
        std::abs(operator_norm(tf) - eig.eigenvalues().cwiseAbs().maxCoeff()), opt.eigen_tol);

    double parseval = 0.0;
    double bound_excess = 0.0;
    const double bound = success_probability_bound(tf);
    for (int k = 0; k < opt.random_states; ++k) {
        const auto v = random_state(g.size(), rng);
        const double p_fourier = success_probability_exact(v, tf);
        const double p_dense = success_probability_dense(a, v);
        const double p_born = apply_and_postselect(circuit, v).success_probability;
        parseval = std::max({parseval, std::abs(p_fourier - p_dense), std::abs(p_dense - p_born)});
        bound_excess = std::max(bound_excess, p_fourier - bound);
    }
    add("Parseval / dense / Born agreement", parseval, opt.probability_tol);
    add("bound dominance (max excess over 1/4 |A_h|^2)", std::max(0.0, bound_excess), opt.probability_tol);
    const auto top = fourier_basis_vector(unflatten(argmax_frequency(tf), g), g);
    add("bound saturation at argmax mode", std::abs(success_probability_exact(top, tf) - bound),
        opt.probability_tol);

    double worst_ratio = 0.0;
    bool bound_ok = true;
    for (double mag : {1e-2, 1e-3, 1e-4}) {
        for (int k = 0; k < opt.perturbation_trials; ++k) {
            const auto e = perturbed_encoding_error(gp, gq, perturb_loader(gp, mag, rng), perturb_loader(gq, mag, rng),
                                                    kp.stencil, g);
            bound_ok = bound_ok && e.within_bound;
            if (e.epsilon_g > 0.0) worst_ratio = std::max(worst_ratio, e.block_error / e.epsilon_g);
        }
    }
    report.checks.push_back({"loader precision: max block_error / eps_G", worst_ratio, 2.0, bound_ok});
    return report;
}

}  // namespace dogbe
