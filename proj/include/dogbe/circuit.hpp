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
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dogbe/dog_operator.hpp"
#include "dogbe/errors.hpp"
#include "dogbe/grid.hpp"
#include "dogbe/kernel.hpp"

namespace dogbe {

/// Explicit dense unitaries on the full register are only built up to this size.
inline constexpr std::int64_t kDenseUnitaryCap = 4096;

/// ceil(log2(count)); 0 for a single-offset stencil.
inline int shift_qubits_for(std::size_t count) {
    if (count == 0) throw DomainError("empty stencil");
    int s = 0;
    while ((std::size_t{1} << s) < count) ++s;
    return s;
}

/// indicator (1 qubit, most significant) x shift label (s qubits) x data (D n qubits).
struct RegisterLayout {
    int shift_qubits = 0;
    GridSpec grid;

    RegisterLayout() = default;
    RegisterLayout(int s, GridSpec g) : shift_qubits(s), grid(g) {
        if (s < 0 || s > 20) throw DomainError("shift register size out of range");
    }
    RegisterLayout(const Stencil &st, GridSpec g) : RegisterLayout(shift_qubits_for(st.size()), g) {}

    std::int64_t shift_dim() const { return std::int64_t{1} << shift_qubits; }
    std::int64_t ancilla_dim() const { return 2 * shift_dim(); }
    std::int64_t data_dim() const { return grid.size(); }
    std::int64_t total_dim() const { return ancilla_dim() * data_dim(); }
    int ancilla_qubits() const { return shift_qubits + 1; }

    std::int64_t index(int indicator, std::int64_t label, std::int64_t data) const {
        return ((static_cast<std::int64_t>(indicator) << shift_qubits) + label) * data_dim() + data;
    }
};

/// Stencil position i <-> shift-register basis state i; states >= |T| are padding.
inline std::vector<std::int64_t> shift_label_map(const Stencil &st) {
    std::vector<std::int64_t> labels(st.size());
    for (std::size_t i = 0; i < st.size(); ++i) labels[i] = static_cast<std::int64_t>(i);
    return labels;
}

/// Unitary G with G|0> equal to a prescribed real amplitude vector.
struct LoaderUnitary {
    int shift_qubits = 0;
    DenseOperator matrix;
    Eigen::VectorXd target;
};

/// Householder completion: I if target = e0, otherwise the reflection
/// I - 2 w w^T with w = (target - e0) / |target - e0|.
inline LoaderUnitary loader_unitary(std::span<const double> amplitudes) {
    const auto dim = amplitudes.size();
    if (dim == 0 || (dim & (dim - 1)) != 0) throw DomainError("loader length must be a power of two");
    const int s = shift_qubits_for(dim);
    Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(amplitudes.data(), static_cast<Eigen::Index>(dim));
    if (std::abs(a.norm() - 1.0) > 1e-12) throw DomainError("loader amplitudes must have unit 2-norm");

    LoaderUnitary g{s, DenseOperator::Identity(a.size(), a.size()), a};
    Eigen::VectorXd w = a;
    w(0) -= 1.0;
    const double wn = w.norm();
    if (wn == 0.0) return g;
    w /= wn;
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(a.size(), a.size()) - 2.0 * w * w.transpose();
    // The reflection is symmetric; pin its first row/column to the target verbatim.
    h.col(0) = a;
    h.row(0) = a.transpose();
    g.matrix = h.cast<std::complex<double>>();
    return g;
}

/// Loader for sqrt(weights), zero-padded to 2^s entries.
inline LoaderUnitary loader_from_weights(std::span<const double> weights, int shift_qubits) {
    const auto dim = std::size_t{1} << shift_qubits;
    if (weights.size() > dim) throw DomainError("stencil does not fit the shift register");
    std::vector<double> amp(dim, 0.0);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0.0) throw DomainError("negative weight");
        amp[i] = std::sqrt(weights[i]);
    }
    return loader_unitary(amp);
}

/// P = (|0><0| (x) G_p + |1><1| (x) G_q)(H (x) I) on indicator (x) shift.
inline DenseOperator prepare_unitary(const LoaderUnitary &gp, const LoaderUnitary &gq) {
    if (gp.matrix.rows() != gq.matrix.rows()) throw DomainError("loader sizes differ");
    const auto m = gp.matrix.rows();
    const double r = 1.0 / std::sqrt(2.0);
    DenseOperator p(2 * m, 2 * m);
    p.topLeftCorner(m, m) = r * gp.matrix;
    p.topRightCorner(m, m) = r * gp.matrix;
    p.bottomLeftCorner(m, m) = r * gq.matrix;
    p.bottomRightCorner(m, m) = -r * gq.matrix;
    return p;
}

/// SEL = sum_t I (x) |t><t| (x) S_t, identity on padding labels. Kept as one
/// data permutation per label.
class SelectOperator {
  public:
    SelectOperator(const Stencil &st, const RegisterLayout &layout) : layout_(layout) {
        if (st.dim != layout.grid.dim) throw DomainError("stencil and grid dimensions differ");
        if (static_cast<std::int64_t>(st.size()) > layout.shift_dim()) {
            throw DomainError("stencil does not fit the shift register");
        }
        perms_.reserve(st.size());
        for (const auto &t : st.offsets) perms_.push_back(shift_permutation(t, layout.grid));
    }

    const RegisterLayout &layout() const { return layout_; }

    /// In-place application to a full-space vector or to every column of a matrix.
    template <typename Derived>
    void apply(Eigen::MatrixBase<Derived> &x) const {
        const auto nd = layout_.data_dim();
        typename Derived::PlainObject block(nd, x.cols());
        for (int ind = 0; ind < 2; ++ind) {
            for (std::size_t label = 0; label < perms_.size(); ++label) {
                const auto base = layout_.index(ind, static_cast<std::int64_t>(label), 0);
                const auto &perm = perms_[label];
                for (std::int64_t j = 0; j < nd; ++j) block.row(perm[static_cast<std::size_t>(j)]) = x.row(base + j);
                x.middleRows(base, nd) = block;
            }
        }
    }

    DenseOperator dense() const {
        const auto total = layout_.total_dim();
        if (total > kDenseUnitaryCap) throw ResourceError("dense SELECT above cap");
        DenseOperator sel = DenseOperator::Identity(total, total);
        apply(sel);
        return sel;
    }

  private:
    RegisterLayout layout_;
    std::vector<std::vector<std::int64_t>> perms_;
};

inline DenseOperator select_unitary(const Stencil &st, const RegisterLayout &layout) {
    return SelectOperator(st, layout).dense();
}

/// Z on the indicator qubit: negates the |1>_ind half of the register.
template <typename Derived>
void apply_indicator_z(Eigen::MatrixBase<Derived> &x, const RegisterLayout &layout) {
    const auto half = layout.total_dim() / 2;
    x.bottomRows(half) *= -1.0;
}

/// (A (x) I_data) applied to the rows of x, for A acting on indicator (x) shift.
/// Each column is viewed as a data_dim x ancilla_dim matrix X, so the update is X A^T.
template <typename Derived>
void apply_ancilla_operator(const DenseOperator &a, Eigen::MatrixBase<Derived> &x, const RegisterLayout &layout) {
    const auto na = layout.ancilla_dim();
    const auto nd = layout.data_dim();
    if (a.rows() != na || a.cols() != na) throw DomainError("ancilla operator size mismatch");
    if (x.rows() != na * nd) throw DomainError("state size does not match register");
    const DenseOperator at = a.transpose();
    Eigen::MatrixXcd in = x;
    Eigen::MatrixXcd out(in.rows(), in.cols());
    for (Eigen::Index k = 0; k < in.cols(); ++k) {
        Eigen::Map<const Eigen::MatrixXcd> cols_in(in.col(k).data(), nd, na);
        Eigen::Map<Eigen::MatrixXcd> cols_out(out.col(k).data(), nd, na);
        cols_out.noalias() = cols_in * at;
    }
    x = out;
}

/// The circuit U = (P^dagger (x) I) SEL (Z (x) I (x) I)(P (x) I), applied
/// gate by gate without materializing U.
class BlockEncodingCircuit {
  public:
    BlockEncodingCircuit(DenseOperator prepare, SelectOperator select)
        : prepare_(std::move(prepare)), select_(std::move(select)) {
        if (prepare_.rows() != select_.layout().ancilla_dim()) throw DomainError("PREPARE/SELECT size mismatch");
        prepare_adj_ = prepare_.adjoint();
    }

    static BlockEncodingCircuit from_kernels(const KernelPair &kp, const GridSpec &g) {
        RegisterLayout layout(kp.stencil, g);
        auto gp = loader_from_weights(kp.p, layout.shift_qubits);
        auto gq = loader_from_weights(kp.q, layout.shift_qubits);
        return BlockEncodingCircuit(prepare_unitary(gp, gq), SelectOperator(kp.stencil, layout));
    }

    const RegisterLayout &layout() const { return select_.layout(); }
    const DenseOperator &prepare() const { return prepare_; }

    template <typename Derived>
    void apply_inplace(Eigen::MatrixBase<Derived> &x) const {
        apply_ancilla_operator(prepare_, x, layout());
        apply_indicator_z(x, layout());
        select_.apply(x);
        apply_ancilla_operator(prepare_adj_, x, layout());
    }

    StateVector apply(const StateVector &state) const {
        if (state.size() != layout().total_dim()) throw DomainError("state size does not match register");
        StateVector x = state;
        apply_inplace(x);
        return x;
    }

    DenseOperator dense() const {
        const auto total = layout().total_dim();
        if (total > kDenseUnitaryCap) {
            throw ResourceError("dense unitary dimension " + std::to_string(total) + " exceeds cap " +
                                std::to_string(kDenseUnitaryCap));
        }
        DenseOperator u = DenseOperator::Identity(total, total);
        apply_inplace(u);
        return u;
    }

    /// (<0,0| (x) I) U (|0,0> (x) I). Only P|0,0> enters on the right and
    /// only the <0,0| row of P^dagger on the left, so the register is
    /// propagated on data_dim columns and read out on data_dim rows.
    DenseOperator block() const {
        const auto na = layout().ancilla_dim();
        const auto nd = layout().data_dim();
        DenseOperator cols = DenseOperator::Zero(layout().total_dim(), nd);
        for (std::int64_t r = 0; r < na; ++r) {
            cols.middleRows(r * nd, nd).diagonal().setConstant(prepare_(r, 0));
        }
        apply_indicator_z(cols, layout());
        select_.apply(cols);
        DenseOperator out = DenseOperator::Zero(nd, nd);
        for (std::int64_t c = 0; c < na; ++c) {
            if (prepare_adj_(0, c) != 0.0) out += prepare_adj_(0, c) * cols.middleRows(c * nd, nd);
        }
        return out;
    }

  private:
    DenseOperator prepare_;
    DenseOperator prepare_adj_;
    SelectOperator select_;
};

/// Literal product (P^dagger (x) I) SEL (Z (x) I (x) I)(P (x) I) from dense factors.
inline DenseOperator block_encoding_unitary(const DenseOperator &prepare, const DenseOperator &select,
                                            const RegisterLayout &layout) {
    const auto total = layout.total_dim();
    if (select.rows() != total || select.cols() != total) throw DomainError("SELECT size mismatch");
    if (total > kDenseUnitaryCap) throw ResourceError("dense unitary above cap");
    DenseOperator x = DenseOperator::Identity(total, total);
    apply_ancilla_operator(prepare, x, layout);
    apply_indicator_z(x, layout);
    x = select * x;
    DenseOperator adj = prepare.adjoint();
    apply_ancilla_operator(adj, x, layout);
    return x;
}

inline DenseOperator extract_block(const DenseOperator &u, const RegisterLayout &layout) {
    if (u.rows() != layout.total_dim() || u.cols() != layout.total_dim()) {
        throw DomainError("operator does not match the register layout");
    }
    return u.topLeftCorner(layout.data_dim(), layout.data_dim());
}

struct PostselectResult {
    double success_probability = 0.0;
    std::optional<StateVector> state;  // absent when the ancilla |0,0> branch is empty
};

inline constexpr double kPostselectFloor = 1e-14;

namespace detail {

inline void require_normalized(const StateVector &v) {
    if (std::abs(v.norm() - 1.0) > 1e-10) throw DomainError("input state must be normalized");
}

inline PostselectResult postselect_branch(const StateVector &branch) {
    PostselectResult r;
    r.success_probability = branch.squaredNorm();
    if (r.success_probability > kPostselectFloor) r.state = branch / std::sqrt(r.success_probability);
    return r;
}

}  // namespace detail

/// Runs U on |0,0>|v> and keeps the ancilla-|0,0> component.
inline PostselectResult apply_and_postselect(const DenseOperator &u, const RegisterLayout &layout,
                                             const StateVector &v) {
    if (v.size() != layout.data_dim()) throw DomainError("state size does not match data register");
    if (u.rows() != layout.total_dim()) throw DomainError("operator does not match the register layout");
    detail::require_normalized(v);
    // Only the first data_dim columns of U see |0,0>|v>.
    StateVector branch = u.topLeftCorner(layout.data_dim(), layout.data_dim()) * v;
    return detail::postselect_branch(branch);
}

inline PostselectResult apply_and_postselect(const BlockEncodingCircuit &circuit, const StateVector &v) {
    const auto &layout = circuit.layout();
    if (v.size() != layout.data_dim()) throw DomainError("state size does not match data register");
    detail::require_normalized(v);
    StateVector full = StateVector::Zero(layout.total_dim());
    full.head(layout.data_dim()) = v;
    full = circuit.apply(full);
    return detail::postselect_branch(full.head(layout.data_dim()));
}

struct EncodingError {
    double epsilon_g = 0.0;    // max_pi |(G~_pi - G_pi)|0>|
    double block_error = 0.0;  // spectral norm of the block difference
    bool within_bound = true;  // block_error <= 2 epsilon_g
};

inline EncodingError perturbed_encoding_error(const LoaderUnitary &gp, const LoaderUnitary &gq,
                                              const LoaderUnitary &gp_approx, const LoaderUnitary &gq_approx,
                                              const Stencil &st, const GridSpec &g) {
    RegisterLayout layout(gp.shift_qubits, g);
    if (gq.shift_qubits != gp.shift_qubits || gp_approx.shift_qubits != gp.shift_qubits ||
        gq_approx.shift_qubits != gp.shift_qubits) {
        throw DomainError("loader sizes differ");
    }
    SelectOperator sel(st, layout);
    const BlockEncodingCircuit exact(prepare_unitary(gp, gq), sel);
    const BlockEncodingCircuit approx(prepare_unitary(gp_approx, gq_approx), sel);

    EncodingError e;
    e.epsilon_g = std::max((gp_approx.matrix.col(0) - gp.matrix.col(0)).norm(),
                           (gq_approx.matrix.col(0) - gq.matrix.col(0)).norm());
    e.block_error = spectral_norm(approx.block() - exact.block());
    // Slack covers rounding in the two block computations only.
    e.within_bound = e.block_error <= 2.0 * e.epsilon_g + 1e-14;
    return e;
}

/// exp(i * magnitude * H) G for a random Hermitian H with unit spectral norm,
/// so |(G~ - G)|0>| <= magnitude.
template <typename Rng>
LoaderUnitary perturb_loader(const LoaderUnitary &g, double magnitude, Rng &rng) {
    const auto m = g.matrix.rows();
    std::normal_distribution<double> normal(0.0, 1.0);
    DenseOperator h(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) h(r, c) = {normal(rng), normal(rng)};
    }
    h = (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<DenseOperator> eig(h);
    const auto &lambda = eig.eigenvalues();
    const double scale = std::max(std::abs(lambda.minCoeff()), std::abs(lambda.maxCoeff()));
    Eigen::VectorXcd phases(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        phases(k) = std::polar(1.0, magnitude * lambda(k) / scale);
    }
    DenseOperator rot = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    LoaderUnitary out = g;
    out.matrix = rot * g.matrix;
    out.target = out.matrix.col(0).real();  // informational; the perturbed column may be complex
    return out;
}

enum class LoaderMode { generic, structured };

/// Leading-order T-gate terms with all constants set to 1. These are
/// asymptotic scalings, not gate counts.
struct ResourceReport {
    LoaderMode mode = LoaderMode::generic;
    int shift_qubits = 0;
    double loader_term = 0.0;  // 2^s log2(1/eps_G) or s^2 log2(1/eps_G)
    double shift_term = 0.0;   // |T| D log2 N
    double leading_total = 0.0;
    int ancilla_qubits = 0;
    double gamma = 1.0;
    double subnormalization = 2.0;  // 2, or 2/gamma for structured loaders
};

inline ResourceReport resource_estimate(std::size_t stencil_size, const GridSpec &g, LoaderMode mode,
                                        double eps_g, double gamma = 1.0) {
    if (!(eps_g > 0.0 && eps_g < 1.0)) throw DomainError("eps_G must lie in (0, 1)");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (0, 1]");
    ResourceReport r;
    r.mode = mode;
    r.shift_qubits = shift_qubits_for(stencil_size);
    const double s = r.shift_qubits;
    const double log_eps = std::log2(1.0 / eps_g);
    r.shift_term = static_cast<double>(stencil_size) * g.dim * g.qubits_per_axis;
    if (mode == LoaderMode::generic) {
        r.loader_term = std::ldexp(1.0, r.shift_qubits) * log_eps;
        r.ancilla_qubits = r.shift_qubits + 1;
        r.subnormalization = 2.0;
    } else {
        r.loader_term = s * s * log_eps;
        r.ancilla_qubits = r.shift_qubits + 1 + std::max(0, (r.shift_qubits - 1) / 2);
        r.gamma = gamma;
        r.subnormalization = 2.0 / gamma;
    }
    r.leading_total = r.loader_term + r.shift_term;
    return r;
}

}  // namespace dogbe
