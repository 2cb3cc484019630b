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

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "dogbe/analysis.hpp"
#include "dogbe/grid.hpp"
#include "dogbe/kernel.hpp"
#include "dogbe/spectral.hpp"

namespace dogbe::csv {

/// 17 significant digits: enough to round-trip any double.
inline std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_kernel(std::ostream &os, const KernelPair &kp) {
    for (int k = 1; k <= kp.stencil.dim; ++k) os << 't' << k << ',';
    os << "p,q,c\n";
    for (std::size_t i = 0; i < kp.stencil.size(); ++i) {
        for (auto t : kp.stencil.offsets[i]) os << t << ',';
        os << num(kp.p[i]) << ',' << num(kp.q[i]) << ',' << num(kp.c[i]) << '\n';
    }
}

/// One row per flattened frequency index in `rows`.
inline void write_transfer(std::ostream &os, const TransferFunction &tf, const std::vector<std::int64_t> &rows) {
    for (int k = 1; k <= tf.grid.dim; ++k) os << "omega" << k << ',';
    os << "re_mu,im_mu,abs_mu\n";
    for (auto f : rows) {
        for (auto w : unflatten(f, tf.grid)) os << w << ',';
        const auto mu = tf.mu(f);
        os << num(mu.real()) << ',' << num(mu.imag()) << ',' << num(std::abs(mu)) << '\n';
    }
}

/// omega = 0..N/2 in 1D, every frequency otherwise.
inline std::vector<std::int64_t> default_transfer_rows(const GridSpec &g) {
    std::vector<std::int64_t> rows;
    const auto last = g.dim == 1 ? g.points() / 2 : g.size() - 1;
    for (std::int64_t f = 0; f <= last; ++f) rows.push_back(f);
    return rows;
}

inline void write_convergence(std::ostream &os, const std::vector<ConvergenceRow> &rows) {
    os << "N,h,P_exact,P_asym,ratio\n";
    for (const auto &r : rows) {
        os << r.points << ',' << num(r.spacing) << ',' << num(r.p_exact) << ',' << num(r.p_asym) << ','
           << num(r.ratio) << '\n';
    }
}

/// Row-major dump, one matrix row per line as re,im pairs.
inline void write_matrix(std::ostream &os, const DenseOperator &a) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            if (c) os << ',';
            os << num(a(r, c).real()) << ',' << num(a(r, c).imag());
        }
        os << '\n';
    }
}

}  // namespace dogbe::csv
