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
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dogbe/errors.hpp"
#include "dogbe/grid.hpp"
#include "dogbe/kernel.hpp"

namespace dogbe {

/// Parameters shared by every CLI command. The JSON form uses the flag names as keys.
struct ExperimentConfig {
    int dim = 1;
    std::vector<std::int64_t> n_points{16};
    int radius = 3;
    StencilShape shape = StencilShape::hypercube;
    double sigma_p = 0.8;
    double sigma_q = 1.6;
    std::string field = "sin1d";
    std::string out = ".";
    double tol = 1e-10;
    std::int64_t max_dim_cap = std::int64_t{1} << 14;
    int threads = 1;
    std::uint64_t seed = 20260417;

    bool operator==(const ExperimentConfig &) const = default;

    /// Throws DomainError on the first inconsistent field.
    void validate() const {
        if (dim < 1 || dim > 3) throw DomainError("--dim must be 1, 2 or 3");
        if (n_points.empty()) throw DomainError("at least one --n-points value is required");
        for (auto n : n_points) GridSpec::from_points(dim, n);
        if (radius < 0) throw DomainError("--radius must be nonnegative");
        if (!(sigma_p > 0.0) || !(sigma_q > 0.0)) throw DomainError("sigmas must be positive");
        if (!(tol > 0.0)) throw DomainError("--tol must be positive");
        if (max_dim_cap < 1) throw DomainError("--max-dim-cap must be positive");
        if (threads < 1) throw DomainError("--threads must be positive");
    }

    KernelPair kernels() const { return KernelPair::gaussian(build_stencil(dim, radius, shape), sigma_p, sigma_q); }
};

inline void to_json(nlohmann::json &j, const ExperimentConfig &c) {
    j = nlohmann::json{{"dim", c.dim},
                       {"n-points", c.n_points},
                       {"radius", c.radius},
                       {"shape", std::string(to_string(c.shape))},
                       {"sigma-p", c.sigma_p},
                       {"sigma-q", c.sigma_q},
                       {"field", c.field},
                       {"out", c.out},
                       {"tol", c.tol},
                       {"max-dim-cap", c.max_dim_cap},
                       {"threads", c.threads},
                       {"seed", c.seed}};
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline void from_json(const nlohmann::json &j, ExperimentConfig &c) {
    if (!j.is_object()) throw DomainError("config must be a JSON object");
    for (const auto &[key, value] : j.items()) {
        if (key == "dim") c.dim = value.get<int>();
        else if (key == "n-points") c.n_points = value.get<std::vector<std::int64_t>>();
        else if (key == "radius") c.radius = value.get<int>();
        else if (key == "shape") c.shape = parse_stencil_shape(value.get<std::string>());
        else if (key == "sigma-p") c.sigma_p = value.get<double>();
        else if (key == "sigma-q") c.sigma_q = value.get<double>();
        else if (key == "field") c.field = value.get<std::string>();
        else if (key == "out") c.out = value.get<std::string>();
        else if (key == "tol") c.tol = value.get<double>();
        else if (key == "max-dim-cap") c.max_dim_cap = value.get<std::int64_t>();
        else if (key == "threads") c.threads = value.get<int>();
        else if (key == "seed") c.seed = value.get<std::uint64_t>();
        else throw DomainError("unknown config key '" + key + "'");
    }
}

inline ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file " + path);
    try {
        return nlohmann::json::parse(in).get<ExperimentConfig>();
    } catch (const nlohmann::json::exception &e) {
        throw DomainError("bad config file " + path + ": " + e.what());
    }
}

}  // namespace dogbe
