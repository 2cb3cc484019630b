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

// Experiment driver: kernel dump, transfer function, verification suite and
// success-probability convergence sweep.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dogbe/config.hpp"
#include "dogbe/csv.hpp"
#include "dogbe/dogbe.hpp"
#include "dogbe/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerify = 2;
constexpr int kExitIo = 3;

using dogbe::ExperimentConfig;
using nlohmann::json;

void warn(std::string_view msg) { std::cerr << "warning: " << msg << '\n'; }

std::ofstream open_output(const ExperimentConfig &cfg, const std::string &name) {
    std::filesystem::create_directories(cfg.out);
    const auto path = std::filesystem::path(cfg.out) / name;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    return os;
}

void write_json(const ExperimentConfig &cfg, const std::string &name, const json &j) {
    auto os = open_output(cfg, name);
    os << j.dump(2) << '\n';
}

dogbe::KernelPair kernels_with_warnings(const ExperimentConfig &cfg) {
    auto kp = cfg.kernels();
    if (!kp.ordered()) warn("sigma-p >= sigma-q: the filter is the negated bandpass");
    return kp;
}

int cmd_kernel(const ExperimentConfig &cfg) {
    const auto kp = kernels_with_warnings(cfg);
    {
        auto os = open_output(cfg, "kernel.csv");
        dogbe::csv::write_kernel(os, kp);
    }
    const double one_norm = dogbe::coefficient_one_norm(kp.c);
    json report{{"stencil_size", kp.stencil.size()},
                {"shift_qubits", dogbe::shift_qubits_for(kp.stencil.size())},
                {"one_norm", one_norm},
                {"c_dog", dogbe::c_dog_constant(kp)},
                {"lambda", 2.0},
                {"one_norm_within_lambda", one_norm <= 2.0}};
    // Leading-order T-gate terms (constants set to 1) at eps_G = 1e-3 on the first grid.
    const auto g = dogbe::GridSpec::from_points(cfg.dim, cfg.n_points.front());
    for (auto mode : {dogbe::LoaderMode::generic, dogbe::LoaderMode::structured}) {
        const auto r = dogbe::resource_estimate(kp.stencil.size(), g, mode, 1e-3);
        report["asymptotic_resources"][mode == dogbe::LoaderMode::generic ? "generic" : "structured"] = {
            {"eps_G", 1e-3},
            {"loader_term", r.loader_term},
            {"shift_term", r.shift_term},
            {"ancilla_qubits", r.ancilla_qubits},
            {"subnormalization", mode == dogbe::LoaderMode::generic ? json(r.subnormalization) : json("2/gamma")}};
    }
    write_json(cfg, "kernel_report.json", report);
    std::cout << "stencil size     " << kp.stencil.size() << '\n'
              << "sum |c_t|        " << dogbe::csv::num(one_norm) << '\n'
              << "C_DoG            " << dogbe::csv::num(dogbe::c_dog_constant(kp)) << '\n'
              << "sum |c_t| <= 2   " << (one_norm <= 2.0 ? "yes" : "NO") << '\n';
    return kExitOk;
}

int cmd_spectrum(const ExperimentConfig &cfg) {
    const auto kp = kernels_with_warnings(cfg);
    const auto g = dogbe::GridSpec::from_points(cfg.dim, cfg.n_points.front());
    dogbe::warn_if_aliasing(kp.stencil, g, warn);
    const auto tf = dogbe::transfer_function(kp, g);
    {
        auto os = open_output(cfg, "spectrum.csv");
        dogbe::csv::write_transfer(os, tf, dogbe::csv::default_transfer_rows(g));
    }
    double conj_gap = 0.0;
    for (std::int64_t f = 0; f < g.size(); ++f) {
        auto neg = dogbe::unflatten(f, g);
        for (auto &w : neg) w = dogbe::wrap(-w, g.points());
        conj_gap = std::max(conj_gap, std::abs(tf.mu(f) - std::conj(tf.at(neg))));
    }
    std::cout << "operator norm         " << dogbe::csv::num(dogbe::operator_norm(tf)) << '\n'
              << "|mu(0)|               " << dogbe::csv::num(std::abs(tf.mu(0))) << '\n'
              << "max |Im mu|           " << dogbe::csv::num(tf.mu.imag().cwiseAbs().maxCoeff()) << '\n'
              << "conjugate symmetry    " << dogbe::csv::num(conj_gap) << '\n';
    return kExitOk;
}

int cmd_verify(const ExperimentConfig &cfg, bool inject_asymmetry, int trials) {
    const auto kp = kernels_with_warnings(cfg);
    const auto g = dogbe::GridSpec::from_points(cfg.dim, cfg.n_points.front());
    dogbe::warn_if_aliasing(kp.stencil, g, warn);
    dogbe::VerifyOptions opt;
    opt.block_tol = cfg.tol;
    opt.max_dim_cap = cfg.max_dim_cap;
    opt.seed = cfg.seed;
    opt.inject_asymmetry = inject_asymmetry;
    opt.random_states = trials;
    opt.perturbation_trials = trials;
    const auto report = dogbe::run_verification(kp, g, opt);
    for (const auto &c : report.checks) {
        std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  residual=" << dogbe::csv::num(c.residual)
                  << "  tol=" << dogbe::csv::num(c.tolerance) << '\n';
    }
    std::cout << (report.all_passed() ? "verification PASSED\n" : "verification FAILED\n");
    return report.all_passed() ? kExitOk : kExitVerify;
}

int cmd_sweep(const ExperimentConfig &cfg) {
    const auto kp = kernels_with_warnings(cfg);
    const auto field = dogbe::fields::by_name(cfg.field, cfg.dim);
    for (std::size_t i = 1; i < cfg.n_points.size(); ++i) {
        if (cfg.n_points[i] <= cfg.n_points[i - 1]) throw dogbe::DomainError("--n-points must be ascending");
    }

    std::vector<dogbe::ConvergenceRow> rows(cfg.n_points.size());
    for (std::size_t start = 0; start < rows.size(); start += static_cast<std::size_t>(cfg.threads)) {
        std::vector<std::future<dogbe::ConvergenceRow>> batch;
        const auto stop = std::min(rows.size(), start + static_cast<std::size_t>(cfg.threads));
        for (auto i = start; i < stop; ++i) {
            batch.push_back(std::async(std::launch::async, [&, i] {
                return dogbe::convergence_point(field, kp, cfg.n_points[i]);
            }));
        }
        for (auto i = start; i < stop; ++i) rows[i] = batch[i - start].get();
    }

    // Born cross-check through the full circuit on the small grids only.
    json born = json::array();
    bool born_ok = true;
    for (const auto &r : rows) {
        const auto g = dogbe::GridSpec::from_points(cfg.dim, r.points);
        const dogbe::RegisterLayout layout(kp.stencil, g);
        if (r.points > 64 || layout.total_dim() > cfg.max_dim_cap) continue;
        const auto s = dogbe::sample(field, g);
        if (!(s.norm > 0.0)) continue;
        const auto circuit = dogbe::BlockEncodingCircuit::from_kernels(kp, g);
        const double diff = std::abs(dogbe::apply_and_postselect(circuit, s.normalized()).success_probability -
                                     r.p_exact);
        born_ok = born_ok && diff <= 1e-12;
        born.push_back({{"N", r.points}, {"abs_diff", diff}});
    }

    {
        auto os = open_output(cfg, "convergence.csv");
        dogbe::csv::write_convergence(os, rows);
    }
    std::vector<double> ns, pe, pa;
    for (const auto &r : rows) {
        ns.push_back(static_cast<double>(r.points));
        pe.push_back(r.p_exact);
        pa.push_back(r.p_asym);
    }
    auto finite_or_null = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
    json summary{{"field", cfg.field},
                 {"slope_exact", finite_or_null(dogbe::fit_loglog_slope(ns, pe))},
                 {"slope_asymptotic", finite_or_null(dogbe::fit_loglog_slope(ns, pa))},
                 {"final_ratio", finite_or_null(rows.back().ratio)},
                 {"born_crosscheck", born}};
    write_json(cfg, "convergence_summary.json", summary);
    std::cout << summary.dump(2) << '\n';
    return born_ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Difference-of-Gaussian block encoding experiments"};
    app.require_subcommand(1);

    ExperimentConfig flags;
    std::string config_path;
    std::string shape = "hypercube";
    bool inject_asymmetry = false;
    int trials = 100;

    std::vector<CLI::Option *> opts;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON config file; explicit flags override it");
        opts.push_back(sub->add_option("--dim", flags.dim, "spatial dimension D"));
        opts.push_back(sub->add_option("--n-points", flags.n_points, "points per axis N (repeatable)"));
        opts.push_back(sub->add_option("--radius", flags.radius, "stencil radius R"));
        opts.push_back(sub->add_option("--shape", shape, "stencil shape")->check(CLI::IsMember({"hypercube", "cross"})));
        opts.push_back(sub->add_option("--sigma-p", flags.sigma_p, "narrow Gaussian scale"));
        opts.push_back(sub->add_option("--sigma-q", flags.sigma_q, "wide Gaussian scale"));
        opts.push_back(sub->add_option("--field", flags.field, "sin1d, sin-product, constant or gaussian-bump"));
        opts.push_back(sub->add_option("--out", flags.out, "output directory"));
        opts.push_back(sub->add_option("--tol", flags.tol, "block-identity tolerance"));
        opts.push_back(sub->add_option("--max-dim-cap", flags.max_dim_cap, "cap on the full register dimension"));
        opts.push_back(sub->add_option("--threads", flags.threads, "parallel sweep entries"));
        opts.push_back(sub->add_option("--seed", flags.seed, "seed for randomized checks"));
    };

    auto *kernel = app.add_subcommand("kernel", "write kernel.csv and the scalar report");
    auto *spectrum = app.add_subcommand("spectrum", "write the transfer function spectrum.csv");
    auto *verify = app.add_subcommand("verify", "run the numerical verification suite");
    auto *sweep = app.add_subcommand("sweep", "success-probability convergence study");
    for (auto *sub : {kernel, spectrum, verify, sweep}) add_common(sub);
    verify->add_flag("--inject-asymmetry", inject_asymmetry, "feed an asymmetric kernel to the Hermiticity check");
    verify->add_option("--trials", trials, "random states and perturbations per magnitude");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = dogbe::load_config(config_path);
        // Explicitly given flags override the file, one-to-one.
        for (auto *opt : opts) {
            if (opt->count() == 0) continue;
            const auto name = opt->get_name();
            if (name == "--dim") cfg.dim = flags.dim;
            else if (name == "--n-points") cfg.n_points = flags.n_points;
            else if (name == "--radius") cfg.radius = flags.radius;
            else if (name == "--shape") cfg.shape = dogbe::parse_stencil_shape(shape);
            else if (name == "--sigma-p") cfg.sigma_p = flags.sigma_p;
            else if (name == "--sigma-q") cfg.sigma_q = flags.sigma_q;
            else if (name == "--field") cfg.field = flags.field;
            else if (name == "--out") cfg.out = flags.out;
            else if (name == "--tol") cfg.tol = flags.tol;
            else if (name == "--max-dim-cap") cfg.max_dim_cap = flags.max_dim_cap;
            else if (name == "--threads") cfg.threads = flags.threads;
            else if (name == "--seed") cfg.seed = flags.seed;
        }
        cfg.validate();
        if (trials < 1) throw dogbe::DomainError("--trials must be positive");
    } catch (const std::exception &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (kernel->parsed()) return cmd_kernel(cfg);
        if (spectrum->parsed()) return cmd_spectrum(cfg);
        if (verify->parsed()) return cmd_verify(cfg, inject_asymmetry, trials);
        return cmd_sweep(cfg);
    } catch (const dogbe::DomainError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const dogbe::ResourceError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
