// Copyright 2026 The uqclone Authors
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

/**
 * @file
 * Experiment runner: (theta, delta) sweeps in the three pipeline modes, CSV
 * output, and the self-check behind `uqclone verify`.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "uqclone/error_model.hpp"
#include "uqclone/pipeline.hpp"

namespace uqclone {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitVerification = 3, kExitIo = 4 };

/// Largest tolerated |F - 5/6| of an exact-mode row.
inline constexpr double kExactTolerance = 1e-9;

struct SweepConfig {
    double theta_start = -std::numbers::pi / 2.0 + std::numbers::pi / 36.0;
    double theta_end = std::numbers::pi / 2.0;
    int theta_steps = 19;
    std::vector<double> delta_list = {0.0, std::numbers::pi / 4.0, std::numbers::pi / 2.0,
                                      3.0 * std::numbers::pi / 4.0};
    PipelineMode mode = PipelineMode::Exact;
    /// Emitted photons per analyzer setting (montecarlo).
    std::int64_t trials = 20000;
    std::uint64_t seed = 42;
    /// Axis jitter half-width, degrees (perturbed).
    double jitter_deg = 0.1;
    /// Total relative count oscillation per replica (perturbed).
    double delta_c_total = 0.002;
    int perturbed_samples = 100;
    int bootstrap_resamples = kBootstrapResamples;
    /// CSV destination; empty means standard output.
    std::string out;

    void validate() const {
        const double half_pi = std::numbers::pi / 2.0;
        if (theta_steps < 1) throw ConfigError("theta_steps must be at least 1");
        if (!std::isfinite(theta_start) || !std::isfinite(theta_end)) throw ConfigError("theta bounds must be finite");
        if (!(theta_start > -half_pi) || theta_end > half_pi + 1e-12) {
            throw ConfigError("theta range must lie in (-pi/2, pi/2]");
        }
        if (theta_start > theta_end) throw ConfigError("theta_start exceeds theta_end");
        if (theta_steps == 1 && theta_start != theta_end) {
            throw ConfigError("a single theta step needs theta_start == theta_end");
        }
        if (delta_list.empty()) throw ConfigError("delta list is empty");
        for (double d : delta_list) {
            if (!std::isfinite(d)) throw ConfigError("delta values must be finite");
        }
        if (mode == PipelineMode::MonteCarlo && trials < 1) throw ConfigError("trials must be at least 1");
        if (!(jitter_deg >= 0.0)) throw ConfigError("jitter must be nonnegative");
        if (!(delta_c_total >= 0.0)) throw ConfigError("count oscillation must be nonnegative");
        if (perturbed_samples < 1) throw ConfigError("perturbed_samples must be at least 1");
        if (bootstrap_resamples < 0) throw ConfigError("bootstrap_resamples must be nonnegative");
    }

    std::vector<double> theta_grid() const {
        std::vector<double> g(static_cast<std::size_t>(theta_steps));
        for (int k = 0; k < theta_steps; ++k) {
            g[static_cast<std::size_t>(k)] =
                theta_steps == 1 ? theta_start
                                 : theta_start + (theta_end - theta_start) * k / static_cast<double>(theta_steps - 1);
        }
        return g;
    }
};

struct SweepRow {
    PipelineMode mode = PipelineMode::Exact;
    double delta = 0.0;
    double theta = 0.0;
    int replica = 1;
    double fidelity = 0.0;
    double stderr_ = 0.0;
    std::uint64_t seed = 0;
};

struct SweepSummary {
    PipelineMode mode = PipelineMode::Exact;
    std::size_t rows = 0;
    /// max |F - 5/6| over the rows.
    double max_abs_deviation = 0.0;
    /// Perturbed mode: |F - 5/6| over every individual sample.
    double mean_sample_error = 0.0;
    double max_sample_error = 0.0;
    int samples_exceeding_bound = 0;
    double bound = 0.0;
    /// Exact mode only: every row within kExactTolerance.
    bool exact_ok = true;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    SweepSummary summary;
};

inline SweepResult run_sweep(const SweepConfig &cfg) {
    cfg.validate();
    const std::vector<double> thetas = cfg.theta_grid();
    const OpticalTrain &cloner = default_cloner_train();
    const double jitter = cfg.jitter_deg * std::numbers::pi / 180.0;

    SweepResult res;
    res.summary.mode = cfg.mode;
    double error_sum = 0.0;
    std::size_t error_count = 0;
    for (std::size_t di = 0; di < cfg.delta_list.size(); ++di) {
        for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
            const double delta = cfg.delta_list[di];
            const double theta = thetas[ti];
            const std::uint64_t point_seed =
                cfg.mode == PipelineMode::Exact ? 0 : derive_seed(cfg.seed, di * thetas.size() + ti);
            std::array<double, 2> f{}, se{};
            switch (cfg.mode) {
                case PipelineMode::Exact: {
                    const FidelityReport r = exact_report(theta, delta);
                    f = {r.fidelity1, r.fidelity2};
                    break;
                }
                case PipelineMode::MonteCarlo: {
                    const MonteCarloRun run =
                        montecarlo_run(theta, delta, cfg.trials, point_seed, {}, cfg.bootstrap_resamples);
                    f = {run.report.fidelity1, run.report.fidelity2};
                    se = {run.report.stderr1, run.report.stderr2};
                    break;
                }
                case PipelineMode::Perturbed: {
                    const PerturbationSummary ps = perturbation_sweep(
                        cloner, theta, delta,
                        PerturbationConfig{jitter, cfg.delta_c_total, cfg.perturbed_samples, point_seed});
                    // Row fidelity: sample mean; stderr column: sample standard deviation.
                    for (int rep = 0; rep < 2; ++rep) {
                        double m = 0.0, ss = 0.0;
                        for (const auto &s : ps.samples) m += rep == 0 ? s.fidelity1 : s.fidelity2;
                        m /= static_cast<double>(ps.samples.size());
                        for (const auto &s : ps.samples) {
                            const double d = (rep == 0 ? s.fidelity1 : s.fidelity2) - m;
                            ss += d * d;
                        }
                        f[rep] = m;
                        se[rep] = ps.samples.size() > 1 ? std::sqrt(ss / (ps.samples.size() - 1.0)) : 0.0;
                    }
                    error_sum += ps.mean_abs_error * 2.0 * ps.samples.size();
                    error_count += 2 * ps.samples.size();
                    res.summary.max_sample_error = std::max(res.summary.max_sample_error, ps.max_abs_error);
                    res.summary.samples_exceeding_bound += ps.exceeding_bound;
                    res.summary.bound = ps.bound;
                    break;
                }
            }
            for (int rep = 0; rep < 2; ++rep) {
                res.rows.push_back(SweepRow{cfg.mode, delta, theta, rep + 1, f[rep], se[rep], point_seed});
            }
        }
    }
    std::sort(res.rows.begin(), res.rows.end(), [](const SweepRow &a, const SweepRow &b) {
        return std::tie(a.mode, a.delta, a.theta, a.replica) < std::tie(b.mode, b.delta, b.theta, b.replica);
    });

    res.summary.rows = res.rows.size();
    for (const auto &r : res.rows) {
        res.summary.max_abs_deviation = std::max(res.summary.max_abs_deviation, std::abs(r.fidelity - kOptimalCloneFidelity));
    }
    if (error_count > 0) res.summary.mean_sample_error = error_sum / static_cast<double>(error_count);
    res.summary.exact_ok = cfg.mode != PipelineMode::Exact || res.summary.max_abs_deviation <= kExactTolerance;
    return res;
}

inline std::string csv_header() { return "mode,delta_rad,theta_rad,replica,fidelity,stderr,seed\n"; }

inline std::string to_csv(const std::vector<SweepRow> &rows) {
    std::string out = csv_header();
    for (const auto &r : rows) {
        // Fixed decimals; adding 0.0 turns -0.000000000 into 0.000000000.
        out += fmt::format("{},{:.9f},{:.9f},{},{:.9f},{:.9f},{}\n", to_string(r.mode), r.delta + 0.0, r.theta + 0.0,
                           r.replica, r.fidelity, r.stderr_, r.seed);
    }
    return out;
}

inline std::string to_text(const SweepSummary &s) {
    std::string out = fmt::format("mode {}: {} rows, max |F - 5/6| = {:.3e}\n", to_string(s.mode), s.rows,
                                  s.max_abs_deviation);
    if (s.mode == PipelineMode::Exact) {
        out += fmt::format("exact tolerance {:.0e}: {}\n", kExactTolerance, s.exact_ok ? "ok" : "EXCEEDED");
    }
    if (s.mode == PipelineMode::Perturbed) {
        out += fmt::format("per-sample |dF|: mean {:.5f}, max {:.5f} (reported error {:.3f}, {})\n",
                           s.mean_sample_error, s.max_sample_error, kReportedFidelityError,
                           s.mean_sample_error <= kReportedFidelityError ? "mean within" : "mean EXCEEDS");
        out += fmt::format("analytic bound {:.5f}: {} sample fidelities beyond it\n", s.bound,
                           s.samples_exceeding_bound);
    }
    return out;
}

/// Uniformly distributed pure input: cos^2 theta uniform on [0, 1], delta on [0, 2 pi).
inline std::pair<double, double> random_input(Rng &rng) {
    const double theta = std::acos(std::sqrt(rng.uniform()));
    const double delta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return {theta, delta};
}

struct VerifyOptions {
    /// Test hook: axis error, degrees, put on the first wave plate of the cloner train.
    double hwp_fault_deg = 0.0;
    SolverOptions solver;
    std::uint64_t seed = 7;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

inline std::string to_text(const CheckResult &c) {
    std::string out =
        fmt::format("{} {} deviation={:.3e} tolerance={:.0e}", c.pass ? "PASS" : "FAIL", c.name, c.deviation, c.tolerance);
    if (!c.detail.empty()) out += " " + c.detail;
    return out;
}

namespace detail {

inline std::vector<std::pair<double, double>> default_grid() {
    const SweepConfig cfg;
    std::vector<std::pair<double, double>> g;
    for (double d : cfg.delta_list) {
        for (double t : cfg.theta_grid()) g.emplace_back(t, d);
    }
    return g;
}

inline CheckResult check_prep_solver(const SolverOptions &opt) {
    CheckResult c{"prep_solver", false, 0.0, 1e-10, ""};
    try {
        const PrepSolution sol = solve_prep_angles(bh_prep_target(), opt);
        const PureState got = apply_circuit(prep_circuit(sol.angles), blank_and_ancilla());
        c.deviation = 1.0 - std::abs(overlap(got, bh_prep_target()));
        c.detail = fmt::format("residual={:.3e}", sol.residual);
    } catch (const SolverError &e) {
        c.deviation = e.best_residual();
        c.detail = fmt::format("solver_tolerance_not_reached best_residual={:.3e}", e.best_residual());
    }
    c.pass = c.deviation <= c.tolerance;
    return c;
}

inline CheckResult check_reference_transform(std::uint64_t seed) {
    CheckResult c{"reference_transform", false, 0.0, 1e-10, "inputs=1000"};
    Rng rng(seed);
    const Circuit net = network_circuit();
    for (int k = 0; k < 1000; ++k) {
        const auto [theta, delta] = random_input(rng);
        const PureState in = polarization_state(theta, delta);
        const PureState out = apply_circuit(net, tensor_product(in, blank_and_ancilla()));
        c.deviation = std::max(c.deviation, max_deviation_up_to_phase(out, bh_reference_transform(in)));
    }
    c.pass = c.deviation <= c.tolerance;
    return c;
}

}  // namespace detail

/// Runs the invariant suite; every check reports its worst deviation.
inline std::vector<CheckResult> run_verify(const VerifyOptions &opt = {}) {
    std::vector<CheckResult> out;
    out.push_back(detail::check_prep_solver(opt.solver));
    out.push_back(detail::check_reference_transform(opt.seed));

    OpticalTrain cloner = compose_cloner_train();
    if (opt.hwp_fault_deg != 0.0) {
        const auto &els = cloner.elements();
        const auto it = std::find_if(els.begin(), els.end(),
                                     [](const OpticalElement &e) { return std::holds_alternative<Hwp>(e); });
        cloner = with_axis_offset(cloner, static_cast<std::size_t>(it - els.begin()),
                                  opt.hwp_fault_deg * std::numbers::pi / 180.0);
    }
    const EquivalenceReport eq = verify_equivalence(cloner, measurement_circuit(), 1e-9);
    out.push_back(CheckResult{"optics_equivalence", eq.pass, eq.max_deviation, eq.tolerance,
                              fmt::format("elements={}", cloner.elements().size())});

    const auto grid = detail::default_grid();
    CheckResult fid{"optics_fidelity", false, 0.0, kExactTolerance, fmt::format("points={}", grid.size())};
    CheckResult sym{"replica_symmetry", false, 0.0, 1e-12, fmt::format("points={}", grid.size())};
    for (const auto &[theta, delta] : grid) {
        const BasisDistributions probs = optical_distributions(theta, delta, cloner);
        const FidelityReport r = report_from_table(expected_counts(probs), theta, delta, PipelineMode::Exact);
        fid.deviation = std::max({fid.deviation, std::abs(r.fidelity1 - kOptimalCloneFidelity),
                                  std::abs(r.fidelity2 - kOptimalCloneFidelity)});
        const CloneResult g = clone(theta, delta);
        sym.deviation = std::max(sym.deviation, (g.rho1.matrix() - g.rho2.matrix()).cwiseAbs().maxCoeff());
    }
    fid.pass = fid.deviation <= fid.tolerance;
    out.push_back(fid);

    CheckResult tomo{"tomography_roundtrip", false, 0.0, 1e-12, "states=100"};
    Rng rng(derive_seed(opt.seed, 1));
    for (int k = 0; k < 100; ++k) {
        // Uniform direction, radius cube-root distributed: uniform in the Bloch ball.
        const double z = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double r = std::cbrt(rng.uniform());
        const double rho_xy = std::sqrt(1.0 - z * z);
        const Stokes s{r * rho_xy * std::cos(phi), r * rho_xy * std::sin(phi), r * z};
        const Matrix2 rho = stokes_matrix(s);
        auto born = [&](MeasurementBasis b) {
            const Eigen::Vector2cd v = basis_vector(b);
            return (v.adjoint() * rho * v)(0, 0).real();
        };
        const DensityMatrix back = reconstruct_single_qubit(born(MeasurementBasis::H), born(MeasurementBasis::V),
                                                            born(MeasurementBasis::D), born(MeasurementBasis::R));
        tomo.deviation = std::max(tomo.deviation, (back.matrix() - rho).cwiseAbs().maxCoeff());
    }
    tomo.pass = tomo.deviation <= tomo.tolerance;
    out.push_back(tomo);

    sym.pass = sym.deviation <= sym.tolerance;
    out.push_back(sym);
    return out;
}

}  // namespace uqclone
