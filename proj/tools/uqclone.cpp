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

// uqclone: command-line front end.
//
//   uqclone sweep  [--mode exact|montecarlo|perturbed] [--trials N] [--seed S] [--out FILE]
//   uqclone verify [--fault-hwp-deg X] [--solver-tol T]
//   uqclone tomo   [--theta T] [--delta D] [--mode exact|montecarlo] [--counts-out FILE]
//   uqclone train  [--out FILE]
//
// Every flag may also be given in a key = value file passed with --config;
// flags on the command line win.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "uqclone/uqclone.hpp"

namespace {

using namespace uqclone;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.close();
    if (!f) throw IoError("write to '" + path + "' failed");
}

std::string matrix_text(const DensityMatrix &rho) {
    const Matrix &m = rho.matrix();
    std::string out;
    for (Eigen::Index i = 0; i < 2; ++i) {
        out += "  [";
        for (Eigen::Index j = 0; j < 2; ++j) {
            out += fmt::format(" {:+.6f}{:+.6f}i", m(i, j).real(), m(i, j).imag());
        }
        out += " ]\n";
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulator of the 1 -> 2 universal quantum cloner on single-photon optics"};
    app.set_config("--config", "", "key = value file with default flag values");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    SweepConfig sweep;
    std::string mode = "exact";
    std::int64_t trials = sweep.trials;
    std::uint64_t seed = sweep.seed;
    double jitter_deg = sweep.jitter_deg;
    std::string out;
    double theta = 0.0, delta = 0.0;
    std::string counts_out;
    double fault_hwp_deg = 0.0;
    double solver_tol = SolverOptions{}.tolerance;

    app.add_option("--mode", mode, "Pipeline mode: exact, montecarlo or perturbed")->capture_default_str();
    app.add_option("--trials", trials, "Emitted photons per analyzer setting")->capture_default_str();
    app.add_option("--seed", seed, "Master seed")->capture_default_str();
    app.add_option("--jitter-deg", jitter_deg, "Axis jitter half-width for perturbed mode, degrees")
        ->capture_default_str();
    app.add_option("--out", out, "Output file (default: standard output)");
    app.add_option("--theta-start", sweep.theta_start, "First theta, radians")->capture_default_str();
    app.add_option("--theta-end", sweep.theta_end, "Last theta, radians")->capture_default_str();
    app.add_option("--theta-steps", sweep.theta_steps, "Number of theta points")->capture_default_str();
    app.add_option("--deltas", sweep.delta_list, "Relative phases, radians")->delimiter(',');
    app.add_option("--delta-c", sweep.delta_c_total, "Count oscillation per replica for perturbed mode")
        ->capture_default_str();
    app.add_option("--samples", sweep.perturbed_samples, "Perturbed samples per point")->capture_default_str();
    app.add_option("--bootstrap", sweep.bootstrap_resamples, "Bootstrap resamples per montecarlo point")
        ->capture_default_str();
    app.add_option("--theta", theta, "Input angle for tomo, radians")->capture_default_str();
    app.add_option("--delta", delta, "Input phase for tomo, radians")->capture_default_str();
    app.add_option("--counts-out", counts_out, "Write the simulated counts record (tomo, montecarlo)");
    app.add_option("--fault-hwp-deg", fault_hwp_deg, "Test hook: misalign the first cloner wave plate, degrees");
    app.add_option("--solver-tol", solver_tol, "Residual tolerance of the angle solver")->capture_default_str();

    auto *sweep_cmd = app.add_subcommand("sweep", "Fidelities over the (theta, delta) grid as CSV");
    auto *verify_cmd = app.add_subcommand("verify", "Run the invariant checks");
    auto *tomo_cmd = app.add_subcommand("tomo", "Tomography of both replicas for one input state");
    auto *train_cmd = app.add_subcommand("train", "Print the compiled cloner train");
    for (auto *sub : {sweep_cmd, verify_cmd, tomo_cmd, train_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const PipelineMode pm = parse_mode(mode);
        if (*sweep_cmd) {
            sweep.mode = pm;
            sweep.trials = trials;
            sweep.seed = seed;
            sweep.jitter_deg = jitter_deg;
            sweep.out = out;
            sweep.validate();
            const SweepResult res = run_sweep(sweep);
            write_output(sweep.out, to_csv(res.rows));
            std::cerr << to_text(res.summary);
            return res.summary.exact_ok ? kExitOk : kExitVerification;
        }
        if (*verify_cmd) {
            VerifyOptions vo;
            vo.hwp_fault_deg = fault_hwp_deg;
            vo.solver.tolerance = solver_tol;
            bool ok = true;
            std::string text;
            for (const CheckResult &c : run_verify(vo)) {
                text += to_text(c) + "\n";
                ok = ok && c.pass;
            }
            write_output(out, text);
            return ok ? kExitOk : kExitVerification;
        }
        if (*tomo_cmd) {
            FidelityReport report;
            DensityMatrix rho1 = stokes_compose({}), rho2 = stokes_compose({});
            if (pm == PipelineMode::MonteCarlo) {
                if (trials < 1) throw ConfigError("trials must be at least 1");
                const MonteCarloRun run = montecarlo_run(theta, delta, trials, seed);
                if (!counts_out.empty()) write_output(counts_out, to_text(run.record));
                const CountTable t = run.record.table();
                rho1 = reconstruct_replica(t, 1);
                rho2 = reconstruct_replica(t, 2);
                report = run.report;
            } else if (pm == PipelineMode::Exact) {
                const CountTable t =
                    expected_counts(optical_distributions(theta, delta, default_cloner_train()));
                rho1 = reconstruct_replica(t, 1);
                rho2 = reconstruct_replica(t, 2);
                report = fidelity_report(rho1, rho2, theta, delta);
            } else {
                throw ConfigError("tomo supports the exact and montecarlo modes");
            }
            std::string text = fmt::format("input theta={:.9f} delta={:.9f} mode={}\n", theta, delta, to_string(pm));
            text += "rho1 =\n" + matrix_text(rho1);
            text += "rho2 =\n" + matrix_text(rho2);
            text += fmt::format("F1 = {:.9f} +- {:.9f}\nF2 = {:.9f} +- {:.9f}\n", report.fidelity1, report.stderr1,
                                report.fidelity2, report.stderr2);
            write_output(out, text);
            return kExitOk;
        }
        if (*train_cmd) {
            write_output(out, to_text(default_cloner_train()));
            return kExitOk;
        }
    } catch (const ConfigError &e) {
        std::cerr << "uqclone: configuration error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError &e) {
        std::cerr << "uqclone: configuration error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError &e) {
        std::cerr << "uqclone: " << e.what() << "\n";
        return kExitIo;
    } catch (const EquivalenceError &e) {
        std::cerr << "uqclone: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitOk;
}
