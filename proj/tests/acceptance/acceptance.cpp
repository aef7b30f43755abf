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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "uqclone/uqclone.hpp"

namespace {

using namespace uqclone;

constexpr double kPi = std::numbers::pi;
constexpr double kFiveSixths = 5.0 / 6.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    /// Runtime ceiling in seconds; zero when the criterion has none.
    double time_limit;
    std::function<Outcome()> check;
};

std::vector<std::pair<double, double>> default_grid() {
    std::vector<std::pair<double, double>> g;
    const SweepConfig cfg;
    for (double d : cfg.delta_list) {
        for (double t : cfg.theta_grid()) g.emplace_back(t, d);
    }
    return g;
}

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

Outcome exact_universality() {
    const auto grid = default_grid();
    double gates = 0.0, optics = 0.0;
    for (const auto &[theta, delta] : grid) {
        const FidelityReport g = exact_report(theta, delta, Tier::Gates);
        const FidelityReport o = exact_report(theta, delta, Tier::Optics);
        gates = std::max({gates, std::abs(g.fidelity1 - kFiveSixths), std::abs(g.fidelity2 - kFiveSixths)});
        optics = std::max({optics, std::abs(o.fidelity1 - kFiveSixths), std::abs(o.fidelity2 - kFiveSixths)});
    }
    return {grid.size() == 76 && gates <= 1e-9 && optics <= 1e-9,
            fmt::format("points={} max_dev_gates={:.2e} max_dev_optics={:.2e} tol=1e-9", grid.size(), gates, optics)};
}

Outcome oracle_equivalence() {
    Rng rng(20260101);
    const Circuit net = network_circuit();
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const auto [theta, delta] = random_input(rng);
        const PureState in = polarization_state(theta, delta);
        const PureState out = apply_circuit(net, tensor_product(in, blank_and_ancilla()));
        worst = std::max(worst, max_deviation_up_to_phase(out, bh_reference_transform(in)));
    }
    return {worst <= 1e-10, fmt::format("inputs=1000 max_dev={:.2e} tol=1e-10", worst)};
}

Outcome optimal_formula() {
    const bool one_two = optimal_fidelity(1, 2) == kFiveSixths;
    bool diagonal = true;
    for (long long m = 1; m <= 50; ++m) diagonal = diagonal && std::abs(optimal_fidelity(m, m) - 1.0) <= 1e-15;
    const bool one_three = std::abs(optimal_fidelity(1, 3) - 7.0 / 9.0) <= 1e-15;
    bool decreasing = true;
    for (long long m = 1; m <= 10; ++m) {
        for (long long n = m; n < 200; ++n) decreasing = decreasing && optimal_fidelity(m, n + 1) < optimal_fidelity(m, n);
    }
    return {one_two && diagonal && one_three && decreasing,
            fmt::format("F(1,2)={:.17g} F(1,3)={:.17g} F(M,M)==1:{} decreasing:{}", optimal_fidelity(1, 2),
                        optimal_fidelity(1, 3), diagonal, decreasing)};
}

Outcome prep_solver() {
    const PrepSolution sol = solve_prep_angles(bh_prep_target());
    const PureState got = apply_circuit(prep_circuit(sol.angles), blank_and_ancilla());
    const double ov = std::abs(overlap(got, bh_prep_target()));
    return {ov >= 1.0 - 1e-10, fmt::format("angles=({:.9f},{:.9f},{:.9f}) 1-overlap={:.2e} tol=1e-10",
                                           sol.angles.theta1, sol.angles.theta2, sol.angles.theta3, 1.0 - ov)};
}

Outcome tomography_roundtrip() {
    Rng rng(5150);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double z = rng.uniform(-1.0, 1.0), phi = rng.uniform(0.0, 2.0 * kPi), r = std::cbrt(rng.uniform());
        const double xy = std::sqrt(1.0 - z * z);
        const Matrix2 rho = stokes_matrix(Stokes{r * xy * std::cos(phi), r * xy * std::sin(phi), r * z});
        auto born = [&](MeasurementBasis b) {
            const Eigen::Vector2cd v = basis_vector(b);
            return (v.adjoint() * rho * v)(0, 0).real();
        };
        const DensityMatrix back = reconstruct_single_qubit(born(MeasurementBasis::H), born(MeasurementBasis::V),
                                                            born(MeasurementBasis::D), born(MeasurementBasis::R));
        worst = std::max(worst, max_abs(back.matrix() - rho));
    }
    double pipeline = 0.0;
    for (const auto &[theta, delta] : default_grid()) {
        const FidelityReport r = exact_report(theta, delta, Tier::Optics);
        pipeline = std::max({pipeline, std::abs(r.fidelity1 - kFiveSixths), std::abs(r.fidelity2 - kFiveSixths)});
    }
    return {worst <= 1e-12 && pipeline <= 1e-10,
            fmt::format("states=100 max_rho_dev={:.2e} tol=1e-12; 8-path max_F_dev={:.2e} tol=1e-10", worst,
                        pipeline)};
}

Outcome montecarlo_realism() {
    constexpr int runs = 100;
    constexpr std::int64_t trials = 20000;
    int within = 0, within_h = 0;
    double ss = 0.0;
    for (int k = 0; k < runs; ++k) {
        Rng pick(derive_seed(42, 1000 + static_cast<std::uint64_t>(k)));
        const auto [theta, delta] = random_input(pick);
        const FidelityReport r = montecarlo_run(theta, delta, trials, derive_seed(42, k), {}, 0).report;
        within += std::abs(r.fidelity1 - kFiveSixths) <= 0.01 && std::abs(r.fidelity2 - kFiveSixths) <= 0.01;
        ss += (r.fidelity1 - kFiveSixths) * (r.fidelity1 - kFiveSixths) +
              (r.fidelity2 - kFiveSixths) * (r.fidelity2 - kFiveSixths);
        // Diagnostic only: the same seeds with the input fixed at |H>.
        const FidelityReport h = montecarlo_run(0.0, 0.0, trials, derive_seed(42, k), {}, 0).report;
        within_h += std::abs(h.fidelity1 - kFiveSixths) <= 0.01 && std::abs(h.fidelity2 - kFiveSixths) <= 0.01;
    }
    return {within >= 95,
            fmt::format("random inputs: {}/{} runs with both replicas within 0.01 (need 95), rms dev {:.4f}; "
                        "|H> input alone: {}/{}",
                        within, runs, std::sqrt(ss / (2.0 * runs)), within_h, runs)};
}

Outcome error_model() {
    ErrorBudget b;
    b.delta_c[0] = 0.002;
    b.delta_theta = 0.0018;
    const double bound = fidelity_error_bound(b);
    SweepConfig cfg;
    cfg.mode = PipelineMode::Perturbed;
    cfg.jitter_deg = 0.1;
    cfg.delta_c_total = 0.002;
    cfg.perturbed_samples = 100;
    const SweepSummary s = run_sweep(cfg).summary;
    return {std::abs(bound - 0.0047) <= 1e-12 && s.mean_sample_error <= 0.005,
            fmt::format("bound={:.6f} (want 0.0047); sweep 76 points x 100 samples: mean |dF|={:.5f} max={:.5f} "
                        "(need mean <= 0.005), {} replica samples beyond bound {:.5f} flagged",
                        bound, s.mean_sample_error, s.max_sample_error, s.samples_exceeding_bound, s.bound)};
}

Outcome symmetry() {
    Rng rng(8080);
    std::vector<std::pair<double, double>> inputs = default_grid();
    for (int k = 0; k < 1000; ++k) inputs.push_back(random_input(rng));
    double sym = 0.0, shrink = 0.0;
    for (const auto &[theta, delta] : inputs) {
        const CloneResult c = clone(theta, delta);
        sym = std::max(sym, max_abs(c.rho1.matrix() - c.rho2.matrix()));
        const Vector psi = polarization_state(theta, delta).amplitudes();
        const Matrix want = (2.0 / 3.0) * psi * psi.adjoint() + Matrix::Identity(2, 2) / 6.0;
        shrink = std::max(shrink, std::max(max_abs(c.rho1.matrix() - want), max_abs(c.rho2.matrix() - want)));
    }
    double equal = 0.0, spread = 0.0;
    const double f0 = triplicate(0.0).fidelity[0];
    for (int k = 0; k <= 36; ++k) {
        const TriplicateResult t = triplicate(-kPi / 2.0 + k * kPi / 36.0);
        equal = std::max({equal, max_abs(t.rho[0].matrix() - t.rho[1].matrix()),
                          max_abs(t.rho[0].matrix() - t.rho[2].matrix())});
        for (double f : t.fidelity) spread = std::max(spread, std::abs(f - f0));
    }
    return {sym <= 1e-12 && shrink <= 1e-10 && equal <= 1e-10 && spread <= 1e-9,
            fmt::format("inputs={} rho1-rho2={:.2e} shrink_dev={:.2e}; triplicator copies_dev={:.2e} "
                        "F_spread={:.2e} F={:.12f}",
                        inputs.size(), sym, shrink, equal, spread, f0)};
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome reproducibility() {
    const auto dir = std::filesystem::temp_directory_path();
    std::vector<std::string> notes;
    bool ok = true;
    for (const std::string mode : {"montecarlo", "perturbed"}) {
        const auto a = dir / ("uqclone_acc_" + mode + "_a.csv");
        const auto b = dir / ("uqclone_acc_" + mode + "_b.csv");
        int codes = 0;
        for (const auto &p : {a, b}) {
            const std::string cmd =
                fmt::format("{} sweep --mode {} --seed 42 --out {} 2>/dev/null", UQCLONE_CLI, mode, p.string());
            codes |= std::system(cmd.c_str());
        }
        const std::string ta = slurp(a), tb = slurp(b);
        const bool same = codes == 0 && !ta.empty() && ta == tb;
        ok = ok && same;
        notes.push_back(fmt::format("{}: {} bytes {}", mode, ta.size(), same ? "identical" : "DIFFER"));
    }
    return {ok, fmt::format("{}; {}", notes[0], notes[1])};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "exact_universality", 1.0, exact_universality},
        {2, "reference_transform_equivalence", 1.0, oracle_equivalence},
        {3, "optimal_fidelity_formula", 0.0, optimal_formula},
        {4, "prep_angle_solver", 0.0, prep_solver},
        {5, "tomography_roundtrip", 0.0, tomography_roundtrip},
        {6, "montecarlo_realism", 30.0, montecarlo_realism},
        {7, "error_model", 0.0, error_model},
        {8, "symmetry_properties", 0.0, symmetry},
        {9, "reproducibility", 0.0, reproducibility},
    };
    // Warm the cached solver results and cloner train so criterion 1 times the sweep itself.
    (void)default_cloner_train();

    int failures = 0;
    for (const auto &c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string timing = fmt::format("time={:.2f}s", secs);
        if (c.time_limit > 0.0) {
            timing += fmt::format(" (limit {:.0f}s)", c.time_limit);
            if (secs >= c.time_limit) o.pass = false;
        }
        std::printf("%s criterion %d %s: %s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
