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

#pragma once

#include <cstdint>
#include <optional>

#include "uqclone/network.hpp"
#include "uqclone/optics.hpp"
#include "uqclone/tomography.hpp"

namespace uqclone {

/// Detector probabilities from the gate network: clone, attach aux, project.
inline BasisDistributions gate_distributions(double theta, double delta) {
    return path_distributions(attach_aux_cswap(clone(theta, delta).output));
}

/// Photon entering path 0 as H, sent through `setup`.
inline PhotonState launch(const OpticalTrain &setup) {
    return apply_train(setup, PhotonState::single_mode(setup.mode_space(), 0, Polarization::H));
}

/// Detector probabilities from the optical train, with analyzer settings
/// optionally replaced (e.g. perturbed copies).
inline BasisDistributions optical_distributions(const PhotonState &photon,
                                                const std::array<OpticalTrain, 4> *analyzers = nullptr) {
    BasisDistributions out;
    for (auto b : kTomographyBases) {
        const auto k = static_cast<std::size_t>(b);
        out[k] = analyzers ? optical_path_distribution(photon, (*analyzers)[k])
                           : optical_path_distribution(photon, analyzer_train(photon.space(), b));
    }
    return out;
}

inline BasisDistributions optical_distributions(double theta, double delta, const OpticalTrain &cloner) {
    return optical_distributions(launch(build_setup_train(theta, delta, cloner)));
}

/// The cloner train is built and checked once per process.
inline const OpticalTrain &default_cloner_train() {
    static const OpticalTrain train = build_cloner_train();
    return train;
}

inline FidelityReport report_from_table(const CountTable &table, double theta, double delta, PipelineMode mode,
                                        const ReportStats &stats = {}) {
    return fidelity_report(reconstruct_replica(table, 1), reconstruct_replica(table, 2), theta, delta, mode, stats);
}

enum class Tier { Gates, Optics };

/// Tomography on exact detection probabilities.
inline FidelityReport exact_report(double theta, double delta, Tier tier = Tier::Optics) {
    const BasisDistributions probs = tier == Tier::Gates ? gate_distributions(theta, delta)
                                                         : optical_distributions(theta, delta, default_cloner_train());
    return report_from_table(expected_counts(probs), theta, delta, PipelineMode::Exact);
}

struct MonteCarloRun {
    CountsRecord record;
    FidelityReport report;
};

/// Counted photons through the optical train; stderr from the bootstrap when
/// `bootstrap_resamples` > 1.
inline MonteCarloRun montecarlo_run(double theta, double delta, std::int64_t trials, std::uint64_t seed,
                                    const DetectorModel &model = {}, int bootstrap_resamples = kBootstrapResamples) {
    const BasisDistributions probs = optical_distributions(theta, delta, default_cloner_train());
    CountsRecord rec = simulate_counts(probs, model, trials, seed);
    const ReportStats stats = bootstrap_resamples > 1 ? bootstrap_stderr(rec, theta, delta, bootstrap_resamples)
                                                      : ReportStats{};
    FidelityReport report = report_from_table(rec.table(), theta, delta, PipelineMode::MonteCarlo, stats);
    return MonteCarloRun{std::move(rec), report};
}

}  // namespace uqclone
