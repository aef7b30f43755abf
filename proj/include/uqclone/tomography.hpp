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
 * Replica read-out: aux qubit and controlled swap, 8-path detection in four
 * polarization bases, photon counting, and linear-inversion tomography.
 *
 * Paths 0-3 (aux = 0) see replica 1 in the polarization; paths 4-7 (aux = 1)
 * see replica 2, which the controlled swap moved into the polarization.
 */

#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>

#include <fmt/format.h>

#include "uqclone/hilbert.hpp"
#include "uqclone/optics.hpp"
#include "uqclone/random.hpp"

namespace uqclone {

inline constexpr int kDetectorPaths = 8;
inline constexpr int kReplicaPaths = 4;

/// H, V, D = (|0> + |1>)/sqrt 2, R = (|0> + i|1>)/sqrt 2.
enum class MeasurementBasis : int { H = 0, V = 1, D = 2, R = 3 };

inline constexpr std::array<MeasurementBasis, 4> kTomographyBases = {MeasurementBasis::H, MeasurementBasis::V,
                                                                     MeasurementBasis::D, MeasurementBasis::R};

inline std::string_view to_string(MeasurementBasis b) {
    switch (b) {
        case MeasurementBasis::H:
            return "H";
        case MeasurementBasis::V:
            return "V";
        case MeasurementBasis::D:
            return "D";
        case MeasurementBasis::R:
            return "R";
    }
    return "?";
}

inline MeasurementBasis parse_basis(std::string_view s) {
    for (auto b : kTomographyBases) {
        if (to_string(b) == s) return b;
    }
    throw DomainError("unknown measurement basis '" + std::string(s) + "'");
}

inline Eigen::Vector2cd basis_vector(MeasurementBasis b) {
    const double k = 1.0 / std::sqrt(2.0);
    switch (b) {
        case MeasurementBasis::H:
            return {1.0, 0.0};
        case MeasurementBasis::V:
            return {0.0, 1.0};
        case MeasurementBasis::D:
            return {k, k};
        case MeasurementBasis::R:
            return {k, Complex(0.0, k)};
    }
    return {1.0, 0.0};
}

/// (|0> + |1>)/sqrt 2 on aux, then swap qubits 1 and 2 when aux = 1.
inline PureState attach_aux_cswap(const PureState &out3) {
    const Labels reg3 = {qubit_label(1), qubit_label(2), qubit_label(3)};
    if (out3.labels() != reg3) throw LabelError("attach_aux_cswap: expected a state on qubits 1, 2, 3");
    const double k = 1.0 / std::sqrt(2.0);
    const PureState joined = tensor_product(single_qubit(kAux, k, k), out3);
    Circuit cswap({kAux, qubit_label(1), qubit_label(2), qubit_label(3)});
    cswap.append(Cswap{kAux, qubit_label(1), qubit_label(2)});
    return apply_circuit(cswap, joined);
}

/// Detection probabilities for one analyzer setting.
/// p[path][0]: photon in `path` passes the analyzer; p[path][1]: it is blocked.
struct PathDistribution {
    std::array<std::array<double, 2>, kDetectorPaths> p{};

    double total() const {
        double t = 0.0;
        for (const auto &cell : p) t += cell[0] + cell[1];
        return t;
    }
};

/// One distribution per analyzer setting, indexed by MeasurementBasis.
using BasisDistributions = std::array<PathDistribution, 4>;

/// Path index = (aux, q2, q3) bits; outcome = projection of the polarization
/// (qubit 1) onto `basis`.
inline PathDistribution path_distribution(const PureState &meas, MeasurementBasis basis) {
    const PhotonState photon = qubits_to_modes(meas, kClonerSpace, default_mapping(kClonerSpace));
    const Eigen::Vector2cd b = basis_vector(basis);
    PathDistribution d;
    for (int path = 0; path < kDetectorPaths; ++path) {
        const Complex h = photon.amplitude(path, Polarization::H);
        const Complex v = photon.amplitude(path, Polarization::V);
        const double pass = std::norm(std::conj(b[0]) * h + std::conj(b[1]) * v);
        const double all = std::norm(h) + std::norm(v);
        d.p[static_cast<std::size_t>(path)] = {pass, std::max(all - pass, 0.0)};
    }
    return d;
}

inline BasisDistributions path_distributions(const PureState &meas) {
    BasisDistributions out;
    for (auto b : kTomographyBases) out[static_cast<std::size_t>(b)] = path_distribution(meas, b);
    return out;
}

/// Analyzer in front of each detector: a polarizer, preceded by a quarter-wave
/// plate at 45 degrees for the circular setting.
inline OpticalTrain analyzer_train(const ModeSpace &space, MeasurementBasis basis) {
    OpticalTrain t(space);
    const double pi = std::numbers::pi;
    for (int path = 0; path < space.n_paths; ++path) {
        switch (basis) {
            case MeasurementBasis::H:
                t.append(Polarizer{path, 0.0});
                break;
            case MeasurementBasis::V:
                t.append(Polarizer{path, pi / 2.0});
                break;
            case MeasurementBasis::D:
                t.append(Polarizer{path, pi / 4.0});
                break;
            case MeasurementBasis::R:
                t.append(Qwp{path, pi / 4.0});
                t.append(Polarizer{path, 0.0});
                break;
        }
    }
    return t;
}

/// Detection probabilities of a photon sent through an analyzer train.
inline PathDistribution optical_path_distribution(const PhotonState &photon, const OpticalTrain &analyzer) {
    if (photon.space().n_paths != kDetectorPaths) {
        throw DimensionError("optical_path_distribution: expected an 8-path photon");
    }
    const PhotonState passed = apply_train(analyzer, photon);
    PathDistribution d;
    for (int path = 0; path < kDetectorPaths; ++path) {
        const double pass = passed.path_probability(path);
        d.p[static_cast<std::size_t>(path)] = {pass, std::max(photon.path_probability(path) - pass, 0.0)};
    }
    return d;
}

struct DetectorModel {
    double efficiency = 0.70;
    /// Dark events per second.
    double dark_rate = 50.0;
    /// Photon rate ceiling, events per second.
    double max_rate = 20000.0;
    /// Detection window, seconds; defaults to the 5 ns passage time of the setup.
    double gate_window = 5e-9;

    /// Mean dark counts per (path, basis) cell over `trials` emitted photons.
    double dark_mean(std::int64_t trials) const {
        return dark_rate * gate_window * static_cast<double>(trials) / max_rate;
    }

    void validate() const {
        if (!(efficiency >= 0.0 && efficiency <= 1.0)) throw DomainError("DetectorModel: efficiency must lie in [0, 1]");
        if (!(dark_rate >= 0.0) || !(gate_window >= 0.0)) throw DomainError("DetectorModel: negative rate or window");
        if (!(max_rate > 0.0)) throw DomainError("DetectorModel: max_rate must be positive");
    }

    static DetectorModel ideal() { return DetectorModel{1.0, 0.0, 20000.0, 5e-9}; }
};

/// Counts indexed [path][basis]; real-valued so exact probabilities fit too.
using CountTable = std::array<std::array<double, 4>, kDetectorPaths>;

inline CountTable expected_counts(const BasisDistributions &probs, double scale = 1.0) {
    CountTable t{};
    for (std::size_t b = 0; b < 4; ++b) {
        for (std::size_t path = 0; path < kDetectorPaths; ++path) t[path][b] = scale * probs[b].p[path][0];
    }
    return t;
}

struct CountsRecord {
    std::array<std::array<std::int64_t, 4>, kDetectorPaths> counts{};
    std::int64_t total_trials = 0;
    std::uint64_t seed = 0;
    DetectorModel model;

    CountTable table() const {
        CountTable t{};
        for (std::size_t path = 0; path < kDetectorPaths; ++path) {
            for (std::size_t b = 0; b < 4; ++b) t[path][b] = static_cast<double>(counts[path][b]);
        }
        return t;
    }

    bool operator==(const CountsRecord &o) const {
        return counts == o.counts && total_trials == o.total_trials && seed == o.seed &&
               model.efficiency == o.model.efficiency && model.dark_rate == o.model.dark_rate &&
               model.max_rate == o.model.max_rate && model.gate_window == o.model.gate_window;
    }
};

/// Photon-by-photon counting for each analyzer setting.
///
/// Each of `trials` photons lands in one (path, outcome) cell; a photon that
/// passes its analyzer is registered with probability `efficiency`, so every
/// cell is Binomial(trials, p * efficiency). Poisson dark counts with mean
/// model.dark_mean(trials) are added to every cell. Setting b draws from the
/// sub-stream derive_seed(seed, b).
inline CountsRecord simulate_counts(const BasisDistributions &probs, const DetectorModel &model, std::int64_t trials,
                                    std::uint64_t seed) {
    if (trials <= 0) throw DomainError("simulate_counts: trials must be positive");
    model.validate();
    CountsRecord rec;
    rec.total_trials = trials;
    rec.seed = seed;
    rec.model = model;
    const double dark = model.dark_mean(trials);
    for (std::size_t b = 0; b < 4; ++b) {
        std::array<double, kDetectorPaths> cumulative{};
        double acc = 0.0;
        for (std::size_t path = 0; path < kDetectorPaths; ++path) {
            const double p = probs[b].p[path][0];
            if (p < -1e-12) throw DomainError("simulate_counts: negative probability");
            acc += std::max(p, 0.0) * model.efficiency;
            cumulative[path] = acc;
        }
        if (acc > 1.0 + 1e-9) throw DomainError("simulate_counts: probabilities exceed one");
        Rng rng(derive_seed(seed, b));
        for (std::int64_t n = 0; n < trials; ++n) {
            const std::size_t cell = rng.categorical(cumulative);
            if (cell < kDetectorPaths) ++rec.counts[cell][b];
        }
        for (std::size_t path = 0; path < kDetectorPaths; ++path) rec.counts[path][b] += rng.poisson(dark);
    }
    return rec;
}

/// Clips negative eigenvalues to zero and restores unit trace; physical
/// matrices come back unchanged.
inline Matrix project_physical(const Matrix &m) {
    const Matrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(herm);
    Eigen::VectorXd vals = eig.eigenvalues();
    if (vals.minCoeff() >= 0.0) return herm / herm.trace().real();
    vals = vals.cwiseMax(0.0);
    const double sum = vals.sum();
    if (!(sum > 0.0)) throw ReconstructionError("project_physical: no positive weight left");
    vals /= sum;
    return eig.eigenvectors() * vals.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

/// Unprojected linear inversion from analyzer counts of one path:
///   s_z = (C_H - C_V) / N,  s_x = 2 C_D / N - 1,  s_y = 2 C_R / N - 1,  N = C_H + C_V.
inline Matrix2 linear_inversion(double c_h, double c_v, double c_d, double c_r) {
    const double n = c_h + c_v;
    if (!(n > 0.0)) throw ReconstructionError("linear_inversion: no counts in the H and V settings");
    return stokes_matrix(Stokes{2.0 * c_d / n - 1.0, 2.0 * c_r / n - 1.0, (c_h - c_v) / n});
}

/// Linear inversion followed by the physicality projection.
inline DensityMatrix reconstruct_single_qubit(double c_h, double c_v, double c_d, double c_r,
                                              QubitLabel label = qubit_label(1)) {
    return DensityMatrix({label}, project_physical(linear_inversion(c_h, c_v, c_d, c_r)), 1e-10);
}

/// rho = sum_i C_i rho_i over the four paths of one replica, C_i the relative
/// H + V count of path i. Paths without counts carry no weight.
///
/// The per-path estimates are mixed before projecting: conditional path states
/// are close to pure, and clipping each one separately biases the replica
/// fidelity low by about 0.005 at 20000 photons per setting.
inline DensityMatrix reconstruct_replica(const CountTable &table, int which) {
    if (which != 1 && which != 2) throw DomainError("reconstruct_replica: replica must be 1 or 2");
    const std::size_t first = which == 1 ? 0 : kReplicaPaths;
    Matrix acc = Matrix::Zero(2, 2);
    double total = 0.0;
    for (std::size_t path = first; path < first + kReplicaPaths; ++path) {
        const auto &c = table[path];
        const double weight = c[0] + c[1];
        if (!(weight > 0.0)) continue;
        acc += weight * linear_inversion(c[0], c[1], c[2], c[3]);
        total += weight;
    }
    if (!(total > 0.0)) throw ReconstructionError("reconstruct_replica: replica " + std::to_string(which) + " has no counts");
    return DensityMatrix({qubit_label(1)}, project_physical(acc / total), 1e-10);
}

enum class PipelineMode { Exact, MonteCarlo, Perturbed };

inline std::string_view to_string(PipelineMode m) {
    switch (m) {
        case PipelineMode::Exact:
            return "exact";
        case PipelineMode::MonteCarlo:
            return "montecarlo";
        case PipelineMode::Perturbed:
            return "perturbed";
    }
    return "?";
}

inline PipelineMode parse_mode(std::string_view s) {
    for (auto m : {PipelineMode::Exact, PipelineMode::MonteCarlo, PipelineMode::Perturbed}) {
        if (to_string(m) == s) return m;
    }
    throw DomainError("unknown pipeline mode '" + std::string(s) + "'");
}

struct FidelityReport {
    double fidelity1 = 0.0;
    double fidelity2 = 0.0;
    double stderr1 = 0.0;
    double stderr2 = 0.0;
    double theta = 0.0;
    double delta = 0.0;
    PipelineMode mode = PipelineMode::Exact;
};

struct ReportStats {
    double stderr1 = 0.0;
    double stderr2 = 0.0;
};

/// Fidelities of both replicas against cos(theta)|H> + e^{i delta} sin(theta)|V>.
inline FidelityReport fidelity_report(const DensityMatrix &rho1, const DensityMatrix &rho2, double theta, double delta,
                                      PipelineMode mode = PipelineMode::Exact, const ReportStats &stats = {}) {
    const PureState input = polarization_state(theta, delta);
    FidelityReport r;
    r.fidelity1 = std::clamp(fidelity(input, rho1), 0.0, 1.0);
    r.fidelity2 = std::clamp(fidelity(input, rho2), 0.0, 1.0);
    r.stderr1 = std::max(stats.stderr1, 0.0);
    r.stderr2 = std::max(stats.stderr2, 0.0);
    r.theta = theta;
    r.delta = delta;
    r.mode = mode;
    return r;
}

inline constexpr int kBootstrapResamples = 50;

/// Standard deviation of both replica fidelities over parametric resamples of
/// the record: each setting is re-drawn photon by photon from its observed
/// count fractions.
inline ReportStats bootstrap_stderr(const CountsRecord &rec, double theta, double delta,
                                    int resamples = kBootstrapResamples) {
    const PureState input = polarization_state(theta, delta);
    const auto trials = static_cast<double>(rec.total_trials);
    BasisDistributions observed{};
    for (std::size_t b = 0; b < 4; ++b) {
        double sum = 0.0;
        for (std::size_t path = 0; path < kDetectorPaths; ++path) sum += static_cast<double>(rec.counts[path][b]);
        // Dark counts can push the total past the number of photons.
        const double denom = std::max(trials, sum);
        for (std::size_t path = 0; path < kDetectorPaths; ++path) {
            observed[b].p[path][0] = static_cast<double>(rec.counts[path][b]) / denom;
        }
    }
    std::array<std::vector<double>, 2> f;
    for (int r = 0; r < resamples; ++r) {
        const CountsRecord re = simulate_counts(observed, DetectorModel::ideal(), rec.total_trials,
                                                derive_seed(rec.seed, 0x5eed0000ULL + static_cast<std::uint64_t>(r)));
        const CountTable t = re.table();
        try {
            f[0].push_back(fidelity(input, reconstruct_replica(t, 1)));
            f[1].push_back(fidelity(input, reconstruct_replica(t, 2)));
        } catch (const ReconstructionError &) {
            // A resample with an empty replica group carries no fidelity.
        }
    }
    auto stddev = [](const std::vector<double> &v) {
        if (v.size() < 2) return 0.0;
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return std::sqrt(ss / static_cast<double>(v.size() - 1));
    };
    return ReportStats{stddev(f[0]), stddev(f[1])};
}

/// Plain-text table: header lines carry trials, seed and the detector model,
/// then one "path basis count" line per cell.
inline std::string to_text(const CountsRecord &rec) {
    std::string out = "# uqclone counts v1\n";
    out += fmt::format("trials {}\nseed {}\n", rec.total_trials, rec.seed);
    out += fmt::format("efficiency {}\ndark_rate {}\nmax_rate {}\ngate_window {}\n", rec.model.efficiency,
                       rec.model.dark_rate, rec.model.max_rate, rec.model.gate_window);
    for (std::size_t path = 0; path < kDetectorPaths; ++path) {
        for (auto b : kTomographyBases) {
            out += fmt::format("{} {} {}\n", path, to_string(b), rec.counts[path][static_cast<std::size_t>(b)]);
        }
    }
    return out;
}

inline CountsRecord parse_counts_record(std::istream &in) {
    CountsRecord rec;
    std::string line;
    int cells = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "trials") {
            ls >> rec.total_trials;
        } else if (key == "seed") {
            ls >> rec.seed;
        } else if (key == "efficiency") {
            ls >> rec.model.efficiency;
        } else if (key == "dark_rate") {
            ls >> rec.model.dark_rate;
        } else if (key == "max_rate") {
            ls >> rec.model.max_rate;
        } else if (key == "gate_window") {
            ls >> rec.model.gate_window;
        } else {
            std::size_t path = 0;
            std::string basis;
            std::int64_t count = 0;
            try {
                path = std::stoul(key);
            } catch (const std::exception &) {
                throw DomainError("counts record: unexpected line '" + line + "'");
            }
            if (!(ls >> basis >> count) || path >= kDetectorPaths || count < 0) {
                throw DomainError("counts record: malformed cell line '" + line + "'");
            }
            rec.counts[path][static_cast<std::size_t>(parse_basis(basis))] = count;
            ++cells;
        }
        if (ls.fail()) throw DomainError("counts record: malformed line '" + line + "'");
    }
    if (cells != kDetectorPaths * 4) throw DomainError("counts record: expected 32 cells");
    return rec;
}

inline CountsRecord parse_counts_record(const std::string &text) {
    std::istringstream in(text);
    return parse_counts_record(in);
}

}  // namespace uqclone
