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
 * The 1 -> 2 universal symmetric cloning network at the gate level.
 *
 * The network runs in two stages on qubits (1, 2, 3): a preparation stage
 * that entangles the blank qubit 2 with the ancilla 3 using three rotations
 * and two CNOTs, and a cloning stage of four CNOTs that spreads the state of
 * qubit 1 over qubits 1 and 2. Preparation angles are not tabulated anywhere;
 * they are found by a deterministic search against a target state.
 */

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "uqclone/gates.hpp"
#include "uqclone/hilbert.hpp"

namespace uqclone {

inline constexpr double kOptimalCloneFidelity = 5.0 / 6.0;

struct PrepAngles {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta3 = 0.0;
};

/// R_a(t1), CNOT(a->b), R_b(t2), CNOT(b->a), R_a(t3).
inline Circuit prep_circuit(const PrepAngles &angles, QubitLabel a = qubit_label(2), QubitLabel b = qubit_label(3),
                            Labels register_labels = {}) {
    if (register_labels.empty()) register_labels = {a, b};
    Circuit c(std::move(register_labels));
    c.append(Rotation{a, angles.theta1});
    c.append(Cnot{a, b});
    c.append(Rotation{b, angles.theta2});
    c.append(Cnot{b, a});
    c.append(Rotation{a, angles.theta3});
    return c;
}

/// Closed form of prep_circuit applied to |00>, ordered 00, 01, 10, 11.
inline std::array<double, 4> prep_amplitudes(const PrepAngles &angles) {
    const double c1 = std::cos(angles.theta1), s1 = std::sin(angles.theta1);
    const double c2 = std::cos(angles.theta2), s2 = std::sin(angles.theta2);
    const double c3 = std::cos(angles.theta3), s3 = std::sin(angles.theta3);
    return {c3 * c1 * c2 + s3 * s1 * s2, c3 * s1 * c2 - s3 * c1 * s2, s3 * c1 * c2 - c3 * s1 * s2,
            s3 * s1 * c2 + c3 * c1 * s2};
}

/// (2|00> + |01> + |11>) / sqrt(6) on qubits 2, 3.
inline PureState bh_prep_target() {
    const double k = 1.0 / std::sqrt(6.0);
    Vector amps(4);
    amps << 2.0 * k, k, 0.0, k;
    return PureState({qubit_label(2), qubit_label(3)}, std::move(amps));
}

/// Preparation state of the symmetric triplicator, a|00> + b(|01> + |10> + |11>).
/// Frozen from the numerical search in tools/derive_triplicator.py; the search
/// lands on a = 3b.
inline constexpr std::array<double, 4> kTriplicatorPrepAmplitudes = {
    0.86602540378443893, 0.28867513459481292, 0.28867513459481292, 0.28867513459481270};

inline PureState triplicator_prep_target() {
    Vector amps(4);
    for (int k = 0; k < 4; ++k) amps[k] = kTriplicatorPrepAmplitudes[static_cast<std::size_t>(k)];
    return PureState({qubit_label(2), qubit_label(3)}, std::move(amps), 1e-12);
}

struct SolverOptions {
    double grid_step = std::numbers::pi / 180.0;
    /// Required 1 - |<target|prepared>|.
    double tolerance = 1e-12;
    /// Grid points below this residual seed a local refinement.
    double seed_threshold = 2e-3;
    int max_refinements = 64;
    int max_iterations = 200;
};

struct PrepSolution {
    PrepAngles angles;
    double residual = 1.0;
};

namespace detail {

inline double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    if (a > std::numbers::pi) a -= two_pi;
    return a;
}

inline double prep_residual(const std::array<Complex, 4> &target, const PrepAngles &angles) {
    const auto psi = prep_amplitudes(angles);
    Complex ov = 0.0;
    for (std::size_t k = 0; k < 4; ++k) ov += std::conj(target[k]) * psi[k];
    return 1.0 - std::abs(ov);
}

/// Levenberg-Marquardt on psi(angles) - e^{i phi} target.
inline PrepSolution refine_prep(const std::array<Complex, 4> &target, PrepAngles start, const SolverOptions &opt) {
    using Vec3 = Eigen::Vector3d;
    using Res = Eigen::Matrix<double, 8, 1>;
    Vec3 x(start.theta1, start.theta2, start.theta3);
    auto to_angles = [](const Vec3 &v) { return PrepAngles{v[0], v[1], v[2]}; };
    auto residual_vector = [&](const Vec3 &v, Complex phase) {
        const auto psi = prep_amplitudes(to_angles(v));
        Res r;
        for (std::size_t k = 0; k < 4; ++k) {
            const Complex d = psi[k] - phase * target[k];
            r[static_cast<Eigen::Index>(2 * k)] = d.real();
            r[static_cast<Eigen::Index>(2 * k + 1)] = d.imag();
        }
        return r;
    };
    auto phase_of = [&](const Vec3 &v) {
        const auto psi = prep_amplitudes(to_angles(v));
        Complex ov = 0.0;
        for (std::size_t k = 0; k < 4; ++k) ov += std::conj(target[k]) * psi[k];
        return std::abs(ov) > 0 ? ov / std::abs(ov) : Complex(1.0);
    };

    // Minimize |r| rather than 1 - |overlap|: the latter is quadratic in the
    // amplitude error and flattens out long before the amplitudes converge.
    double lambda = 1e-3;
    double best = residual_vector(x, phase_of(x)).norm();
    for (int it = 0; it < opt.max_iterations && best > 1e-15; ++it) {
        const Complex phase = phase_of(x);
        const Res r = residual_vector(x, phase);
        Eigen::Matrix<double, 8, 3> jac;
        constexpr double h = 1e-6;
        for (int j = 0; j < 3; ++j) {
            Vec3 xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            jac.col(j) = (residual_vector(xp, phase) - residual_vector(xm, phase)) / (2.0 * h);
        }
        const Eigen::Matrix3d jtj = jac.transpose() * jac;
        const Vec3 g = jac.transpose() * r;
        bool improved = false;
        for (int tries = 0; tries < 30; ++tries) {
            Eigen::Matrix3d a = jtj;
            a.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
            const Vec3 step = a.ldlt().solve(-g);
            const Vec3 trial = x + step;
            const double res = residual_vector(trial, phase_of(trial)).norm();
            if (res < best) {
                x = trial;
                best = res;
                lambda = std::max(lambda * 0.1, 1e-15);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!improved) break;
    }
    const PrepAngles angles{wrap_angle(x[0]), wrap_angle(x[1]), wrap_angle(x[2])};
    return PrepSolution{angles, std::max(prep_residual(target, angles), 0.0)};
}

}  // namespace detail

/// Angles for prep_circuit mapping |00> onto `target` up to global phase.
///
/// Scans a grid over (-pi, pi]^3 in lexicographic order and refines every grid
/// point whose residual falls under `seed_threshold`; the first refinement that
/// reaches `tolerance` wins. Throws SolverError carrying the best residual seen
/// once the refinement budget is spent.
inline PrepSolution solve_prep_angles(const PureState &target, const SolverOptions &opt = {}) {
    if (target.num_qubits() != 2) throw DimensionError("solve_prep_angles: two-qubit target required");
    std::array<Complex, 4> t;
    for (std::size_t k = 0; k < 4; ++k) t[k] = target[k];

    const int steps = static_cast<int>(std::lround(2.0 * std::numbers::pi / opt.grid_step));
    auto grid = [&](int k) { return -std::numbers::pi + opt.grid_step * (k + 1); };

    // Angle 2 depends only on (theta1, theta2); precompute per-axis trig.
    std::vector<double> cs(static_cast<std::size_t>(steps)), sn(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        cs[static_cast<std::size_t>(k)] = std::cos(grid(k));
        sn[static_cast<std::size_t>(k)] = std::sin(grid(k));
    }

    PrepSolution best;
    int refinements = 0;
    for (int i = 0; i < steps; ++i) {
        const double c1 = cs[static_cast<std::size_t>(i)], s1 = sn[static_cast<std::size_t>(i)];
        for (int j = 0; j < steps; ++j) {
            const double c2 = cs[static_cast<std::size_t>(j)], s2 = sn[static_cast<std::size_t>(j)];
            const double p00 = c1 * c2, p01 = s1 * c2, p10 = -s1 * s2, p11 = c1 * s2;
            for (int k = 0; k < steps; ++k) {
                const double c3 = cs[static_cast<std::size_t>(k)], s3 = sn[static_cast<std::size_t>(k)];
                const Complex ov = std::conj(t[0]) * (c3 * p00 - s3 * p10) + std::conj(t[1]) * (c3 * p01 - s3 * p11) +
                                   std::conj(t[2]) * (s3 * p00 + c3 * p10) + std::conj(t[3]) * (s3 * p01 + c3 * p11);
                const double res = 1.0 - std::abs(ov);
                if (res > opt.seed_threshold) continue;
                PrepSolution sol = detail::refine_prep(t, PrepAngles{grid(i), grid(j), grid(k)}, opt);
                if (sol.residual < best.residual) best = sol;
                if (sol.residual <= opt.tolerance) return sol;
                if (++refinements >= opt.max_refinements) {
                    throw SolverError("solve_prep_angles: refinement budget exhausted", best.residual);
                }
            }
        }
    }
    throw SolverError("solve_prep_angles: no grid point reached the tolerance", best.residual);
}

/// Solved angles for the universal cloner's preparation state; computed once.
inline const PrepAngles &bh_prep_angles() {
    static const PrepAngles angles = solve_prep_angles(bh_prep_target()).angles;
    return angles;
}

inline const PrepAngles &triplicator_prep_angles() {
    static const PrepAngles angles = solve_prep_angles(triplicator_prep_target()).angles;
    return angles;
}

/// CNOT(o->b), CNOT(o->a), CNOT(b->o), CNOT(a->o).
inline Circuit cloning_circuit(QubitLabel original = qubit_label(1), QubitLabel blank = qubit_label(2),
                               QubitLabel ancilla = qubit_label(3), Labels register_labels = {}) {
    if (register_labels.empty()) register_labels = {original, blank, ancilla};
    Circuit c(std::move(register_labels));
    c.append(Cnot{original, blank});
    c.append(Cnot{original, ancilla});
    c.append(Cnot{blank, original});
    c.append(Cnot{ancilla, original});
    return c;
}

/// Preparation followed by cloning on qubits (1, 2, 3).
inline Circuit network_circuit(const PrepAngles &angles = bh_prep_angles()) {
    const Labels reg = {qubit_label(1), qubit_label(2), qubit_label(3)};
    Circuit c(reg);
    c.append(prep_circuit(angles, qubit_label(2), qubit_label(3), reg));
    c.append(cloning_circuit(qubit_label(1), qubit_label(2), qubit_label(3), reg));
    return c;
}

/// The network as laid out for single-photon optics on (aux, 1, 2, 3).
///
/// Qubit 1 is first swapped with the blank qubit 2 so every location-qubit
/// rotation acts while the polarization is definite; both stages then run
/// with the roles of 1 and 2 exchanged, a second swap restores the labels,
/// aux is rotated to (|0> + |1>)/sqrt 2 and controls a swap of 1 and 2.
inline Circuit measurement_circuit(const PrepAngles &angles = bh_prep_angles()) {
    const QubitLabel q1 = qubit_label(1), q2 = qubit_label(2), q3 = qubit_label(3);
    const Labels reg = {kAux, q1, q2, q3};
    Circuit c(reg);
    c.append(Swap{q1, q2});
    c.append(prep_circuit(angles, q1, q3, reg));
    c.append(cloning_circuit(q2, q1, q3, reg));
    c.append(Swap{q1, q2});
    c.append(Rotation{kAux, std::numbers::pi / 4.0});
    c.append(Cswap{kAux, q1, q2});
    return c;
}

/// Direct image of alpha|0> + beta|1> under the cloning transformation:
///   |0> -> sqrt(2/3)|00>|0> + sqrt(1/3)|+>|1>
///   |1> -> sqrt(2/3)|11>|1> + sqrt(1/3)|+>|0>,  |+> = (|10> + |01>)/sqrt 2.
inline PureState bh_reference_transform(const PureState &psi) {
    if (psi.num_qubits() != 1) throw DimensionError("bh_reference_transform: single-qubit input required");
    const double big = std::sqrt(2.0 / 3.0);
    const double small = std::sqrt(1.0 / 3.0) / std::sqrt(2.0);
    Vector img0 = Vector::Zero(8), img1 = Vector::Zero(8);
    // Index bits: q1 q2 q3.
    img0[0b000] = big;
    img0[0b101] = small;
    img0[0b011] = small;
    img1[0b111] = big;
    img1[0b100] = small;
    img1[0b010] = small;
    return PureState({qubit_label(1), qubit_label(2), qubit_label(3)}, psi[0] * img0 + psi[1] * img1, 1e-10);
}

inline PureState blank_and_ancilla() { return basis_state({qubit_label(2), qubit_label(3)}, {0, 0}); }

struct CloneResult {
    PureState output;
    DensityMatrix rho1;
    DensityMatrix rho2;
    double fidelity1;
    double fidelity2;
};

/// Runs the gate network on cos(theta)|0> + e^{i delta} sin(theta)|1>.
inline CloneResult clone(double theta, double delta) {
    const PureState input = polarization_state(theta, delta);
    PureState out = apply_circuit(network_circuit(), tensor_product(input, blank_and_ancilla()));
    DensityMatrix rho1 = partial_trace(out, {qubit_label(1)});
    DensityMatrix rho2 = partial_trace(out, {qubit_label(2)});
    const double f1 = fidelity(input, rho1);
    const double f2 = fidelity(input, rho2);
    return CloneResult{std::move(out), std::move(rho1), std::move(rho2), f1, f2};
}

/// (MN + N + M) / (N (M + 2)) for M -> N symmetric universal cloning.
inline double optimal_fidelity(long long m, long long n) {
    if (m < 1 || n < m) {
        throw DomainError("optimal_fidelity: requires 1 <= M <= N, got M=" + std::to_string(m) +
                          " N=" + std::to_string(n));
    }
    const auto md = static_cast<double>(m);
    const auto nd = static_cast<double>(n);
    return (md * nd + nd + md) / (nd * (md + 2.0));
}

struct TriplicateResult {
    std::array<DensityMatrix, 3> rho;
    std::array<double, 3> fidelity;
};

/// Copies cos(theta)|0> + sin(theta)|1> onto all three qubits.
inline TriplicateResult triplicate(double theta) {
    const PureState input = polarization_state(theta, 0.0);
    const PureState out =
        apply_circuit(network_circuit(triplicator_prep_angles()), tensor_product(input, blank_and_ancilla()));
    std::array<DensityMatrix, 3> rho = {partial_trace(out, {qubit_label(1)}), partial_trace(out, {qubit_label(2)}),
                                        partial_trace(out, {qubit_label(3)})};
    std::array<double, 3> f = {fidelity(input, rho[0]), fidelity(input, rho[1]), fidelity(input, rho[2])};
    return TriplicateResult{std::move(rho), f};
}

}  // namespace uqclone
