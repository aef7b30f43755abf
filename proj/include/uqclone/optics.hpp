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
 * Single-photon linear optics over a (path x polarization) mode space.
 *
 * One photon carries several qubits: polarization (H = 0, V = 1) is qubit 1
 * and the binary digits of the path index are location qubits. Mode k holds
 * path k / 2 with polarization k % 2, which makes the mode index equal to the
 * basis index of the register (path bits..., polarization).
 *
 * Element conventions, in the H/V basis:
 *   HWP(axis t)     [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
 *   QWP(axis t)     R(t) diag(1, i) R(-t)
 *   AJWP(delta)     diag(1, e^{i delta})
 *   Polarizer(t)    projector onto cos t |H> + sin t |V>   (the only lossy element)
 *   PhaseShift(phi) e^{i phi} on both polarizations of one path
 *   BS(a, b)        (1/sqrt 2) [[1, i], [i, 1]] on the two path amplitudes
 *   PBS(a, b)       H transmitted, V exchanged between the two paths
 */

#pragma once

#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "uqclone/gates.hpp"
#include "uqclone/hilbert.hpp"
#include "uqclone/network.hpp"

namespace uqclone {

enum class Polarization : int { H = 0, V = 1 };

struct ModeSpace {
    int n_paths = 1;

    int dimension() const noexcept { return 2 * n_paths; }
    int mode(int path, Polarization pol) const noexcept { return 2 * path + static_cast<int>(pol); }
    bool contains(int path) const noexcept { return path >= 0 && path < n_paths; }

    bool operator==(const ModeSpace &) const = default;
};

struct Hwp {
    int path = 0;
    double axis = 0.0;
};
struct Qwp {
    int path = 0;
    double axis = 0.0;
};
/// Adjustable wave plate (Pockels cell): retardance only, axis horizontal.
struct Ajwp {
    int path = 0;
    double retardance = 0.0;
};
struct Pbs {
    int path_a = 0;
    int path_b = 1;
};
struct BeamSplitter {
    int path_a = 0;
    int path_b = 1;
};
struct Polarizer {
    int path = 0;
    double axis = 0.0;
};
struct PhaseShift {
    int path = 0;
    double phase = 0.0;
};

using OpticalElement = std::variant<Hwp, Qwp, Ajwp, Pbs, BeamSplitter, Polarizer, PhaseShift>;

inline Matrix2 hwp_jones(double axis) {
    const double c = std::cos(2.0 * axis), s = std::sin(2.0 * axis);
    return (Matrix2() << c, s, s, -c).finished();
}

inline Matrix2 qwp_jones(double axis) {
    const double c = std::cos(axis), s = std::sin(axis);
    Matrix2 frame;
    frame << c, -s, s, c;
    Matrix2 retarder;
    retarder << 1, 0, 0, Complex(0, 1);
    return frame * retarder * frame.transpose();
}

inline Matrix2 ajwp_jones(double retardance) {
    return (Matrix2() << 1, 0, 0, std::polar(1.0, retardance)).finished();
}

inline Matrix2 polarizer_jones(double axis) {
    const double c = std::cos(axis), s = std::sin(axis);
    return (Matrix2() << c * c, c * s, c * s, s * s).finished();
}

inline bool is_lossless(const OpticalElement &e) { return !std::holds_alternative<Polarizer>(e); }

inline std::vector<int> element_paths(const OpticalElement &e) {
    return std::visit(
        [](const auto &el) -> std::vector<int> {
            using T = std::decay_t<decltype(el)>;
            if constexpr (std::is_same_v<T, Pbs> || std::is_same_v<T, BeamSplitter>) {
                return {el.path_a, el.path_b};
            } else {
                return {el.path};
            }
        },
        e);
}

inline void validate_element(const OpticalElement &e, const ModeSpace &space) {
    const auto paths = element_paths(e);
    for (int p : paths) {
        if (!space.contains(p)) {
            throw DimensionError("optical element references path " + std::to_string(p) + " outside a " +
                                 std::to_string(space.n_paths) + "-path mode space");
        }
    }
    if (paths.size() == 2 && paths[0] == paths[1]) {
        throw DimensionError("two-path optical element needs two distinct paths");
    }
}

namespace detail {

inline void apply_jones(const Matrix2 &j, int path, Vector &amps) {
    const Complex h = amps[2 * path];
    const Complex v = amps[2 * path + 1];
    amps[2 * path] = j(0, 0) * h + j(0, 1) * v;
    amps[2 * path + 1] = j(1, 0) * h + j(1, 1) * v;
}

inline void apply_element_inplace(const OpticalElement &e, Vector &amps) {
    std::visit(
        [&](const auto &el) {
            using T = std::decay_t<decltype(el)>;
            if constexpr (std::is_same_v<T, Hwp>) {
                apply_jones(hwp_jones(el.axis), el.path, amps);
            } else if constexpr (std::is_same_v<T, Qwp>) {
                apply_jones(qwp_jones(el.axis), el.path, amps);
            } else if constexpr (std::is_same_v<T, Ajwp>) {
                apply_jones(ajwp_jones(el.retardance), el.path, amps);
            } else if constexpr (std::is_same_v<T, Polarizer>) {
                apply_jones(polarizer_jones(el.axis), el.path, amps);
            } else if constexpr (std::is_same_v<T, PhaseShift>) {
                const Complex f = std::polar(1.0, el.phase);
                amps[2 * el.path] *= f;
                amps[2 * el.path + 1] *= f;
            } else if constexpr (std::is_same_v<T, Pbs>) {
                std::swap(amps[2 * el.path_a + 1], amps[2 * el.path_b + 1]);
            } else {
                const double k = 1.0 / std::sqrt(2.0);
                const Complex i(0.0, 1.0);
                for (int pol = 0; pol < 2; ++pol) {
                    const Complex a = amps[2 * el.path_a + pol];
                    const Complex b = amps[2 * el.path_b + pol];
                    amps[2 * el.path_a + pol] = k * (a + i * b);
                    amps[2 * el.path_b + pol] = k * (i * a + b);
                }
            }
        },
        e);
}

}  // namespace detail

inline Matrix element_matrix(const OpticalElement &e, const ModeSpace &space) {
    validate_element(e, space);
    Matrix m = Matrix::Identity(space.dimension(), space.dimension());
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        Vector v = m.col(col);
        detail::apply_element_inplace(e, v);
        m.col(col) = v;
    }
    return m;
}

/// Amplitudes of one photon over the modes of a ModeSpace.
class PhotonState {
   public:
    PhotonState(ModeSpace space, Vector amplitudes) : space_(space), amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != space_.dimension()) {
            throw DimensionError("PhotonState: amplitude count does not match the mode space");
        }
        if (amplitudes_.squaredNorm() > 1.0 + kDefaultTolerance) {
            throw DomainError("PhotonState: norm exceeds one");
        }
    }

    static PhotonState single_mode(ModeSpace space, int path, Polarization pol) {
        if (!space.contains(path)) throw DimensionError("PhotonState: path outside the mode space");
        Vector amps = Vector::Zero(space.dimension());
        amps[space.mode(path, pol)] = 1.0;
        return PhotonState(space, std::move(amps));
    }

    const ModeSpace &space() const noexcept { return space_; }
    const Vector &amplitudes() const noexcept { return amplitudes_; }
    double norm() const { return amplitudes_.norm(); }
    Complex amplitude(int path, Polarization pol) const { return amplitudes_[space_.mode(path, pol)]; }
    double path_probability(int path) const {
        return std::norm(amplitude(path, Polarization::H)) + std::norm(amplitude(path, Polarization::V));
    }

   private:
    ModeSpace space_;
    Vector amplitudes_;
};

class OpticalTrain {
   public:
    explicit OpticalTrain(ModeSpace space) : space_(space) {
        if (space.n_paths < 1) throw DimensionError("OpticalTrain: at least one path required");
    }

    OpticalTrain &append(OpticalElement e) {
        validate_element(e, space_);
        elements_.push_back(e);
        return *this;
    }

    OpticalTrain &append(const OpticalTrain &other) {
        if (other.space_ != space_) throw DimensionError("OpticalTrain: cannot join trains on different mode spaces");
        elements_.insert(elements_.end(), other.elements_.begin(), other.elements_.end());
        return *this;
    }

    const ModeSpace &mode_space() const noexcept { return space_; }
    const std::vector<OpticalElement> &elements() const noexcept { return elements_; }
    std::vector<OpticalElement> &mutable_elements() noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }

    bool lossless() const {
        return std::all_of(elements_.begin(), elements_.end(), [](const auto &e) { return is_lossless(e); });
    }

   private:
    ModeSpace space_;
    std::vector<OpticalElement> elements_;
};

inline PhotonState apply_train(const OpticalTrain &t, const PhotonState &s) {
    if (s.space() != t.mode_space()) throw DimensionError("apply_train: photon lives on a different mode space");
    Vector amps = s.amplitudes();
    for (const auto &e : t.elements()) detail::apply_element_inplace(e, amps);
    return PhotonState(s.space(), std::move(amps));
}

/// Composite mode-space matrix of the whole train.
inline Matrix train_matrix(const OpticalTrain &t) {
    const int dim = t.mode_space().dimension();
    Matrix m = Matrix::Identity(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        Vector v = m.col(col);
        for (const auto &e : t.elements()) detail::apply_element_inplace(e, v);
        m.col(col) = v;
    }
    return m;
}

/// Which qubit each photon degree of freedom carries.
struct QubitMapping {
    QubitLabel polarization = qubit_label(1);
    /// Path-index bits, most significant first.
    Labels path_bits;

    /// Register labels in mode-index order (path bits, then polarization).
    Labels mode_order() const {
        Labels l = path_bits;
        l.push_back(polarization);
        return l;
    }
};

/// 1 path: {}; 2 paths: {2}; 4 paths: {2, 3}; 8 paths: {aux, 2, 3}.
inline QubitMapping default_mapping(const ModeSpace &space) {
    if (!std::has_single_bit(static_cast<unsigned>(space.n_paths))) {
        throw DimensionError("qubit mapping needs a power-of-two number of paths");
    }
    const int bits = std::countr_zero(static_cast<unsigned>(space.n_paths));
    QubitMapping m;
    switch (bits) {
        case 0:
            break;
        case 1:
            m.path_bits = {qubit_label(2)};
            break;
        case 2:
            m.path_bits = {qubit_label(2), qubit_label(3)};
            break;
        case 3:
            m.path_bits = {kAux, qubit_label(2), qubit_label(3)};
            break;
        default:
            throw DimensionError("qubit mapping supports at most 8 paths");
    }
    return m;
}

inline PureState modes_to_qubits(const PhotonState &s, const QubitMapping &mapping, double tolerance = 1e-9) {
    if ((std::size_t{1} << mapping.path_bits.size()) != static_cast<std::size_t>(s.space().n_paths)) {
        throw DimensionError("modes_to_qubits: mapping does not match the number of paths");
    }
    if (std::abs(s.norm() - 1.0) > tolerance) {
        throw LossyTrainError("modes_to_qubits: photon norm " + std::to_string(s.norm()) +
                              " is below one; post-select before relabeling");
    }
    return PureState(mapping.mode_order(), s.amplitudes() / s.norm(), 1e-10);
}

inline PureState modes_to_qubits(const PhotonState &s) {
    return modes_to_qubits(s, default_mapping(s.space()));
}

inline PhotonState qubits_to_modes(const PureState &psi, const ModeSpace &space, const QubitMapping &mapping) {
    const Labels order = mapping.mode_order();
    if (detail::sorted_copy(order) != psi.labels() || psi.dimension() != static_cast<std::size_t>(space.dimension())) {
        throw LabelError("qubits_to_modes: state register does not match the mapping");
    }
    const auto perm = detail::sorting_permutation(order, psi.labels());
    Vector amps(space.dimension());
    for (std::size_t m = 0; m < perm.size(); ++m) amps[static_cast<Eigen::Index>(m)] = psi[perm[m]];
    return PhotonState(space, std::move(amps));
}

/// Train matrix re-indexed into the canonical qubit basis of `mapping`.
inline Matrix train_qubit_matrix(const OpticalTrain &t, const QubitMapping &mapping) {
    const Matrix modes = train_matrix(t);
    const Labels order = mapping.mode_order();
    const auto perm = detail::sorting_permutation(order, detail::sorted_copy(order));
    Matrix out(modes.rows(), modes.cols());
    for (Eigen::Index i = 0; i < modes.rows(); ++i) {
        for (Eigen::Index j = 0; j < modes.cols(); ++j) {
            out(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]),
                static_cast<Eigen::Index>(perm[static_cast<std::size_t>(j)])) = modes(i, j);
        }
    }
    return out;
}

/// Rotation R(angle) of the location qubit (path_0 -> 0, path_1 -> 1) applied
/// only to the V component; H passes untouched.
///
/// The fragment folds the V amplitudes of both paths into the polarization of
/// path_1 with one PBS, rotates them there with two half-wave plates, and
/// unfolds them again.
inline OpticalTrain crot_polarization_controls_path(const ModeSpace &space, int path_0, int path_1, double angle) {
    constexpr double flip = std::numbers::pi / 4.0;
    OpticalTrain t(space);
    t.append(Hwp{path_1, flip});
    t.append(Pbs{path_0, path_1});
    t.append(Hwp{path_1, 0.0});
    t.append(Hwp{path_1, -angle / 2.0});
    t.append(Pbs{path_0, path_1});
    t.append(Hwp{path_1, flip});
    return t;
}

/// Exchanges two paths for both polarizations: a balanced Mach-Zehnder with
/// its i^2 reflection phase removed.
inline OpticalTrain path_exchange(const ModeSpace &space, int path_a, int path_b) {
    OpticalTrain t(space);
    t.append(BeamSplitter{path_a, path_b});
    t.append(BeamSplitter{path_a, path_b});
    t.append(PhaseShift{path_a, -std::numbers::pi / 2.0});
    t.append(PhaseShift{path_b, -std::numbers::pi / 2.0});
    return t;
}

namespace detail {

/// Emits optical elements for gates on a (path bits, polarization) register.
class GateCompiler {
   public:
    GateCompiler(ModeSpace space, QubitMapping mapping) : space_(space), mapping_(std::move(mapping)), out_(space) {
        if ((1 << mapping_.path_bits.size()) != space_.n_paths) {
            throw DimensionError("GateCompiler: mapping does not match the number of paths");
        }
    }

    void compile(const Gate &g) {
        std::visit(
            [&](const auto &op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, Rotation>) {
                    rotation(op.target, op.angle, 0);
                } else if constexpr (std::is_same_v<T, Cnot>) {
                    cnot(op.control, op.target, 0);
                } else if constexpr (std::is_same_v<T, Swap>) {
                    swap(op.a, op.b, 0);
                } else {
                    if (is_pol(op.control)) {
                        controlled_swap_on_v(op.a, op.b);
                    } else {
                        swap(op.a, op.b, mask(op.control));
                    }
                }
            },
            g);
    }

    OpticalTrain take() { return std::move(out_); }

   private:
    bool is_pol(QubitLabel l) const { return l == mapping_.polarization; }

    int mask(QubitLabel l) const {
        const auto n = mapping_.path_bits.size();
        for (std::size_t k = 0; k < n; ++k) {
            if (mapping_.path_bits[k] == l) return 1 << (n - 1 - k);
        }
        throw LabelError("optical compiler: qubit " + to_string(l) + " is not encoded in this mode space");
    }

    bool active(int path, int cond) const { return (path & cond) == cond; }

    void rotation(QubitLabel target, double angle, int cond) {
        if (is_pol(target)) {
            for (int p = 0; p < space_.n_paths; ++p) {
                if (!active(p, cond)) continue;
                out_.append(Hwp{p, 0.0});
                out_.append(Hwp{p, angle / 2.0});
            }
            return;
        }
        // Rotate the V sector, flip polarization, rotate the former H sector, flip back.
        const int bit = mask(target);
        constexpr double flip = std::numbers::pi / 4.0;
        for (int p = 0; p < space_.n_paths; ++p) {
            if ((p & bit) || !active(p, cond)) continue;
            const int q = p | bit;
            out_.append(crot_polarization_controls_path(space_, p, q, angle));
            out_.append(Hwp{p, flip});
            out_.append(Hwp{q, flip});
            out_.append(crot_polarization_controls_path(space_, p, q, angle));
            out_.append(Hwp{p, flip});
            out_.append(Hwp{q, flip});
        }
    }

    void cnot(QubitLabel control, QubitLabel target, int cond) {
        if (is_pol(control)) {
            const int bit = mask(target);
            for (int p = 0; p < space_.n_paths; ++p) {
                if (!(p & bit) && active(p, cond)) out_.append(Pbs{p, p | bit});
            }
        } else if (is_pol(target)) {
            const int bit = mask(control);
            for (int p = 0; p < space_.n_paths; ++p) {
                if ((p & bit) && active(p, cond)) out_.append(Hwp{p, std::numbers::pi / 4.0});
            }
        } else {
            const int cbit = mask(control);
            const int tbit = mask(target);
            for (int p = 0; p < space_.n_paths; ++p) {
                if ((p & cbit) && !(p & tbit) && active(p, cond)) out_.append(path_exchange(space_, p, p | tbit));
            }
        }
    }

    void swap(QubitLabel a, QubitLabel b, int cond) {
        if (is_pol(b)) std::swap(a, b);
        if (is_pol(a)) {
            cnot(a, b, cond);
            cnot(b, a, cond);
            cnot(a, b, cond);
            return;
        }
        const int ma = mask(a);
        const int mb = mask(b);
        for (int p = 0; p < space_.n_paths; ++p) {
            if ((p & ma) && !(p & mb) && active(p, cond)) out_.append(path_exchange(space_, p, (p & ~ma) | mb));
        }
    }

    // A PBS between paths differing in both bits exchanges them for V only.
    void controlled_swap_on_v(QubitLabel a, QubitLabel b) {
        const int ma = mask(a);
        const int mb = mask(b);
        for (int p = 0; p < space_.n_paths; ++p) {
            if ((p & ma) && !(p & mb)) out_.append(Pbs{p, (p & ~ma) | mb});
        }
    }

    ModeSpace space_;
    QubitMapping mapping_;
    OpticalTrain out_;
};

}  // namespace detail

inline OpticalTrain compile_circuit(const Circuit &c, const ModeSpace &space, const QubitMapping &mapping) {
    if (detail::sorted_copy(mapping.mode_order()) != c.register_labels()) {
        throw LabelError("compile_circuit: circuit register does not match the photon encoding");
    }
    detail::GateCompiler compiler(space, mapping);
    for (const Gate &g : c.gates()) compiler.compile(g);
    return compiler.take();
}

inline OpticalTrain compile_circuit(const Circuit &c, const ModeSpace &space) {
    return compile_circuit(c, space, default_mapping(space));
}

struct EquivalenceReport {
    double max_deviation = 0.0;
    /// Global phase phi applied to the circuit unitary before comparing.
    double phase = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// max |U_train - e^{i phi} U_circuit| with phi the least-squares phase alignment.
inline EquivalenceReport verify_equivalence(const OpticalTrain &t, const Circuit &c, double tol,
                                            const QubitMapping &mapping) {
    if (detail::sorted_copy(mapping.mode_order()) != c.register_labels() ||
        static_cast<std::size_t>(t.mode_space().dimension()) != (std::size_t{1} << c.register_labels().size())) {
        throw DimensionError("verify_equivalence: train and circuit act on different spaces");
    }
    const Matrix ut = train_qubit_matrix(t, mapping);
    const Matrix uc = circuit_unitary(c);
    const Complex inner = (uc.conjugate().cwiseProduct(ut)).sum();
    const double phi = std::abs(inner) > 0 ? std::arg(inner) : 0.0;
    EquivalenceReport r;
    r.phase = phi;
    r.tolerance = tol;
    r.max_deviation = (ut - std::polar(1.0, phi) * uc).cwiseAbs().maxCoeff();
    r.pass = r.max_deviation <= tol;
    return r;
}

inline EquivalenceReport verify_equivalence(const OpticalTrain &t, const Circuit &c, double tol) {
    return verify_equivalence(t, c, tol, default_mapping(t.mode_space()));
}

inline const ModeSpace kClonerSpace{8};

/// Four 50-50 beam splitters pairing each aux = 0 path with its aux = 1
/// partner, phased so aux goes to (|0> + |1>)/sqrt 2.
inline OpticalTrain aux_beam_splitters(const ModeSpace &space = kClonerSpace) {
    const int half = space.n_paths / 2;
    OpticalTrain t(space);
    for (int p = half; p < space.n_paths; ++p) t.append(PhaseShift{p, std::numbers::pi / 2.0});
    for (int p = 0; p < half; ++p) t.append(BeamSplitter{p, p + half});
    for (int p = half; p < space.n_paths; ++p) t.append(PhaseShift{p, -std::numbers::pi / 2.0});
    return t;
}

/// Lossless cloner setup on 8 paths: swap 1 <-> 2, preparation of qubits 1 and
/// 3, cloning stage, swap back, aux beam splitters, controlled swap.
/// Unchecked; see build_cloner_train.
inline OpticalTrain compose_cloner_train(const PrepAngles &angles = bh_prep_angles()) {
    const QubitLabel q1 = qubit_label(1), q2 = qubit_label(2), q3 = qubit_label(3);
    const Labels reg = {kAux, q1, q2, q3};
    const QubitMapping mapping = default_mapping(kClonerSpace);
    auto section = [&](const Circuit &c) { return compile_circuit(c, kClonerSpace, mapping); };

    OpticalTrain t(kClonerSpace);
    t.append(section(Circuit(reg).append(Swap{q1, q2})));
    t.append(section(prep_circuit(angles, q1, q3, reg)));
    t.append(section(cloning_circuit(q2, q1, q3, reg)));
    t.append(section(Circuit(reg).append(Swap{q1, q2})));
    t.append(aux_beam_splitters(kClonerSpace));
    t.append(section(Circuit(reg).append(Cswap{kAux, q1, q2})));
    return t;
}

/// compose_cloner_train, checked against measurement_circuit(); a mismatch
/// beyond 1e-9 throws EquivalenceError.
inline OpticalTrain build_cloner_train(const PrepAngles &angles = bh_prep_angles()) {
    const OpticalTrain t = compose_cloner_train(angles);
    const auto report = verify_equivalence(t, measurement_circuit(angles), 1e-9);
    if (!report.pass) {
        throw EquivalenceError(
            fmt::format("build_cloner_train: layout deviates from the gate network by {:.3e}", report.max_deviation),
            report.max_deviation);
    }
    return t;
}

/// HWP at theta/2 then AJWP at delta on path 0: H -> cos theta H + e^{i delta} sin theta V.
inline OpticalTrain build_input_train(double theta, double delta, const ModeSpace &space = kClonerSpace) {
    OpticalTrain t(space);
    t.append(Hwp{0, theta / 2.0});
    t.append(Ajwp{0, delta});
    return t;
}

/// Input preparation followed by the cloner, for a photon entering path 0 as H.
inline OpticalTrain build_setup_train(double theta, double delta, const OpticalTrain &cloner) {
    OpticalTrain t = build_input_train(theta, delta, cloner.mode_space());
    t.append(cloner);
    return t;
}

/// Applies `offset(index, element)` to every wave plate and polarizer axis.
inline OpticalTrain perturb_axes(const OpticalTrain &t, const std::function<double(std::size_t)> &offset) {
    OpticalTrain out = t;
    auto &els = out.mutable_elements();
    for (std::size_t i = 0; i < els.size(); ++i) {
        std::visit(
            [&](auto &el) {
                using T = std::decay_t<decltype(el)>;
                if constexpr (std::is_same_v<T, Hwp> || std::is_same_v<T, Qwp> || std::is_same_v<T, Polarizer>) {
                    el.axis += offset(i);
                }
            },
            els[i]);
    }
    return out;
}

/// Copy of `t` with one wave plate or polarizer axis moved by `offset`.
inline OpticalTrain with_axis_offset(const OpticalTrain &t, std::size_t index, double offset) {
    return perturb_axes(t, [&](std::size_t i) { return i == index ? offset : 0.0; });
}

/// One element per line: kind, paths, parameters in radians with six decimals.
inline std::string to_text(const OpticalElement &e) {
    return std::visit(
        [](const auto &el) -> std::string {
            using T = std::decay_t<decltype(el)>;
            if constexpr (std::is_same_v<T, Hwp>) return fmt::format("HWP {} {:.6f}", el.path, el.axis);
            if constexpr (std::is_same_v<T, Qwp>) return fmt::format("QWP {} {:.6f}", el.path, el.axis);
            if constexpr (std::is_same_v<T, Ajwp>) return fmt::format("AJWP {} {:.6f}", el.path, el.retardance);
            if constexpr (std::is_same_v<T, Pbs>) return fmt::format("PBS {} {}", el.path_a, el.path_b);
            if constexpr (std::is_same_v<T, BeamSplitter>) return fmt::format("BS {} {}", el.path_a, el.path_b);
            if constexpr (std::is_same_v<T, Polarizer>) return fmt::format("POL {} {:.6f}", el.path, el.axis);
            if constexpr (std::is_same_v<T, PhaseShift>) return fmt::format("PHASE {} {:.6f}", el.path, el.phase);
        },
        e);
}

inline std::string to_text(const OpticalTrain &t) {
    std::string out = fmt::format("# paths {}\n", t.mode_space().n_paths);
    for (const auto &e : t.elements()) {
        out += to_text(e);
        out += '\n';
    }
    return out;
}

}  // namespace uqclone
