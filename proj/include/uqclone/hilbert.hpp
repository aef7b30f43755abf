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
 * Labeled multi-qubit pure states and density matrices.
 *
 * Every register is kept with its labels sorted ascending and the smallest
 * label as the most significant bit of the basis index. The auxiliary qubit
 * carries label 0, so it is always the most significant bit when present.
 */

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "uqclone/errors.hpp"

namespace uqclone {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr double kPsdFloor = -1e-10;

struct QubitLabel {
    int index = 0;

    constexpr auto operator<=>(const QubitLabel &) const = default;
};

inline constexpr QubitLabel kAux{0};

inline constexpr QubitLabel qubit_label(int index) { return QubitLabel{index}; }

inline std::string to_string(QubitLabel label) {
    return label == kAux ? std::string("aux") : std::to_string(label.index);
}

using Labels = std::vector<QubitLabel>;

namespace detail {

inline void require_unique(const Labels &labels, const char *context) {
    Labels sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw LabelError(std::string(context) + ": duplicate qubit label");
    }
}

/// Position of `label` in a sorted register, or throws.
inline std::size_t position_of(const Labels &sorted, QubitLabel label) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), label);
    if (it == sorted.end() || *it != label) {
        throw LabelError("qubit " + to_string(label) + " is not in the register");
    }
    return static_cast<std::size_t>(it - sorted.begin());
}

/// Bit shift of a register position; position 0 is the most significant bit.
inline unsigned shift_of(std::size_t n_qubits, std::size_t position) {
    return static_cast<unsigned>(n_qubits - 1 - position);
}

/// Reorders basis indices from the order of `given` to the sorted order.
inline std::vector<std::size_t> sorting_permutation(const Labels &given, const Labels &sorted) {
    const std::size_t n = given.size();
    const std::size_t dim = std::size_t{1} << n;
    std::vector<unsigned> target_shift(n);
    for (std::size_t k = 0; k < n; ++k) {
        target_shift[k] = shift_of(n, position_of(sorted, given[k]));
    }
    std::vector<std::size_t> perm(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::size_t out = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if ((idx >> shift_of(n, k)) & 1U) out |= std::size_t{1} << target_shift[k];
        }
        perm[idx] = out;
    }
    return perm;
}

inline Labels sorted_copy(Labels labels) {
    std::sort(labels.begin(), labels.end());
    return labels;
}

}  // namespace detail

/// Normalized state vector on a labeled register.
class PureState {
   public:
    /// `amplitudes` are indexed with `labels[0]` as the most significant bit;
    /// the state is stored in canonical (sorted-label) order.
    PureState(Labels labels, Vector amplitudes, double tolerance = kDefaultTolerance) {
        detail::require_unique(labels, "PureState");
        const std::size_t dim = std::size_t{1} << labels.size();
        if (static_cast<std::size_t>(amplitudes.size()) != dim) {
            throw DimensionError("PureState: expected " + std::to_string(dim) + " amplitudes, got " +
                                 std::to_string(amplitudes.size()));
        }
        if (std::abs(amplitudes.squaredNorm() - 1.0) > tolerance) {
            throw DomainError("PureState: amplitudes are not normalized");
        }
        labels_ = detail::sorted_copy(labels);
        if (labels_ == labels) {
            amplitudes_ = std::move(amplitudes);
        } else {
            auto perm = detail::sorting_permutation(labels, labels_);
            amplitudes_.resize(static_cast<Eigen::Index>(dim));
            for (std::size_t i = 0; i < dim; ++i) {
                amplitudes_[static_cast<Eigen::Index>(perm[i])] = amplitudes[static_cast<Eigen::Index>(i)];
            }
        }
    }

    const Labels &labels() const noexcept { return labels_; }
    const Vector &amplitudes() const noexcept { return amplitudes_; }
    std::size_t num_qubits() const noexcept { return labels_.size(); }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

   private:
    Labels labels_;
    Vector amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace matrix on a labeled register.
class DensityMatrix {
   public:
    DensityMatrix(Labels labels, Matrix matrix, double tolerance = kDefaultTolerance) {
        detail::require_unique(labels, "DensityMatrix");
        const auto dim = static_cast<Eigen::Index>(std::size_t{1} << labels.size());
        if (matrix.rows() != dim || matrix.cols() != dim) {
            throw DimensionError("DensityMatrix: matrix is not 2^n x 2^n");
        }
        if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tolerance) {
            throw DomainError("DensityMatrix: matrix is not Hermitian");
        }
        if (std::abs(matrix.trace() - Complex(1.0)) > tolerance) {
            throw DomainError("DensityMatrix: trace is not 1");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> eig(matrix, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < kPsdFloor) {
            throw DomainError("DensityMatrix: matrix is not positive semidefinite");
        }
        labels_ = detail::sorted_copy(labels);
        if (labels_ == labels) {
            matrix_ = std::move(matrix);
        } else {
            auto perm = detail::sorting_permutation(labels, labels_);
            matrix_.resize(dim, dim);
            for (Eigen::Index i = 0; i < dim; ++i) {
                for (Eigen::Index j = 0; j < dim; ++j) {
                    matrix_(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]),
                            static_cast<Eigen::Index>(perm[static_cast<std::size_t>(j)])) = matrix(i, j);
                }
            }
        }
    }

    explicit DensityMatrix(const PureState &psi)
        : labels_(psi.labels()), matrix_(psi.amplitudes() * psi.amplitudes().adjoint()) {}

    const Labels &labels() const noexcept { return labels_; }
    const Matrix &matrix() const noexcept { return matrix_; }
    std::size_t num_qubits() const noexcept { return labels_.size(); }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    Complex operator()(std::size_t i, std::size_t j) const {
        return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

   private:
    Labels labels_;
    Matrix matrix_;
};

/// Computational basis state; `bits[k]` is the value of `labels[k]`.
inline PureState basis_state(const Labels &labels, const std::vector<int> &bits) {
    if (bits.size() != labels.size()) throw DimensionError("basis_state: one bit per label required");
    std::size_t idx = 0;
    for (int b : bits) idx = (idx << 1) | (b ? 1U : 0U);
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << labels.size()));
    amps[static_cast<Eigen::Index>(idx)] = 1.0;
    return PureState(labels, std::move(amps));
}

inline PureState single_qubit(QubitLabel label, Complex alpha, Complex beta) {
    Vector amps(2);
    amps << alpha, beta;
    return PureState({label}, std::move(amps));
}

/// cos(theta)|0> + e^{i delta} sin(theta)|1>.
inline PureState polarization_state(double theta, double delta, QubitLabel label = qubit_label(1)) {
    return single_qubit(label, std::cos(theta), std::polar(1.0, delta) * std::sin(theta));
}

inline PureState tensor_product(const PureState &a, const PureState &b) {
    Labels joined = a.labels();
    joined.insert(joined.end(), b.labels().begin(), b.labels().end());
    for (QubitLabel l : b.labels()) {
        if (std::binary_search(a.labels().begin(), a.labels().end(), l)) {
            throw LabelError("tensor_product: qubit " + to_string(l) + " appears in both factors");
        }
    }
    Vector amps(static_cast<Eigen::Index>(a.dimension() * b.dimension()));
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        for (std::size_t j = 0; j < b.dimension(); ++j) {
            amps[static_cast<Eigen::Index>(i * b.dimension() + j)] = a[i] * b[j];
        }
    }
    // Product of two normalized vectors; loosen the check for accumulated rounding.
    return PureState(std::move(joined), std::move(amps), 1e-10);
}

inline DensityMatrix partial_trace(const DensityMatrix &rho, const Labels &keep) {
    if (keep.empty()) throw LabelError("partial_trace: nothing to keep");
    detail::require_unique(keep, "partial_trace");
    const Labels &all = rho.labels();
    const std::size_t n = all.size();
    const Labels kept = detail::sorted_copy(keep);
    std::vector<bool> is_kept(n, false);
    for (QubitLabel l : kept) is_kept[detail::position_of(all, l)] = true;

    std::vector<unsigned> kept_shifts, traced_shifts;
    for (std::size_t p = 0; p < n; ++p) {
        (is_kept[p] ? kept_shifts : traced_shifts).push_back(detail::shift_of(n, p));
    }
    auto compose = [](const std::vector<unsigned> &shifts, std::size_t bits) {
        std::size_t idx = 0;
        const std::size_t m = shifts.size();
        for (std::size_t k = 0; k < m; ++k) {
            if ((bits >> (m - 1 - k)) & 1U) idx |= std::size_t{1} << shifts[k];
        }
        return idx;
    };

    const std::size_t dk = std::size_t{1} << kept_shifts.size();
    const std::size_t dt = std::size_t{1} << traced_shifts.size();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t i = 0; i < dk; ++i) {
        const std::size_t ki = compose(kept_shifts, i);
        for (std::size_t j = 0; j < dk; ++j) {
            const std::size_t kj = compose(kept_shifts, j);
            Complex acc = 0.0;
            for (std::size_t t = 0; t < dt; ++t) {
                const std::size_t tt = compose(traced_shifts, t);
                acc += rho(ki | tt, kj | tt);
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return DensityMatrix(kept, std::move(out), 1e-10);
}

inline DensityMatrix partial_trace(const PureState &psi, const Labels &keep) {
    return partial_trace(DensityMatrix(psi), keep);
}

/// <psi|rho|psi>.
inline double fidelity(const PureState &psi, const DensityMatrix &rho) {
    if (psi.dimension() != rho.dimension()) {
        throw DimensionError("fidelity: state and density matrix dimensions differ");
    }
    const Vector &a = psi.amplitudes();
    return (a.adjoint() * rho.matrix() * a)(0, 0).real();
}

/// <s|t> on a shared register.
inline Complex overlap(const PureState &s, const PureState &t) {
    if (s.labels() != t.labels()) throw LabelError("overlap: registers differ");
    return s.amplitudes().dot(t.amplitudes());
}

/// True when |<s|t>| >= 1 - tol.
inline bool equal_up_to_phase(const PureState &s, const PureState &t, double tol) {
    return std::abs(overlap(s, t)) >= 1.0 - tol;
}

/// max_k |s_k - e^{i phi} t_k| with phi aligning the two states.
inline double max_deviation_up_to_phase(const PureState &s, const PureState &t) {
    if (s.labels() != t.labels()) throw LabelError("max_deviation_up_to_phase: registers differ");
    const Complex ov = t.amplitudes().dot(s.amplitudes());
    const Complex phase = std::abs(ov) > 0 ? ov / std::abs(ov) : Complex(1.0);
    return (s.amplitudes() - phase * t.amplitudes()).cwiseAbs().maxCoeff();
}

inline PureState apply_unitary(const PureState &psi, const Matrix &unitary) {
    if (static_cast<std::size_t>(unitary.rows()) != psi.dimension() || unitary.rows() != unitary.cols()) {
        throw DimensionError("apply_unitary: operator does not match the state");
    }
    return PureState(psi.labels(), unitary * psi.amplitudes(), 1e-10);
}

inline bool is_unitary(const Matrix &u, double tol) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

inline Matrix2 pauli_x() { return (Matrix2() << 0, 1, 1, 0).finished(); }
inline Matrix2 pauli_y() { return (Matrix2() << 0, Complex(0, -1), Complex(0, 1), 0).finished(); }
inline Matrix2 pauli_z() { return (Matrix2() << 1, 0, 0, -1).finished(); }

/// Bloch vector of a single-qubit state: rho = (I + x X + y Y + z Z) / 2.
struct Stokes {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Stokes stokes_decompose(const DensityMatrix &rho) {
    if (rho.num_qubits() != 1) throw DimensionError("stokes_decompose: single-qubit matrix required");
    const Matrix &m = rho.matrix();
    return Stokes{2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

/// Unchecked (I + s.sigma) / 2; may be non-physical when |s| > 1.
inline Matrix2 stokes_matrix(const Stokes &s) {
    return 0.5 * (Matrix2::Identity() + s.x * pauli_x() + s.y * pauli_y() + s.z * pauli_z());
}

inline DensityMatrix stokes_compose(const Stokes &s, QubitLabel label = qubit_label(1)) {
    return DensityMatrix({label}, stokes_matrix(s), 1e-10);
}

}  // namespace uqclone
