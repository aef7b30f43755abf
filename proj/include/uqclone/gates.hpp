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

#include <cmath>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "uqclone/hilbert.hpp"

namespace uqclone {

/// R(angle)|0> = cos|0> + sin|1>, R(angle)|1> = -sin|0> + cos|1>.
struct Rotation {
    QubitLabel target;
    double angle = 0.0;
};

struct Cnot {
    QubitLabel control;
    QubitLabel target;
};

struct Swap {
    QubitLabel a;
    QubitLabel b;
};

/// Exchanges `a` and `b` when `control` is 1.
struct Cswap {
    QubitLabel control;
    QubitLabel a;
    QubitLabel b;
};

using Gate = std::variant<Rotation, Cnot, Swap, Cswap>;

inline Labels gate_labels(const Gate &g) {
    return std::visit(
        [](const auto &op) -> Labels {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, Rotation>) return {op.target};
            if constexpr (std::is_same_v<T, Cnot>) return {op.control, op.target};
            if constexpr (std::is_same_v<T, Swap>) return {op.a, op.b};
            if constexpr (std::is_same_v<T, Cswap>) return {op.control, op.a, op.b};
        },
        g);
}

inline std::string to_string(const Gate &g) {
    return std::visit(
        [](const auto &op) -> std::string {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, Rotation>) {
                return "R" + to_string(op.target) + "(" + std::to_string(op.angle) + ")";
            } else if constexpr (std::is_same_v<T, Cnot>) {
                return "CNOT(" + to_string(op.control) + "->" + to_string(op.target) + ")";
            } else if constexpr (std::is_same_v<T, Swap>) {
                return "SWAP(" + to_string(op.a) + "," + to_string(op.b) + ")";
            } else {
                return "CSWAP(" + to_string(op.control) + ";" + to_string(op.a) + "," + to_string(op.b) + ")";
            }
        },
        g);
}

inline void validate_gate(const Gate &g) {
    detail::require_unique(gate_labels(g), "gate");
    if (const auto *r = std::get_if<Rotation>(&g); r && !std::isfinite(r->angle)) {
        throw DomainError("gate: rotation angle is not finite");
    }
}

/// Ordered gate list on a fixed register.
class Circuit {
   public:
    explicit Circuit(Labels register_labels) : register_(detail::sorted_copy(std::move(register_labels))) {
        detail::require_unique(register_, "Circuit");
    }

    Circuit &append(Gate g) {
        validate_gate(g);
        for (QubitLabel l : gate_labels(g)) detail::position_of(register_, l);
        gates_.push_back(std::move(g));
        return *this;
    }

    Circuit &append(const Circuit &other) {
        for (const Gate &g : other.gates()) append(g);
        return *this;
    }

    const Labels &register_labels() const noexcept { return register_; }
    const std::vector<Gate> &gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool empty() const noexcept { return gates_.empty(); }

   private:
    Labels register_;
    std::vector<Gate> gates_;
};

namespace detail {

/// In-place gate action on an amplitude vector over `reg`.
inline void apply_gate_inplace(const Gate &g, const Labels &reg, Vector &amps) {
    const std::size_t n = reg.size();
    const std::size_t dim = std::size_t{1} << n;
    auto mask = [&](QubitLabel l) { return std::size_t{1} << shift_of(n, position_of(reg, l)); };

    std::visit(
        [&](const auto &op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, Rotation>) {
                const std::size_t m = mask(op.target);
                const double c = std::cos(op.angle);
                const double s = std::sin(op.angle);
                for (std::size_t i = 0; i < dim; ++i) {
                    if (i & m) continue;
                    const auto i0 = static_cast<Eigen::Index>(i);
                    const auto i1 = static_cast<Eigen::Index>(i | m);
                    const Complex a0 = amps[i0];
                    const Complex a1 = amps[i1];
                    amps[i0] = c * a0 - s * a1;
                    amps[i1] = s * a0 + c * a1;
                }
            } else if constexpr (std::is_same_v<T, Cnot>) {
                const std::size_t mc = mask(op.control);
                const std::size_t mt = mask(op.target);
                for (std::size_t i = 0; i < dim; ++i) {
                    if ((i & mc) && !(i & mt)) {
                        std::swap(amps[static_cast<Eigen::Index>(i)], amps[static_cast<Eigen::Index>(i | mt)]);
                    }
                }
            } else {
                std::size_t mc = 0;
                QubitLabel a, b;
                if constexpr (std::is_same_v<T, Swap>) {
                    a = op.a;
                    b = op.b;
                } else {
                    mc = mask(op.control);
                    a = op.a;
                    b = op.b;
                }
                const std::size_t ma = mask(a);
                const std::size_t mb = mask(b);
                for (std::size_t i = 0; i < dim; ++i) {
                    if ((i & mc) != mc) continue;
                    if ((i & ma) && !(i & mb)) {
                        std::swap(amps[static_cast<Eigen::Index>(i)],
                                  amps[static_cast<Eigen::Index>((i & ~ma) | mb)]);
                    }
                }
            }
        },
        g);
}

}  // namespace detail

inline Matrix gate_unitary(const Gate &g, const Labels &register_labels) {
    validate_gate(g);
    const Labels reg = detail::sorted_copy(register_labels);
    for (QubitLabel l : gate_labels(g)) detail::position_of(reg, l);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << reg.size());
    Matrix u(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        Vector e = Vector::Zero(dim);
        e[col] = 1.0;
        detail::apply_gate_inplace(g, reg, e);
        u.col(col) = e;
    }
    return u;
}

inline Matrix circuit_unitary(const Circuit &c) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << c.register_labels().size());
    Matrix u = Matrix::Identity(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        Vector e = u.col(col);
        for (const Gate &g : c.gates()) detail::apply_gate_inplace(g, c.register_labels(), e);
        u.col(col) = e;
    }
    return u;
}

inline PureState apply_circuit(const Circuit &c, const PureState &s) {
    if (s.labels() != c.register_labels()) {
        throw LabelError("apply_circuit: state register does not match the circuit register");
    }
    Vector amps = s.amplitudes();
    for (const Gate &g : c.gates()) detail::apply_gate_inplace(g, c.register_labels(), amps);
    return PureState(s.labels(), std::move(amps), 1e-10);
}

}  // namespace uqclone
