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


#include "uqclone/network.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace uqclone {
namespace {

using testing::max_abs;

const QubitLabel q1 = qubit_label(1), q2 = qubit_label(2), q3 = qubit_label(3);
constexpr double kPi = std::numbers::pi;

TEST(GateUnitary, ZeroRotationIsIdentity) {
    EXPECT_LT(max_abs(gate_unitary(Rotation{q1, 0.0}, {q1}) - Matrix::Identity(2, 2)), 1e-15);
}

TEST(GateUnitary, RotationConvention) {
    const Matrix r = gate_unitary(Rotation{q1, 0.3}, {q1});
    EXPECT_NEAR(r(1, 0).real(), std::sin(0.3), 1e-15);
    EXPECT_NEAR(r(0, 1).real(), -std::sin(0.3), 1e-15);
}

TEST(GateUnitary, CnotSwapsTheControlledPair) {
    const Matrix u = gate_unitary(Cnot{q1, q2}, {q1, q2});
    Matrix want = Matrix::Zero(4, 4);
    want(0, 0) = want(1, 1) = 1.0;
    want(3, 2) = want(2, 3) = 1.0;
    EXPECT_EQ(u, want);
}

TEST(GateUnitary, CswapExchangesWhenControlSet) {
    Circuit c({kAux, q1, q2});
    c.append(Cswap{kAux, q1, q2});
    const PureState out = apply_circuit(c, basis_state({kAux, q1, q2}, {1, 1, 0}));
    EXPECT_EQ(out[0b101], Complex(1.0));
    const PureState idle = apply_circuit(c, basis_state({kAux, q1, q2}, {0, 1, 0}));
    EXPECT_EQ(idle[0b010], Complex(1.0));
}

TEST(GateUnitary, LabelOutsideRegisterThrows) {
    EXPECT_THROW(gate_unitary(Cnot{q1, q3}, {q1, q2}), LabelError);
    Circuit c({q1, q2});
    EXPECT_THROW(c.append(Cnot{q1, q1}), LabelError);
    EXPECT_THROW(c.append(Rotation{q1, std::nan("")}), DomainError);
}

TEST(ApplyCircuit, EmptyCircuitIsIdentity) {
    Rng rng(1);
    const PureState s = testing::random_state({q1, q2}, rng);
    EXPECT_LT(max_abs(apply_circuit(Circuit({q1, q2}), s).amplitudes() - s.amplitudes()), 1e-15);
    EXPECT_THROW(apply_circuit(Circuit({q1, q3}), s), LabelError);
}

TEST(ApplyCircuit, MatchesUnitaryProduct) {
    Rng rng(2);
    Circuit c({kAux, q1, q2, q3});
    for (int k = 0; k < 30; ++k) {
        const int a = static_cast<int>(rng.next_u64() % 4), b = (a + 1 + static_cast<int>(rng.next_u64() % 3)) % 4;
        switch (rng.next_u64() % 3) {
            case 0:
                c.append(Rotation{qubit_label(a), rng.uniform(-kPi, kPi)});
                break;
            case 1:
                c.append(Cnot{qubit_label(a), qubit_label(b)});
                break;
            default:
                c.append(Swap{qubit_label(a), qubit_label(b)});
        }
    }
    const Matrix u = circuit_unitary(c);
    EXPECT_TRUE(is_unitary(u, 1e-10));
    const PureState s = testing::random_state({kAux, q1, q2, q3}, rng);
    EXPECT_LT(max_abs(apply_circuit(c, s).amplitudes() - u * s.amplitudes()), 1e-12);
}

TEST(PrepAmplitudes, MatchesCircuit) {
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        const PrepAngles a{rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
        const PureState s = apply_circuit(prep_circuit(a), blank_and_ancilla());
        const auto closed = prep_amplitudes(a);
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(s[i].real(), closed[i], 1e-12);
    }
}

TEST(Solver, IdentityTarget) {
    const PrepSolution sol = solve_prep_angles(blank_and_ancilla());
    const PureState s = apply_circuit(prep_circuit(sol.angles), blank_and_ancilla());
    EXPECT_GE(std::abs(overlap(s, blank_and_ancilla())), 1.0 - 1e-10);
}

TEST(Solver, ClonerPreparationState) {
    const PureState s = apply_circuit(prep_circuit(bh_prep_angles()), blank_and_ancilla());
    EXPECT_GE(std::abs(overlap(s, bh_prep_target())), 1.0 - 1e-10);
    // Amplitudes (2, 1, 0, 1)/sqrt 6 up to a global sign.
    const double sign = s[0].real() > 0 ? 1.0 : -1.0;
    const double k = 1.0 / std::sqrt(6.0);
    const std::array<double, 4> want = {2 * k, k, 0.0, k};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(sign * s[i].real(), want[i], 1e-10);
}

TEST(Solver, AnglesAreWrapped) {
    for (double a : {bh_prep_angles().theta1, bh_prep_angles().theta2, bh_prep_angles().theta3}) {
        EXPECT_GT(a, -kPi);
        EXPECT_LE(a, kPi);
    }
}

TEST(Solver, IsDeterministic) {
    const PrepSolution a = solve_prep_angles(bh_prep_target());
    const PrepSolution b = solve_prep_angles(bh_prep_target());
    EXPECT_EQ(a.angles.theta1, b.angles.theta1);
    EXPECT_EQ(a.angles.theta2, b.angles.theta2);
    EXPECT_EQ(a.angles.theta3, b.angles.theta3);
}

TEST(Solver, ComplexTargetOutsideTheRealFamilyReportsBestResidual) {
    // Real rotations and CNOTs cannot produce a relative phase of i.
    Vector v(4);
    v << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0)), 0.0, 0.0;
    SolverOptions opt;
    opt.seed_threshold = 0.5;
    opt.max_refinements = 4;
    try {
        solve_prep_angles(PureState({q2, q3}, v), opt);
        FAIL() << "expected SolverError";
    } catch (const SolverError &e) {
        EXPECT_GT(e.best_residual(), 0.1);
    }
}

TEST(Solver, TightToleranceStillReaches) {
    SolverOptions opt;
    opt.tolerance = 1e-14;
    const PrepSolution sol = solve_prep_angles(bh_prep_target(), opt);
    EXPECT_LE(sol.residual, 1e-14);
}

TEST(Solver, RejectsWrongArity) { EXPECT_THROW(solve_prep_angles(basis_state({q1}, {0})), DimensionError); }

TEST(CloningStage, BasisImages) {
    const double k = 1.0 / std::sqrt(6.0);
    const Circuit net = network_circuit();
    const PureState out0 = apply_circuit(net, basis_state({q1, q2, q3}, {0, 0, 0}));
    Vector want0 = Vector::Zero(8);
    want0[0b000] = 2 * k;
    want0[0b101] = want0[0b011] = k;
    EXPECT_LT(max_deviation_up_to_phase(out0, PureState({q1, q2, q3}, want0)), 1e-10);

    const PureState out1 = apply_circuit(net, basis_state({q1, q2, q3}, {1, 0, 0}));
    Vector want1 = Vector::Zero(8);
    want1[0b111] = 2 * k;
    want1[0b100] = want1[0b010] = k;
    EXPECT_LT(max_deviation_up_to_phase(out1, PureState({q1, q2, q3}, want1)), 1e-10);
}

TEST(CloningStage, SuperpositionIsLinear) {
    const Circuit net = network_circuit();
    const PureState o0 = apply_circuit(net, basis_state({q1, q2, q3}, {0, 0, 0}));
    const PureState o1 = apply_circuit(net, basis_state({q1, q2, q3}, {1, 0, 0}));
    const PureState plus =
        apply_circuit(net, tensor_product(polarization_state(kPi / 4.0, 0.0), blank_and_ancilla()));
    EXPECT_LT(max_abs(plus.amplitudes() - (o0.amplitudes() + o1.amplitudes()) / std::sqrt(2.0)), 1e-12);
}

TEST(ReferenceTransform, BasisImages) {
    const PureState r0 = bh_reference_transform(basis_state({q1}, {0}));
    EXPECT_NEAR(r0[0b000].real(), std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(r0[0b101].real(), std::sqrt(1.0 / 6.0), 1e-15);
    const PureState r1 = bh_reference_transform(basis_state({q1}, {1}));
    EXPECT_NEAR(r1[0b111].real(), std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(r1[0b010].real(), std::sqrt(1.0 / 6.0), 1e-15);
    EXPECT_THROW(bh_reference_transform(blank_and_ancilla()), DimensionError);
}

TEST(ReferenceTransform, NetworkAgreesOnRandomInputs) {
    Rng rng(1234);
    const Circuit net = network_circuit();
    for (int k = 0; k < 1000; ++k) {
        const PureState in = testing::random_state({q1}, rng);
        const PureState out = apply_circuit(net, tensor_product(in, blank_and_ancilla()));
        ASSERT_LT(max_deviation_up_to_phase(out, bh_reference_transform(in)), 1e-10) << "input " << k;
    }
}

TEST(Clone, Examples) {
    for (auto [theta, delta] : {std::pair{0.0, 0.0}, std::pair{kPi / 4.0, kPi / 2.0}, std::pair{kPi / 2.0, 0.0}}) {
        const CloneResult r = clone(theta, delta);
        EXPECT_NEAR(r.fidelity1, 5.0 / 6.0, 1e-9);
        EXPECT_NEAR(r.fidelity2, 5.0 / 6.0, 1e-9);
    }
}

TEST(Clone, ReplicasAreEqualAndShrunk) {
    Rng rng(77);
    for (int k = 0; k < 100; ++k) {
        const double theta = rng.uniform(-kPi / 2.0, kPi / 2.0), delta = rng.uniform(0.0, 2.0 * kPi);
        const CloneResult r = clone(theta, delta);
        EXPECT_LT(max_abs(r.rho1.matrix() - r.rho2.matrix()), 1e-12);
        const Vector psi = polarization_state(theta, delta).amplitudes();
        const Matrix shrunk = (2.0 / 3.0) * psi * psi.adjoint() + Matrix::Identity(2, 2) / 6.0;
        EXPECT_LT(max_abs(r.rho1.matrix() - shrunk), 1e-10);
    }
}

TEST(OptimalFidelity, Values) {
    EXPECT_EQ(optimal_fidelity(1, 2), 5.0 / 6.0);
    EXPECT_DOUBLE_EQ(optimal_fidelity(1, 3), 7.0 / 9.0);
    for (long long m = 1; m <= 20; ++m) EXPECT_DOUBLE_EQ(optimal_fidelity(m, m), 1.0);
}

TEST(OptimalFidelity, DecreasesInNTowardsLimit) {
    for (long long m = 1; m <= 5; ++m) {
        for (long long n = m; n < m + 50; ++n) EXPECT_GT(optimal_fidelity(m, n), optimal_fidelity(m, n + 1));
        EXPECT_NEAR(optimal_fidelity(m, 1000000), (m + 1.0) / (m + 2.0), 1e-6);
    }
    EXPECT_NEAR(optimal_fidelity(1, 1000000000), 2.0 / 3.0, 1e-9);
}

TEST(OptimalFidelity, DomainErrors) {
    EXPECT_THROW(optimal_fidelity(0, 2), DomainError);
    EXPECT_THROW(optimal_fidelity(3, 2), DomainError);
    EXPECT_THROW(optimal_fidelity(-1, 2), DomainError);
}

TEST(Triplicator, PrepAmplitudesFollowClosedForm) {
    const double b = 1.0 / std::sqrt(12.0);
    EXPECT_NEAR(kTriplicatorPrepAmplitudes[0], 3.0 * b, 1e-15);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(kTriplicatorPrepAmplitudes[i], b, 1e-15);
}

TEST(Triplicator, EqualCopiesWithStateIndependentFidelity) {
    const TriplicateResult ref = triplicate(0.0);
    for (int k = 0; k <= 36; ++k) {
        const double theta = -kPi / 2.0 + k * kPi / 36.0;
        const TriplicateResult r = triplicate(theta);
        EXPECT_LT(max_abs(r.rho[0].matrix() - r.rho[1].matrix()), 1e-10);
        EXPECT_LT(max_abs(r.rho[0].matrix() - r.rho[2].matrix()), 1e-10);
        for (double f : r.fidelity) EXPECT_NEAR(f, ref.fidelity[0], 1e-9) << "theta " << theta;
    }
    // Recorded value of the search: 5/6 for each of the three copies.
    EXPECT_NEAR(ref.fidelity[0], 5.0 / 6.0, 1e-9);
}

}  // namespace
}  // namespace uqclone
