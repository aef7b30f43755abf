#!/usr/bin/env python3
# Copyright 2026 The uqclone Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Derives the triplicator preparation state frozen in network.hpp.

Searches preparation angles (theta1, theta2, theta3) for which the cloning
network gives three identical single-qubit outputs whose fidelity does not
depend on the (real) input state. Among the solutions found from many
starting points, the one with the highest fidelity is printed.

Independent of the C++ code: the network is simulated here with dense numpy
matrices built from scratch.
"""

import itertools

import numpy as np
from scipy.optimize import least_squares

I2 = np.eye(2)
X = np.array([[0.0, 1.0], [1.0, 0.0]])
P0 = np.diag([1.0, 0.0])
P1 = np.diag([0.0, 1.0])


def rot(t):
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, -s], [s, c]])


def on(op, k, n=3):
    mats = [I2] * n
    mats[k] = op
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def cnot(c, t, n=3):
    return on(P0, c, n) + on(P1, c, n) @ on(X, t, n)


def network(angles):
    t1, t2, t3 = angles
    # qubit order 1, 2, 3 -> tensor positions 0, 1, 2
    u = on(rot(t1), 1)
    u = cnot(1, 2) @ u
    u = on(rot(t2), 2) @ u
    u = cnot(2, 1) @ u
    u = on(rot(t3), 1) @ u
    for c, t in [(0, 1), (0, 2), (1, 0), (2, 0)]:
        u = cnot(c, t) @ u
    return u


def reduced(psi, k):
    t = psi.reshape(2, 2, 2)
    t = np.moveaxis(t, k, 0).reshape(2, 4)
    return t @ t.conj().T


THETAS = np.linspace(-np.pi / 2, np.pi / 2, 13)


def outputs(angles):
    u = network(angles)
    result = []
    for th in THETAS:
        v = np.array([np.cos(th), np.sin(th)])
        psi = u @ np.kron(v, [1.0, 0.0, 0.0, 0.0])
        rhos = [reduced(psi, k) for k in range(3)]
        result.append((v, rhos))
    return result


def residuals(angles):
    res = []
    fids = []
    for v, rhos in outputs(angles):
        res.extend((rhos[0] - rhos[1]).ravel())
        res.extend((rhos[0] - rhos[2]).ravel())
        fids.append(v @ rhos[0] @ v)
    fids = np.array(fids)
    res.extend(fids - fids.mean())
    return np.array(res)


def main():
    solutions = []
    grid = np.linspace(-np.pi, np.pi, 7)[1:]
    for start in itertools.product(grid, repeat=3):
        sol = least_squares(residuals, start, xtol=1e-15, ftol=1e-15, gtol=1e-15)
        if np.max(np.abs(residuals(sol.x))) < 1e-12:
            v, rhos = outputs(sol.x)[0]
            solutions.append((float(v @ rhos[0] @ v), sol.x))
    fid, angles = max(solutions, key=lambda s: s[0])
    # Preparation state on qubits 2, 3: the prep stage applied to |00>.
    t1, t2, t3 = angles
    c1, s1 = np.cos(t1), np.sin(t1)
    c2, s2 = np.cos(t2), np.sin(t2)
    c3, s3 = np.cos(t3), np.sin(t3)
    prep = np.array([c3 * c1 * c2 + s3 * s1 * s2, c3 * s1 * c2 - s3 * c1 * s2,
                     s3 * c1 * c2 - c3 * s1 * s2, s3 * s1 * c2 + c3 * c1 * s2])
    if prep[0] < 0:
        prep = -prep
    print(f"solutions found: {len(solutions)}")
    print(f"distinct fidelities: {sorted(set(round(s[0], 9) for s in solutions))}")
    print(f"best fidelity: {fid:.17f}")
    print("prep amplitudes (00, 01, 10, 11):")
    print(", ".join(f"{a:.17f}" for a in prep))
    b = 1.0 / np.sqrt(12.0)
    print(f"closed form a=3b, b=1/sqrt(12): a={3 * b:.17f} b={b:.17f}")


if __name__ == "__main__":
    main()
