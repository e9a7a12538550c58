"""Entanglement, fidelity, and mixedness functionals on two-qubit densities.

Every functional has two routes: a numeric one acting on the 4x4 matrix and
a closed form in (alpha, r) for the damped entangled channel; the pair is
cross-checked in the test suite.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .decoherence import ChannelCoefficients, channel_rho4, decayed_basis
from .qubit_encoding import BELL_VECTORS, TwoQubitDensity, pauli_decompose

EIG_CLAMP = 1e-12  # eigenvalues this close to zero are treated as zero

CLASSICAL_FIDELITY_LIMIT = 2.0 / 3.0


def partial_transpose(rho: TwoQubitDensity | np.ndarray) -> np.ndarray:
    """Transpose on the second qubit in the fixed logical ordering."""
    m = rho.matrix if isinstance(rho, TwoQubitDensity) else np.asarray(rho)
    return m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def negativity_e(rho: TwoQubitDensity) -> float:
    """E = -2 sum of negative eigenvalues of the partial transpose.

    Positive iff the state is inseparable (two-qubit partial transposition
    criterion); scaled so that E is 1 on maximally entangled states.
    """
    eigs = np.linalg.eigvalsh(partial_transpose(rho))
    eigs = np.where(np.abs(eigs) < EIG_CLAMP, 0.0, eigs)
    return float(-2.0 * eigs[eigs < 0].sum())


def closed_form_e(alpha: float, r: float) -> float:
    """Closed-form channel negativity.

    E = (sqrt(16 b^2 + (c-d)^2) - (2a + c + d)) / (4 N_theta).
    """
    decayed_basis(alpha, r)  # degeneracy guard
    co = ChannelCoefficients.evaluate(alpha, r)
    n_theta = -math.expm1(-4.0 * alpha**2)
    root = math.sqrt(16.0 * co.b_coef**2 + (co.c_coef - co.d_coef) ** 2)
    return (root - (2.0 * co.a_coef + co.c_coef + co.d_coef)) / (4.0 * n_theta)


def max_rotation_trace(m: np.ndarray) -> float:
    """max over rotations O of Tr(M O), via singular values.

    Equals s1 + s2 + s3 when det M >= 0 and s1 + s2 - s3 otherwise.
    """
    sv = np.linalg.svd(np.asarray(m, dtype=float), compute_uv=False)
    if np.linalg.det(m) >= 0:
        return float(sv.sum())
    return float(sv[0] + sv[1] - sv[2])


def max_rotation_trace_enumerated(m: np.ndarray) -> float:
    """Same maximum restricted to signed permutations with determinant +1.

    Exhaustive (24 matrices); attains the rotation optimum whenever M is
    diagonal, which is the case for the damped channel.
    """
    m = np.asarray(m, dtype=float)
    best = -np.inf
    for perm in itertools.permutations(range(3)):
        p = np.zeros((3, 3))
        for i, j in enumerate(perm):
            p[i, j] = 1.0
        for signs in itertools.product((1.0, -1.0), repeat=3):
            o = p * np.array(signs)[:, None]
            if np.linalg.det(o) > 0:
                best = max(best, float(np.trace(m @ o)))
    return best


def singlet_fraction(rho: TwoQubitDensity) -> float:
    """Maximal overlap with any maximally entangled state.

    F = (1 + max_O Tr(-T O)) / 4 over rotations O; maximally entangled
    states have no local Bloch vector, so only the correlation matrix
    enters.  For the channel's diagonal T the optimum is attained on the
    four Bell states of the decayed basis.
    """
    t = pauli_decompose(rho).t_matrix
    f = 0.25 * (1.0 + max_rotation_trace(-t))
    return float(min(max(f, 0.0), 1.0))


def max_bell_projection(rho: TwoQubitDensity) -> float:
    """max_k <B_k| rho |B_k> over the four logical Bell vectors."""
    return float(
        max((b.conj() @ rho.matrix @ b).real for b in BELL_VECTORS)
    )


def optimal_fidelity_from_fraction(fraction: float, dim: int = 2) -> float:
    """Optimal teleportation fidelity (F N + 1)/(N + 1) in dimension N."""
    return (fraction * dim + 1.0) / (dim + 1.0)


def optimal_fidelity(rho: TwoQubitDensity) -> float:
    """Best fidelity achievable with local operations and classical
    communication over the given channel: (2 F + 1)/3."""
    return optimal_fidelity_from_fraction(singlet_fraction(rho), dim=2)


def closed_form_f(alpha: float, r: float) -> float:
    """Closed-form optimal fidelity of the damped channel.

    f = (1/3) max{ 1 + (e^{4a^2} - e^{4t^2a^2}) / (e^{4a^2} - 1),
                   (e^{4t^2a^2} - e^{4r^2a^2} + 2 e^{4a^2} - 2) / (e^{4a^2} - 1) }.
    """
    basis = decayed_basis(alpha, r)  # degeneracy guard
    t2 = basis.t**2
    a2 = alpha**2
    e4a = math.exp(4.0 * a2)
    e4t = math.exp(4.0 * t2 * a2)
    e4r = math.exp(4.0 * (1.0 - t2) * a2)
    den = e4a - 1.0
    branch1 = 1.0 + (e4a - e4t) / den
    branch2 = (e4t - e4r + 2.0 * e4a - 2.0) / den
    return max(branch1, branch2) / 3.0


def linear_entropy(rho: TwoQubitDensity) -> float:
    """S = 1 - tr(rho^2), in [0, 3/4] for two qubits."""
    m = rho.matrix
    return float(1.0 - np.trace(m @ m).real)


def closed_form_s(alpha: float, r: float) -> float:
    """Closed-form channel linear entropy.

    S = (e^{8 r^2 a^2} - 1)(e^{8 t^2 a^2} - 1) / (2 (e^{4 a^2} - 1)^2);
    symmetric under r^2 <-> t^2, hence peaked at r = 1/sqrt(2).
    """
    decayed_basis(alpha, r)  # degeneracy guard
    a2 = alpha**2
    t2 = 1.0 - r * r
    num = math.expm1(8.0 * r * r * a2) * math.expm1(8.0 * t2 * a2)
    return num / (2.0 * math.expm1(4.0 * a2) ** 2)


def vn_entropy(rho: TwoQubitDensity) -> float:
    """von Neumann entropy -sum l log2 l with 0 log 0 := 0."""
    eigs = np.linalg.eigvalsh(rho.matrix)
    eigs = np.where(np.abs(eigs) < EIG_CLAMP, 0.0, eigs)
    pos = eigs[eigs > 0]
    return float(-(pos * np.log2(pos)).sum())


def characteristic_time(alpha: float) -> float:
    """Normalized time where the channel fidelity crosses 2/3.

    Root of closed_form_f(alpha, r) = 2/3 located by bisection to 1e-10;
    equals 1/sqrt(2) independently of alpha.
    """

    def g(r: float) -> float:
        return closed_form_f(alpha, r) - CLASSICAL_FIDELITY_LIMIT

    lo, hi = 1e-6, 0.9995
    if g(lo) <= 0 or g(hi) >= 0:
        raise ValueError(f"no fidelity crossing bracketed for alpha={alpha}")
    return float(optimize.bisect(g, lo, hi, xtol=1e-10))


def mixedness_peak(alpha: float, measure: str = "linear") -> float:
    """Location of the mixedness maximum over r in (0, 1).

    ``measure`` selects the closed-form linear entropy or the numeric von
    Neumann entropy of the channel; both peak at the characteristic time.
    """
    if measure == "linear":
        f = lambda r: -closed_form_s(alpha, r)
    elif measure == "vn":
        f = lambda r: -vn_entropy(channel_rho4(alpha, r))
    else:
        raise ValueError("measure must be 'linear' or 'vn'")
    res = optimize.minimize_scalar(
        f, bounds=(1e-4, 0.9995), method="bounded", options={"xatol": 1e-9}
    )
    return float(res.x)


@dataclass(frozen=True)
class MetricReport:
    """Bundle of the channel figures of merit for one density."""

    e_measure: float
    singlet_fraction: float
    optimal_fidelity: float
    linear_entropy: float
    vn_entropy: float


def metric_report(rho: TwoQubitDensity) -> MetricReport:
    frac = singlet_fraction(rho)
    return MetricReport(
        e_measure=negativity_e(rho),
        singlet_fraction=frac,
        optimal_fidelity=optimal_fidelity_from_fraction(frac, dim=2),
        linear_entropy=linear_entropy(rho),
        vn_entropy=vn_entropy(rho),
    )
