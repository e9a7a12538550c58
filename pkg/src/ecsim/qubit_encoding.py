"""Logical qubit encoding of coherent states.

A coherent pair {|a>, |-a>} spans a two-dimensional space; Gram-Schmidt
orthonormalization gives the logical basis (Psi+, Psi-), from which the four
maximally entangled Bell states are built.  All 4x4 matrices use the fixed
product ordering {Psi+Psi+, Psi+Psi-, Psi-Psi+, Psi-Psi-}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coherent_states import (
    CoherentOperator,
    CoherentSuperposition,
    consolidate,
    tensor,
)
from .errors import DegenerateBasisError, SpanError

DEGENERACY_FLOOR = 1e-12  # minimum allowed value of 1 - exp(-4 t^2 a^2)
SPAN_TOL = 1e-9  # amplitude distance allowed when matching +-a

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

_SQ2 = math.sqrt(2.0)
# Ideal Bell vectors in logical coordinates (rows: B1..B4).
BELL_VECTORS = np.array(
    [
        [1.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, -1.0],
        [0.0, 1.0, 1.0, 0.0],
        [0.0, 1.0, -1.0, 0.0],
    ]
) / _SQ2


@dataclass(frozen=True)
class LogicalBasis:
    """Orthonormal pair built from |ta> and |-ta| for real amplitude a = alpha.

    ``theta`` is the mixing angle with sin(2 theta) = <ta|-ta> = exp(-2 t^2
    alpha^2); ``n_theta`` = cos^2(2 theta) is the normalization of the pair.
    ``t = 1`` is the undecayed basis; smaller ``t`` tracks amplitude decay.
    """

    alpha: float
    t: float
    theta: float
    n_theta: float

    @property
    def amplitude(self) -> float:
        return self.t * self.alpha

    @property
    def sin2theta(self) -> float:
        return math.exp(-2.0 * (self.t * self.alpha) ** 2)

    @property
    def cos2theta(self) -> float:
        return math.sqrt(self.n_theta)


def make_basis(alpha: float, t: float = 1.0) -> LogicalBasis:
    """Build the logical basis at amplitude ``t * alpha``.

    Fails loudly when 1 - exp(-4 t^2 alpha^2) < 1e-12: there the pair
    {|ta>, |-ta>} is numerically collinear and the encoding is undefined.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if not (0.0 < t <= 1.0):
        raise ValueError("decay factor t must lie in (0, 1]")
    s2 = math.exp(-2.0 * (t * alpha) ** 2)  # sin 2theta
    n_theta = -math.expm1(-4.0 * (t * alpha) ** 2)  # 1 - sin^2 2theta, stable
    if n_theta < DEGENERACY_FLOOR:
        raise DegenerateBasisError(
            f"basis degenerate at alpha={alpha}, t={t}: 1-exp(-4 t^2 a^2)={n_theta:.3e}"
        )
    theta = 0.5 * math.asin(s2)
    return LogicalBasis(alpha=float(alpha), t=float(t), theta=theta, n_theta=n_theta)


def psi_plus(basis: LogicalBasis) -> CoherentSuperposition:
    """|Psi+> = (cos th |ta> - sin th |-ta>) / sqrt(N_theta)."""
    a = basis.amplitude
    c = 1.0 / math.sqrt(basis.n_theta)
    return c * (
        math.cos(basis.theta) * CoherentSuperposition.ket(a)
        - math.sin(basis.theta) * CoherentSuperposition.ket(-a)
    )


def psi_minus(basis: LogicalBasis) -> CoherentSuperposition:
    """|Psi-> = (-sin th |ta> + cos th |-ta>) / sqrt(N_theta)."""
    a = basis.amplitude
    c = 1.0 / math.sqrt(basis.n_theta)
    return c * (
        -math.sin(basis.theta) * CoherentSuperposition.ket(a)
        + math.cos(basis.theta) * CoherentSuperposition.ket(-a)
    )


def logical_coords(amp: complex, basis: LogicalBasis) -> np.ndarray:
    """Coordinates of a coherent ket |amp> in the (Psi+, Psi-) basis.

    Exact inversion of the basis definition: |ta> = cos th Psi+ + sin th Psi-
    and |-ta> = sin th Psi+ + cos th Psi-.  ``amp`` must equal +-ta.
    """
    a = basis.amplitude
    if abs(amp - a) < SPAN_TOL:
        return np.array([math.cos(basis.theta), math.sin(basis.theta)])
    if abs(amp + a) < SPAN_TOL:
        return np.array([math.sin(basis.theta), math.cos(basis.theta)])
    raise SpanError(f"amplitude {amp!r} is not +-{a} within {SPAN_TOL}")


def bell_state(k: int, basis: LogicalBasis) -> CoherentSuperposition:
    """The k-th Bell state (k = 1..4) as a two-mode coherent superposition.

    B1,2 = (Psi+Psi+ +- Psi-Psi-)/sqrt2;  B3,4 = (Psi+Psi- +- Psi-Psi+)/sqrt2.
    B2 and B4 are entangled coherent states exactly; B1 and B3 carry the
    extra -sin(2 theta) cross terms.
    """
    if k not in (1, 2, 3, 4):
        raise ValueError("Bell index must be 1..4")
    p = psi_plus(basis)
    m = psi_minus(basis)
    inv = 1.0 / _SQ2
    if k == 1:
        s = inv * (tensor(p, p) + tensor(m, m))
    elif k == 2:
        s = inv * (tensor(p, p) - tensor(m, m))
    elif k == 3:
        s = inv * (tensor(p, m) + tensor(m, p))
    else:
        s = inv * (tensor(p, m) - tensor(m, p))
    return consolidate(s)


# ---------------------------------------------------------------------------
# logical qubit vectors


@dataclass(frozen=True)
class QubitVector:
    """Unit vector in the logical basis: plus * Psi+ + minus * Psi-."""

    plus: complex
    minus: complex

    def __post_init__(self):
        n2 = abs(self.plus) ** 2 + abs(self.minus) ** 2
        if abs(n2 - 1.0) > 1e-12:
            raise ValueError(f"qubit vector norm^2 = {n2!r}, expected 1")

    def as_array(self) -> np.ndarray:
        return np.array([self.plus, self.minus], dtype=complex)


def from_amplitudes(a: complex, b: complex, basis: LogicalBasis) -> QubitVector:
    """Logical coordinates of  a |ta> + b |-ta>.

    The exact basis inversion gives plus = a cos th + b sin th and
    minus = a sin th + b cos th (the 1/cos 2th from inverting the 2x2 system
    cancels against sqrt(N_theta) identically).  The coefficient norm equals
    the physical state norm, so normalization only rescales unnormalized
    inputs.
    """
    a = complex(a)
    b = complex(b)
    if abs(a) == 0 and abs(b) == 0:
        raise ValueError("amplitudes must not both vanish")
    c, s = math.cos(basis.theta), math.sin(basis.theta)
    plus = a * c + b * s
    minus = a * s + b * c
    n = math.sqrt(abs(plus) ** 2 + abs(minus) ** 2)
    return QubitVector(plus / n, minus / n)


def qubit_to_coherent(q: QubitVector, basis: LogicalBasis) -> CoherentSuperposition:
    """Realize a logical vector as the corresponding coherent superposition."""
    return consolidate(q.plus * psi_plus(basis) + q.minus * psi_minus(basis))


def to_logical_qubit(state: CoherentSuperposition, basis: LogicalBasis) -> np.ndarray:
    """Project a single-mode state in span{|ta>, |-ta>} onto (Psi+, Psi-)."""
    if state.modes != 1:
        raise ValueError("expected a single-mode state")
    out = np.zeros(2, dtype=complex)
    for term in state.terms:
        out += term.coeff * logical_coords(term.amps[0], basis)
    return out


def to_logical_vector(state: CoherentSuperposition, basis: LogicalBasis) -> np.ndarray:
    """Project a two-mode state onto the logical product basis (4-vector)."""
    if state.modes != 2:
        raise ValueError("expected a two-mode state")
    out = np.zeros(4, dtype=complex)
    for term in state.terms:
        v = np.kron(
            logical_coords(term.amps[0], basis), logical_coords(term.amps[1], basis)
        )
        out += term.coeff * v
    return out


# ---------------------------------------------------------------------------
# densities and Pauli decomposition


@dataclass(frozen=True)
class TwoQubitDensity:
    """4x4 density matrix in the logical product ordering."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError("density matrix must be 4x4")
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise ValueError("density matrix is not Hermitian within 1e-10")
        if abs(np.trace(m).real - 1.0) > 1e-10 or abs(np.trace(m).imag) > 1e-10:
            raise ValueError("density matrix trace differs from 1 by more than 1e-10")
        if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -1e-10:
            raise ValueError("density matrix has an eigenvalue below -1e-10")
        m = (m + m.conj().T) / 2
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def project_to_density(
    rho: CoherentOperator,
    basis: LogicalBasis | tuple[LogicalBasis, LogicalBasis],
) -> TwoQubitDensity:
    """Express a two-mode coherent operator in the logical product basis.

    Every dyad amplitude must lie in the logical span per mode (exact for
    the channel states here, where decay maps +-a to +-ta); otherwise the
    projection would lose trace and a SpanError is raised instead.
    """
    if rho.modes != 2:
        raise ValueError("expected a two-mode operator")
    if isinstance(basis, LogicalBasis):
        b0 = b1 = basis
    else:
        b0, b1 = basis
    out = np.zeros((4, 4), dtype=complex)
    for term in rho.terms:
        ket = np.kron(
            logical_coords(term.ket_amps[0], b0), logical_coords(term.ket_amps[1], b1)
        )
        bra = np.kron(
            logical_coords(term.bra_amps[0], b0), logical_coords(term.bra_amps[1], b1)
        )
        out += term.coeff * np.outer(ket, bra.conj())
    return TwoQubitDensity(out)


@dataclass(frozen=True)
class PauliDecomposition:
    """Local Bloch vectors and correlation matrix of a two-qubit state.

    rho = (1/4)(II + v.sigma x I + I x s.sigma + sum t_nm sigma_n x sigma_m).
    """

    v: np.ndarray
    s: np.ndarray
    t_matrix: np.ndarray


def pauli_decompose(rho: TwoQubitDensity) -> PauliDecomposition:
    m = rho.matrix
    eye = np.eye(2, dtype=complex)
    v = np.array([np.trace(m @ np.kron(p, eye)).real for p in PAULIS])
    s = np.array([np.trace(m @ np.kron(eye, p)).real for p in PAULIS])
    t = np.array(
        [[np.trace(m @ np.kron(pn, pm)).real for pm in PAULIS] for pn in PAULIS]
    )
    return PauliDecomposition(v=v, s=s, t_matrix=t)


def pauli_reconstruct(dec: PauliDecomposition) -> np.ndarray:
    """Rebuild the 4x4 matrix from a Pauli decomposition (round-trip check)."""
    eye = np.eye(2, dtype=complex)
    m = np.kron(eye, eye).astype(complex)
    for i, p in enumerate(PAULIS):
        m += dec.v[i] * np.kron(p, eye)
        m += dec.s[i] * np.kron(eye, p)
        for j, q in enumerate(PAULIS):
            m += dec.t_matrix[i, j] * np.kron(p, q)
    return m / 4.0


def reduced(rho: TwoQubitDensity, which_mode: int) -> np.ndarray:
    """Partial trace down to one qubit; equals (I + bloch.sigma)/2."""
    m = rho.matrix.reshape(2, 2, 2, 2)
    if which_mode == 0:
        return np.einsum("ikjk->ij", m)
    if which_mode == 1:
        return np.einsum("kikj->ij", m)
    raise ValueError("which_mode must be 0 or 1")
