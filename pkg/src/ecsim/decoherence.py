"""Closed-form vacuum (amplitude-damping) evolution of coherent dyads.

Each mode coupled to a zero-temperature bath evolves a dyad as

    |b><g|  ->  <g|b>^(1-t^2) |tb><tg|,     t = exp(-gamma tau / 2),

which is exact, trace preserving, and forms a semigroup in t.  The sweep
parameter used throughout is the normalized decoherence time
r = sqrt(1 - t^2) in [0, 1).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .coherent_states import (
    CoherentOperator,
    DyadTerm,
    dyad_from_pure,
    log_overlap,
)
from .qubit_encoding import (
    LogicalBasis,
    PauliDecomposition,
    TwoQubitDensity,
    bell_state,
    make_basis,
    project_to_density,
)


@dataclass(frozen=True)
class DecayClock:
    """Amplitude decay factor t = exp(-gamma tau / 2); r = sqrt(1 - t^2)."""

    t: float

    def __post_init__(self):
        if not (0.0 < self.t <= 1.0):
            raise ValueError("decay factor t must lie in (0, 1]")

    @property
    def r(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.t * self.t))

    @classmethod
    def from_r(cls, r: float) -> "DecayClock":
        if not (0.0 <= r < 1.0):
            raise ValueError("normalized time r must lie in [0, 1)")
        return cls(t=math.sqrt(1.0 - r * r))

    @classmethod
    def from_interaction(cls, gamma: float, tau: float) -> "DecayClock":
        """Clock after evolving for time tau at energy decay rate gamma."""
        if gamma < 0 or tau < 0:
            raise ValueError("gamma and tau must be non-negative")
        return cls(t=math.exp(-0.5 * gamma * tau))


def decohere_dyad(beta: complex, gamma: complex, clock: DecayClock) -> DyadTerm:
    """Damp a single-mode dyad |beta><gamma|.

    The coefficient <gamma|beta>^(1-t^2) is evaluated as exp((1-t^2) * w)
    with w the exact overlap exponent, so no branch choice is involved even
    for complex amplitudes.
    """
    beta = complex(beta)
    gamma = complex(gamma)
    w = log_overlap(gamma, beta)
    coeff = cmath.exp((1.0 - clock.t**2) * w)
    return DyadTerm(coeff, (clock.t * beta,), (clock.t * gamma,))


def decohere(rho: CoherentOperator, clock: DecayClock) -> CoherentOperator:
    """Damp every mode of a coherent operator independently.

    Trace and Hermiticity are preserved exactly: the per-mode coefficient
    times <t gamma|t beta> recombines to the original <gamma|beta>.
    """
    scale = 1.0 - clock.t**2
    new_terms = []
    for term in rho.terms:
        ex = sum(log_overlap(g, b) for g, b in zip(term.bra_amps, term.ket_amps))
        coeff = term.coeff * cmath.exp(scale * ex)
        kets = tuple(clock.t * b for b in term.ket_amps)
        bras = tuple(clock.t * g for g in term.bra_amps)
        new_terms.append(DyadTerm(coeff, kets, bras))
    return CoherentOperator(rho.modes, tuple(new_terms))


@dataclass(frozen=True)
class ChannelCoefficients:
    """Closed-form coefficients of the damped entangled channel.

    With W = exp(-4 t^2 a^2) and the decoherence functional
    gamma_coef = exp(-4 r^2 a^2):

        a_coef = (1 - gamma_coef) W
        b_coef = (1 - gamma_coef) sqrt(W)
        c_coef = 2 - (1 + gamma_coef) W
        d_coef = -2 gamma_coef + (1 + gamma_coef) W
    """

    a_coef: float
    b_coef: float
    c_coef: float
    d_coef: float
    gamma_coef: float

    @classmethod
    def evaluate(cls, alpha: float, r: float) -> "ChannelCoefficients":
        clock = DecayClock.from_r(r)
        t2 = clock.t**2
        g = math.exp(-4.0 * (1.0 - t2) * alpha**2)
        w = math.exp(-4.0 * t2 * alpha**2)
        return cls(
            a_coef=(1.0 - g) * w,
            b_coef=(1.0 - g) * math.sqrt(w),
            c_coef=2.0 - (1.0 + g) * w,
            d_coef=-2.0 * g + (1.0 + g) * w,
            gamma_coef=g,
        )


def decayed_basis(alpha: float, r: float) -> LogicalBasis:
    """Logical basis tracking the damped amplitude t * alpha."""
    return make_basis(alpha, DecayClock.from_r(r).t)


def channel_rho4(alpha: float, r: float) -> TwoQubitDensity:
    """Density matrix of the damped antisymmetric entangled channel.

    Builds the undecayed channel state, damps both modes to normalized time
    ``r``, and projects onto the decayed logical product basis.  All dyad
    amplitudes are +-(t alpha), so the projection is exact and trace
    preserving.
    """
    basis0 = make_basis(alpha, 1.0)
    clock = DecayClock.from_r(r)
    rho = decohere(dyad_from_pure(bell_state(4, basis0)), clock)
    return project_to_density(rho, make_basis(alpha, clock.t))


def closed_form_vst(alpha: float, r: float) -> PauliDecomposition:
    """Closed-form Bloch vectors and correlation matrix of the channel.

    v = s = (b_coef/N_theta, 0, 0) and T is diagonal with entries
    (a+d, -a+d, a-c)/(2 N_theta); N_theta = 1 - exp(-4 alpha^2) is the
    time-independent normalization of the undecayed basis.
    """
    make_basis(alpha, DecayClock.from_r(r).t)  # degeneracy guard
    co = ChannelCoefficients.evaluate(alpha, r)
    n_theta = -math.expm1(-4.0 * alpha**2)
    v = np.array([co.b_coef / n_theta, 0.0, 0.0])
    t_mat = np.diag(
        np.array(
            [
                co.a_coef + co.d_coef,
                -co.a_coef + co.d_coef,
                co.a_coef - co.c_coef,
            ]
        )
        / (2.0 * n_theta)
    )
    return PauliDecomposition(v=v, s=v.copy(), t_matrix=t_mat)
