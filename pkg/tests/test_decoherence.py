"""Vacuum decoherence: dyad map, channel construction, closed forms."""
import math

import numpy as np
import pytest

from ecsim.coherent_states import (
    dyad_from_pure,
    hermiticity_defect,
    operator_trace,
)
from ecsim.decoherence import (
    ChannelCoefficients,
    DecayClock,
    channel_rho4,
    closed_form_vst,
    decohere,
    decohere_dyad,
)
from ecsim.entanglement_metrics import optimal_fidelity
from ecsim.errors import DegenerateBasisError
from ecsim.qubit_encoding import (
    BELL_VECTORS,
    bell_state,
    make_basis,
    pauli_decompose,
)

SQRT_HALF = 1.0 / math.sqrt(2.0)


class TestDecayClock:
    def test_pythagorean(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            c = DecayClock.from_r(rng.uniform(0.0, 0.999))
            assert c.t**2 + c.r**2 == pytest.approx(1.0, abs=1e-14)

    def test_from_interaction(self):
        c = DecayClock.from_interaction(gamma=0.5, tau=2.0)
        assert c.t == pytest.approx(math.exp(-0.5), abs=1e-15)
        assert c.r == pytest.approx(math.sqrt(1.0 - math.exp(-1.0)), abs=1e-14)

    def test_bounds(self):
        with pytest.raises(ValueError):
            DecayClock(0.0)
        with pytest.raises(ValueError):
            DecayClock.from_r(1.0)


class TestDecohereDyad:
    def test_diagonal_dyad(self):
        clock = DecayClock.from_r(0.4)
        term = decohere_dyad(0.9, 0.9, clock)
        assert term.coeff == pytest.approx(1.0, abs=1e-14)
        assert term.ket_amps[0] == pytest.approx(clock.t * 0.9, abs=1e-15)

    def test_no_decay_is_identity(self):
        term = decohere_dyad(0.7, -0.4, DecayClock(1.0))
        assert term.coeff == pytest.approx(1.0, abs=1e-15)
        assert term.ket_amps[0] == pytest.approx(0.7)
        assert term.bra_amps[0] == pytest.approx(-0.4)

    def test_off_diagonal_value(self):
        # ket a=1, bra -1 at r=0.6: coefficient (e^-2)^(0.36)
        term = decohere_dyad(1.0, -1.0, DecayClock.from_r(0.6))
        assert term.coeff == pytest.approx(math.exp(-2.0) ** 0.36, rel=1e-12)


class TestDecohere:
    def test_identity_at_t1(self):
        b = make_basis(1.0, 1.0)
        op = dyad_from_pure(bell_state(4, b))
        out = decohere(op, DecayClock(1.0))
        for ta, tb in zip(op.terms, out.terms):
            assert ta.coeff == pytest.approx(tb.coeff, abs=1e-14)
            assert ta.ket_amps == tb.ket_amps

    def test_trace_and_hermiticity_preserved(self):
        rng = np.random.default_rng(32)
        b = make_basis(1.2, 1.0)
        op = dyad_from_pure(bell_state(1, b)) + 0.7 * dyad_from_pure(bell_state(3, b))
        for _ in range(10):
            clock = DecayClock.from_r(rng.uniform(0.0, 0.95))
            out = decohere(op, clock)
            assert operator_trace(out) == pytest.approx(
                operator_trace(op), abs=1e-12
            )
            assert hermiticity_defect(out) < 1e-12

    def test_semigroup(self):
        b = make_basis(0.9, 1.0)
        op = dyad_from_pure(bell_state(4, b))
        two = decohere(decohere(op, DecayClock(0.8)), DecayClock(0.7))
        one = decohere(op, DecayClock(0.8 * 0.7))
        for ta, tb in zip(two.terms, one.terms):
            assert ta.coeff == pytest.approx(tb.coeff, abs=1e-12)
            for x, y in zip(ta.ket_amps, tb.ket_amps):
                assert x == pytest.approx(y, abs=1e-14)


class TestChannel:
    def test_pure_at_r0(self):
        rho = channel_rho4(1.0, 0.0)
        b4 = BELL_VECTORS[3]
        assert (b4.conj() @ rho.matrix @ b4).real == pytest.approx(1.0, abs=1e-12)
        eigs = sorted(rho.eigenvalues())
        assert eigs[-1] == pytest.approx(1.0, abs=1e-12)

    def test_characteristic_point_fidelity(self):
        assert optimal_fidelity(channel_rho4(1.0, SQRT_HALF)) == pytest.approx(
            2.0 / 3.0, abs=1e-9
        )

    def test_degeneracy_guard(self):
        with pytest.raises(DegenerateBasisError):
            channel_rho4(1e-7, 0.5)

    def test_local_vectors_nonzero_midway(self):
        # the damped channel is never Bell diagonal at intermediate times
        for alpha in (0.3, 1.0, 2.0):
            for r in (0.2, 0.5, 0.8):
                dec = pauli_decompose(channel_rho4(alpha, r))
                assert np.linalg.norm(dec.v) > 1e-6
                assert np.max(np.abs(dec.v - dec.s)) < 1e-12


class TestClosedForms:
    def test_r0_limits(self):
        co = ChannelCoefficients.evaluate(1.0, 0.0)
        n_theta = 1.0 - math.exp(-4.0)
        assert co.a_coef == 0.0
        assert co.b_coef == 0.0
        assert co.gamma_coef == 1.0
        assert co.c_coef == pytest.approx(2.0 * n_theta, abs=1e-14)
        assert co.d_coef == pytest.approx(-2.0 * n_theta, abs=1e-14)
        vst = closed_form_vst(1.0, 0.0)
        assert np.max(np.abs(vst.t_matrix - np.diag([-1.0, -1.0, -1.0]))) < 1e-14
        assert np.max(np.abs(vst.v)) == 0.0

    @pytest.mark.parametrize("alpha,r", [(1.0, 0.5), (0.1, 0.3), (2.0, 0.8), (1.0, SQRT_HALF)])
    def test_matches_projection(self, alpha, r):
        got = pauli_decompose(channel_rho4(alpha, r))
        want = closed_form_vst(alpha, r)
        assert np.max(np.abs(got.v - want.v)) < 1e-10
        assert np.max(np.abs(got.s - want.s)) < 1e-10
        assert np.max(np.abs(got.t_matrix - want.t_matrix)) < 1e-10

    def test_t_diagonal_structure(self):
        vst = closed_form_vst(0.7, 0.4)
        off = vst.t_matrix - np.diag(np.diag(vst.t_matrix))
        assert np.max(np.abs(off)) == 0.0
