"""Coherent-state algebra: overlaps, linear optics, Fock oracle."""
import math

import numpy as np
import pytest
from scipy.linalg import expm

from ecsim.coherent_states import (
    CoherentSuperposition,
    CoherentTerm,
    auto_cutoff,
    beam_split,
    consolidate,
    dyad_from_pure,
    fock_inner,
    inner,
    norm,
    normalized,
    operator_trace,
    overlap,
    phase_shift,
    photon_distribution,
    project_modes,
    tensor,
    to_fock,
)
from ecsim.errors import CutoffError, ModeMismatchError

SQ2 = math.sqrt(2.0)


def random_state(rng, modes=1, max_terms=4, max_amp=2.0):
    n = int(rng.integers(1, max_terms + 1))
    terms = []
    for _ in range(n):
        amps = tuple(
            complex(rng.uniform(-max_amp, max_amp), rng.uniform(-max_amp, max_amp))
            / SQ2
            for _ in range(modes)
        )
        terms.append(CoherentTerm(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), amps))
    return CoherentSuperposition(modes, tuple(terms))


class TestOverlap:
    def test_identical(self):
        assert overlap(0.7 + 0.2j, 0.7 + 0.2j) == pytest.approx(1.0, abs=1e-15)

    def test_real_pair(self):
        assert overlap(1.0, -1.0) == pytest.approx(math.exp(-2.0), abs=1e-15)

    def test_hermitian_symmetry(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            g = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            assert overlap(b, g) == pytest.approx(overlap(g, b).conjugate(), abs=1e-14)

    def test_bounded(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            b = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            g = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            assert abs(overlap(b, g)) <= 1.0 + 1e-14

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            CoherentSuperposition.ket(complex("inf"))


class TestInner:
    def test_cancellation(self):
        s = CoherentSuperposition.ket(0.9) - CoherentSuperposition.ket(0.9)
        assert abs(inner(s, s)) < 1e-14

    def test_mode_mismatch(self):
        with pytest.raises(ModeMismatchError):
            inner(CoherentSuperposition.ket(1.0), CoherentSuperposition.ket(1.0, 1.0))

    def test_sesquilinear(self):
        rng = np.random.default_rng(7)
        a = random_state(rng, modes=2)
        b = random_state(rng, modes=2)
        c = 0.3 - 1.2j
        assert inner(a, c * b) == pytest.approx(c * inner(a, b), rel=1e-12)
        assert inner(c * a, b) == pytest.approx(c.conjugate() * inner(a, b), rel=1e-12)


class TestBeamSplit:
    def test_merges_equal_amplitudes(self):
        out = consolidate(beam_split(CoherentSuperposition.ket(0.8, 0.8), 0, 1))
        assert len(out.terms) == 1
        assert out.terms[0].amps[0] == pytest.approx(SQ2 * 0.8, abs=1e-15)
        assert out.terms[0].amps[1] == pytest.approx(0.0, abs=1e-15)

    def test_vacuum_fixed_point(self):
        out = beam_split(CoherentSuperposition.vacuum(2), 0, 1)
        assert all(a == 0 for a in out.terms[0].amps)

    def test_double_application_is_identity(self):
        # The fixed real 50:50 convention is self-inverse term by term.
        rng = np.random.default_rng(8)
        s = random_state(rng, modes=2, max_terms=5)
        twice = beam_split(beam_split(s, 0, 1), 0, 1)
        for ta, tb in zip(s.terms, twice.terms):
            assert ta.coeff == pytest.approx(tb.coeff, abs=1e-15)
            for x, y in zip(ta.amps, tb.amps):
                assert x == pytest.approx(y, abs=1e-14)

    def test_norm_preserved(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            s = random_state(rng, modes=2, max_terms=6)
            before = inner(s, s).real
            after = inner(beam_split(s, 0, 1), beam_split(s, 0, 1)).real
            assert after == pytest.approx(before, abs=1e-12 * max(1.0, before))

    def test_invalid_indices(self):
        s = CoherentSuperposition.ket(1.0, 0.0)
        with pytest.raises(ValueError):
            beam_split(s, 0, 0)
        with pytest.raises(ValueError):
            beam_split(s, 0, 2)

    def test_against_fock_unitary(self):
        # Independent oracle: the same map as a truncated-Fock unitary,
        # a pi/4 two-mode rotation followed by a pi phase on the second
        # output, built from exp(theta (ad b - a bd)) and exp(i pi n).
        cutoff = 30
        dim = cutoff + 1
        a = np.diag(np.sqrt(np.arange(1, dim)), 1)
        ad = a.conj().T
        gen = np.kron(ad, a) - np.kron(a, ad)
        rot = expm((math.pi / 4.0) * gen)
        phase = np.diag(np.exp(1j * math.pi * np.arange(dim)))
        u_bs = np.kron(np.eye(dim), phase) @ rot
        rng = np.random.default_rng(10)
        for _ in range(5):
            s = random_state(rng, modes=2, max_terms=3, max_amp=1.2)
            direct = to_fock(beam_split(s, 0, 1), cutoff).amps.reshape(-1)
            mapped = u_bs @ to_fock(s, cutoff).amps.reshape(-1)
            assert np.max(np.abs(direct - mapped)) < 1e-8


class TestPhaseShift:
    def test_pi_flips_sign(self):
        out = phase_shift(CoherentSuperposition.ket(0.9), 0, math.pi)
        assert out.terms[0].amps[0] == pytest.approx(-0.9, abs=1e-15)

    def test_zero_is_identity(self):
        s = CoherentSuperposition.ket(1.1 + 0.3j)
        out = phase_shift(s, 0, 0.0)
        assert out.terms[0].amps[0] == s.terms[0].amps[0]

    def test_inverse(self):
        rng = np.random.default_rng(11)
        s = random_state(rng, modes=2)
        back = phase_shift(phase_shift(s, 1, 0.77), 1, -0.77)
        for ta, tb in zip(s.terms, back.terms):
            for x, y in zip(ta.amps, tb.amps):
                assert x == pytest.approx(y, abs=1e-12)

    def test_norm_preserved(self):
        rng = np.random.default_rng(12)
        s = random_state(rng, modes=1, max_terms=6)
        before = inner(s, s).real
        after = inner(phase_shift(s, 0, 1.3), phase_shift(s, 0, 1.3)).real
        assert after == pytest.approx(before, abs=1e-12 * max(1.0, before))


class TestFock:
    def test_vacuum(self):
        fv = to_fock(CoherentSuperposition.vacuum(), 10)
        assert fv.amps[0] == pytest.approx(1.0, abs=1e-15)
        assert np.max(np.abs(fv.amps[1:])) == 0.0

    def test_even_state_has_no_odd_support(self):
        alpha = 0.9
        even = CoherentSuperposition.ket(SQ2 * alpha) + CoherentSuperposition.ket(
            -SQ2 * alpha
        )
        fv = to_fock(even, 40)
        assert np.max(np.abs(fv.amps[1::2])) < 1e-15

    def test_norm_matches_analytic_inner(self):
        rng = np.random.default_rng(13)
        for modes in (1, 2):
            for _ in range(10):
                s = random_state(rng, modes=modes, max_terms=4)
                fv = to_fock(s)
                n_fock = float(np.vdot(fv.amps, fv.amps).real)
                n_exact = inner(s, s).real
                assert abs(n_fock - n_exact) <= fv.tail_bound + 1e-12

    def test_cross_inner_within_tail(self):
        rng = np.random.default_rng(14)
        for _ in range(10):
            a = random_state(rng, modes=2, max_terms=3)
            b = random_state(rng, modes=2, max_terms=3)
            cutoff = max(auto_cutoff(a), auto_cutoff(b))
            fa, fb = to_fock(a, cutoff), to_fock(b, cutoff)
            bound = math.sqrt(fa.tail_bound * fb.tail_bound) + 1e-12
            assert abs(fock_inner(fa, fb) - inner(a, b)) <= bound

    def test_cutoff_error_reported(self):
        s = CoherentSuperposition.ket(2.0)
        with pytest.raises(CutoffError):
            to_fock(s, 3, tail_tol=1e-12)

    def test_three_mode_layout(self):
        s = CoherentSuperposition.ket(0.3, 0.0, 0.5)
        fv = to_fock(s, 8)
        assert fv.amps.shape == (9, 9, 9)
        # mode 1 in vacuum: only n1 = 0 occupied
        assert np.max(np.abs(fv.amps[:, 1:, :])) < 1e-15


class TestPhotonDistribution:
    def test_odd_state_even_counts_vanish(self):
        alpha = 0.8
        odd = normalized(
            CoherentSuperposition.ket(SQ2 * alpha)
            - CoherentSuperposition.ket(-SQ2 * alpha)
        )
        dist = photon_distribution(odd)
        assert np.max(dist.probs[0::2]) < 1e-25

    def test_vacuum(self):
        dist = photon_distribution(CoherentSuperposition.vacuum(2))
        assert dist.probs[0, 0] == pytest.approx(1.0, abs=1e-15)
        assert dist.probs.sum() == pytest.approx(1.0, abs=1e-12)

    def test_probabilities_sum_to_one(self):
        rng = np.random.default_rng(15)
        s = normalized(random_state(rng, modes=2, max_terms=4))
        dist = photon_distribution(s)
        assert dist.probs.min() >= 0.0
        assert dist.probs.sum() == pytest.approx(1.0, abs=dist.tail_bound + 1e-10)


class TestHousekeeping:
    def test_consolidate_merges(self):
        s = CoherentSuperposition.ket(0.5) + CoherentSuperposition.ket(0.5)
        out = consolidate(s)
        assert len(out.terms) == 1
        assert out.terms[0].coeff == pytest.approx(2.0)

    def test_consolidate_drops_negligible(self):
        s = CoherentSuperposition.ket(0.5) + 1e-30 * CoherentSuperposition.ket(-0.5)
        assert len(consolidate(s).terms) == 1

    def test_tensor(self):
        two = tensor(CoherentSuperposition.ket(0.9), CoherentSuperposition.ket(-0.9))
        assert two.modes == 2
        assert two.terms[0].amps == (0.9 + 0j, -0.9 + 0j)

    def test_trace_of_pure_dyad(self):
        rng = np.random.default_rng(16)
        s = normalized(random_state(rng, modes=2, max_terms=3))
        assert operator_trace(dyad_from_pure(s)) == pytest.approx(1.0, abs=1e-12)

    def test_project_modes(self):
        # <a|_0 (|a>|b> + |a>|c>) leaves |b> + |c>
        a, b, c = 0.7, -0.2, 1.1
        s = CoherentSuperposition.ket(a, b) + CoherentSuperposition.ket(a, c)
        out = project_modes(s, (0,), CoherentSuperposition.ket(a))
        assert out.modes == 1
        got = sorted((t.amps[0].real, t.coeff.real) for t in out.terms)
        assert got[0][0] == pytest.approx(b)
        assert got[1][0] == pytest.approx(c)
        assert all(abs(w - 1.0) < 1e-12 for _, w in got)

    def test_norm_of_normalized(self):
        rng = np.random.default_rng(17)
        s = normalized(random_state(rng, modes=1, max_terms=5))
        assert norm(s) == pytest.approx(1.0, abs=1e-12)
