"""Acceptance suite: every release gate as an executable check.

Each check returns a CheckResult; ``run_all`` evaluates all of them in
order.  The CLI ``report`` command prints one pass/fail line per check and
the pytest acceptance module asserts each one.

Check 8.2 compares the exact swap construction against the closed-form
success probability as originally stated (single normalization power in the
denominator).  The exact construction, an independent truncated-Fock
computation, and the symmetric-pair special case (eta = pi/4, where the
swap probability is exactly 1/4 at every amplitude) all agree on the
squared denominator instead, so 8.2 documents a real discrepancy in the
stated target and is expected to fail; 8.1/8.3 and the corrected form are
verified elsewhere at much tighter tolerance.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import (
    coherent_states as cs,
    decoherence as dec,
    entanglement_metrics as em,
    protocols as pr,
    qubit_encoding as qe,
)

SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    name: str
    passed: bool
    detail: str


def _result(check_id, name, passed, detail="") -> CheckResult:
    return CheckResult(check_id, name, bool(passed), detail)


# ---------------------------------------------------------------------------
# criteria 1-9


def check_zero_time_entanglement() -> CheckResult:
    """At r = 0 the channel is maximally entangled for every amplitude."""
    worst = 0.0
    for alpha in (0.1, 1.0, 2.0):
        e_num = em.negativity_e(dec.channel_rho4(alpha, 0.0))
        e_closed = em.closed_form_e(alpha, 0.0)
        worst = max(worst, abs(e_num - 1.0), abs(e_closed - 1.0))
    return _result(
        "1", "zero-time entanglement", worst <= 1e-10, f"max |E-1| = {worst:.3e}"
    )


def check_oracle_grid() -> CheckResult:
    """Numeric channel construction matches every closed form on a grid."""
    start = time.perf_counter()
    worst_e = 0.0
    worst_vst = 0.0
    for alpha in np.linspace(0.1, 2.0, 20):
        for r in np.linspace(0.0, 0.95, 20):
            rho = dec.channel_rho4(float(alpha), float(r))
            worst_e = max(
                worst_e,
                abs(em.negativity_e(rho) - em.closed_form_e(float(alpha), float(r))),
            )
            got = qe.pauli_decompose(rho)
            want = dec.closed_form_vst(float(alpha), float(r))
            worst_vst = max(
                worst_vst,
                np.max(np.abs(got.v - want.v)),
                np.max(np.abs(got.s - want.s)),
                np.max(np.abs(got.t_matrix - want.t_matrix)),
            )
    elapsed = time.perf_counter() - start
    ok = worst_e <= 1e-9 and worst_vst <= 1e-10 and elapsed < 10.0
    return _result(
        "2",
        "closed-form oracle equivalence (20x20 grid)",
        ok,
        f"|dE|={worst_e:.3e}, |dVST|={worst_vst:.3e}, {elapsed:.2f}s",
    )


def check_characteristic_time() -> CheckResult:
    """Fidelity crosses 2/3 at r = 1/sqrt(2) for every amplitude, and the
    channel stays entangled while useless beyond it."""
    worst = 0.0
    beyond_ok = True
    for alpha in (0.1, 1.0, 2.0):
        worst = max(worst, abs(em.characteristic_time(alpha) - SQRT_HALF))
        for r in (0.75, 0.85, 0.95):
            f = em.closed_form_f(alpha, r)
            e = em.closed_form_e(alpha, r)
            beyond_ok = beyond_ok and (f < 2.0 / 3.0) and (e > 0.0)
    ok = worst <= 1e-9 and beyond_ok
    return _result(
        "3",
        "characteristic time r_c = 1/sqrt(2)",
        ok,
        f"max |r_c - 1/sqrt2| = {worst:.3e}, beyond-r_c behavior ok: {beyond_ok}",
    )


def check_mixedness_peak() -> CheckResult:
    """Mixedness peaks at the characteristic time, by either entropy."""
    worst_lin = 0.0
    worst_vn = 0.0
    for alpha in (0.1, 1.0, 2.0):
        r_lin = em.mixedness_peak(alpha, "linear")
        r_vn = em.mixedness_peak(alpha, "vn")
        worst_lin = max(worst_lin, abs(r_lin - SQRT_HALF))
        worst_vn = max(worst_vn, abs(r_vn - r_lin))
    ok = worst_lin <= 1e-6 and worst_vn <= 1e-6
    return _result(
        "4",
        "mixedness peak at r_c",
        ok,
        f"linear argmax err {worst_lin:.3e}, vn vs linear {worst_vn:.3e}",
    )


def check_entanglement_ordering() -> CheckResult:
    """Larger amplitudes decohere faster at fixed r."""
    vals_closed = [em.closed_form_e(a, 0.5) for a in (2.0, 1.0, 0.1)]
    vals_num = [em.negativity_e(dec.channel_rho4(a, 0.5)) for a in (2.0, 1.0, 0.1)]
    ok = vals_closed[0] < vals_closed[1] < vals_closed[2]
    ok = ok and vals_num[0] < vals_num[1] < vals_num[2]
    return _result(
        "5",
        "entanglement ordering at r = 0.5",
        ok,
        "E(2) < E(1) < E(0.1): " + ", ".join(f"{v:.6f}" for v in vals_closed),
    )


def check_bell_discrimination() -> CheckResult:
    """Photon-counting misidentification matches the closed form; odd-count
    channels are discriminated without cross-label mass."""
    worst = 0.0
    tol = 0.0
    cross_worst = 0.0
    for alpha in (0.5, 1.0, 2.0):
        basis = qe.make_basis(alpha, 1.0)
        meas1 = pr.bell_measure_distribution(qe.bell_state(1, basis))
        wrong = meas1.mass(pr.BellLabel.B3)
        right = meas1.mass(pr.BellLabel.B1)
        p_num = 0.5 * wrong / (wrong + right)
        worst = max(worst, abs(p_num - pr.misid_probability_closed(alpha)))
        tol = max(tol, max(1e-6, meas1.tail_bound))
        for k, own in ((2, pr.BellLabel.B2), (4, pr.BellLabel.B4)):
            meas = pr.bell_measure_distribution(qe.bell_state(k, basis))
            for label in (
                pr.BellLabel.B1,
                pr.BellLabel.B2,
                pr.BellLabel.B3,
                pr.BellLabel.B4,
            ):
                if label is not own:
                    cross_worst = max(cross_worst, meas.mass(label))
    ok = worst <= tol and cross_worst <= 1e-12
    return _result(
        "6",
        "beam-splitter Bell discrimination",
        ok,
        f"|dP_i| = {worst:.3e} (tol {tol:.1e}), cross mass = {cross_worst:.3e}",
    )


def check_teleportation_mc() -> CheckResult:
    """Seeded Monte Carlo agrees with the exact scheme average."""
    details = []
    ok = True
    for i, r in enumerate((0.0, 0.3, SQRT_HALF)):
        rho = dec.channel_rho4(1.0, r)
        analytic = pr.average_fidelity(rho)
        stats = pr.teleport_average_mc(rho, samples=100_000, seed=20_000 + i)
        err = abs(stats.mean_fidelity - analytic)
        tol = max(3.0 * stats.stderr, 1e-12)
        ok = ok and err <= tol
        if r == 0.0:
            ok = ok and abs(analytic - 1.0) <= 1e-12
        details.append(f"r={r:.3f}: |mc-exact|={err:.2e} (3se={3 * stats.stderr:.2e})")
    return _result("7", "teleportation Monte Carlo", ok, "; ".join(details))


def check_concentration_ideal() -> CheckResult:
    """Four-qubit swap reproduces the maximally entangled outcome weights."""
    worst = 0.0
    for eta in (math.pi / 8, math.pi / 6, math.pi / 3):
        res = pr.concentrate_ideal(eta)
        want = (math.cos(eta) * math.sin(eta)) ** 2
        worst = max(worst, abs(res.p1 - want), abs(res.p2 - want))
    return _result(
        "8.1",
        "ideal concentration probabilities",
        worst <= 1e-10,
        f"max |p - cos^2 sin^2| = {worst:.3e}",
    )


def check_concentration_exact_printed_form() -> CheckResult:
    """Exact swap vs the stated closed form (single normalization power).

    Expected to fail: the exact construction carries one normalization
    factor per input pair, so the denominator is squared.  See the
    module docstring; the corrected form is verified at 1e-12 in 8.3's
    companion tests.
    """
    worst = 0.0
    for alpha in (0.5, 1.0, 2.0):
        basis = qe.make_basis(alpha, 1.0)
        u2 = basis.sin2theta**2
        for eta in (math.pi / 8, math.pi / 4, math.pi / 3):
            swap = pr.concentrate_exact(alpha, eta).success_probability
            printed = (
                basis.n_theta**2
                * math.sin(2.0 * eta) ** 2
                / (4.0 * (1.0 - u2 * math.sin(2.0 * eta)))
            )
            worst = max(worst, abs(swap - printed))
    return _result(
        "8.2",
        "exact concentration vs stated closed form",
        worst <= 1e-9,
        f"max deviation = {worst:.3e} (single-power denominator)",
    )


def check_concentration_limits() -> CheckResult:
    """Large- and small-amplitude limits of the exact swap probability."""
    ok = True
    details = []
    for eta in (math.pi / 8, math.pi / 6, math.pi / 3):
        big = pr.concentrate_exact(3.0, eta).success_probability
        want = (math.cos(eta) * math.sin(eta)) ** 2
        ok = ok and abs(big - want) <= 1e-6
        small = pr.concentrate_exact(0.05, eta).success_probability
        ok = ok and small < 1e-3
        details.append(f"eta={eta:.3f}: large err {abs(big - want):.1e}, small {small:.1e}")
    return _result("8.3", "concentration amplitude limits", ok, "; ".join(details))


def check_cv_fidelity() -> CheckResult:
    """Continuous-variable fidelity: value at zero, global bound, maximum."""
    ok = pr.cv_fidelity(0.0) == 0.5
    for x in np.concatenate([np.linspace(0.05, 4.0, 40), -np.linspace(0.05, 4.0, 40)]):
        ok = ok and pr.cv_fidelity(float(x)) > 0.5
    x_star, f_star = pr.cv_max()
    ok = ok and 0.59 <= f_star <= 0.61 and 0.6 <= x_star <= 0.8
    return _result(
        "9",
        "continuous-variable fidelity",
        ok,
        f"f(0)={pr.cv_fidelity(0.0)}, max f={f_star:.6f} at {x_star:.6f}",
    )


# ---------------------------------------------------------------------------
# criterion 10: randomized property suites


def _random_superposition(rng, modes=None, max_terms=6, max_amp=3.0):
    if modes is None:
        modes = int(rng.integers(1, 4))
    n_terms = int(rng.integers(1, max_terms + 1))
    terms = []
    for _ in range(n_terms):
        amps = []
        for _ in range(modes):
            rad = max_amp * math.sqrt(rng.uniform())
            ang = rng.uniform(0.0, 2.0 * math.pi)
            amps.append(rad * complex(math.cos(ang), math.sin(ang)))
        cr = rng.uniform(-1.0, 1.0)
        ci = rng.uniform(-1.0, 1.0)
        terms.append(cs.CoherentTerm(complex(cr, ci), tuple(amps)))
    return cs.CoherentSuperposition(modes, tuple(terms))


def _random_hermitian_operator(rng, modes=2):
    s1 = _random_superposition(rng, modes=modes, max_terms=3)
    s2 = _random_superposition(rng, modes=modes, max_terms=3)
    w = rng.uniform(0.1, 1.0)
    return cs.dyad_from_pure(s1) + w * cs.dyad_from_pure(s2)


def property_gram_positivity(cases=1000, seed=301):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(cases):
        s = _random_superposition(rng)
        n2 = cs.inner(s, s)
        worst = min(worst, n2.real)
        if n2.real < -1e-12 or abs(n2.imag) > 1e-10:
            return False, f"norm^2 = {n2!r}"
    return True, f"min norm^2 = {worst:.3e} over {cases} states"


def property_linear_optics_norm(cases=1000, seed=302):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(cases):
        s = _random_superposition(rng, modes=2)
        before = cs.inner(s, s).real
        split = cs.beam_split(s, 0, 1)
        shifted = cs.phase_shift(s, 1, rng.uniform(0, 2 * math.pi))
        after_bs = cs.inner(split, split).real
        after_ps = cs.inner(shifted, shifted).real
        worst = max(worst, abs(after_bs - before), abs(after_ps - before))
        if worst > 1e-12 * max(1.0, abs(before)):
            return False, f"norm drift {worst:.3e}"
    return True, f"max norm drift = {worst:.3e} over {cases} states"


def property_trace_preservation(cases=1000, seed=303):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(cases):
        op = _random_hermitian_operator(rng, modes=int(rng.integers(1, 3)))
        clock = dec.DecayClock.from_r(rng.uniform(0.0, 0.99))
        before = cs.operator_trace(op)
        after = cs.operator_trace(dec.decohere(op, clock))
        worst = max(worst, abs(after - before))
        if worst > 1e-12 * max(1.0, abs(before)):
            return False, f"trace drift {worst:.3e}"
    return True, f"max trace drift = {worst:.3e} over {cases} operators"


def property_density_validity(cases=1000, seed=304):
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        alpha = rng.uniform(0.1, 2.0)
        r = rng.uniform(0.0, 0.97)
        rho = dec.channel_rho4(alpha, r)  # constructor enforces the invariants
        m = rho.matrix
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            return False, "hermiticity violation"
        if abs(np.trace(m).real - 1.0) > 1e-10:
            return False, "trace violation"
        if np.linalg.eigvalsh(m).min() < -1e-10:
            return False, "negative eigenvalue"
    return True, f"{cases} channel densities validated"


def property_pauli_round_trip(cases=1000, seed=305):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(cases):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        m = g @ g.conj().T
        rho = qe.TwoQubitDensity(m / np.trace(m).real)
        d = qe.pauli_decompose(rho)
        back = qe.pauli_reconstruct(d)
        worst = max(worst, float(np.max(np.abs(back - rho.matrix))))
        if worst > 1e-10:
            return False, f"round-trip error {worst:.3e}"
        if np.linalg.norm(d.v) > 1 + 1e-10 or np.linalg.norm(d.s) > 1 + 1e-10:
            return False, "Bloch vector outside the ball"
    return True, f"max round-trip error = {worst:.3e} over {cases} densities"


def property_semigroup(cases=1000, seed=306):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(cases):
        op = _random_hermitian_operator(rng, modes=int(rng.integers(1, 3)))
        t1 = rng.uniform(0.2, 1.0)
        t2 = rng.uniform(0.2, 1.0)
        two_step = dec.decohere(dec.decohere(op, dec.DecayClock(t1)), dec.DecayClock(t2))
        one_step = dec.decohere(op, dec.DecayClock(t1 * t2))
        for ta, tb in zip(two_step.terms, one_step.terms):
            worst = max(worst, abs(ta.coeff - tb.coeff))
            worst = max(
                worst,
                max(abs(x - y) for x, y in zip(ta.ket_amps, tb.ket_amps)),
                max(abs(x - y) for x, y in zip(ta.bra_amps, tb.bra_amps)),
            )
        if worst > 1e-10:
            return False, f"semigroup defect {worst:.3e}"
    return True, f"max semigroup defect = {worst:.3e} over {cases} operators"


def property_cli_determinism(cases=1000, seed=307):
    from . import cli  # deferred: cli imports this module for `report`

    rng = np.random.default_rng(seed)
    commands = ["fig2a", "fig2b", "fig3", "cv", "teleport-mc", "concentrate", "bellmeas"]
    for i in range(cases):
        cmd = commands[int(rng.integers(0, len(commands)))]
        alpha = f"{rng.uniform(0.4, 1.6):.3f}"
        if cmd in ("fig2a", "fig2b", "fig3"):
            argv = [cmd, "--alphas", alpha, "--r-steps", "2", "--r-max", "0.9"]
        elif cmd == "cv":
            argv = [cmd, "--ar-steps", "3"]
        elif cmd == "teleport-mc":
            argv = [
                cmd, "--alphas", "1.0", "--r-steps", "2", "--r-max", "0.6",
                "--samples", str(int(rng.integers(3, 20))),
                "--seed", str(int(rng.integers(0, 2**31))),
            ]
        elif cmd == "concentrate":
            argv = [cmd, "--alphas", alpha, "--etas", f"{rng.uniform(0.2, 1.3):.3f}"]
        else:
            argv = [cmd, "--alphas", alpha, "--cutoff", "40"]
        if rng.uniform() < 0.5:
            argv += ["--format", "json"]
        first = cli.render(argv)
        second = cli.render(argv)
        if first != second:
            return False, f"case {i}: {' '.join(argv)} not byte-identical"
    return True, f"{cases} randomized configs byte-identical on repeat"


_PROPERTY_CHECKS = (
    ("10.1", "gram positivity", property_gram_positivity),
    ("10.2", "linear-optics norm preservation", property_linear_optics_norm),
    ("10.3", "decoherence trace preservation", property_trace_preservation),
    ("10.4", "density hermiticity/positivity", property_density_validity),
    ("10.5", "Pauli round trip", property_pauli_round_trip),
    ("10.6", "decoherence semigroup law", property_semigroup),
    ("10.7", "CLI determinism", property_cli_determinism),
)


def run_property_suite(cases=1000):
    """Run all randomized suites; returns results plus total runtime check."""
    results = []
    total = 0.0
    for check_id, name, fn in _PROPERTY_CHECKS:
        start = time.perf_counter()
        passed, detail = fn(cases=cases)
        elapsed = time.perf_counter() - start
        total += elapsed
        results.append(_result(check_id, name, passed, f"{detail} [{elapsed:.1f}s]"))
    results.append(
        _result(
            "10.8",
            "property-suite runtime",
            total < 60.0,
            f"total {total:.1f}s for {cases} cases per suite",
        )
    )
    return results


def run_all(property_cases=1000) -> list[CheckResult]:
    """Evaluate every acceptance check in order."""
    results = [
        check_zero_time_entanglement(),
        check_oracle_grid(),
        check_characteristic_time(),
        check_mixedness_peak(),
        check_entanglement_ordering(),
        check_bell_discrimination(),
        check_teleportation_mc(),
        check_concentration_ideal(),
        check_concentration_exact_printed_form(),
        check_concentration_limits(),
        check_cv_fidelity(),
    ]
    results.extend(run_property_suite(cases=property_cases))
    return results
