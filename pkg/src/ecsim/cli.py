"""Command-line front end: figure data files and protocol experiments.

Every command emits plot-ready records (CSV or JSON) built from the library;
closed-form and numeric columns are emitted side by side.  Identical
configuration and seed give byte-identical output.

Exit codes: 0 success, 2 configuration error, 3 numeric guard tripped,
4 I/O error, 1 failed acceptance report.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import acceptance
from . import decoherence as dec
from . import entanglement_metrics as em
from . import protocols as pr
from . import qubit_encoding as qe
from .errors import CutoffError, DegenerateBasisError


class ConfigError(ValueError):
    pass


DEFAULT_ALPHAS = (0.1, 1.0, 2.0)
DEFAULT_ETAS = (math.pi / 8, math.pi / 6, math.pi / 3)


@dataclass(frozen=True)
class RunConfig:
    command: str
    alphas: tuple[float, ...] = DEFAULT_ALPHAS
    r_min: float = 0.0
    r_max: float = 0.995
    r_steps: int = 200
    cutoff: int | None = None
    seed: int = 12345
    samples: int = 10000
    fmt: str = "csv"
    output: str = "-"
    etas: tuple[float, ...] = DEFAULT_ETAS
    ar_min: float = 0.0
    ar_max: float = 2.0
    ar_steps: int = 201
    property_cases: int = 1000

    def r_grid(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.r_steps)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecsim",
        description="Entangled-coherent-channel sweeps and protocol experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sweep=True):
        p.add_argument("--alphas", type=float, nargs="+", default=list(DEFAULT_ALPHAS))
        if sweep:
            p.add_argument("--r-min", type=float, default=0.0)
            p.add_argument("--r-max", type=float, default=0.995)
            p.add_argument("--r-steps", type=int, default=200)
        p.add_argument("--cutoff", type=int, default=None)
        p.add_argument("--seed", type=int, default=12345)
        p.add_argument("--samples", type=int, default=10000)
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
        p.add_argument("--output", type=str, default="-")

    for name in ("fig2a", "fig2b", "fig3", "teleport-mc"):
        common(sub.add_parser(name))
    common(sub.add_parser("bellmeas"), sweep=False)
    p_conc = sub.add_parser("concentrate")
    common(p_conc, sweep=False)
    p_conc.add_argument("--etas", type=float, nargs="+", default=list(DEFAULT_ETAS))
    p_cv = sub.add_parser("cv")
    common(p_cv, sweep=False)
    p_cv.add_argument("--ar-min", type=float, default=0.0)
    p_cv.add_argument("--ar-max", type=float, default=2.0)
    p_cv.add_argument("--ar-steps", type=int, default=201)
    p_rep = sub.add_parser("report")
    common(p_rep, sweep=False)
    p_rep.add_argument("--property-cases", type=int, default=1000)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    kwargs = dict(
        command=args.command,
        alphas=tuple(args.alphas),
        cutoff=args.cutoff,
        seed=args.seed,
        samples=args.samples,
        fmt=args.fmt,
        output=args.output,
    )
    for name in ("r_min", "r_max", "r_steps", "etas", "ar_min", "ar_max", "ar_steps",
                 "property_cases"):
        if hasattr(args, name):
            val = getattr(args, name)
            kwargs[name] = tuple(val) if isinstance(val, list) else val
    cfg = RunConfig(**kwargs)
    if cfg.command in ("fig2a", "fig2b", "fig3", "teleport-mc"):
        if not (0.0 <= cfg.r_min <= cfg.r_max):
            raise ConfigError("need 0 <= r_min <= r_max")
        if cfg.r_max >= 1.0:
            raise ConfigError("r_max must be < 1")
        if cfg.r_steps < 2:
            raise ConfigError("r_steps must be >= 2")
    if cfg.samples < 1:
        raise ConfigError("samples must be >= 1")
    if any(a <= 0 for a in cfg.alphas):
        raise ConfigError("alphas must be positive")
    if cfg.command == "cv" and cfg.ar_steps < 2:
        raise ConfigError("ar-steps must be >= 2")
    return cfg


# ---------------------------------------------------------------------------
# row builders


def _rows_fig2a(cfg: RunConfig):
    rows = []
    for alpha in cfg.alphas:
        for r in cfg.r_grid():
            rows.append(
                {
                    "alpha": alpha,
                    "r": float(r),
                    "e_closed": em.closed_form_e(alpha, float(r)),
                    "e_numeric": em.negativity_e(dec.channel_rho4(alpha, float(r))),
                }
            )
    return rows


def _rows_fig2b(cfg: RunConfig):
    rows = []
    for alpha in cfg.alphas:
        for r in cfg.r_grid():
            rows.append(
                {
                    "alpha": alpha,
                    "r": float(r),
                    "f_closed": em.closed_form_f(alpha, float(r)),
                    "f_numeric": em.optimal_fidelity(dec.channel_rho4(alpha, float(r))),
                    "classical_limit": 2.0 / 3.0,
                }
            )
    return rows


def _rows_fig3(cfg: RunConfig):
    rows = []
    for alpha in cfg.alphas:
        for r in cfg.r_grid():
            rows.append(
                {
                    "alpha": alpha,
                    "r": float(r),
                    "s_closed": em.closed_form_s(alpha, float(r)),
                    "s_numeric": em.linear_entropy(dec.channel_rho4(alpha, float(r))),
                }
            )
    return rows


def _rows_bellmeas(cfg: RunConfig):
    rows = []
    for alpha in cfg.alphas:
        meas = pr.bell_measure_distribution(
            qe.bell_state(1, qe.make_basis(alpha, 1.0)), cfg.cutoff
        )
        wrong = meas.mass(pr.BellLabel.B3)
        right = meas.mass(pr.BellLabel.B1)
        rows.append(
            {
                "alpha": alpha,
                "p_i_closed": pr.misid_probability_closed(alpha),
                "p_i_numeric": 0.5 * wrong / (wrong + right),
                "tail_bound": meas.tail_bound,
            }
        )
    return rows


def _rows_teleport_mc(cfg: RunConfig):
    rows = []
    idx = 0
    for alpha in cfg.alphas:
        for r in cfg.r_grid():
            rho = dec.channel_rho4(alpha, float(r))
            stats = pr.teleport_average_mc(rho, cfg.samples, cfg.seed + idx)
            rows.append(
                {
                    "alpha": alpha,
                    "r": float(r),
                    "f_analytic": pr.average_fidelity(rho),
                    "f_mc": stats.mean_fidelity,
                    "stderr": stats.stderr,
                    "samples": cfg.samples,
                }
            )
            idx += 1
    return rows


def _rows_concentrate(cfg: RunConfig):
    rows = []
    for alpha in cfg.alphas:
        for eta in cfg.etas:
            ideal = pr.concentrate_ideal(eta)
            exact = pr.concentrate_exact(alpha, eta)
            rows.append(
                {
                    "alpha": alpha,
                    "eta": eta,
                    "p1_swap": ideal.p1,
                    "p2_swap": ideal.p2,
                    "p_ideal_closed": (math.cos(eta) * math.sin(eta)) ** 2,
                    "p2_exact": exact.success_probability,
                    "p2_exact_closed": pr.concentration_success_closed_form(alpha, eta),
                }
            )
    return rows


def _rows_cv(cfg: RunConfig):
    rows = [
        {"alpha_r": float(x), "f": pr.cv_fidelity(float(x)), "is_max": 0}
        for x in np.linspace(cfg.ar_min, cfg.ar_max, cfg.ar_steps)
    ]
    x_star, f_star = pr.cv_max()
    rows.append({"alpha_r": x_star, "f": f_star, "is_max": 1})
    return rows


_ROW_BUILDERS = {
    "fig2a": _rows_fig2a,
    "fig2b": _rows_fig2b,
    "fig3": _rows_fig3,
    "bellmeas": _rows_bellmeas,
    "teleport-mc": _rows_teleport_mc,
    "concentrate": _rows_concentrate,
    "cv": _rows_cv,
}


def _format_value(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def _to_csv(rows) -> str:
    if not rows:
        return "\n"
    cols = list(rows[0].keys())
    lines = [",".join(cols)]
    for row in rows:
        lines.append(",".join(_format_value(row[c]) for c in cols))
    return "\n".join(lines) + "\n"


def _to_json(rows) -> str:
    plain = [
        {k: (int(v) if isinstance(v, (int, np.integer)) else float(v)) for k, v in r.items()}
        for r in rows
    ]
    return json.dumps(plain, indent=2) + "\n"


def _render_report(cfg: RunConfig) -> tuple[str, bool]:
    results = acceptance.run_all(property_cases=cfg.property_cases)
    lines = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        lines.append(f"{status}  {res.check_id:>4}  {res.name}: {res.detail}")
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", n_fail == 0


def render(argv) -> str:
    """Parse arguments and produce the full output text (no I/O)."""
    args = _build_parser().parse_args(argv)
    cfg = _config_from_args(args)
    if cfg.command == "report":
        return _render_report(cfg)[0]
    rows = _ROW_BUILDERS[cfg.command](cfg)
    return _to_csv(rows) if cfg.fmt == "csv" else _to_json(rows)


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        cfg = _config_from_args(args)
    except ConfigError as exc:
        print(f"ecsim: configuration error: {exc}", file=sys.stderr)
        return 2
    all_passed = True
    try:
        if cfg.command == "report":
            text, all_passed = _render_report(cfg)
        else:
            rows = _ROW_BUILDERS[cfg.command](cfg)
            text = _to_csv(rows) if cfg.fmt == "csv" else _to_json(rows)
    except (DegenerateBasisError, CutoffError) as exc:
        print(f"ecsim: numeric guard: {exc}", file=sys.stderr)
        return 3
    try:
        if cfg.output == "-":
            sys.stdout.write(text)
        else:
            with open(cfg.output, "w") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"ecsim: I/O error: {exc}", file=sys.stderr)
        return 4
    return 0 if all_passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
