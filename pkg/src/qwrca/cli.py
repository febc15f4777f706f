"""
Command-line front end.

    qwrca qw       --theta-frac 1/4 --qubit 0.7071067812 0 0 0.7071067812 --steps 100
    qwrca rca      --theta 0.7853981634 --triple 1 0 0.7071067812 0 0 0 --steps 3
    qwrca classify --theta-frac 1/4 --triple ... --c 0.5
    qwrca norms | limits ...
    qwrca verify   --seed 42
    qwrca sweep    --mode limits --theta-fracs 1/6 1/4 1/3 --qubit 1 0 0 0
    qwrca run      --config run.json

Exit status: 0 success, 1 verification or sweep-cell failure, 2 bad usage/config.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import jsonschema
import numpy as np

from .coin_and_state import InitialTriple, Qubit, UnitaryCoin, check_theta, make_qubit, make_theta_coin
from .qw_engine import chirality_limits, chirality_norms, iter_qw_states, qw_to_rca_triple
from .rca_engine import (
    RcaCoefficients,
    closed_moments,
    first_moment,
    iter_rca_rows,
    small_n_norms,
    squared_norm,
)
from .records import qw_records, rca_records, rows_to_csv, write_records
from .spectral import closed_form_norm, norm_limit, parseval_norm
from .state_classes import (
    TheoremReport,
    empirical_conserved,
    empirical_symmetric,
    empirical_zero_moment,
    in_phi_perp,
    in_phi_star,
    phi_star_residuals,
)
from .verification import LIMIT_WINDOW, run_suite, windowed_mean

MODES = ("qw", "rca", "classify", "norms", "limits", "verify")
# decimal text like 0.7071067812 carries ~1e-11 error in |alpha|^2
CLI_QUBIT_TOL = 1e-9
DEFAULT_STEPS = {"qw": 10, "rca": 10, "classify": 100, "norms": 10, "limits": 0, "verify": 0}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    mode: str
    theta: float | None = None
    coin: UnitaryCoin | None = None
    qubit: Qubit | None = None
    triple: InitialTriple | None = None
    chirality: str | None = None
    steps: int | None = None
    c: float | None = None
    seed: int = 0
    quick: bool = False
    output_path: str | None = None
    format: str = "csv"

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"mode": self.mode, "theta": self.theta}
        if self.coin is not None:
            out["coin"] = [_pair(z) for z in (self.coin.a, self.coin.b, self.coin.c, self.coin.d)]
        if self.qubit is not None:
            out["initial"] = {"qubit": [_pair(z) for z in self.qubit]}
        if self.triple is not None:
            out["initial"] = {"triple": [_pair(z) for z in self.triple]}
        for key in ("chirality", "steps", "c", "seed"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _complex(pair: Sequence[float]) -> complex:
    return complex(pair[0], pair[1])


def load_schema(name: str) -> dict:
    return json.loads(resources.files("qwrca").joinpath("schemas", name).read_text())


def parse_theta_frac(text: str) -> float:
    """'1/4' -> π/4."""
    try:
        return float(Fraction(text)) * math.pi
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"invalid --theta-frac {text!r}") from exc


def config_from_mapping(data: dict, qubit_tol: float = CLI_QUBIT_TOL) -> RunConfig:
    """Validate a JSON config against the shipped schema and build a RunConfig."""
    try:
        jsonschema.validate(data, load_schema("config.schema.json"))
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"invalid config: {exc.message}") from exc
    qubit_tol = data.get("qubit_tol", qubit_tol)
    theta = data.get("theta")
    if "theta_frac" in data:
        theta = parse_theta_frac(data["theta_frac"])
    coin = UnitaryCoin(*map(_complex, data["coin"])) if "coin" in data else None
    qubit = triple = None
    initial = data.get("initial", {})
    try:
        if "qubit" in initial:
            qubit = make_qubit(*map(_complex, initial["qubit"]), tol=qubit_tol)
        if "triple" in initial:
            triple = InitialTriple(*map(_complex, initial["triple"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return RunConfig(
        mode=data.get("mode", "verify"),
        theta=theta,
        coin=coin,
        qubit=qubit,
        triple=triple,
        chirality=data.get("chirality"),
        steps=data.get("steps"),
        c=data.get("c"),
        seed=data.get("seed", 0),
        quick=data.get("quick", False),
        output_path=data.get("output_path"),
        format=data.get("format", "csv"),
    )


# --------------------------------------------------------------------------- #
# mode implementations; each returns a JSON-ready document
# --------------------------------------------------------------------------- #


def _need_theta(cfg: RunConfig, open_interval: bool) -> float:
    if cfg.theta is None:
        raise ConfigError(f"mode {cfg.mode!r} needs --theta or --theta-frac")
    try:
        return check_theta(cfg.theta, open_interval=open_interval)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _coin(cfg: RunConfig) -> UnitaryCoin:
    if cfg.coin is not None:
        return cfg.coin
    return make_theta_coin(_need_theta(cfg, open_interval=False))


def _need_qubit(cfg: RunConfig) -> Qubit:
    if cfg.qubit is None:
        raise ConfigError(f"mode {cfg.mode!r} needs a qubit initial state")
    return cfg.qubit


def _need_triple(cfg: RunConfig) -> InitialTriple:
    if cfg.triple is not None:
        return cfg.triple
    if cfg.qubit is None:
        raise ConfigError(f"mode {cfg.mode!r} needs a triple, or a qubit with --chirality")
    if cfg.chirality not in ("left", "right"):
        raise ConfigError("converting a qubit to a triple needs --chirality left|right")
    return qw_to_rca_triple(cfg.qubit, _coin(cfg), cfg.chirality)


def run_qw(cfg: RunConfig) -> dict:
    coin = _coin(cfg)
    steps, records, distribution = [], [], []
    for st in iter_qw_states(_need_qubit(cfg), coin, cfg.steps):
        norms = chirality_norms(st)
        lo, hi = st.left_row.lo, st.left_row.hi
        prob = np.abs(st.left_row.window(lo, hi)) ** 2 + np.abs(st.right_row.window(lo, hi)) ** 2
        sites = np.arange(lo, hi + 1)
        steps.append({
            "n": st.time,
            "left_sq": norms.left_sq,
            "right_sq": norms.right_sq,
            "total": norms.total,
            "mean_position": float(np.sum(sites * prob)),
            "max_asymmetry": float(np.max(np.abs(prob - prob[::-1]))) if -lo == hi else math.nan,
        })
        records.extend(qw_records(st))
        distribution.extend(
            {"n": st.time, "k": int(k), "prob": float(p)} for k, p in zip(sites, prob)
        )
    return {"mode": "qw", "config": cfg.to_dict(), "steps": steps,
            "records": records, "distribution": distribution}


def run_rca(cfg: RunConfig) -> dict:
    triple = _need_triple(cfg)
    coeffs = (
        RcaCoefficients.from_coin(cfg.coin)
        if cfg.coin is not None
        else RcaCoefficients.from_theta(_need_theta(cfg, open_interval=False))
    )
    steps, records = [], []
    for n, row in enumerate(iter_rca_rows(triple, coeffs, cfg.steps)):
        steps.append({"n": n, "norm_sq": squared_norm(row), "first_moment": first_moment(row)})
        records.extend(rca_records(n, row))
    return {"mode": "rca", "config": cfg.to_dict(), "steps": steps, "records": records}


def run_classify(cfg: RunConfig) -> dict:
    theta = _need_theta(cfg, open_interval=True)
    triple = _need_triple(cfg)
    c = abs(triple.alpha) ** 2 if cfg.c is None else cfg.c
    perp = in_phi_perp(triple)
    star = in_phi_star(triple, c, theta)
    sym_ok, sym_v = empirical_symmetric(triple, theta, cfg.steps)
    mom_ok, mom_v = empirical_zero_moment(triple, theta, cfg.steps)
    con_ok, con_v = empirical_conserved(triple, theta, c, cfg.steps)
    m1, m2, m3 = closed_moments(triple, theta)
    row = {
        "theta": theta,
        "c": c,
        "in_phi_perp": perp,
        "in_phi_star": star,
        **{f"residual_{k}": v for k, v in phi_star_residuals(triple, c, theta).items()},
        "empirical_symmetric": sym_ok,
        "symmetric_violation": sym_v,
        "empirical_zero_moment": mom_ok,
        "moment_violation": mom_v,
        "empirical_conserved": con_ok,
        "conservation_violation": con_v,
        "m1": m1, "m2": m2, "m3": m3,
        **{f"norm_sq_{i}": v for i, v in enumerate(small_n_norms(triple, theta))},
        "steps_checked": cfg.steps,
    }
    reports = [
        TheoremReport(triple, perp, sym_ok and mom_ok, max(sym_v, mom_v), cfg.steps, cfg.seed),
        TheoremReport(triple, star, con_ok, con_v, cfg.steps, cfg.seed),
    ]
    return {"mode": "classify", "config": cfg.to_dict(), "steps": [row],
            "theorem_reports": [r.to_dict() for r in reports]}


def run_norms(cfg: RunConfig) -> dict:
    theta = _need_theta(cfg, open_interval=True)
    triple = _need_triple(cfg)
    steps = []
    for n, row in enumerate(iter_rca_rows(triple, theta, cfg.steps)):
        dec = closed_form_norm(triple, theta, n)
        steps.append({
            "n": n,
            "direct": squared_norm(row),
            "parseval": parseval_norm(triple, theta, n),
            "steady": dec.steady,
            "oscillatory": dec.oscillatory,
            "closed_form": dec.total,
            "quadrature_error": dec.error_estimate,
        })
    return {"mode": "norms", "config": cfg.to_dict(), "steps": steps}


def run_limits(cfg: RunConfig) -> dict:
    theta = _need_theta(cfg, open_interval=True)
    simulate = cfg.steps >= LIMIT_WINDOW
    start = cfg.steps - LIMIT_WINDOW + 1
    row: dict[str, Any] = {"theta": theta}
    if cfg.qubit is not None and cfg.triple is None:
        coin = make_theta_coin(theta)
        left, right = chirality_limits(cfg.qubit, theta)
        row.update(
            left_limit=left,
            right_limit=right,
            left_norm_limit=norm_limit(qw_to_rca_triple(cfg.qubit, coin, "left"), theta),
            right_norm_limit=norm_limit(qw_to_rca_triple(cfg.qubit, coin, "right"), theta),
        )
        if simulate:
            norms = [chirality_norms(s) for s in iter_qw_states(cfg.qubit, coin, cfg.steps)]
            row["left_window_mean"] = windowed_mean([x.left_sq for x in norms], start)
            row["right_window_mean"] = windowed_mean([x.right_sq for x in norms], start)
    else:
        triple = _need_triple(cfg)
        row["norm_limit"] = norm_limit(triple, theta)
        if simulate:
            sq = [squared_norm(r) for r in iter_rca_rows(triple, theta, cfg.steps)]
            row["window_mean"] = windowed_mean(sq, start)
    return {"mode": "limits", "config": cfg.to_dict(), "steps": [row]}


def run_verify(cfg: RunConfig) -> dict:
    results = run_suite(cfg.seed, cfg.quick)
    return {
        "mode": "verify",
        "seed": cfg.seed,
        "quick": cfg.quick,
        "passed": all(r.passed for r in results),
        "checks": [r.to_dict() for r in results],
    }


RUNNERS = {
    "qw": run_qw,
    "rca": run_rca,
    "classify": run_classify,
    "norms": run_norms,
    "limits": run_limits,
    "verify": run_verify,
}


def execute(cfg: RunConfig) -> dict:
    if cfg.mode not in RUNNERS:
        raise ConfigError(f"unknown mode {cfg.mode!r}")
    if cfg.steps is None:
        cfg = replace(cfg, steps=DEFAULT_STEPS[cfg.mode])
    if cfg.steps < 0:
        raise ConfigError("steps must be non-negative")
    if cfg.qubit is not None and cfg.triple is not None:
        raise ConfigError("give either a qubit or a triple, not both")
    return RUNNERS[cfg.mode](cfg)


# --------------------------------------------------------------------------- #
# emission
# --------------------------------------------------------------------------- #


def _jsonable(doc: dict) -> dict:
    out = dict(doc)
    if "records" in out:
        out["records"] = [vars(r) for r in out["records"]]
    return out


def emit(doc: dict, fmt: str, out: str | None) -> None:
    """
    JSON: one document. CSV: the per-step table goes to ``out`` (or stdout);
    trajectory records and the walk distribution go to ``<stem>_records.csv``
    and ``<stem>_distribution.csv`` next to it.
    """
    if fmt == "json":
        text = json.dumps(_jsonable(doc), indent=1) + "\n"
        if out:
            Path(out).write_text(text)
        else:
            sys.stdout.write(text)
        return
    table = doc["checks"] if doc["mode"] == "verify" else doc["steps"]
    text = rows_to_csv(table)
    if not out:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.write_text(text)
    if "records" in doc:
        write_records(doc["records"], path.with_name(f"{path.stem}_records.csv"), "csv")
    if "distribution" in doc:
        path.with_name(f"{path.stem}_distribution.csv").write_text(
            rows_to_csv(doc["distribution"], ["n", "k", "prob"])
        )


# --------------------------------------------------------------------------- #
# sweep
# --------------------------------------------------------------------------- #


def _run_cell(cfg: RunConfig) -> tuple[str, list[dict]]:
    try:
        return "ok", execute(cfg)["steps"]
    except Exception as exc:  # recorded per cell
        return f"error: {exc}", []


def sweep(
    base: RunConfig,
    thetas: Sequence[float],
    initials: Sequence[tuple[str, Qubit | InitialTriple]],
    jobs: int | None = None,
) -> tuple[list[dict], bool]:
    """
    Run ``base.mode`` over the cross product of angles and initial states.

    Returns the aggregated rows (one per θ, initial state and step row) and
    whether every cell succeeded.
    """
    if not thetas:
        raise ConfigError("sweep needs at least one theta")
    if not initials:
        raise ConfigError("sweep needs at least one initial state")
    if base.mode == "verify":
        raise ConfigError("verify cannot be swept")
    cells = []
    for theta in thetas:
        for label, init in initials:
            if isinstance(init, Qubit):
                cfg = replace(base, theta=theta, qubit=init, triple=None)
            else:
                cfg = replace(base, theta=theta, qubit=None, triple=init)
            cells.append((theta, label, cfg))
    jobs = jobs or min(len(cells), os.cpu_count() or 1)
    configs = [cfg for _, _, cfg in cells]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_cell, configs))
    else:
        outcomes = [_run_cell(cfg) for cfg in configs]
    rows: list[dict] = []
    ok = True
    for (theta, label, _), (status, steps) in zip(cells, outcomes):
        ok &= status == "ok"
        if not steps:
            rows.append({"theta": theta, "initial": label, "status": status})
        for step in steps:
            rows.append({"theta": theta, "initial": label, "status": status, **step})
    return rows, ok


# --------------------------------------------------------------------------- #
# argument parsing
# --------------------------------------------------------------------------- #


def _common_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", type=Path, help="JSON config file (flags override it)")
    p.add_argument("--coin", type=float, nargs=8, metavar="X",
                   help="explicit coin a b c d as re/im pairs")
    p.add_argument("--chirality", choices=("left", "right"))
    p.add_argument("--steps", type=int)
    p.add_argument("--c", type=float, help="conserved constant for classify")
    p.add_argument("--seed", type=int)
    p.add_argument("--quick", action="store_true", default=None,
                   help="verify: reduced sample counts")
    p.add_argument("--qubit-tol", type=float, default=None,
                   help=f"qubit normalization tolerance (default {CLI_QUBIT_TOL:g})")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", help="output path (default stdout)")
    return p


def _single_options(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--theta", type=float, help="coin angle in radians")
    g.add_argument("--theta-frac", help="coin angle as a fraction of pi, e.g. 1/4")
    init = p.add_mutually_exclusive_group()
    init.add_argument("--qubit", type=float, nargs=4, metavar="X",
                      help="alpha_l, alpha_r as re im re im")
    init.add_argument("--triple", type=float, nargs=6, metavar="X",
                      help="alpha, beta, gamma as re im pairs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwrca", description="Quantum walks and the reversible cellular automaton."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options()
    for mode in MODES:
        _single_options(sub.add_parser(mode, parents=[common]))
    _single_options(sub.add_parser("run", parents=[common], help="mode taken from --config"))

    sw = sub.add_parser("sweep", parents=[common], help="cross-product parameter sweep")
    sw.add_argument("--mode", required=True, choices=MODES[:-1])
    sw.add_argument("--thetas", type=float, nargs="*", default=[])
    sw.add_argument("--theta-fracs", nargs="*", default=[])
    sw.add_argument("--qubit", type=float, nargs=4, action="append", default=[], metavar="X")
    sw.add_argument("--triple", type=float, nargs=6, action="append", default=[], metavar="X")
    sw.add_argument("--jobs", type=int, default=None)
    return parser


def _pairs(values: Sequence[float]) -> list[complex]:
    return [complex(values[i], values[i + 1]) for i in range(0, len(values), 2)]


def config_from_args(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.config is not None:
        try:
            data = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    if args.command not in ("run", "sweep"):
        if data.get("mode", args.command) != args.command:
            raise ConfigError(f"config mode {data['mode']!r} conflicts with {args.command!r}")
        data["mode"] = args.command
    elif args.command == "sweep":
        data["mode"] = args.mode
    elif "mode" not in data:
        raise ConfigError("run needs a config with a mode")

    if args.command != "sweep":
        if args.theta is not None or args.theta_frac is not None:
            data.pop("theta", None)
            data.pop("theta_frac", None)
        if args.theta is not None:
            data["theta"] = args.theta
        if args.theta_frac is not None:
            data["theta_frac"] = args.theta_frac
        if args.qubit is not None:
            data["initial"] = {"qubit": [[z.real, z.imag] for z in _pairs(args.qubit)]}
        if args.triple is not None:
            data["initial"] = {"triple": [[z.real, z.imag] for z in _pairs(args.triple)]}
    if args.coin is not None:
        data["coin"] = [[z.real, z.imag] for z in _pairs(args.coin)]
    for key, value in (("chirality", args.chirality), ("steps", args.steps), ("c", args.c),
                       ("seed", args.seed), ("quick", args.quick), ("qubit_tol", args.qubit_tol),
                       ("format", args.format), ("output_path", args.out)):
        if value is not None:
            data[key] = value
    return config_from_mapping(data)


def _sweep_command(args: argparse.Namespace, base: RunConfig) -> int:
    thetas = list(args.thetas) + [parse_theta_frac(t) for t in args.theta_fracs]
    tol = args.qubit_tol or CLI_QUBIT_TOL
    initials: list[tuple[str, Qubit | InitialTriple]] = []
    try:
        for i, q in enumerate(args.qubit):
            initials.append((f"qubit:{i}", make_qubit(*_pairs(q), tol=tol)))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    for i, t in enumerate(args.triple):
        initials.append((f"triple:{i}", InitialTriple(*_pairs(t))))
    if not initials:
        if base.qubit is not None:
            initials.append(("qubit:0", base.qubit))
        elif base.triple is not None:
            initials.append(("triple:0", base.triple))
    rows, ok = sweep(base, thetas, initials, args.jobs)
    if base.format == "json":
        text = json.dumps({"mode": "sweep", "sweep_mode": base.mode, "rows": rows}, indent=1) + "\n"
    else:
        text = rows_to_csv(rows)
    if base.output_path:
        Path(base.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        if args.command == "sweep":
            return _sweep_command(args, cfg)
        doc = execute(cfg)
        emit(doc, cfg.format, cfg.output_path)
    except ValueError as exc:  # ConfigError and engine argument checks
        print(f"qwrca: error: {exc}", file=sys.stderr)
        return 2
    if doc["mode"] == "verify":
        for check in doc["checks"]:
            status = "PASS" if check["passed"] else "FAIL"
            print(f"[{status}] {check['id']:2d} {check['name']}", file=sys.stderr)
        return 0 if doc["passed"] else 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
