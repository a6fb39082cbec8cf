"""Command-line front end: ``angle``, ``sweep`` and ``verify``.

Exit status is 0 on success, 1 when a computation or a verification check fails and
2 for invalid flags or out-of-range arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import __version__
from .angle_solver import BracketError, dtheta_dsigma, f_value, solve_theta
from .asymptotics import Regime, expand_at_one, expand_at_zero, slope_check
from .geometry import Disk
from .kernel_integrals import cone_integral, cone_integral_dalpha, log_radial_inner, radial_inner
from .nonlocal_energy_2d import (
    CBAR_2D,
    PlanarScene,
    cbar_radial_oracle,
    halfdisk_audit,
    halfdisk_cancellation,
    halfdisk_F,
    halfdisk_F_closed_form_P,
    s_to_zero_limit_check,
)
from .quadrature import DomainError, QuadratureError, QuadratureSpec
from .special_functions import XI_HALF_PI, kappa1_at_zero, kappa2_at_zero, lemma_h, lemma_H, xi

DEFAULT_S_LIST = (0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99)
SIGMA_EDGE = 0.975
CSV_HEADER = ("s", "sigma", "theta_exact", "theta_at1", "theta_at0")


class UsageError(Exception):
    """Bad input detected after argument parsing; maps to exit status 2."""


# -- angle ------------------------------------------------------------------------


def _spec_from_tol(tol: float | None) -> QuadratureSpec | None:
    if tol is None:
        return None
    if not (0.0 < tol < 1.0):
        raise UsageError(f"--tol must lie in (0, 1), got {tol!r}")
    return QuadratureSpec(abs_tol=tol, rel_tol=tol)


def cmd_angle(args) -> int:
    spec = _spec_from_tol(args.tol)
    try:
        sol = solve_theta(args.s, args.sigma, spec)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        print(json.dumps({"s": args.s, "sigma": args.sigma, "theta": sol.theta, "residual": sol.residual}))
    else:
        print(f"theta      {sol.theta!r} rad")
        print(f"degrees    {sol.degrees!r}")
        print(f"residual   {sol.residual:.3e}")
        print(f"iterations {sol.iterations}")
    return 0


# -- sweep ------------------------------------------------------------------------------


def sigma_grid(count: int) -> list[float]:
    if count < 1:
        raise UsageError("--sigma-count must be at least 1")
    if count == 1:
        return [0.0]
    # integer numerators keep the grid exactly symmetric, with 0 present for odd counts
    m = count - 1
    return [SIGMA_EDGE * (2 * k - m) / m for k in range(count)]


def parse_s_list(text: str) -> list[float]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise UsageError("--s-list is empty")
    try:
        values = sorted({float(t) for t in items})
    except ValueError as exc:
        raise UsageError(f"--s-list: {exc}") from exc
    if any(not (0.0 < v <= 1.0) for v in values):
        raise UsageError("--s-list entries must lie in (0, 1]")
    return values


def _in_range(theta: float) -> float | None:
    # a truncated expansion is reported only while it is a genuine angle
    return theta if 0.0 < theta < math.pi else None


@dataclass(frozen=True)
class SweepRow:
    s: float
    sigma: float
    theta_exact: float
    theta_at1: float | None
    theta_at0: float | None

    def as_list(self):
        return [self.s, self.sigma, self.theta_exact, self.theta_at1, self.theta_at0]


def sweep_row(s: float, sigma: float, spec: QuadratureSpec | None = None) -> SweepRow:
    exact = solve_theta(s, sigma, spec).theta
    return SweepRow(s, sigma, exact, _in_range(expand_at_one(sigma)(s)),
                    _in_range(expand_at_zero(sigma, spec)(s)))


def build_sweep(s_values, sigmas, spec=None, workers: int = 1) -> list[SweepRow]:
    jobs = [(s, sg) for s in sorted(s_values) for sg in sorted(sigmas)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda j: sweep_row(j[0], j[1], spec), jobs))
    return [sweep_row(s, sg, spec) for s, sg in jobs]


def _fmt(v: float | None) -> str:
    return "null" if v is None else format(v, ".17g")


def render_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([_fmt(v) for v in r.as_list()])
    return buf.getvalue()


def read_csv(text: str) -> list[SweepRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected header {header!r}")
    return [SweepRow(*(None if v == "null" else float(v) for v in row)) for row in reader]


def render_json(rows: list[SweepRow], meta: dict) -> str:
    payload = {"meta": meta, "rows": [dict(zip(CSV_HEADER, r.as_list())) for r in rows]}
    return json.dumps(payload, indent=1) + "\n"


def read_json(text: str) -> list[SweepRow]:
    return [SweepRow(**row) for row in json.loads(text)["rows"]]


def _write_atomically(path: str, text: str) -> None:
    tmp = f"{path}.partial"
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def cmd_sweep(args) -> int:
    s_values = parse_s_list(args.s_list)
    sigmas = sigma_grid(args.sigma_count)
    spec = _spec_from_tol(args.tol)
    rows = build_sweep(s_values, sigmas, spec, workers=args.workers)
    if args.format == "csv":
        text = render_csv(rows)
    else:
        tol = spec or QuadratureSpec()
        meta = {"version": __version__, "abs_tol": tol.abs_tol, "rel_tol": tol.rel_tol,
                "s_list": s_values, "sigma_count": len(sigmas),
                "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(
                    int(os.environ.get("SOURCE_DATE_EPOCH", time.time()))))}
        text = render_json(rows, meta)
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return 0
    try:
        _write_atomically(args.out, text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    return 0


# -- verify -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    computed: float
    expected: float
    tol: float
    mode: str = "abs"  # "abs": |computed - expected| <= tol; "gt": computed - expected > tol

    @property
    def gap(self) -> float:
        return self.computed - self.expected if self.mode == "gt" else abs(self.computed - self.expected)

    @property
    def passed(self) -> bool:
        if self.mode == "gt":
            return self.gap > self.tol
        return self.gap <= self.tol


def suite_lemma(tol):
    checks = []
    for alpha in np.linspace(0.15, 0.5 * math.pi, 10):
        ref, _ = integrate.quad(lambda t: log_radial_inner(t, 1.0), 0.0, alpha, epsabs=1e-13, epsrel=1e-13)
        checks.append(Check(f"H({alpha:.4f})", lemma_H(alpha), ref, tol or 1e-8))
    for t in (0.3, 1.0, 2.0):
        checks.append(Check(f"h(cos {t})", lemma_h(math.cos(t)), log_radial_inner(t, 1.0), tol or 1e-8))
    s = 1.0 - 1e-6
    for alpha in (0.4, 1.2, 2.2):
        checks.append(Check(f"I(1,{alpha},s~1)", cone_integral(alpha, s),
                            2 * math.sin(alpha) / (1 + math.cos(alpha)), tol or 1e-4))
        checks.append(Check(f"dI/dalpha({alpha},s~1)", cone_integral_dalpha(alpha, s),
                            2 / (1 + math.cos(alpha)), tol or 1e-4))
    return checks


def suite_kappa(tol):
    checks = [Check("xi(pi/2)", xi(0.5 * math.pi), XI_HALF_PI, tol or 1e-10)]
    for alpha in (0.3, 0.9, 1.5):
        checks.append(Check(f"kappa2({alpha})", kappa2_at_zero(alpha), -2.0 * xi(alpha), tol or 1e-10))
    for t in (0.2, 0.8, 1.4):
        def g(s, t=t):
            return radial_inner(t, s) - 1.0 / s

        checks.append(Check(f"kappa1({t})", kappa1_at_zero(t), 2.0 * g(1e-3) - g(2e-3), tol or 1e-3))
    checks.append(Check("cbar(2)", cbar_radial_oracle(0.05), CBAR_2D, tol or 1e-8))
    return checks


def suite_halfdisk(tol):
    qtol = tol or QuadratureSpec().abs_tol
    checks = []
    for rho in (0.5, 1.0, 2.0):
        for s in (0.2, 0.5, 0.8):
            f_p = halfdisk_F(PlanarScene(rho, s, "P"))
            f_q = halfdisk_F(PlanarScene(rho, s, "Q"))
            checks.append(Check(f"F_P(rho={rho},s={s}) closed form", f_p,
                                halfdisk_F_closed_form_P(rho, s), max(qtol, 1e-10 * f_p)))
            checks.append(Check(f"F_Q - F_P margin (rho={rho},s={s})", f_q, f_p, 10 * qtol, mode="gt"))
    for point in ("P", "Q"):
        c = halfdisk_cancellation(PlanarScene(1.0, 0.5, point))
        checks.append(Check(f"cancellation at {point}", c.lhs, c.rhs, max(qtol, 1e-10 * abs(c.rhs))))
    audit = halfdisk_audit(1.0, 0.5)
    checks.append(Check("F_Q - F_P vs extra regions", audit.difference, audit.extra,
                        max(qtol, 1e-9 * audit.extra)))
    return checks


def suite_szero(tol):
    e, omega = Disk((0.0, 0.0), 0.3), Disk((0.0, 0.0), 1.0)
    rows = s_to_zero_limit_check(e, omega, 0.5, (0.1, 0.05, 0.02, 0.01))
    limit = CBAR_2D * e.area
    checks = []
    for r in rows:
        print(f"  s={r.s:<5g} s*I(E,E^c&Omega)={r.wetting_term:.6f} s*I(E,Omega^c)={r.exterior_term:.6f} "
              f"scaled={r.scaled_energy:.6f} target={r.target:.6f}")
    last = rows[-1]
    checks.append(Check("s*I(E,Omega^c) at s=0.01 vs 2 pi |E|", last.exterior_term, limit, (tol or 0.05) * limit))
    checks.append(Check("s*I(E,E^c&Omega) at s=0.01 vanishing", last.wetting_term, 0.0, (tol or 0.05) * limit))
    gaps = [abs(r.exterior_term - limit) for r in rows]
    checks.append(Check("exterior trend improves (gap ratio first/last)", gaps[0] / gaps[-1], 1.0, 0.0, mode="gt"))
    return checks


def suite_expansions(tol):
    checks = []
    for regime in (Regime.AT_ONE, Regime.AT_ZERO):
        for sigma in (-0.8, -0.4, 0.4, 0.8):
            rows = slope_check(regime, sigma)
            last = rows[-1]
            checks.append(Check(f"slope {regime.value} sigma={sigma}", last.empirical_slope,
                                last.analytic_slope, tol or 1e-2))
            monotone = all(a.gap > b.gap for a, b in zip(rows, rows[1:]))
            checks.append(Check(f"gaps decrease {regime.value} sigma={sigma}", float(monotone), 1.0, 0.0))
    for s in (0.3, 0.7):
        for sigma in (-0.5, 0.5):
            theta = solve_theta(s, sigma).theta
            checks.append(Check(f"residual s={s} sigma={sigma}", f_value(s, theta), 1.0 + sigma, tol or 1e-9))
            checks.append(Check(f"dtheta/dsigma>0 s={s} sigma={sigma}", dtheta_dsigma(s, sigma), 0.0, 0.0, mode="gt"))
    return checks


SUITES = {
    "lemma": suite_lemma,
    "kappa": suite_kappa,
    "halfdisk": suite_halfdisk,
    "szero": suite_szero,
    "expansions": suite_expansions,
}


def cmd_verify(args) -> int:
    tol = args.tol
    if tol is not None and not tol > 0:
        raise UsageError("--tol must be positive")
    checks = SUITES[args.suite](tol)
    width = max(len(c.name) for c in checks)
    print(f"{'check':<{width}}  {'computed':>22}  {'expected':>22}  {'gap':>10}  pass")
    for c in checks:
        print(f"{c.name:<{width}}  {c.computed:>22.15g}  {c.expected:>22.15g}  {c.gap:>10.3e}  "
              f"{'yes' if c.passed else 'NO'}")
    failed = [c for c in checks if not c.passed]
    if failed:
        print(f"FAILED: {failed[0].name} (first of {len(failed)} failing checks)")
        return 1
    print(f"all {len(checks)} checks passed")
    return 0


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fraccap", description="Fractional Young's-law contact angles.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("angle", help="solve for the contact angle theta(s, sigma)")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--tol", type=float, default=None, help="quadrature tolerance (default 1e-10)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_angle)

    p = sub.add_parser("sweep", help="tabulate theta and both truncated expansions")
    p.add_argument("--s-list", default=",".join(str(v) for v in DEFAULT_S_LIST))
    p.add_argument("--sigma-count", type=int, default=81)
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=tuple(SUITES), required=True)
    p.add_argument("--tol", type=float, default=None, help="override every check's tolerance")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BracketError, QuadratureError, RuntimeError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
