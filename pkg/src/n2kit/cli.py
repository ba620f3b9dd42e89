"""``n2kit`` command line: batch verification runs that emit reports.

Exit status is 0 exactly when the report verdict is ``pass``.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Dict, List, Optional, Sequence

from . import __version__
from .report import FORMATS, Report, element_json, grade_json, rat, word_json, word_text
from .singular import find_singular, verify_embedding_data, verify_vsing
from .spectrum import AdmissibleLevel, admissibility_violation, central_charge, d_curves, lemma_duv_check, s_set, w_set
from .verma import DEFAULT_CUTOFF, CutoffExceeded, Grade, HighestWeight, ModulePresentation, graded_dim_gf

log = logging.getLogger("n2kit")

CUTOFF_ENV = "N2KIT_CUTOFF"


@dataclass
class RunConfig:
    level_cutoff: Fraction = DEFAULT_CUTOFF
    i_max_formula: int = 50
    i_max_solver: int = 1
    paranoid: bool = False
    output_format: str = "json"
    charge_window: int = 1
    scan_level: Optional[Fraction] = None

    def __post_init__(self):
        self.level_cutoff = Fraction(self.level_cutoff)
        if self.level_cutoff < 1 or (2 * self.level_cutoff).denominator != 1:
            raise ValueError("level cutoff must be a half-integer >= 1")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown format {self.output_format!r}")

    def echo(self) -> Dict[str, object]:
        out = asdict(self)
        out["level_cutoff"] = rat(self.level_cutoff)
        out["scan_level"] = None if self.scan_level is None else rat(self.scan_level)
        return out


def resolve_cutoff(flag: Optional[str], environ=os.environ) -> Fraction:
    """The CLI flag wins over ``N2KIT_CUTOFF``, which wins over the default."""
    if flag is not None:
        return Fraction(flag)
    env = environ.get(CUTOFF_ENV)
    if env:
        return Fraction(env)
    return DEFAULT_CUTOFF


# ---------------------------------------------------------------------------
# Commands


def cmd_classify(m_text: str, config: RunConfig) -> Report:
    report = Report("classify", config.echo())
    try:
        t, u = _split_level(m_text)
    except ValueError as exc:
        return _error(report, str(exc))
    if u <= 0:
        return _error(report, "u must be a positive integer")
    problem = admissibility_violation(t, u)
    if problem is not None:
        report.payload = {"t": t, "u": u, "admissible": False, "violated_clause": problem}
        return _error(report, f"{t}/{u} is not admissible: {problem}", keep_payload=True)
    lvl = AdmissibleLevel(t, u)
    points = w_set(lvl)
    payload = {
        "t": t,
        "u": u,
        "m": rat(lvl.m),
        "admissible": True,
        "c": rat(central_charge(lvl)),
        "N": lvl.N,
        "S": [rat(x) for x in s_set(lvl)],
        "W": [{"j": rat(p.j), "k": rat(p.k), "h": rat(p.h), "q": rat(p.q)} for p in points],
        "W_size": len(points),
    }
    table = [{"set": "W", "j": rat(p.j), "k": rat(p.k), "h": rat(p.h), "q": rat(p.q), "r": "", "rhs": ""} for p in points]
    if not lvl.is_integral:
        curves = d_curves(lvl)
        payload["D"] = [{"r": rat(cv.r), "rhs": rat(cv.rhs)} for cv in curves]
        table += [{"set": "D", "j": "", "k": "", "h": "", "q": "", "r": rat(cv.r), "rhs": rat(cv.rhs)} for cv in curves]
    else:
        payload["D"] = None
        # |W| = (m+1)(m+2)/2 for integral m
        payload["W_size_expected"] = (t + 1) * (t + 2) // 2
        if len(points) != payload["W_size_expected"]:
            report.verdict = "fail"
    report.payload = payload
    report.table = table
    return report


def cmd_singular_search(h, q, c, level, charge, config: RunConfig) -> Report:
    report = Report("singular-search", config.echo())
    try:
        hw = HighestWeight.of(Fraction(h), Fraction(q), Fraction(c))
        grade = Grade.of(Fraction(level), int(charge))
        cert = find_singular(hw, grade, paranoid=config.paranoid, cutoff=config.level_cutoff)
    except (ValueError, ZeroDivisionError) as exc:
        return _error(report, str(exc))
    vectors = []
    for v, audit in zip(cert.basis_vectors, cert.audits):
        vectors.append(
            {
                "terms": element_json(v),
                "audit": [{"mode": word_json([m])[0], "zero": r.is_zero()} for m, r in audit.checks],
            }
        )
    report.payload = {
        "hw": {"h": rat(hw.h), "q": rat(hw.q), "c": rat(hw.c)},
        "grade": grade_json(grade),
        "basis_size": len(ModulePresentation.verma(hw, config.level_cutoff).basis(grade)),
        "solution_dim": cert.solution_dim,
        "vectors": vectors,
        "verified": cert.verified,
    }
    report.verdict = "pass" if cert.verified else "fail"
    for n, v in enumerate(cert.basis_vectors):
        for w, x in v.sorted_terms():
            report.table.append({"solution_dim": cert.solution_dim, "vector": n, "word": word_text(w), "coeff": rat(x)})
    if not report.table:
        report.table.append({"solution_dim": 0, "vector": "", "word": "", "coeff": ""})
    return report


def cmd_verify(m, config: RunConfig) -> Report:
    report = Report("verify", config.echo())
    try:
        m = int(m)
        if m < 1:
            raise ValueError("verify needs an integer m >= 1")
        if Fraction(m + 1) > config.level_cutoff:
            raise CutoffExceeded(f"v_sing has level {m + 1}, beyond cutoff {config.level_cutoff}")
    except ValueError as exc:
        return _error(report, str(exc))
    scan = config.scan_level if config.scan_level is not None else Fraction(2 * m + 3, 2)
    scan = min(Fraction(scan), config.level_cutoff)
    checks: List[Dict[str, object]] = []
    payload: Dict[str, object] = {"m": m, "c": rat(central_charge(m)), "scan_level": rat(scan)}

    embedding = []
    try:
        for p in w_set(m):
            rep = verify_embedding_data(
                m, p.j, p.k, scan, config.i_max_solver,
                charge_window=config.charge_window, paranoid=config.paranoid, cutoff=config.level_cutoff,
            )
            predicted = sorted({pw.grade for pw in rep.predicted if pw.level <= scan})
            embedding.append(
                {
                    "j": rat(p.j),
                    "k": rat(p.k),
                    "h": rat(p.h),
                    "q": rat(p.q),
                    "singular_grades": [
                        dict(grade_json(g), dim=d) for g, d in sorted(rep.dims.items()) if d > 0
                    ],
                    "predicted_grades": [grade_json(g) for g in predicted],
                    "missing": [grade_json(g) for g in rep.missing],
                    "unexpected": [grade_json(g) for g in rep.unexpected],
                    "three_generators_ok": rep.generators_ok,
                    "passed": rep.passed,
                }
            )
            checks.append({"check": f"embedding j={rat(p.j)} k={rat(p.k)}", "passed": rep.passed})
    except CutoffExceeded as exc:
        payload["embedding"] = embedding
        report.payload = payload
        return _error(report, str(exc), keep_payload=True)
    payload["embedding"] = embedding

    vs = verify_vsing(m, paranoid=config.paranoid, cutoff=config.level_cutoff)
    payload["vsing"] = {
        "grade": grade_json(vs.grade),
        "nonzero_in_quotient": vs.nonzero_in_quotient,
        "terms_verma": element_json(vs.vector),
        "terms_quotient": element_json(vs.quotient_vector),
        "audit": [{"mode": word_json([mm])[0], "zero": r.is_zero()} for mm, r in vs.audit.checks],
        "passed": vs.passed,
    }
    checks.append({"check": "vsing", "passed": vs.passed})

    lemma = lemma_duv_check(m, config.i_max_formula)
    payload["lemma"] = {
        "i_max": lemma.i_max,
        "checked": lemma.checked,
        "violations": [
            {"j": rat(v.j), "k": rat(v.k), "family": v.weight.family, "i": v.weight.i} for v in lemma.violations
        ],
        "identity_failures": len(lemma.identity_failures),
        "passed": lemma.passed,
    }
    checks.append({"check": "weights outside W", "passed": lemma.passed})

    payload["checks"] = checks
    report.payload = payload
    report.table = [{"check": c["check"], "passed": c["passed"]} for c in checks]
    report.verdict = "pass" if all(c["passed"] for c in checks) else "fail"
    return report


def cmd_dims(h, q, c, max_level, config: RunConfig) -> Report:
    report = Report("dims", config.echo())
    try:
        hw = HighestWeight.of(Fraction(h), Fraction(q), Fraction(c))
        top = Fraction(max_level)
        if top > config.level_cutoff:
            raise CutoffExceeded(f"max level {top} exceeds cutoff {config.level_cutoff}")
        if top < 0 or (2 * top).denominator != 1:
            raise ValueError("max level must be a non-negative half-integer")
    except (ValueError, ZeroDivisionError) as exc:
        return _error(report, str(exc))
    module = ModulePresentation.verma(hw, config.level_cutoff)
    cells = []
    for l2 in range(0, int(2 * top) + 1):
        level = Fraction(l2, 2)
        # a charge-s word needs level >= s^2/2
        reach = isqrt(l2)
        for s in range(-reach, reach + 1):
            g = Grade(level, s)
            pbw = module.graded_dim(g)
            gf = graded_dim_gf(g, config.level_cutoff)
            cells.append({"level": rat(level), "charge": s, "pbw": pbw, "gf": gf, "equal": pbw == gf})
    report.payload = {"hw": {"h": rat(hw.h), "q": rat(hw.q), "c": rat(hw.c)}, "max_level": rat(top), "cells": cells}
    report.table = cells
    report.verdict = "pass" if all(cell["equal"] for cell in cells) else "fail"
    return report


def _split_level(text: str):
    s = text.strip()
    if "/" in s:
        a, b = s.split("/", 1)
        return int(a), int(b)
    return int(s), 1


def _error(report: Report, message: str, keep_payload: bool = False) -> Report:
    report.verdict = "error"
    if keep_payload:
        report.payload["error"] = message
    else:
        report.payload = {"error": message}
    return report


# ---------------------------------------------------------------------------
# Argument parsing


class _Parser(argparse.ArgumentParser):
    """Treats ``-3/1`` and ``-1/2`` as positional numbers, not options."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the report here instead of stdout")
    common.add_argument("--cutoff", default=argparse.SUPPRESS, help=f"level cutoff (env {CUTOFF_ENV}, default 6)")
    common.add_argument("--paranoid", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = _Parser(prog="n2kit", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"n2kit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="admissible level data: c, S, W and D")
    p.add_argument("level", help="admissible level as t/u")

    p = sub.add_parser("singular-search", parents=[common], help="singular vectors of one graded piece")
    for name in ("h", "q", "c", "level"):
        p.add_argument(name)
    p.add_argument("charge", type=int)

    p = sub.add_parser("verify", parents=[common], help="embedding data, v_sing and weight sweep for integral m")
    p.add_argument("m", type=int)
    p.add_argument("--imax", type=int, default=50, help="largest i for weight-formula checks")
    p.add_argument("--imax-solver", type=int, default=1, help="largest i for solver-backed checks")
    p.add_argument("--scan-level", default=None, help="highest level scanned by the solver (default m+3/2)")
    p.add_argument("--charge-window", type=int, default=1, help="scan charges -w..w")

    p = sub.add_parser("dims", parents=[common], help="Verma graded dimensions vs the product formula")
    for name in ("h", "q", "c", "max_level"):
        p.add_argument(name)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    verbose = getattr(args, "verbose", False)
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(levelname)s %(message)s")
    fmt = getattr(args, "format", "json")
    try:
        config = RunConfig(
            level_cutoff=resolve_cutoff(getattr(args, "cutoff", None)),
            i_max_formula=getattr(args, "imax", 50),
            i_max_solver=getattr(args, "imax_solver", 1),
            paranoid=getattr(args, "paranoid", False),
            output_format=fmt,
            charge_window=getattr(args, "charge_window", 1),
            scan_level=Fraction(args.scan_level) if getattr(args, "scan_level", None) else None,
        )
    except ValueError as exc:
        print(f"n2kit: {exc}", file=sys.stderr)
        return 2

    commands: Dict[str, Callable[[], Report]] = {
        "classify": lambda: cmd_classify(args.level, config),
        "singular-search": lambda: cmd_singular_search(args.h, args.q, args.c, args.level, args.charge, config),
        "verify": lambda: cmd_verify(args.m, config),
        "dims": lambda: cmd_dims(args.h, args.q, args.c, args.max_level, config),
    }
    start = time.perf_counter()
    report = commands[args.command]()
    report.meta = {"version": __version__, "elapsed_seconds": round(time.perf_counter() - start, 3)}
    log.info("%s finished in %.3fs: %s", args.command, report.meta["elapsed_seconds"], report.verdict)

    text = report.render(fmt)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.verdict == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
