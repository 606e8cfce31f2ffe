"""Command-line interface.

Commands: analyze, core, classify, naimark, double, construct, catalog,
check.  Frame files are read from a path argument or stdin ("-"), and
``construct``/``naimark``/``double`` write the same structured format that
the other commands read, so shell pipelines compose.  Exit codes: 0
success, 1 usage, 2 parse/validation, 3 numerical failure, 4 check-suite
failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import constructions
from .coreanalysis import (
    classify_vector,
    core,
    eigen_span_diagnostic,
    isolable_set,
    tight_grassmannian_diagnostic,
    validate_core,
)
from .errors import NumericalError, ValidationError
from .frames import (
    UnitVectorSystem,
    frame_operator,
    gram,
    is_etf,
    neighbor_count_report,
    reconstruct,
    spans,
    tightness,
    welch_bound,
)
from .frameio import emit_frame, parse_frame_with_overrides, round15
from .numerics import Tolerances
from .report import (
    build_analysis_report,
    core_trace_dict,
    emit_report,
    tolerances_dict,
    verdict_dict,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_CHECK_FAILED = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage problems, not argparse's 2
        raise _UsageError(message)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-eq", type=float, default=None, help="absolute equality tolerance")
    common.add_argument(
        "--tol-neighbor", type=float, default=None, help="neighbor membership tolerance"
    )
    common.add_argument(
        "--tol-hull", type=float, default=None, help="zero threshold for hull points"
    )
    common.add_argument(
        "--format", choices=("json", "text"), default="json", help="output format"
    )
    common.add_argument("--out", default=None, help="write output to this path")

    parser = _Parser(prog="framecore", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full analysis report")
    p.add_argument("file", nargs="?", default="-")
    p = sub.add_parser("core", parents=[common], help="core extraction trace")
    p.add_argument("file", nargs="?", default="-")
    p = sub.add_parser("classify", parents=[common], help="per-vector verdicts")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--index", type=int, default=None, help="classify only this vector")
    p = sub.add_parser("naimark", parents=[common], help="complementary system")
    p.add_argument("file", nargs="?", default="-")
    p = sub.add_parser("double", parents=[common], help="doubled system in R^{2n}")
    p.add_argument("file", nargs="?", default="-")
    p = sub.add_parser("construct", parents=[common], help="emit a catalog frame")
    p.add_argument(
        "name", choices=("circular", "six_in_r4", "mub_r2", "simplex"), help="construction"
    )
    p.add_argument("--m", type=int, default=None, help="vector count (circular)")
    p.add_argument("--n", type=int, default=None, help="dimension (simplex)")
    p = sub.add_parser("catalog", parents=[common], help="exactly known packing angles")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("check", parents=[common], help="invariant suite for one file")
    p.add_argument("file", nargs="?", default="-")
    return parser


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None


def _load(args) -> tuple[UnitVectorSystem, Tolerances]:
    system, overrides = parse_frame_with_overrides(_read_source(args.file))
    values = dict(Tolerances().__dict__)
    values.update(overrides)
    if args.tol_eq is not None:
        values["eq_abs"] = args.tol_eq
    if args.tol_neighbor is not None:
        values["neighbor_abs"] = args.tol_neighbor
    if args.tol_hull is not None:
        values["hull_abs"] = args.tol_hull
    try:
        return system, Tolerances(**values)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None


def _write(args, payload: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _emit(args, report: dict, text_renderer=None) -> None:
    if args.format == "json":
        _write(args, json.dumps(report, indent=2) + "\n")
    else:
        if text_renderer is None:
            _write(args, json.dumps(report, indent=2) + "\n")
        else:
            _write(args, text_renderer(report))


def _cmd_analyze(args) -> int:
    system, tol = _load(args)
    report = build_analysis_report(system, tol)
    _write(args, emit_report(report, args.format))
    return EXIT_OK


def _cmd_core(args) -> int:
    system, tol = _load(args)
    trace = core(system, tol)
    payload = {"tolerances": tolerances_dict(tol), **core_trace_dict(trace)}

    def text(rep: dict) -> str:
        lines = []
        for k, level in enumerate(rep["levels"]):
            lines.append(
                f"level {k}: members={level['members']} removed={level['removed']} "
                f"coherence={level['coherence']}"
            )
        lines.append(f"core: {rep['core']}")
        for w in rep["warnings"]:
            lines.append(f"warning: {w}")
        return "\n".join(lines) + "\n"

    _emit(args, payload, text)
    return EXIT_OK


def _cmd_classify(args) -> int:
    system, tol = _load(args)
    if args.index is not None:
        if not 0 <= args.index < system.size:
            raise ValidationError(
                f"--index {args.index} out of range for {system.size} vectors"
            )
        verdicts = [classify_vector(system, args.index, tol)]
    else:
        verdicts = list(isolable_set(system, tol).verdicts)
    payload = {
        "tolerances": tolerances_dict(tol),
        "verdicts": [verdict_dict(v) for v in verdicts],
    }

    def text(rep: dict) -> str:
        lines = []
        for v in rep["verdicts"]:
            lines.append(
                f"[{v['index']}] {v['status']} (neighbors={v['neighbor_count']}, "
                f"neighbor_rank={v['neighbor_rank']})"
            )
            for w in v["warnings"]:
                lines.append(f"    warning: {w}")
        return "\n".join(lines) + "\n"

    _emit(args, payload, text)
    return EXIT_OK


def _cmd_naimark(args) -> int:
    system, tol = _load(args)
    complement, lam, k = constructions.naimark_complement(system, tol)
    _write(args, emit_frame(complement))
    coh_in = gram(system).coherence
    coh_out = gram(complement).coherence
    sys.stderr.write(
        f"naimark complement: {complement.size} vectors in R^{complement.dim}, "
        f"lambda={round15(lam)}, top multiplicity k={k}\n"
        f"verified: unit norms and Gram relation G_Y (1 - lambda) = G_X within 1e-8; "
        f"coherence {round15(coh_in)} -> {round15(coh_out)}\n"
    )
    return EXIT_OK


def _cmd_double(args) -> int:
    system, tol = _load(args)
    doubled = constructions.double(system)
    _write(args, emit_frame(doubled))
    t_in = tightness(system, tol)
    t_out = tightness(doubled, tol)
    sys.stderr.write(
        f"doubled: {doubled.size} vectors in R^{doubled.dim}; "
        f"coherence {round15(gram(system).coherence)} -> {round15(gram(doubled).coherence)}; "
        f"tightness {t_in.kind} -> {t_out.kind}\n"
    )
    return EXIT_OK


def _cmd_construct(args) -> int:
    if args.name == "circular":
        if args.m is None:
            raise _UsageError("construct circular requires --m")
        system = constructions.circular_frame(args.m)
    elif args.name == "six_in_r4":
        system = constructions.six_in_r4()
    elif args.name == "mub_r2":
        system = constructions.mub_r2()
    else:
        if args.n is None:
            raise _UsageError("construct simplex requires --n")
        system = constructions.simplex_etf(args.n)
    _write(args, emit_frame(system))
    return EXIT_OK


def _cmd_catalog(args) -> int:
    if args.n < 2 or args.m <= args.n:
        raise ValidationError(f"catalog needs m > n >= 2, got m={args.m}, n={args.n}")
    entries = constructions.angle_catalog(args.m, args.n)
    if args.format == "text":
        if not entries:
            _write(args, "unknown\n")
        else:
            _write(
                args,
                "".join(
                    f"{e.kind} ({e.rule}): {e.value:.12g}\n" for e in entries
                ),
            )
    else:
        payload = {
            "m": args.m,
            "n": args.n,
            "known": bool(entries),
            "entries": [
                {"kind": e.kind, "rule": e.rule, "value": round15(e.value)}
                for e in entries
            ],
        }
        _write(args, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def run_check_suite(system: UnitVectorSystem, tol: Tolerances) -> list[dict]:
    """Invariant suite for one system; FAIL entries make `check` exit 4."""
    m, n = system.size, system.dim
    checks: list[dict] = []

    def add(name: str, status: str, detail: str) -> None:
        checks.append({"name": name, "status": status, "detail": detail})

    gm = gram(system)
    add("unit_norms", "PASS", "validated on load" + (
        f" ({'; '.join(system.warnings)})" if system.warnings else ""
    ))

    trace_val = float(np.trace(frame_operator(system)))
    ok = abs(trace_val - m) <= 1e-8 * m
    add(
        "frame_operator_trace",
        "PASS" if ok else "FAIL",
        f"trace = {trace_val!r}, expected m = {m} within 1e-8*m",
    )

    if m > n and spans(system, tol=tol):
        w = welch_bound(m, n)
        ok = gm.coherence >= w - 1e-9
        add(
            "welch_inequality",
            "PASS" if ok else "FAIL",
            f"coherence {gm.coherence!r} vs welch {w!r} (slack 1e-9)",
        )
    else:
        add("welch_inequality", "SKIP", "needs m > n and a spanning system")

    verdict = tightness(system, tol)
    add(
        "tightness",
        "PASS",
        f"{verdict.kind}; max deviation from (m/n) I is {verdict.deviation!r}",
    )

    if m >= 2:
        try:
            flag = is_etf(system, tol)
            add("etf_route_consistency", "PASS", f"both routes agree: etf = {flag}")
        except NumericalError as exc:
            add("etf_route_consistency", "FAIL", str(exc))
    else:
        add("etf_route_consistency", "SKIP", "needs m >= 2")

    for name, status, detail in neighbor_count_report(system, tol).checks:
        add(f"neighbor_counts.{name}", status, detail)

    if spans(system, tol=tol):
        target = np.zeros(n)
        target[0] = 1.0
        rec = reconstruct(system, target, tol)
        err = float(np.linalg.norm(rec - target))
        ok = err <= 1e-7
        add(
            "reconstruction_identity",
            "PASS" if ok else "FAIL",
            f"||reconstruct(e1) - e1|| = {err:.3e} (tolerance 1e-7)",
        )
    else:
        add("reconstruction_identity", "SKIP", "system does not span")

    eig = eigen_span_diagnostic(system, tol)
    add("eigen_span", eig.status, eig.detail)

    diag = tight_grassmannian_diagnostic(system, tol)
    add(diag.name, diag.status, diag.detail)

    trace = core(system, tol)
    for name, status, detail in validate_core(system, trace, tol).checks:
        add(f"core_validation.{name}", status, detail)

    return checks


def _cmd_check(args) -> int:
    system, tol = _load(args)
    checks = run_check_suite(system, tol)
    failed = [c for c in checks if c["status"] == "FAIL"]
    if args.format == "json":
        payload = {
            "tolerances": tolerances_dict(tol),
            "checks": checks,
            "failed": len(failed),
        }
        _write(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [f"{c['name']}: {c['status']} ({c['detail']})" for c in checks]
        lines.append(f"failed: {len(failed)}")
        _write(args, "\n".join(lines) + "\n")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "core": _cmd_core,
    "classify": _cmd_classify,
    "naimark": _cmd_naimark,
    "double": _cmd_double,
    "construct": _cmd_construct,
    "catalog": _cmd_catalog,
    "check": _cmd_check,
}


def run(argv=None) -> int:
    """Parse arguments and execute one command; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except NumericalError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION


def main() -> None:
    sys.exit(run())
