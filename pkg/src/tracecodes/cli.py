"""Command-line front end: ``compute``, ``verify`` and ``tables``.

Exit codes: 0 success, 1 mismatch or failed check, 2 bad parameters,
3 capacity exceeded.  Every error goes to stderr as a single line starting
with ``E_PARAM:``, ``E_CAPACITY:`` or ``E_MISMATCH:``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, TextIO

from .checks import FAIL, PASS, SKIP, all_tasks, run_task
from .codes import (
    CodeSpec,
    CompleteWeightEnumerator,
    Variant,
    WeightDistribution,
    brute_force_cwe,
    build_defining_set,
    code_dimension,
    weight_distribution,
)
from .errors import ENUMERATION_CAP, CapacityError, InvariantViolation, ParameterError, check_capacity
from .formulas import predicted_cwe_CD, predicted_cwe_CDb, predicted_wd_CD, predicted_wd_CDb
from .galois import build_field

EXIT_OK, EXIT_MISMATCH, EXIT_PARAM, EXIT_CAPACITY = 0, 1, 2, 3

CODES = {"cd": Variant.CD, "cdb": Variant.CDB}


class Mismatch(Exception):
    """Brute force and closed form disagree."""


# --- report ----------------------------------------------------------------------


@dataclass
class RunReport:
    p: int
    m: int
    d: int
    code: str
    length: int
    dimension: int
    method: str
    cwe: list[tuple[tuple[int, ...], int]]
    weight_distribution: list[tuple[int, int]]
    match: bool | None
    modulus: list[int]
    elapsed_ms: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if (self.match is None) != (self.method != "both"):
            raise InvariantViolation("match verdict must be present exactly when method is 'both'")

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "m": self.m,
            "d": self.d,
            "code": self.code,
            "length": self.length,
            "dimension": self.dimension,
            "method": self.method,
            "cwe": [{"composition": list(c), "multiplicity": k} for c, k in self.cwe],
            "weight_distribution": [{"weight": w, "count": c} for w, c in self.weight_distribution],
            "match": self.match,
            "meta": {"elapsed_ms": self.elapsed_ms, "modulus": list(self.modulus)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunReport:
        return cls(
            p=data["p"],
            m=data["m"],
            d=data["d"],
            code=data["code"],
            length=data["length"],
            dimension=data["dimension"],
            method=data["method"],
            cwe=[(tuple(t["composition"]), t["multiplicity"]) for t in data["cwe"]],
            weight_distribution=[(e["weight"], e["count"]) for e in data["weight_distribution"]],
            match=data["match"],
            modulus=list(data["meta"]["modulus"]),
            elapsed_ms=data["meta"]["elapsed_ms"],
        )

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls.from_dict(json.loads(text))


# --- rendering -------------------------------------------------------------------


def _monomial(comp: Sequence[int], latex: bool) -> str:
    parts = []
    for j, k in enumerate(comp):
        if k == 0:
            continue
        if latex:
            parts.append(f"w_{j}" if k == 1 else f"w_{j}^{{{k}}}")
        else:
            parts.append(f"w{j}" if k == 1 else f"w{j}^{k}")
    return ("" if latex else " ").join(parts) or "1"


def format_cwe(terms: Sequence[tuple[Sequence[int], int]], latex: bool = False) -> str:
    pieces = []
    for comp, mult in terms:
        mono = _monomial(comp, latex)
        if mult == 1:
            pieces.append(mono)
        else:
            pieces.append(f"{mult}{'' if latex else ' '}{mono}")
    return ("+" if latex else " + ").join(pieces) or "0"


def format_weight_enumerator(entries: Sequence[tuple[int, int]], latex: bool = False) -> str:
    pieces = []
    for weight, count in entries:
        if weight == 0:
            pieces.append(str(count))
            continue
        power = f"z^{{{weight}}}" if latex else f"z^{weight}"
        if weight == 1:
            power = "z"
        if count == 1:
            pieces.append(power)
        else:
            pieces.append(f"{count}{'' if latex else ' '}{power}")
    return ("+" if latex else " + ").join(pieces) or "0"


def render_report(report: RunReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "latex":
        header = (
            f"% {report.code} p={report.p} m={report.m} d={report.d} "
            f"n={report.length} k={report.dimension} method={report.method}"
        )
        return (
            f"{header}\n"
            f"\\[ {format_cwe(report.cwe, latex=True)} \\]\n"
            f"\\[ {format_weight_enumerator(report.weight_distribution, latex=True)} \\]\n"
        )
    lines = [
        f"code: {report.code}",
        f"parameters: p={report.p} m={report.m} d={report.d}",
        f"modulus: {report.modulus}",
        f"length: {report.length}",
        f"dimension: {report.dimension}",
        f"method: {report.method}",
    ]
    if report.match is not None:
        lines.append(f"match: {'OK' if report.match else 'MISMATCH'}")
    lines.append(f"terms: {len(report.cwe)}")
    lines.append(f"complete weight enumerator: {format_cwe(report.cwe)}")
    lines.append(f"weight enumerator: {format_weight_enumerator(report.weight_distribution)}")
    return "\n".join(lines) + "\n"


def render_table(wd: WeightDistribution, fmt: str, title: str) -> str:
    rows = wd.sorted_entries()
    if fmt == "csv":
        return "weight,count\n" + "".join(f"{w},{c}\n" for w, c in rows)
    if fmt == "latex":
        body = "".join(f"{w} & {c} \\\\\n" for w, c in rows)
        return (
            f"% {title}\n\\begin{{tabular}}{{rr}}\n\\hline\nWeight & Multiplicity \\\\\n\\hline\n"
            f"{body}\\hline\n\\end{{tabular}}\n"
        )
    width = max(len("Weight"), *(len(str(w)) for w, _ in rows))
    lines = [title, f"{'Weight':>{width}}  Multiplicity"]
    lines += [f"{w:>{width}}  {c}" for w, c in rows]
    return "\n".join(lines) + "\n"


# --- commands --------------------------------------------------------------------


def _predicted(variant: Variant, p: int, m: int) -> CompleteWeightEnumerator:
    return predicted_cwe_CD(p, m) if variant is Variant.CD else predicted_cwe_CDb(p, m)


def compute_report(p: int, m: int, d: int = 1, code: str = "cd", method: str = "both") -> tuple[RunReport, list[str]]:
    """Build the report for one code; the second value is the term diff (empty on agreement)."""
    start = time.perf_counter()
    spec = CodeSpec(p, m, d, CODES[code])
    # the measured dimension needs the defining set, so every method enumerates the field once
    check_capacity(p**m, ENUMERATION_CAP, "defining set")
    ctx = build_field(p, m)
    D = build_defining_set(ctx, spec)
    brute = brute_force_cwe(ctx, spec, D) if method in ("brute", "both") else None
    formula = _predicted(spec.variant, p, m) if method in ("formula", "both") else None
    shown = brute if brute is not None else formula
    assert shown is not None
    diff = brute.diff(formula) if brute is not None and formula is not None else []
    report = RunReport(
        p=p,
        m=m,
        d=d,
        code=spec.variant.value,
        length=D.n,
        dimension=code_dimension(ctx, D, spec.variant),
        method=method,
        cwe=shown.sorted_terms(),
        weight_distribution=weight_distribution(shown).sorted_entries(),
        match=(not diff) if method == "both" else None,
        modulus=list(ctx.modulus),
        elapsed_ms=round((time.perf_counter() - start) * 1000),
    )
    return report, diff


def _write(text: str, out: str | None, stdout: TextIO) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def cmd_compute(args: argparse.Namespace, stdout: TextIO) -> int:
    report, diff = compute_report(args.p, args.m, args.d, args.code, args.method)
    _write(render_report(report, args.format), args.out, stdout)
    if diff:
        raise Mismatch(f"{len(diff)} differing terms: " + "; ".join(diff))
    return EXIT_OK


def cmd_tables(args: argparse.Namespace, stdout: TextIO) -> int:
    spec = CodeSpec(args.p, args.m, args.d, CODES[args.code])
    wd = predicted_wd_CD(args.p, args.m) if spec.variant is Variant.CD else predicted_wd_CDb(args.p, args.m)
    title = f"Weight distribution of {spec.variant.value} for p={args.p}, m={args.m}"
    _write(render_table(wd, args.format, title), args.out, stdout)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, stdout: TextIO) -> int:
    for p in args.p_set:
        build_field(p, 1)  # validates each prime up front
    if args.m_max < 1:
        raise ParameterError("--m-max must be at least 1")
    tasks = all_tasks(args.p_set, args.m_max, args.cap, args.suite)
    jobs = args.jobs or os.cpu_count() or 1
    tally = {PASS: 0, FAIL: 0, SKIP: 0}

    def emit(results) -> None:
        for r in results:
            tally[r.status] += 1
            stdout.write(r.line() + "\n")
        stdout.flush()

    if jobs == 1 or len(tasks) <= 1:
        for task in tasks:
            emit(run_task(task))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map yields in submission order, so output is in grid order
            for results in pool.map(run_task, tasks):
                emit(results)
    stdout.write(f"summary: {tally[PASS]} passed, {tally[FAIL]} failed, {tally[SKIP]} skipped\n")
    return EXIT_MISMATCH if tally[FAIL] else EXIT_OK


# --- argument parsing ------------------------------------------------------------


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tracecodes", description="Complete weight enumerators of quadratic trace codes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def code_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--p", type=int, required=True, help="odd prime")
        sp.add_argument("--m", type=int, required=True, help="extension degree, at least 2")
        sp.add_argument("--d", type=int, default=1, help="exponent parameter with gcd(d, (p^m-1)/2) = 1")
        sp.add_argument("--code", choices=sorted(CODES), default="cd")
        sp.add_argument("--out", metavar="FILE", help="write to FILE instead of stdout")

    compute = sub.add_parser("compute", help="compute the complete weight enumerator of one code")
    code_args(compute)
    compute.add_argument("--method", choices=["brute", "formula", "both"], default="both")
    compute.add_argument("--format", choices=["text", "json", "latex"], default="text")
    compute.set_defaults(func=cmd_compute)

    verify = sub.add_parser("verify", help="brute force versus closed forms over a grid")
    verify.add_argument("--p-set", type=_int_list, default=[3, 5, 7, 11])
    verify.add_argument("--m-max", type=int, default=6)
    verify.add_argument("--cap", type=int, default=200_000, help="skip points with p^m above this")
    verify.add_argument("--suite", choices=["cwe", "lemmas", "all"], default="all")
    verify.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    verify.set_defaults(func=cmd_verify)

    tables = sub.add_parser("tables", help="weight distribution table from the closed forms")
    code_args(tables)
    tables.add_argument("--format", choices=["text", "latex", "csv"], default="text")
    tables.set_defaults(func=cmd_tables)
    return parser


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", None) is not None and args.jobs < 1:
            raise ParameterError("--jobs must be at least 1")
        return args.func(args, stdout)
    except (_UsageError, ParameterError) as exc:
        stderr.write(f"E_PARAM: {exc}\n")
        return EXIT_PARAM
    except CapacityError as exc:
        stderr.write(f"E_CAPACITY: {exc}\n")
        return EXIT_CAPACITY
    except (Mismatch, InvariantViolation) as exc:
        stderr.write(f"E_MISMATCH: {exc}\n")
        return EXIT_MISMATCH
    except OSError as exc:
        stderr.write(f"E_PARAM: {exc}\n")
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
