"""Brute-force-versus-closed-form check suites over a parameter grid.

Each suite function takes one grid point and returns a list of
:class:`CheckResult`; the ``verify`` command fans these out over workers and
prints them in grid order.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .codes import (
    CodeSpec,
    Variant,
    brute_force_cwe,
    build_defining_set,
    count_Na_all,
    count_n0,
    count_ti,
    weight_distribution,
)
from .cyclotomic import gauss_sum, lemma5_sum, lemma7_sums
from .errors import TRIPLE_SUM_CAP, CapacityError, InvariantViolation
from .formulas import (
    lemma3_closed_form,
    lemma3_exponential_sum,
    odd_sign,
    odd_sign_unreduced,
    predicted_cwe_CD,
    predicted_cwe_CDb,
    predicted_lemma5,
    predicted_lemma7,
    predicted_n0,
    predicted_Na_rho,
    predicted_ti,
    predicted_wd_CD,
    predicted_wd_CDb,
    quadratic_form_count,
)
from .galois import FieldContext, FieldElement, build_field, prime_character, trace

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"

# field sizes up to which lemma checks run exhaustively instead of sampling
EXHAUSTIVE_LEMMA3 = 81
EXHAUSTIVE_LEMMA7 = 243
EXHAUSTIVE_LEMMA8 = 243
LEMMA1_FIELDS = ((3, 1), (5, 1), (7, 1), (3, 2))


@dataclass(frozen=True)
class CheckResult:
    status: str
    suite: str
    name: str
    detail: str = ""

    def line(self) -> str:
        text = f"{self.status} {self.suite} {self.name}"
        return f"{text}: {self.detail}" if self.detail else text


def _result(ok: bool, suite: str, name: str, detail: str = "") -> CheckResult:
    return CheckResult(PASS if ok else FAIL, suite, name, "" if ok else detail)


def grid(p_set: Sequence[int], m_max: int, m_min: int = 2) -> list[tuple[int, int]]:
    return [(p, m) for p in p_set for m in range(m_min, m_max + 1)]


# --- cwe suite -------------------------------------------------------------------


def cwe_point(p: int, m: int, cap: int) -> list[CheckResult]:
    """Brute force versus formula for both codes at one (p, m)."""
    names = [f"{v.value} p={p} m={m}" for v in Variant]
    if p**m > cap:
        return [CheckResult(SKIP, "cwe", name, f"p^m = {p**m} > cap {cap}") for name in names]
    ctx = build_field(p, m)
    D = build_defining_set(ctx, CodeSpec(p, m))
    out = []
    for variant, name in zip(Variant, names):
        try:
            brute = brute_force_cwe(ctx, CodeSpec(p, m, 1, variant), D)
        except CapacityError as exc:
            out.append(CheckResult(SKIP, "cwe", name, str(exc)))
            continue
        if variant is Variant.CD:
            formula, table = predicted_cwe_CD(p, m), predicted_wd_CD(p, m)
        else:
            formula, table = predicted_cwe_CDb(p, m), predicted_wd_CDb(p, m)
        diff = brute.diff(formula)
        if not diff and weight_distribution(formula) != table:
            diff = ["weight distribution of the enumerator differs from the table"]
        out.append(_result(not diff, "cwe", name, "; ".join(diff)))
    return out


# --- lemma suites ----------------------------------------------------------------


def _elements(ctx: FieldContext, exhaustive_up_to: int, samples: int, rng: np.random.Generator) -> list[FieldElement]:
    if ctx.order <= exhaustive_up_to:
        return [ctx.from_index(i) for i in range(1, ctx.order)]
    return [ctx.random_element(rng, nonzero=True) for _ in range(samples)]


def _eta_class(ctx: FieldContext, a: FieldElement) -> int:
    return prime_character(ctx.p, trace(ctx, a * a))


def gauss_check(p: int, m: int) -> CheckResult:
    name = f"gauss p={p} m={m}"
    try:
        g = gauss_sum(build_field(p, m))
    except InvariantViolation as exc:
        return CheckResult(FAIL, "lemmas", name, str(exc))
    return _result(g.exact * g.exact == g.predicted_square, "lemmas", name, "G^2 mismatch")


def lemma3_check(ctx: FieldContext, rng: np.random.Generator) -> CheckResult:
    name = f"lemma3 p={ctx.p} m={ctx.m}"
    if ctx.order <= EXHAUSTIVE_LEMMA3:
        pairs = [(a2, a1) for a2 in range(1, ctx.order) for a1 in range(ctx.order)]
    else:
        pairs = [(int(rng.integers(1, ctx.order)), int(rng.integers(ctx.order))) for _ in range(100)]
    for i2, i1 in pairs:
        a2, a1 = ctx.from_index(i2), ctx.from_index(i1)
        a0 = ctx.random_element(rng)
        if lemma3_exponential_sum(ctx, a2, a1, a0) != lemma3_closed_form(ctx, a2, a1, a0):
            return CheckResult(FAIL, "lemmas", name, f"a2={a2!r} a1={a1!r} a0={a0!r}")
    return CheckResult(PASS, "lemmas", name)


def lemma7_check(ctx: FieldContext, rng: np.random.Generator) -> CheckResult:
    name = f"lemma7 p={ctx.p} m={ctx.m}"
    if ctx.order * ctx.p**2 > TRIPLE_SUM_CAP:
        return CheckResult(SKIP, "lemmas", name, "p^(m+2) above cap")
    for a in _elements(ctx, EXHAUSTIVE_LEMMA7, 50, rng):
        cls = _eta_class(ctx, a)
        for rho, value in enumerate(lemma7_sums(ctx, a)):
            if value != predicted_lemma7(ctx.p, ctx.m, cls, rho == 0):
                return CheckResult(FAIL, "lemmas", name, f"a={a!r} rho={rho}: {value}")
    return CheckResult(PASS, "lemmas", name)


def lemma8_check(ctx: FieldContext, rng: np.random.Generator) -> CheckResult:
    name = f"lemma8 p={ctx.p} m={ctx.m}"
    n0 = count_n0(ctx)
    for a in _elements(ctx, EXHAUSTIVE_LEMMA8, 50, rng):
        cls = _eta_class(ctx, a)
        counts = count_Na_all(ctx, a).tolist()
        if sum(counts) != n0:
            return CheckResult(FAIL, "lemmas", name, f"a={a!r}: counts do not sum to n0")
        for rho, c in enumerate(counts):
            if c != predicted_Na_rho(ctx.p, ctx.m, cls, rho == 0):
                return CheckResult(FAIL, "lemmas", name, f"a={a!r} rho={rho}: {c}")
    return CheckResult(PASS, "lemmas", name)


def lemma_point(p: int, m: int, cap: int, seed: int = 0) -> list[CheckResult]:
    """Gauss, sign, Lemma 3/5/6/7/8/9 checks for one (p, m)."""
    if p**m > cap:
        return [CheckResult(SKIP, "lemmas", f"p={p} m={m}", f"p^m = {p**m} > cap {cap}")]
    rng = np.random.default_rng([seed, p, m])
    ctx = build_field(p, m)
    out = []
    if m <= 4:
        out.append(gauss_check(p, m))
    if m % 2:
        out.append(_result(odd_sign(p, m) == odd_sign_unreduced(p, m), "lemmas", f"odd-sign p={p} m={m}"))
    out.append(lemma3_check(ctx, rng))
    value = lemma5_sum(ctx)
    out.append(_result(value == predicted_lemma5(p, m), "lemmas", f"lemma5 p={p} m={m}", str(value)))
    n0 = count_n0(ctx)
    out.append(_result(n0 == predicted_n0(p, m), "lemmas", f"lemma6 p={p} m={m}", str(n0)))
    if m >= 2:
        out.append(lemma7_check(ctx, rng))
        out.append(lemma8_check(ctx, rng))
    if m % 2:
        ti = count_ti(ctx)
        out.append(_result(ti == predicted_ti(p, m), "lemmas", f"lemma9 p={p} m={m}", str(ti)))
    return out


def quadratic_form_histogram(ctx: FieldContext, coeffs: Sequence[FieldElement]) -> np.ndarray:
    """Number of solutions of sum c_i x_i^2 = b for every b (by field index), by enumeration."""
    table = ctx.coords_table
    squares = ctx.mul_coords(table, table)
    terms = [ctx.mul_coords(squares, np.array(c.coords)) for c in coeffs]
    total = np.zeros((1, ctx.m), dtype=np.int64)
    for term in terms:
        total = (total[:, None, :] + term[None, :, :]).reshape(-1, ctx.m) % ctx.p
    return np.bincount(ctx.index_of(total), minlength=ctx.order)


def lemma1_point(p: int, t: int, l_max: int = 5, cap: int = 200_000, per_shape: int = 20, seed: int = 0) -> list[CheckResult]:
    """Diagonal quadratic form counts over F_{p^t} versus enumeration, l = 1..l_max."""
    ctx = build_field(p, t)
    rng = np.random.default_rng([seed, p, t])
    out = []
    for l in range(1, l_max + 1):
        name = f"lemma1 q={ctx.order} l={l}"
        if ctx.order**l > cap:
            out.append(CheckResult(SKIP, "lemmas", name, f"q^l = {ctx.order**l} > cap {cap}"))
            continue
        failure = ""
        for _ in range(per_shape):
            coeffs = [ctx.random_element(rng, nonzero=True) for _ in range(l)]
            hist = quadratic_form_histogram(ctx, coeffs)
            for b in range(ctx.order):
                predicted = quadratic_form_count(ctx, coeffs, ctx.from_index(b))
                if hist[b] != predicted:
                    failure = f"coeffs={coeffs} b={ctx.from_index(b)!r}: {hist[b]} vs {predicted}"
                    break
            if failure:
                break
        out.append(_result(not failure, "lemmas", name, failure))
    return out


def all_tasks(p_set: Sequence[int], m_max: int, cap: int, suite: str) -> list[tuple]:
    """Independent work units in deterministic output order."""
    tasks: list[tuple] = []
    if suite in ("cwe", "all"):
        tasks += [("cwe", p, m, cap) for p, m in grid(p_set, m_max)]
    if suite in ("lemmas", "all"):
        tasks += [("lemmas", p, m, cap) for p, m in grid(p_set, m_max, 1)]
        tasks += [("lemma1", p, t, cap) for p, t in LEMMA1_FIELDS if p in p_set]
    return tasks


def run_task(task: tuple) -> list[CheckResult]:
    kind, p, m, cap = task
    runners = {
        "cwe": lambda: cwe_point(p, m, cap),
        "lemmas": lambda: lemma_point(p, m, cap),
        "lemma1": lambda: lemma1_point(p, m, cap=cap),
    }
    if kind not in runners:
        raise ValueError(f"unknown task {kind}")
    try:
        return runners[kind]()
    except CapacityError as exc:
        # a cap larger than the library's own enumeration limits
        return [CheckResult(SKIP, "cwe" if kind == "cwe" else "lemmas", f"p={p} m={m}", str(exc))]
