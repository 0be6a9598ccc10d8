"""Exact arithmetic in Z[zeta_p] and exact character / Gauss sums.

A :class:`CyclotomicInt` stores p-1 integer coordinates in the power basis
1, zeta, ..., zeta^(p-2).  Every sum here is accumulated as a histogram of
exponents mod p and folded into that basis once, so large sums stay exact
and cheap.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Iterable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    ENUMERATION_CAP,
    TRIPLE_SUM_CAP,
    InvariantViolation,
    ParameterError,
    check_capacity,
)
from .galois import FieldContext, FieldElement


class CyclotomicInt:
    """Element of Z[zeta_p] in canonical power-basis form."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int]) -> None:
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != p - 1:
            raise ParameterError(f"expected {p - 1} coefficients, got {len(coeffs)}")
        self.p = p
        self.coeffs = coeffs

    @classmethod
    def from_exponent_counts(cls, p: int, counts: Iterable[int]) -> CyclotomicInt:
        """Sum of counts[t] * zeta^t for t in range(p)."""
        counts = [int(c) for c in counts]
        if len(counts) != p:
            raise ParameterError(f"expected {p} exponent counts, got {len(counts)}")
        top = counts[p - 1]
        return cls(p, (c - top for c in counts[: p - 1]))

    @classmethod
    def integer(cls, p: int, n: int) -> CyclotomicInt:
        return cls(p, [n] + [0] * (p - 2))

    def _coerce(self, other: object) -> CyclotomicInt:
        if isinstance(other, CyclotomicInt):
            if other.p != self.p:
                raise ParameterError(f"mismatched roots of unity: {self.p} vs {other.p}")
            return other
        if isinstance(other, (int, np.integer)):
            return CyclotomicInt.integer(self.p, int(other))
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> CyclotomicInt:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CyclotomicInt(self.p, (a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CyclotomicInt:
        return CyclotomicInt(self.p, (-a for a in self.coeffs))

    def __sub__(self, other: object) -> CyclotomicInt:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> CyclotomicInt:
        return (-self) + other

    def __mul__(self, other: object) -> CyclotomicInt:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.p
        counts = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        counts[(i + j) % p] += a * b
        return CyclotomicInt.from_exponent_counts(p, counts)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CyclotomicInt:
        if e < 0:
            raise ParameterError("negative powers are not defined in Z[zeta_p]")
        result = CyclotomicInt.integer(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CyclotomicInt):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __int__(self) -> int:
        if not self.is_rational():
            raise InvariantViolation(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        return sum(
            (c * cmath.exp(2j * math.pi * k / self.p) for k, c in enumerate(self.coeffs) if c),
            0j,
        )

    def __repr__(self) -> str:
        return f"CyclotomicInt({self.p}, {list(self.coeffs)})"


def root_power(p: int, t: int) -> CyclotomicInt:
    counts = [0] * p
    counts[t % p] = 1
    return CyclotomicInt.from_exponent_counts(p, counts)


def additive_character_sum(ctx: FieldContext, exponents: Iterable[int]) -> CyclotomicInt:
    """Sum of zeta^e over a stream of prime-field exponents.

    Accepts any iterable (consumed lazily) or a numpy integer array.
    """
    p = ctx.p
    if isinstance(exponents, np.ndarray):
        counts = np.bincount(np.asarray(exponents, dtype=np.int64).ravel() % p, minlength=p)
        return CyclotomicInt.from_exponent_counts(p, counts.tolist())
    hist = [0] * p
    for e in exponents:
        hist[int(e) % p] += 1
    return CyclotomicInt.from_exponent_counts(p, hist)


def _weighted_sum(p: int, exponents: np.ndarray, weights: np.ndarray) -> CyclotomicInt:
    counts = np.bincount(exponents % p, weights=weights, minlength=p)
    # weights are small integers; float bincount is exact below 2^53
    return CyclotomicInt.from_exponent_counts(p, np.rint(counts).astype(np.int64).tolist())


@dataclass(frozen=True)
class GaussSumValue:
    exact: CyclotomicInt
    predicted_square: int


def gauss_sum_closed_form(p: int, m: int) -> complex:
    """(-1)^(m-1) * i^((p-1)^2 m / 4) * p^(m/2), as a complex number."""
    k = ((p - 1) ** 2 // 4 * m) % 4
    return (-1) ** (m - 1) * (1j**k) * p ** (m / 2)


@lru_cache(maxsize=64)
def gauss_sum(ctx: FieldContext) -> GaussSumValue:
    """Quadratic Gauss sum of F_{p^m}, exact, with float cross-check of its sign."""
    check_capacity(ctx.order, ENUMERATION_CAP, "gauss_sum")
    table = ctx.coords_table
    eta = ctx.eta_coords(table)
    tr = ctx.trace_coords(table)
    exact = _weighted_sum(ctx.p, tr, eta.astype(np.float64))
    eta_minus_one = int(ctx.eta_coords(np.array([[ctx.p - 1] + [0] * (ctx.m - 1)]))[0])
    value = GaussSumValue(exact, eta_minus_one * ctx.order)
    if exact * exact != value.predicted_square:
        raise InvariantViolation(f"G^2 != eta(-1) q for F_{ctx.p}^{ctx.m}")
    expected = gauss_sum_closed_form(ctx.p, ctx.m)
    if abs(exact.to_complex() - expected) > 1e-9 * abs(expected):
        raise InvariantViolation(f"Gauss sum sign mismatch for F_{ctx.p}^{ctx.m}")
    return value


def lemma5_sum(ctx: FieldContext) -> int:
    """Sum over y in F_p^*, x in F_{p^m} of zeta^(y Tr(x^2)), as an integer."""
    check_capacity(ctx.order, ENUMERATION_CAP, "lemma5_sum")
    p = ctx.p
    hist = np.bincount(ctx.squares_trace, minlength=p)
    counts = [0] * p
    for y in range(1, p):
        for s in range(p):
            counts[y * s % p] += int(hist[s])
    return int(CyclotomicInt.from_exponent_counts(p, counts))


def lemma7_sums(ctx: FieldContext, a: FieldElement) -> list[int]:
    """Triple sums over y, z in F_p^* and x in F_{p^m} of zeta^(Tr(yx^2 + azx) - z rho).

    Returns one integer per rho in F_p.  The x-sweep is grouped by the pair
    (Tr(x^2), Tr(ax)); each term's exponent is y*Tr(x^2) + z*Tr(ax) - z*rho by
    F_p-linearity of the trace.
    """
    if a.ctx != ctx:
        raise ParameterError("element does not belong to this field")
    if a.is_zero():
        raise ParameterError("lemma7 sums require a != 0")
    p = ctx.p
    check_capacity(ctx.order * p * p, TRIPLE_SUM_CAP, "lemma7_sum")
    tr_ax = ctx.trace_products(a.coords)
    joint = np.bincount(ctx.squares_trace * p + tr_ax, minlength=p * p).reshape(p, p)
    cells = [(s, t, int(joint[s, t])) for s in range(p) for t in range(p) if joint[s, t]]
    out = []
    for rho in range(p):
        counts = [0] * p
        for y in range(1, p):
            for z in range(1, p):
                for s, t, c in cells:
                    counts[(y * s + z * t - z * rho) % p] += c
        out.append(int(CyclotomicInt.from_exponent_counts(p, counts)))
    return out


def lemma7_sum(ctx: FieldContext, a: FieldElement, rho: int) -> int:
    return lemma7_sums(ctx, a)[rho % ctx.p]
