"""Trace codes C_D and C_{D,b} over F_p, built and enumerated directly.

Everything here is computed from the definitions by enumeration; nothing
depends on the closed forms in :mod:`tracecodes.formulas`.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import ENUMERATION_CAP, InvariantViolation, ParameterError, check_capacity
from .galois import (
    FieldContext,
    FieldElement,
    build_field,
    enumerate_field,
    prime_character,
    trace,
)

# bound on the size of one (chunk x n) block of codeword symbols
_BLOCK_ELEMENTS = 1 << 25


class Variant(str, Enum):
    CD = "C_D"
    CDB = "C_Db"


@dataclass(frozen=True)
class CodeSpec:
    p: int
    m: int
    d: int = 1
    variant: Variant = Variant.CD

    def __post_init__(self) -> None:
        object.__setattr__(self, "variant", Variant(self.variant))
        build_field(self.p, 1)  # validates p
        if self.m < 2:
            raise ParameterError("m must be at least 2")
        if self.d < 1:
            raise ParameterError("d must be a positive integer")
        g = math.gcd(self.d, (self.p**self.m - 1) // 2)
        if g != 1:
            raise ParameterError(f"gcd(d, (p^m-1)/2) = {g}, must be 1")


@dataclass(frozen=True)
class DefiningSet:
    """Coordinate positions d_1, ..., d_n of a trace code.

    ``coincides`` records whether the Tr(x^(2d)) = 0 set equals the
    Tr(x^2) = 0 set element for element (it always has the same size).
    """

    elements: tuple[FieldElement, ...]
    m: int
    d: int = 1
    coincides: bool = True

    @property
    def n(self) -> int:
        return len(self.elements)

    def coords(self) -> np.ndarray:
        if not self.elements:
            return np.zeros((0, self.m), dtype=np.int64)
        return np.array([e.coords for e in self.elements], dtype=np.int64)


Composition = tuple[int, ...]


@dataclass
class CompleteWeightEnumerator:
    """Multiset of codeword compositions (k_0, ..., k_{p-1})."""

    p: int
    n: int
    terms: dict[Composition, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for comp, mult in self.terms.items():
            if len(comp) != self.p or sum(comp) != self.n:
                raise InvariantViolation(f"composition {comp} does not sum to n={self.n}")
            if mult <= 0:
                raise InvariantViolation(f"non-positive multiplicity {mult} for {comp}")

    @classmethod
    def from_counter(cls, p: int, n: int, counter: Mapping[Composition, int]) -> CompleteWeightEnumerator:
        return cls(p, n, {tuple(int(k) for k in c): int(v) for c, v in counter.items() if v})

    @property
    def total(self) -> int:
        return sum(self.terms.values())

    def sorted_terms(self) -> list[tuple[Composition, int]]:
        """Terms by lexicographically descending composition."""
        return sorted(self.terms.items(), reverse=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CompleteWeightEnumerator):
            return NotImplemented
        return (self.p, self.n, self.terms) == (other.p, other.n, other.terms)

    def diff(self, other: CompleteWeightEnumerator) -> list[str]:
        """Human-readable term-level differences, empty when equal."""
        lines = []
        if self.n != other.n:
            lines.append(f"length {self.n} != {other.n}")
        for comp in sorted(set(self.terms) | set(other.terms), reverse=True):
            a, b = self.terms.get(comp, 0), other.terms.get(comp, 0)
            if a != b:
                lines.append(f"{list(comp)}: {a} vs {b}")
        return lines


@dataclass
class WeightDistribution:
    entries: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def sorted_entries(self) -> list[tuple[int, int]]:
        return sorted(self.entries.items())

    def nonzero_weights(self) -> list[int]:
        return [w for w in sorted(self.entries) if w]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightDistribution):
            return NotImplemented
        return self.entries == other.entries


def trace_zero_mask(ctx: FieldContext, exponent: int) -> np.ndarray:
    """Boolean mask over field indices of {x != 0 : Tr(x^exponent) = 0}."""
    check_capacity(ctx.order, ENUMERATION_CAP, "trace_zero_mask")
    if exponent == 2:
        tr = ctx.squares_trace
    else:
        tr = ctx.trace_coords(ctx.pow_coords(ctx.coords_table, exponent))
    mask = tr == 0
    mask[0] = False
    return mask


def _from_mask(ctx: FieldContext, mask: np.ndarray, d: int, coincides: bool) -> DefiningSet:
    elements = tuple(ctx.from_index(int(i)) for i in np.flatnonzero(mask))
    return DefiningSet(elements, ctx.m, d, coincides)


def build_defining_set(ctx: FieldContext, spec: CodeSpec) -> DefiningSet:
    """Defining set of the code: {x != 0 : Tr(x^2) = 0}, in field enumeration order.

    The set {x != 0 : Tr(x^(2d)) = 0} always has the same size when
    gcd(d, (p^m-1)/2) = 1 (checked here), but it is not always the same set;
    ``coincides`` on the result says which case holds.  Use
    :func:`power_defining_set` for the Tr(x^(2d)) set itself.
    """
    if (ctx.p, ctx.m) != (spec.p, spec.m):
        raise ParameterError("field does not match code parameters")
    base = trace_zero_mask(ctx, 2)
    powered = base if spec.d == 1 else trace_zero_mask(ctx, 2 * spec.d)
    if np.count_nonzero(base) != np.count_nonzero(powered):
        raise InvariantViolation(f"|Tr(x^{2 * spec.d}) = 0| differs from |Tr(x^2) = 0|")
    return _from_mask(ctx, base, spec.d, bool(np.array_equal(base, powered)))


def power_defining_set(ctx: FieldContext, d: int) -> DefiningSet:
    """The set {x != 0 : Tr(x^(2d)) = 0} exactly as written, in enumeration order."""
    base = trace_zero_mask(ctx, 2)
    powered = trace_zero_mask(ctx, 2 * d)
    return _from_mask(ctx, powered, d, bool(np.array_equal(base, powered)))


def codeword_composition(ctx: FieldContext, D: DefiningSet, a: FieldElement, b: int = 0) -> Composition:
    """Symbol counts of (Tr(a d_1) + b, ..., Tr(a d_n) + b)."""
    counts = [0] * ctx.p
    for d in D.elements:
        counts[(trace(ctx, a * d) + b) % ctx.p] += 1
    return tuple(counts)


def generator_matrix(ctx: FieldContext, D: DefiningSet) -> np.ndarray:
    """m x n matrix whose row i is the codeword of a = u^i."""
    return ctx.trace_form @ D.coords().T % ctx.p


def _projective_reps(p: int, m: int) -> np.ndarray:
    """Coordinate vectors whose first nonzero entry is 1, one per F_p-line, in lex order."""
    blocks = []
    for lead in range(m):
        rest = m - lead - 1
        tail = np.indices((p,) * rest).reshape(rest, p**rest).T
        block = np.zeros((len(tail), m), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1 :] = tail
        blocks.append(block)
    return np.concatenate(blocks)


def _span_blocks(base: np.ndarray, rows: np.ndarray, p: int) -> Iterator[np.ndarray]:
    """Yield base + t @ rows (mod p) for every t in F_p^len(rows), in lex order of t.

    Blocks are (k, n) uint8 arrays of at most ~_BLOCK_ELEMENTS symbols.
    """
    n = base.shape[-1]
    if len(rows) and p ** len(rows) * n > _BLOCK_ELEMENTS:
        for t in range(p):
            yield from _span_blocks((base + t * rows[0]) % p, rows[1:], p)
        return
    words = base.reshape(1, n)
    for g in rows:
        multiples = (np.arange(p, dtype=np.uint8)[:, None] * g) % p
        words = words[:, None, :] + multiples[None, :, :]
        words %= p
        words = words.reshape(words.shape[0] * p, n)
    yield words


def _block_compositions(words: np.ndarray, p: int) -> np.ndarray:
    return np.stack([np.count_nonzero(words == j, axis=1) for j in range(p)], axis=1)


@lru_cache(maxsize=4)
def compositions_by_element(ctx: FieldContext, D: DefiningSet) -> np.ndarray:
    """(order, p) array: row i is the composition of the C_D codeword for a = element i.

    Codewords are generated as F_p-combinations of the generator rows, one a
    per F_p-line; the rest follow from Tr(lambda a d) = lambda Tr(a d), which
    permutes symbols j -> lambda j.
    """
    p, m = ctx.p, ctx.m
    check_capacity(ctx.order, ENUMERATION_CAP, "compositions_by_element")
    G = generator_matrix(ctx, D).astype(np.uint8)
    parts = []
    for lead in range(m):
        for words in _span_blocks(G[lead], G[lead + 1 :], p):
            parts.append(_block_compositions(words, p))
    rep_comps = np.concatenate(parts)
    reps = _projective_reps(p, m)
    out = np.zeros((ctx.order, p), dtype=np.int64)
    out[0, 0] = D.n
    for lam in range(1, p):
        idx = ctx.index_of(reps * lam % p)
        # comp_{lam a}[lam j] = comp_a[j]
        perm = np.argsort(np.arange(p) * lam % p)
        out[idx] = rep_comps[:, perm]
    out.flags.writeable = False
    return out


def _shift(comp: Composition, b: int) -> Composition:
    """Composition after adding b to every symbol."""
    p = len(comp)
    return tuple(comp[(j - b) % p] for j in range(p))


def brute_force_cwe(
    ctx: FieldContext,
    spec: CodeSpec,
    D: DefiningSet | None = None,
    *,
    literal: bool = False,
) -> CompleteWeightEnumerator:
    """Complete weight enumerator by sweeping every a (and every b for C_Db).

    With ``literal=True`` every codeword is evaluated through scalar field
    arithmetic; otherwise the vectorized sweep is used.
    """
    p = ctx.p
    size = ctx.order * (p if spec.variant is Variant.CDB else 1)
    check_capacity(size, ENUMERATION_CAP, f"brute_force_cwe {spec.variant.value}")
    if D is None:
        D = build_defining_set(ctx, spec)
    bs = range(p) if spec.variant is Variant.CDB else range(1)
    counter: Counter[Composition] = Counter()
    if literal:
        for a in enumerate_field(ctx):
            for b in bs:
                counter[codeword_composition(ctx, D, a, b)] += 1
    else:
        rows, mult = np.unique(compositions_by_element(ctx, D), axis=0, return_counts=True)
        for row, k in zip(rows, mult):
            comp = tuple(int(c) for c in row)
            for b in bs:
                counter[_shift(comp, b)] += int(k)
    return CompleteWeightEnumerator.from_counter(p, D.n, counter)


def weight_distribution(cwe: CompleteWeightEnumerator) -> WeightDistribution:
    entries: Counter[int] = Counter()
    for comp, mult in cwe.terms.items():
        entries[cwe.n - comp[0]] += mult
    return WeightDistribution(dict(entries))


def rank_mod_p(M: np.ndarray, p: int) -> int:
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = np.flatnonzero(A[r:, c])
        if not len(pivot):
            continue
        k = r + pivot[0]
        A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        r += 1
    return r


def code_dimension(ctx: FieldContext, D: DefiningSet, variant: Variant | str) -> int:
    """log_p of the number of distinct codewords, via the rank of the generator matrix."""
    G = generator_matrix(ctx, D)
    if Variant(variant) is Variant.CDB:
        G = np.vstack([G, np.ones((1, D.n), dtype=np.int64)])
    return rank_mod_p(G, ctx.p)


def distinct_codewords(ctx: FieldContext, D: DefiningSet, variant: Variant | str) -> int:
    """Count distinct codewords by materializing all of them (small fields only)."""
    G = generator_matrix(ctx, D)
    words = ctx.coords_table @ G % ctx.p
    if Variant(variant) is Variant.CDB:
        words = np.concatenate([(words + b) % ctx.p for b in range(ctx.p)])
    return len(np.unique(words, axis=0))


def count_Na_rho(ctx: FieldContext, a: FieldElement, rho: int) -> int:
    """#{x in F_{p^m} : Tr(x^2) = 0 and Tr(ax) = rho}."""
    if a.ctx != ctx:
        raise ParameterError("element does not belong to this field")
    if a.is_zero():
        raise ParameterError("count_Na_rho requires a != 0")
    return int(count_Na_all(ctx, a)[rho % ctx.p])


def count_Na_all(ctx: FieldContext, a: FieldElement) -> np.ndarray:
    """N_a(rho) for every rho in F_p, from a single sweep."""
    if a.ctx != ctx:
        raise ParameterError("element does not belong to this field")
    if a.is_zero():
        raise ParameterError("count_Na_rho requires a != 0")
    tr_ax = ctx.trace_products(a.coords)
    return np.bincount(tr_ax[ctx.squares_trace == 0], minlength=ctx.p)


def count_n0(ctx: FieldContext) -> int:
    """#{x in F_{p^m} : Tr(x^2) = 0}, zero included."""
    return int(np.count_nonzero(ctx.squares_trace == 0))


def count_ti(ctx: FieldContext) -> tuple[int, int, int]:
    """Counts of nonzero x with Legendre(Tr(x^2)) equal to 0, 1 and -1."""
    if ctx.m % 2 == 0:
        raise ParameterError("count_ti requires odd m")
    chi = np.array([prime_character(ctx.p, v) for v in range(ctx.p)])
    classes = chi[ctx.squares_trace[1:]]
    return (
        int(np.count_nonzero(classes == 0)),
        int(np.count_nonzero(classes == 1)),
        int(np.count_nonzero(classes == -1)),
    )


def valid_ds(p: int, m: int, limit: int) -> list[int]:
    half = (p**m - 1) // 2
    return [d for d in range(1, limit + 1) if math.gcd(d, half) == 1]


def composition_from_terms(terms: Iterable[tuple[int, int]], p: int) -> Composition:
    """Composition from (symbol, exponent) pairs; absent symbols get 0."""
    comp = [0] * p
    for j, k in terms:
        comp[j] += k
    return tuple(comp)

