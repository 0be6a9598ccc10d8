"""Closed-form predictions for the trace codes and the sums behind them.

Every function here evaluates an explicit formula; none of them enumerate a
code.  The enumeration-based counterparts live in :mod:`tracecodes.codes`
and :mod:`tracecodes.cyclotomic`, and the test suite checks one against the
other.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence

import numpy as np

from .codes import CompleteWeightEnumerator, WeightDistribution
from .cyclotomic import CyclotomicInt, additive_character_sum, gauss_sum, root_power
from .errors import ENUMERATION_CAP, ParameterError, check_capacity
from .galois import FieldContext, FieldElement, build_field, quadratic_character, trace

# --- signs -------------------------------------------------------------------


def even_sign(p: int, m: int) -> int:
    """(-1)^((m/2) ((p-1)/2)^2), the recurring sign for even m."""
    h = (p - 1) // 2
    return -1 if (m // 2) * h * h % 2 else 1


def odd_sign(p: int, m: int) -> int:
    """(-1)^(((m-1)/2) ((p-1)/2)), the sign used for odd m."""
    h = (p - 1) // 2
    return -1 if ((m - 1) // 2) * h % 2 else 1


def odd_sign_unreduced(p: int, m: int) -> int:
    """(-1)^((p-1)/2 + ((m+1)/2) ((p-1)/2)^2); equals odd_sign for odd m."""
    h = (p - 1) // 2
    return -1 if (h + ((m + 1) // 2) * h * h) % 2 else 1


def sign_constant(p: int, m: int) -> int:
    return even_sign(p, m) if m % 2 == 0 else odd_sign(p, m)


def nu(q: int, rho_is_zero: bool) -> int:
    return q - 1 if rho_is_zero else -1


def _check_lemma(p: int, m: int) -> None:
    build_field(p, 1)
    if m < 1:
        raise ParameterError("m must be a positive integer")


def _check_theorem(p: int, m: int) -> None:
    _check_lemma(p, m)
    if m < 2:
        raise ParameterError("m must be at least 2")
    if m % 2 == 1 and m < 3:
        raise ParameterError("odd m must be at least 3")


def _check_class(eta_class: int) -> None:
    if eta_class not in (0, 1, -1):
        raise ParameterError("eta class must be 0, 1 or -1")


# --- lemma-level counts and sums ---------------------------------------------


def predicted_n0(p: int, m: int) -> int:
    """#{x : Tr(x^2) = 0} in F_{p^m}, zero included."""
    _check_lemma(p, m)
    if m % 2:
        return p ** (m - 1)
    return p ** (m - 1) - even_sign(p, m) * (p - 1) * p ** ((m - 2) // 2)


def predicted_length(p: int, m: int) -> int:
    return predicted_n0(p, m) - 1


def predicted_lemma5(p: int, m: int) -> int:
    _check_lemma(p, m)
    if m % 2:
        return 0
    return (-1) ** (m - 1) * even_sign(p, m) * (p - 1) * p ** (m // 2)


def predicted_lemma7(p: int, m: int, eta_class: int, rho_is_zero: bool) -> int:
    """Closed form of the (y, z, x) triple sum; eta_class is Legendre(Tr(a^2))."""
    _check_lemma(p, m)
    _check_class(eta_class)
    if m % 2:
        s = odd_sign(p, m)
        if eta_class == 0:
            return 0
        top = p ** ((m + 1) // 2)
        return s * (p - 1) * top * eta_class if rho_is_zero else -s * top * eta_class
    e = even_sign(p, m)
    half = p ** (m // 2)
    if eta_class == 0:
        return -e * (p - 1) ** 2 * half if rho_is_zero else e * (p - 1) * half
    return e * (p - 1) * half if rho_is_zero else -e * half


def predicted_Na_rho(p: int, m: int, eta_class: int, rho_is_zero: bool) -> int:
    """#{x : Tr(x^2) = 0, Tr(ax) = rho} from the class of Tr(a^2) and whether rho = 0."""
    _check_theorem(p, m)
    _check_class(eta_class)
    base = p ** (m - 2)
    if m % 2:
        s = odd_sign(p, m)
        c = p ** ((m - 3) // 2)
        if eta_class == 0:
            return base
        return base + s * (p - 1) * c * eta_class if rho_is_zero else base - s * c * eta_class
    e = even_sign(p, m)
    c = p ** ((m - 2) // 2)
    if eta_class == 0:
        return base - e * (p - 1) * c if rho_is_zero else base
    return base if rho_is_zero else base - e * c


def predicted_ti(p: int, m: int) -> tuple[int, int, int]:
    """(t_0, t_1, t_-1): nonzero x split by Legendre(Tr(x^2)), odd m only."""
    _check_lemma(p, m)
    if m % 2 == 0:
        raise ParameterError("t_i counts require odd m")
    s = odd_sign(p, m)
    h = (p - 1) // 2
    big, small = p ** (m - 1), p ** ((m - 1) // 2)
    return big - 1, h * (big + s * small), h * (big - s * small)


def quadratic_form_count(
    ctx_base: FieldContext, coeffs: Sequence[FieldElement | int], b: FieldElement | int
) -> int:
    """Solutions of sum c_i x_i^2 = b over F_q (q = p^t) for nonzero c_i."""
    cs = [c if isinstance(c, FieldElement) else ctx_base.element([c] + [0] * (ctx_base.m - 1)) for c in coeffs]
    if not isinstance(b, FieldElement):
        b = ctx_base.element([b] + [0] * (ctx_base.m - 1))
    if not cs:
        raise ParameterError("need at least one coefficient")
    if any(c.is_zero() for c in cs):
        raise ParameterError("quadratic form must be nondegenerate (zero coefficient)")
    q, l = ctx_base.order, len(cs)
    det = ctx_base.one
    for c in cs:
        det = det * c
    sign = ctx_base.one if (l // 2) % 2 == 0 else -ctx_base.one
    if l % 2 == 0:
        eta = quadratic_character(ctx_base, sign * det)
        return q ** (l - 1) + nu(q, b.is_zero()) * q ** ((l - 2) // 2) * eta
    eta = quadratic_character(ctx_base, sign * b * det)
    return q ** (l - 1) + q ** ((l - 1) // 2) * eta


def lemma3_exponential_sum(
    ctx: FieldContext, a2: FieldElement, a1: FieldElement, a0: FieldElement
) -> CyclotomicInt:
    """Sum of zeta^Tr(a2 x^2 + a1 x + a0) over the whole field, by enumeration."""
    if a2.is_zero():
        raise ParameterError("leading coefficient a2 must be nonzero")
    check_capacity(ctx.order, ENUMERATION_CAP, "lemma3_exponential_sum")
    # Tr is F_p-linear: Tr(a2 x^2) + Tr(a1 x) + Tr(a0), each term over the whole field
    exponents = ctx.trace_products(a2.coords, ctx.squares_coords) + ctx.trace_products(a1.coords)
    return additive_character_sum(ctx, exponents + trace(ctx, a0))


def lemma3_closed_form(
    ctx: FieldContext, a2: FieldElement, a1: FieldElement, a0: FieldElement
) -> CyclotomicInt:
    """zeta^Tr(a0 - a1^2/(4 a2)) * eta(a2) * G, multiplied out in Z[zeta_p]."""
    if a2.is_zero():
        raise ParameterError("leading coefficient a2 must be nonzero")
    shift = a0 - a1 * a1 / (a2 * 4)
    return root_power(ctx.p, trace(ctx, shift)) * quadratic_character(ctx, a2) * gauss_sum(ctx).exact


# --- theorems: complete weight enumerators -------------------------------------


def _families(p: int, m: int) -> list[tuple[int, int, int]]:
    """(multiplicity, count of symbol 0, count of each other symbol) per C_D codeword family."""
    _check_theorem(p, m)
    if m % 2:
        n = p ** (m - 1) - 1
        a, c = p ** (m - 2), p ** ((m - 3) // 2)
        h = (p - 1) // 2
        return [
            (1, n, 0),
            (p ** (m - 1) - 1, a - 1, a),
            (h * (p ** (m - 1) + p ** ((m - 1) // 2)), a - 1 + (p - 1) * c, a - c),
            (h * (p ** (m - 1) - p ** ((m - 1) // 2)), a - 1 - (p - 1) * c, a + c),
        ]
    e = even_sign(p, m)
    a, c = p ** (m - 2), p ** ((m - 2) // 2)
    n = p ** (m - 1) - 1 - e * (p - 1) * c
    return [
        (1, n, 0),
        (n, a - 1 - e * (p - 1) * c, a),
        ((p - 1) * (p ** (m - 1) + e * c), a - 1, a - e * c),
    ]


def _enumerator(p: int, m: int, shifts: range) -> CompleteWeightEnumerator:
    counter: Counter[tuple[int, ...]] = Counter()
    for mult, k0, k in _families(p, m):
        if mult == 0:
            continue
        for b in shifts:
            comp = [k] * p
            comp[b] = k0
            counter[tuple(comp)] += mult
    return CompleteWeightEnumerator.from_counter(p, predicted_length(p, m), counter)


def predicted_cwe_CD(p: int, m: int) -> CompleteWeightEnumerator:
    return _enumerator(p, m, range(1))


def predicted_cwe_CDb(p: int, m: int) -> CompleteWeightEnumerator:
    return _enumerator(p, m, range(p))


# --- corollaries: weight distribution tables -----------------------------------


def _merge(rows: list[tuple[int, int]]) -> WeightDistribution:
    entries: Counter[int] = Counter()
    for weight, mult in rows:
        if mult:
            entries[weight] += mult
    return WeightDistribution(dict(entries))


def table_rows_CD(p: int, m: int) -> list[tuple[int, int]]:
    """(weight, multiplicity) rows of the C_D table before merging."""
    _check_theorem(p, m)
    h = (p - 1) // 2
    if m % 2:
        c = p ** ((m - 3) // 2)
        return [
            (0, 1),
            ((p - 1) * (p ** (m - 2) - c), h * (p ** (m - 1) + p ** ((m - 1) // 2))),
            ((p - 1) * p ** (m - 2), p ** (m - 1) - 1),
            ((p - 1) * (p ** (m - 2) + c), h * (p ** (m - 1) - p ** ((m - 1) // 2))),
        ]
    e = even_sign(p, m)
    c = p ** ((m - 2) // 2)
    return [
        (0, 1),
        ((p - 1) * p ** (m - 2), p ** (m - 1) - e * (p - 1) * c - 1),
        ((p - 1) * (p ** (m - 2) - e * c), (p - 1) * (p ** (m - 1) + e * c)),
    ]


def table_rows_CDb(p: int, m: int) -> list[tuple[int, int]]:
    """(weight, multiplicity) rows of the C_{D,b} table before merging."""
    _check_theorem(p, m)
    if m % 2:
        c = p ** ((m - 3) // 2)
        big, mid = p ** (m - 1), p ** ((m - 1) // 2)
        return [
            (0, 1),
            (big - 1, p - 1),
            ((p - 1) * p ** (m - 2), big - 1),
            ((p - 1) * p ** (m - 2) - 1, (p - 1) * (big - 1)),
            ((p - 1) * (p ** (m - 2) - c), (p - 1) * (big + mid) // 2),
            ((p - 1) * p ** (m - 2) + c - 1, (p - 1) ** 2 * (big + mid) // 2),
            ((p - 1) * (p ** (m - 2) + c), (p - 1) * (big - mid) // 2),
            ((p - 1) * p ** (m - 2) - c - 1, (p - 1) ** 2 * (big - mid) // 2),
        ]
    e = even_sign(p, m)
    c = p ** ((m - 2) // 2)
    n = p ** (m - 1) - 1 - e * (p - 1) * c
    return [
        (0, 1),
        (n, p - 1),
        ((p - 1) * p ** (m - 2), n),
        ((p - 1) * (p ** (m - 2) - e * c) - 1, (p - 1) * n),
        ((p - 1) * (p ** (m - 2) - e * c), (p - 1) * (p ** (m - 1) + e * c)),
        ((p - 1) * p ** (m - 2) - (p - 2) * e * c - 1, (p - 1) ** 2 * (p ** (m - 1) + e * c)),
    ]


def predicted_wd_CD(p: int, m: int) -> WeightDistribution:
    return _merge(table_rows_CD(p, m))


def predicted_wd_CDb(p: int, m: int) -> WeightDistribution:
    return _merge(table_rows_CDb(p, m))
