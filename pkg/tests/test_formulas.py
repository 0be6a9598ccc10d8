from __future__ import annotations

import itertools
from collections import Counter

import numpy as np
import pytest
from golden import (
    EXAMPLE_1I_CWE,
    EXAMPLE_1I_WE,
    EXAMPLE_1II_CWE,
    EXAMPLE_1II_WE,
    EXAMPLE_2I_CWE,
    EXAMPLE_2I_WE,
    EXAMPLE_2II_CWE,
    EXAMPLE_2II_WE,
    parse_cwe,
    parse_we,
)

from tracecodes.checks import quadratic_form_histogram
from tracecodes.codes import (
    CodeSpec,
    Variant,
    brute_force_cwe,
    build_defining_set,
    count_n0,
    count_Na_all,
    count_ti,
    weight_distribution,
)
from tracecodes.cyclotomic import CyclotomicInt, gauss_sum, root_power
from tracecodes.errors import ParameterError
from tracecodes.formulas import (
    even_sign,
    lemma3_closed_form,
    lemma3_exponential_sum,
    odd_sign,
    odd_sign_unreduced,
    predicted_cwe_CD,
    predicted_cwe_CDb,
    predicted_length,
    predicted_n0,
    predicted_Na_rho,
    predicted_ti,
    predicted_wd_CD,
    predicted_wd_CDb,
    quadratic_form_count,
    table_rows_CD,
    table_rows_CDb,
)
from tracecodes.galois import build_field, enumerate_field, prime_character, trace

GRID = [(p, m) for p in (3, 5, 7, 11) for m in range(2, 7) if p**m <= 200_000]
WIDE = [(p, m) for p in (3, 5, 7, 11, 13, 17, 19, 23) for m in range(2, 9)]


# --- signs -----------------------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31])
@pytest.mark.parametrize("m", [1, 3, 5, 7, 9, 11])
def test_odd_sign_identity(p, m):
    # the reduced exponent ((m-1)/2)((p-1)/2) and the unreduced one give the same sign
    assert odd_sign(p, m) == odd_sign_unreduced(p, m)


def test_even_sign_values():
    assert even_sign(3, 2) == -1
    assert even_sign(3, 4) == 1
    assert even_sign(5, 2) == 1
    assert even_sign(7, 6) == -1


# --- lemma-level closed forms ----------------------------------------------------


def test_n0_examples():
    assert predicted_n0(3, 5) == 81
    assert predicted_n0(3, 2) == 5
    assert predicted_n0(5, 4) == 105
    assert predicted_length(3, 5) == 80


@pytest.mark.parametrize("p,m", [(p, m) for p in (3, 5, 7, 11) for m in range(1, 7) if p**m <= 200_000])
def test_n0_matches_count(p, m):
    assert count_n0(build_field(p, m)) == predicted_n0(p, m)


def test_na_rho_examples():
    assert predicted_Na_rho(3, 2, 1, False) == 2
    assert predicted_Na_rho(3, 3, 0, True) == 3 and predicted_Na_rho(3, 3, 0, False) == 3
    assert predicted_Na_rho(3, 3, 1, True) == 1
    assert predicted_Na_rho(5, 5, 0, False) == 5**3


@pytest.mark.parametrize("p,m", GRID)
def test_na_rho_matches_count(p, m):
    ctx = build_field(p, m)
    elements = (
        list(enumerate_field(ctx))[1:]
        if ctx.order <= 243
        else [ctx.random_element(np.random.default_rng([p, m, k]), nonzero=True) for k in range(50)]
    )
    for a in elements:
        cls = prime_character(p, trace(ctx, a * a))
        counts = count_Na_all(ctx, a)
        for rho in range(p):
            assert counts[rho] == predicted_Na_rho(p, m, cls, rho == 0)


def test_ti_examples():
    assert predicted_ti(3, 3) == (8, 6, 12)
    assert predicted_ti(5, 3)[0] == 24
    with pytest.raises(ParameterError):
        predicted_ti(3, 4)


@pytest.mark.parametrize("p,m", [(p, m) for p, m in GRID if m % 2] + [(3, 1), (5, 1), (7, 1)])
def test_ti_matches_count(p, m):
    assert count_ti(build_field(p, m)) == predicted_ti(p, m)


@pytest.mark.parametrize("p,m", WIDE)
def test_ti_partition(p, m):
    if m % 2:
        assert sum(predicted_ti(p, m)) == p**m - 1


def test_bad_eta_class():
    with pytest.raises(ParameterError):
        predicted_Na_rho(3, 3, 2, True)


# --- Lemma 1: diagonal quadratic forms -------------------------------------------


def test_lemma1_examples():
    f3 = build_field(3, 1)
    assert quadratic_form_count(f3, [1, 1], 0) == 1
    assert quadratic_form_count(f3, [1], 1) == 2
    for p in (3, 5, 7, 11):
        assert quadratic_form_count(build_field(p, 1), [1], 0) == 1


def test_lemma1_rejects_degenerate_forms():
    f3 = build_field(3, 1)
    with pytest.raises(ParameterError):
        quadratic_form_count(f3, [1, 0], 1)
    with pytest.raises(ParameterError):
        quadratic_form_count(f3, [], 1)


def _count_solutions(ctx, coeffs, b):
    count = 0
    for xs in itertools.product(list(enumerate_field(ctx)), repeat=len(coeffs)):
        total = ctx.zero
        for c, x in zip(coeffs, xs):
            total = total + c * x * x
        count += total == b
    return count


def test_lemma1_histogram_matches_scalar_enumeration():
    ctx = build_field(3, 2)
    coeffs = [ctx.element([1, 2]), ctx.element([2, 0])]
    hist = quadratic_form_histogram(ctx, coeffs)
    for b in enumerate_field(ctx):
        assert hist[b.index] == _count_solutions(ctx, coeffs, b)


@pytest.mark.parametrize("p,t", [(3, 1), (5, 1), (7, 1), (3, 2)])
@pytest.mark.parametrize("l", [1, 2, 3, 4, 5])
def test_lemma1_exhaustive(p, t, l):
    ctx = build_field(p, t)
    if ctx.order**l > 200_000:
        pytest.skip("q^l above the enumeration cap")
    rng = np.random.default_rng([p, t, l])
    for _ in range(20):
        coeffs = [ctx.random_element(rng, nonzero=True) for _ in range(l)]
        hist = quadratic_form_histogram(ctx, coeffs)
        for b in enumerate_field(ctx):
            assert hist[b.index] == quadratic_form_count(ctx, coeffs, b)


# --- Lemma 3 ---------------------------------------------------------------------


def _lemma3_literal(ctx, a2, a1, a0):
    total = CyclotomicInt.integer(ctx.p, 0)
    for x in enumerate_field(ctx):
        total = total + root_power(ctx.p, trace(ctx, a2 * x * x + a1 * x + a0))
    return total


def test_lemma3_f3_example():
    ctx = build_field(3, 1)
    one, zero = ctx.one, ctx.zero
    g = gauss_sum(ctx).exact
    expected = root_power(3, 2) * g  # zeta^(-1/4) with -1/4 = 2 in F_3
    assert lemma3_exponential_sum(ctx, one, one, zero) == expected
    assert lemma3_closed_form(ctx, one, one, zero) == expected
    assert expected.coeffs == (1, -1)


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (5, 1), (7, 1), (3, 3), (5, 2)])
def test_lemma3_pure_square_is_gauss_sum(p, m):
    ctx = build_field(p, m)
    assert lemma3_exponential_sum(ctx, ctx.one, ctx.zero, ctx.zero) == gauss_sum(ctx).exact


def test_lemma3_f9_sampled():
    ctx = build_field(3, 2)
    rng = np.random.default_rng(9)
    for _ in range(100):
        a2 = ctx.random_element(rng, nonzero=True)
        a1, a0 = ctx.random_element(rng), ctx.random_element(rng)
        value = lemma3_exponential_sum(ctx, a2, a1, a0)
        assert value == lemma3_closed_form(ctx, a2, a1, a0)
        assert value == _lemma3_literal(ctx, a2, a1, a0)


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (7, 2)])
def test_lemma3_exhaustive(p, m):
    ctx = build_field(p, m)
    rng = np.random.default_rng(1)
    for a2 in list(enumerate_field(ctx))[1:]:
        for a1 in enumerate_field(ctx):
            a0 = ctx.random_element(rng)
            assert lemma3_exponential_sum(ctx, a2, a1, a0) == lemma3_closed_form(ctx, a2, a1, a0)


@pytest.mark.parametrize("p,m", [(3, 5), (5, 3), (11, 2), (7, 3)])
def test_lemma3_sampled(p, m):
    ctx = build_field(p, m)
    rng = np.random.default_rng([p, m])
    for _ in range(100):
        a2 = ctx.random_element(rng, nonzero=True)
        a1, a0 = ctx.random_element(rng), ctx.random_element(rng)
        assert lemma3_exponential_sum(ctx, a2, a1, a0) == lemma3_closed_form(ctx, a2, a1, a0)


def test_lemma3_rejects_zero_leading_coefficient():
    ctx = build_field(3, 2)
    with pytest.raises(ParameterError):
        lemma3_exponential_sum(ctx, ctx.zero, ctx.one, ctx.one)
    with pytest.raises(ParameterError):
        lemma3_closed_form(ctx, ctx.zero, ctx.one, ctx.one)


# --- enumerators and tables: published examples ----------------------------------


def test_cd_example_1i():
    assert predicted_cwe_CD(3, 5).terms == parse_cwe(EXAMPLE_1I_CWE, 3)
    assert predicted_wd_CD(3, 5).entries == parse_we(EXAMPLE_1I_WE)


def test_cd_example_1ii():
    assert predicted_cwe_CD(5, 4).terms == parse_cwe(EXAMPLE_1II_CWE, 5)
    assert predicted_wd_CD(5, 4).entries == parse_we(EXAMPLE_1II_WE)


def test_cdb_example_2i():
    cwe = predicted_cwe_CDb(3, 5)
    assert len(cwe.terms) == 12
    assert cwe.terms == parse_cwe(EXAMPLE_2I_CWE, 3)
    assert predicted_wd_CDb(3, 5).entries == parse_we(EXAMPLE_2I_WE)


def test_cdb_example_2ii():
    assert predicted_cwe_CDb(3, 4).terms == parse_cwe(EXAMPLE_2II_CWE, 3)
    assert predicted_wd_CDb(3, 4).entries == parse_we(EXAMPLE_2II_WE)


def test_f9_enumerators():
    assert predicted_cwe_CD(3, 2).terms == {(4, 0, 0): 1, (2, 1, 1): 4, (0, 2, 2): 4}
    assert predicted_wd_CD(3, 2).entries == {0: 1, 2: 4, 4: 4}
    cdb = predicted_cwe_CDb(3, 2)
    assert cdb.total == 27
    expected = Counter()
    for b in range(3):
        for comp, mult in ((4, 0, 0), 1), ((2, 1, 1), 4), ((0, 2, 2), 4):
            expected[tuple(comp[(j - b) % 3] for j in range(3))] += mult
    assert cdb.terms == dict(expected)


def test_f9_cdb_table_merges_rows():
    rows = table_rows_CDb(3, 2)
    assert sum(1 for w, c in rows if w == 4 and c) == 2
    assert predicted_wd_CDb(3, 2).entries == {0: 1, 2: 12, 3: 8, 4: 6}


@pytest.mark.parametrize("p,m", [(3, 1), (3, 0), (4, 3)])
def test_theorem_parameter_checks(p, m):
    with pytest.raises(ParameterError):
        predicted_cwe_CD(p, m)


# --- enumerators: brute force versus closed form on the grid ----------------------


@pytest.mark.parametrize("p,m", GRID)
def test_cd_matches_brute_force(p, m):
    ctx = build_field(p, m)
    spec = CodeSpec(p, m)
    brute = brute_force_cwe(ctx, spec, build_defining_set(ctx, spec))
    assert brute.diff(predicted_cwe_CD(p, m)) == []


@pytest.mark.parametrize("p,m", GRID)
def test_cdb_matches_brute_force(p, m):
    ctx = build_field(p, m)
    spec = CodeSpec(p, m, 1, Variant.CDB)
    brute = brute_force_cwe(ctx, spec, build_defining_set(ctx, spec))
    assert brute.diff(predicted_cwe_CDb(p, m)) == []


@pytest.mark.parametrize("p,m", WIDE)
def test_tables_follow_from_enumerators(p, m):
    assert weight_distribution(predicted_cwe_CD(p, m)) == predicted_wd_CD(p, m)
    assert weight_distribution(predicted_cwe_CDb(p, m)) == predicted_wd_CDb(p, m)


@pytest.mark.parametrize("p,m", WIDE)
def test_predicted_totals(p, m):
    assert predicted_cwe_CD(p, m).total == p**m
    assert predicted_cwe_CDb(p, m).total == p ** (m + 1)
    assert sum(c for _, c in table_rows_CD(p, m)) == p**m
    assert sum(c for _, c in table_rows_CDb(p, m)) == p ** (m + 1)


@pytest.mark.parametrize("p,m", GRID)
def test_number_of_nonzero_weights(p, m):
    # at most 7 (odd m) or 5 (even m) nonzero weights for C_Db; fewer only when rows merge or vanish
    weights = predicted_wd_CDb(p, m).nonzero_weights()
    bound = 7 if m % 2 else 5
    assert len(weights) <= bound
    distinct_rows = {w for w, c in table_rows_CDb(p, m) if c and w}
    assert len(weights) == len(distinct_rows)
