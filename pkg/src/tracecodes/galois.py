"""Arithmetic in the prime field F_p and its extensions F_{p^m}.

Elements of F_{p^m} are coordinate vectors in the power basis
1, u, ..., u^(m-1) of a root u of the field modulus.  Prime-field
elements are plain ``int`` residues in ``range(p)``.

Besides the scalar :class:`FieldElement` API, :class:`FieldContext` carries a
vectorized layer (``*_coords`` methods) operating on ``(N, m)`` numpy arrays of
coordinates.  Whole-field sweeps go through that layer; the scalar API is the
reference it is tested against.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import ENUMERATION_CAP, ParameterError, check_capacity


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --- polynomials over F_p, coefficient lists low-to-high -------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo f over F_p (f need not be monic)."""
    a = _trim([c % p for c in a])
    f = _trim([c % p for c in f])
    if not f:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(f[-1], -1, p)
    df = len(f) - 1
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return poly_mod(prod, f, p)


def poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return poly_mod(result, f, p)


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin-style test: f has no factor of degree k <= deg(f)/2.

    Uses gcd(f, x^(p^k) - x) == 1 for k = 1..deg(f)//2.
    """
    f = _trim([c % p for c in f])
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    xk = [0, 1]
    for _ in range(deg // 2):
        xk = poly_powmod(xk, p, f, p)
        diff = list(xk) + [0] * max(0, 2 - len(xk))
        diff[1] = (diff[1] - 1) % p
        if len(poly_gcd(f, diff, p)) != 1:
            return False
    return True


# --- field context -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldContext:
    """The field F_{p^m} presented as F_p[u]/(modulus)."""

    p: int
    m: int
    modulus: tuple[int, ...]  # length m+1, low-to-high, monic
    _weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ParameterError("modulus must be monic of degree m")
        if not is_irreducible(self.modulus, self.p):
            raise ParameterError(f"modulus {self.modulus} is reducible over F_{self.p}")
        # coordinate 0 is the most significant digit of an element's index
        weights = np.array([self.p ** (self.m - 1 - i) for i in range(self.m)], dtype=np.int64)
        object.__setattr__(self, "_weights", weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldContext):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    @property
    def order(self) -> int:
        return self.p**self.m

    # scalar constructors

    def element(self, coords: Sequence[int]) -> FieldElement:
        if len(coords) != self.m:
            raise ParameterError(f"expected {self.m} coordinates, got {len(coords)}")
        return FieldElement(self, tuple(int(c) % self.p for c in coords))

    def from_index(self, index: int) -> FieldElement:
        if not 0 <= index < self.order:
            raise ParameterError(f"index {index} out of range for F_{self.p}^{self.m}")
        digits = []
        for _ in range(self.m):
            index, r = divmod(index, self.p)
            digits.append(r)
        return FieldElement(self, tuple(reversed(digits)))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.m)

    @property
    def one(self) -> FieldElement:
        return embed_prime(self, 1)

    def random_element(self, rng: np.random.Generator, nonzero: bool = False) -> FieldElement:
        lo = 1 if nonzero else 0
        return self.from_index(int(rng.integers(lo, self.order)))

    # reduction of u^k, k in [0, 2m-2], back into the power basis

    @cached_property
    def reduction(self) -> np.ndarray:
        p, m = self.p, self.m
        rows = []
        cur = [1] + [0] * (m - 1)
        for _ in range(2 * m - 1):
            rows.append(list(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * mc) % p for c, mc in zip(cur, self.modulus[:-1])]
        out = np.array(rows, dtype=np.int64)
        out.flags.writeable = False
        return out

    @cached_property
    def trace_vector(self) -> np.ndarray:
        """Tr(u^i) for i < m, computed by Frobenius expansion."""
        basis = [self.element([int(i == j) for j in range(self.m)]) for i in range(self.m)]
        out = np.array([trace(self, b) for b in basis], dtype=np.int64)
        out.flags.writeable = False
        return out

    @cached_property
    def trace_form(self) -> np.ndarray:
        """Matrix T with T[i, j] = Tr(u^(i+j)); Tr(a*b) = a T b^t."""
        tr_powers = self.reduction @ self.trace_vector % self.p
        m = self.m
        out = np.array([[tr_powers[i + j] for j in range(m)] for i in range(m)], dtype=np.int64)
        out.flags.writeable = False
        return out

    @cached_property
    def coords_table(self) -> np.ndarray:
        """All field elements as an (order, m) array, row i = element of index i."""
        check_capacity(self.order, ENUMERATION_CAP, f"enumerating F_{self.p}^{self.m}")
        idx = np.arange(self.order, dtype=np.int64)
        out = (idx[:, None] // self._weights[None, :]) % self.p
        out.flags.writeable = False
        return out

    # vectorized layer

    def index_of(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(coords, dtype=np.int64) @ self._weights

    def mul_coords(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        m = self.m
        conv = np.zeros(a.shape[:-1] + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            conv[..., i : i + m] += a[..., i : i + 1] * b
        return (conv % self.p) @ self.reduction % self.p

    def pow_coords(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        result = np.zeros_like(a)
        result[..., 0] = 1
        while e:
            if e & 1:
                result = self.mul_coords(result, a)
            a = self.mul_coords(a, a)
            e >>= 1
        return result

    def trace_coords(self, a: np.ndarray) -> np.ndarray:
        return np.asarray(a, dtype=np.int64) @ self.trace_vector % self.p

    def trace_products(self, a: Sequence[int], x: np.ndarray | None = None) -> np.ndarray:
        """Tr(a*x) for every row x (default: every field element), as a linear functional."""
        functional = self.trace_form @ np.asarray(a, dtype=np.int64) % self.p
        rows = self.coords_table if x is None else np.asarray(x, dtype=np.int64)
        return rows @ functional % self.p

    def eta_coords(self, a: np.ndarray) -> np.ndarray:
        """Quadratic character of each row, by exponentiation to (q-1)/2."""
        a = np.asarray(a, dtype=np.int64)
        r = self.pow_coords(a, (self.order - 1) // 2)
        rest_zero = ~r[..., 1:].any(axis=-1)
        out = np.full(a.shape[:-1], 0, dtype=np.int64)
        out[rest_zero & (r[..., 0] == 1)] = 1
        out[rest_zero & (r[..., 0] == self.p - 1)] = -1
        zero = ~a.any(axis=-1)
        if ((out == 0) != zero).any():
            raise ArithmeticError("x^((q-1)/2) not in {0, 1, -1}")
        return out

    @cached_property
    def squares_coords(self) -> np.ndarray:
        """x^2 for every element, in index order."""
        table = self.coords_table
        out = self.mul_coords(table, table)
        out.flags.writeable = False
        return out

    @cached_property
    def squares_trace(self) -> np.ndarray:
        """Tr(x^2) for every element, in index order."""
        out = self.trace_coords(self.squares_coords)
        out.flags.writeable = False
        return out


class FieldElement:
    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: FieldContext, coords: tuple[int, ...]) -> None:
        self.ctx = ctx
        self.coords = coords

    def _coerce(self, other: object) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ParameterError("field elements from different contexts")
            return other
        if isinstance(other, (int, np.integer)):
            return embed_prime(self.ctx, int(other))
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> FieldElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((x + y) % p for x, y in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        p = self.ctx.p
        return FieldElement(self.ctx, tuple(-x % p for x in self.coords))

    def __sub__(self, other: object) -> FieldElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> FieldElement:
        return (-self) + other

    def __mul__(self, other: object) -> FieldElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        ctx = self.ctx
        p, m = ctx.p, ctx.m
        conv = [0] * (2 * m - 1)
        for i, x in enumerate(self.coords):
            if x:
                for j, y in enumerate(o.coords):
                    conv[i + j] += x * y
        red = ctx.reduction
        out = [0] * m
        for k, c in enumerate(conv):
            if c:
                row = red[k]
                for j in range(m):
                    out[j] += c * int(row[j])
        return FieldElement(ctx, tuple(c % p for c in out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a field")
        return self ** (self.ctx.order - 2)

    def __truediv__(self, other: object) -> FieldElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.coords == other.coords
        if isinstance(other, int):
            return self == embed_prime(self.ctx, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.ctx.m, self.coords))

    @property
    def index(self) -> int:
        i = 0
        for c in self.coords:
            i = i * self.ctx.p + c
        return i

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coords):
            if c:
                mono = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
                terms.append(mono if c == 1 and mono else f"{c}{mono}")
        return " + ".join(terms) or "0"


# --- public operations -------------------------------------------------------


@lru_cache(maxsize=None)
def build_field(p: int, m: int) -> FieldContext:
    """Deterministic presentation of F_{p^m}.

    The modulus is the first monic irreducible polynomial of degree m when the
    non-leading coefficients are compared low-degree-first.
    """
    if not isinstance(p, int) or p % 2 == 0 or not is_prime(p):
        raise ParameterError("p must be an odd prime")
    if not isinstance(m, int) or m < 1:
        raise ParameterError("m must be a positive integer")
    if m == 1:
        return FieldContext(p, 1, (0, 1))
    # a zero constant term means x divides the candidate, so those are skipped outright
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=m - 1):
            modulus = (c0,) + rest + (1,)
            if is_irreducible(modulus, p):
                return FieldContext(p, m, modulus)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def trace(ctx: FieldContext, x: FieldElement) -> int:
    """Absolute trace x + x^p + ... + x^(p^(m-1)), as a residue mod p."""
    if x.ctx != ctx:
        raise ParameterError("element does not belong to this field")
    total = x
    y = x
    for _ in range(ctx.m - 1):
        y = y**ctx.p
        total = total + y
    if any(total.coords[1:]):
        raise ArithmeticError(f"trace {total!r} not in the prime field")
    return total.coords[0]


def quadratic_character(ctx: FieldContext, x: FieldElement) -> int:
    if x.ctx != ctx:
        raise ParameterError("element does not belong to this field")
    if x.is_zero():
        return 0
    r = x ** ((ctx.order - 1) // 2)
    if r == ctx.one:
        return 1
    if r == -ctx.one:
        return -1
    raise ArithmeticError(f"x^((q-1)/2) = {r!r} is not +-1")


def enumerate_field(ctx: FieldContext) -> Iterator[FieldElement]:
    """All elements in lexicographic coordinate order, starting at 0."""
    check_capacity(ctx.order, ENUMERATION_CAP, f"enumerating F_{ctx.p}^{ctx.m}")
    for coords in itertools.product(range(ctx.p), repeat=ctx.m):
        yield FieldElement(ctx, coords)


def embed_prime(ctx: FieldContext, v: int) -> FieldElement:
    return FieldElement(ctx, (v % ctx.p,) + (0,) * (ctx.m - 1))


def prime_character(p: int, v: int) -> int:
    """Legendre symbol of v modulo p."""
    v %= p
    if v == 0:
        return 0
    return 1 if pow(v, (p - 1) // 2, p) == 1 else -1
