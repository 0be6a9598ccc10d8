"""Exception types shared across the package."""

from __future__ import annotations


class ParameterError(ValueError):
    """Invalid input parameters (bad prime, gcd violation, parity, ...)."""


class CapacityError(RuntimeError):
    """An enumeration would exceed its configured size cap."""


class InvariantViolation(AssertionError):
    """An internal arithmetic invariant failed; signals a bug, not bad input."""


# Field enumeration refuses p^m above this; triple sums use TRIPLE_SUM_CAP on p^(m+2).
ENUMERATION_CAP = 2_000_000
TRIPLE_SUM_CAP = 20_000_000


def check_capacity(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise CapacityError(f"{what}: {size} exceeds cap {cap}")
