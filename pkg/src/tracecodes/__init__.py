"""Trace codes C_D and C_{D,b} from the quadric Tr(x^2) = 0 over F_{p^m}.

Brute-force complete weight enumerators, their closed forms, and exact
character-sum checks behind them.
"""

from __future__ import annotations

from .codes import (
    CodeSpec,
    CompleteWeightEnumerator,
    DefiningSet,
    Variant,
    WeightDistribution,
    brute_force_cwe,
    build_defining_set,
    code_dimension,
    weight_distribution,
)
from .cyclotomic import CyclotomicInt, gauss_sum
from .errors import CapacityError, InvariantViolation, ParameterError
from .formulas import predicted_cwe_CD, predicted_cwe_CDb, predicted_wd_CD, predicted_wd_CDb
from .galois import FieldContext, FieldElement, build_field, trace

__version__ = "0.1.0"
