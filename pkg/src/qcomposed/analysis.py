"""Closed-form bound calculators for symmetric outer functions.

All bounds are reported as the representative of their asymptotic class
with every hidden constant set to 1.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Sequence

from .core import InputError, bits, compute_l0_l1 as _scan, middle_bounds


def _table(D: Sequence[int], n: int | None = None) -> tuple[int, ...]:
    D = bits(D)
    if not D:
        raise InputError("spectrum must have at least one entry")
    if n is not None and len(D) != n + 1:
        raise InputError(f"spectrum has {len(D)} entries, expected n+1 = {n + 1}")
    return D


def compute_l0_l1(D: Sequence[int], n: int | None = None) -> tuple[int, int]:
    return _scan(_table(D, n))


def query_bound(D: Sequence[int], n: int | None = None) -> float:
    D = _table(D, n)
    l0, l1 = _scan(D)
    return math.sqrt((len(D) - 1) * (l0 + l1))


def razborov_bound(D: Sequence[int], n: int | None = None) -> float:
    D = _table(D, n)
    l0, l1 = _scan(D)
    return math.sqrt((len(D) - 1) * l0) + l1


@dataclass(frozen=True)
class FoolingBound:
    size: int
    log_size: float
    kremer: float  # log2 of log_size: the quantum lower bound obtained from it


def fooling_set_bound(D: Sequence[int], n: int | None = None) -> FoolingBound:
    D = _table(D, n)
    n = len(D) - 1
    _, l1 = _scan(D)
    if l1 < 1:
        return FoolingBound(0, 0.0, 0.0)
    size = math.comb(n, l1 - 1)
    log_size = math.log2(size)
    return FoolingBound(size, log_size, math.log2(log_size) if log_size > 0 else 0.0)


def enumerate_fooling_set(n: int, l1: int) -> list[tuple[int, ...]]:
    """Every x with exactly ``l1 - 1`` zeros; the set consists of the pairs (x, x)."""
    if l1 < 1:
        return []
    out = []
    for zeros in combinations(range(n), l1 - 1):
        x = [1] * n
        for i in zeros:
            x[i] = 0
        out.append(tuple(x))
    return out


def fooling_property_holds(D: Sequence[int], members: Sequence[Sequence[int]]) -> bool:
    """Diagonal pairs evaluate to 1, every cross pair to 0 (f composed with AND)."""
    D = bits(D)

    def fa(x, y) -> int:
        return D[sum(a & b for a, b in zip(x, y))]

    if any(fa(x, x) != 1 for x in members):
        return False
    for a, b in combinations(members, 2):
        if fa(a, b) != 0 or fa(b, a) != 0:
            return False
    return True


def and_table(n: int) -> tuple[int, ...]:
    return tuple([0] * n + [1])


def nand_table(n: int) -> tuple[int, ...]:
    return tuple([1] * n + [0])


CONSTANT = "constant"
AND_LIKE = "AND-like"
NEG_AND_LIKE = "negAND-like"
GENERAL = "general"


@dataclass(frozen=True)
class PrivateLower:
    classification: str
    value: float
    theta_one: bool
    regime: str


def classify_and_private_lower(D: Sequence[int], n: int | None = None) -> PrivateLower:
    """Case split for the no-entanglement lower bound on f composed with AND.

    ``regime`` names the case that applied: ``l0>0``, ``l0=0,l1>1`` or
    ``middle-step`` (odd n with the only step at the centre, which neither
    change point records).
    """
    D = _table(D, n)
    n = len(D) - 1
    if len(set(D)) == 1:
        return PrivateLower(CONSTANT, 0.0, False, "constant")
    if D == and_table(n):
        return PrivateLower(AND_LIKE, 1.0, True, "trivial")
    if D == nand_table(n):
        return PrivateLower(NEG_AND_LIKE, 1.0, True, "trivial")
    l0, l1 = _scan(D)
    loglog = math.log2(math.log2(n)) if n > 2 else 0.0
    value = math.sqrt(n * l0) + l1 + loglog
    if l0 > 0:
        regime = "l0>0"
    elif l1 > 1:
        regime = "l0=0,l1>1"
    else:
        regime = "middle-step"
    return PrivateLower(GENERAL, value, False, regime)


def ceil_log2_log2(m: int) -> int:
    """Exact ceil(log2(log2(m))) for integer m >= 2 (0 for m <= 2)."""
    c = 0
    while (1 << (1 << c)) < m:
        c += 1
    return c


def newman_budget(n: int, l1: int) -> int:
    """ceil(log2(l1+1)) + ceil(log2(log2(n+1))) bits, computed exactly."""
    if n < 0 or l1 < 0:
        raise InputError("n and l1 must be non-negative")
    return (l1).bit_length() + ceil_log2_log2(n + 1)


@dataclass(frozen=True)
class AnalysisReport:
    n: int
    l0: int
    l1: int
    query_bound: float
    razborov: float
    fooling_log: float
    private_lower: float
    classification: str
    newman_bits: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def as_dict(self) -> dict:
        return asdict(self)


def analyze(D: Sequence[int], n: int | None = None) -> AnalysisReport:
    D = _table(D, n)
    n = len(D) - 1
    l0, l1 = _scan(D)
    cls = classify_and_private_lower(D)
    return AnalysisReport(
        n=n, l0=l0, l1=l1,
        query_bound=query_bound(D),
        razborov=razborov_bound(D),
        fooling_log=fooling_set_bound(D).log_size,
        private_lower=cls.value,
        classification=cls.classification,
        newman_bits=newman_budget(n, l1),
    )


__all__ = [
    "compute_l0_l1", "middle_bounds", "query_bound", "razborov_bound", "FoolingBound",
    "fooling_set_bound", "enumerate_fooling_set", "fooling_property_holds", "and_table",
    "nand_table", "PrivateLower", "classify_and_private_lower", "newman_budget",
    "ceil_log2_log2", "AnalysisReport", "analyze",
]
