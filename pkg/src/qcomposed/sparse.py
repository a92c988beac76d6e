"""Public-coin sparse set intersection by mutual bucket filtering.

Each round hashes the universe into ``B`` buckets with a fresh
multiply-shift function read from the shared tape.  Alice sends the
occupancy bitmap of her candidates and Bob keeps only candidates in
occupied buckets; then Bob does the same towards Alice.  Elements of the
true intersection share a bucket with themselves on both sides, so they are
never dropped.  A non-shared element survives one filtering with
probability at most ``k'/B = 1/64``.

The wrapper enforces a floor ``k0`` on the sparsity parameter and aborts
when the running cost would reach ``200 * C * k'``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .core import (ALICE, BOB, CLASSICAL, MASK64, InputError, Party, RandomTape, Session,
                   ceil_log2, support)

K0 = 8
BUCKETS_PER_ELEMENT = 64
ABORT_FACTOR = 200
ERROR_TARGET = 400  # spurious-survivor budget 1/200 over 2k' elements


class _Abort:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "ABORT"

    def __reduce__(self):
        return (_Abort, ())


ABORT = _Abort()


@dataclass(frozen=True)
class SparseConfig:
    k: int
    k0: int
    C: int
    T: int
    B: int

    @classmethod
    def for_k(cls, k: int, k0: int = K0, C: int | None = None) -> SparseConfig:
        if k < 0:
            raise InputError("sparsity bound must be non-negative")
        kp = max(k, k0, 1)
        B = 1 << ceil_log2(BUCKETS_PER_ELEMENT * kp)
        T = max(1, math.ceil(math.log2(ERROR_TARGET * kp) / math.log2(BUCKETS_PER_ELEMENT)))
        worst = 2 * T * B
        if C is None:
            C = -(-worst // (ABORT_FACTOR * kp)) + 1
        return cls(k, k0, C, T, B)

    @property
    def k_eff(self) -> int:
        return max(self.k, self.k0, 1)

    @property
    def threshold(self) -> int:
        return ABORT_FACTOR * self.C * self.k_eff

    @property
    def worst_case_bits(self) -> int:
        return 2 * self.T * self.B

    @property
    def log_buckets(self) -> int:
        return self.B.bit_length() - 1


@dataclass(frozen=True)
class SparseDetail:
    """Both parties' final candidate sets (or ABORT) and the bits spent."""

    alice: frozenset[int] | _Abort
    bob: frozenset[int] | _Abort
    bits: int

    @property
    def value(self):
        return self.alice


class _Budget:
    """Running cost counter compared against the abort threshold before each message."""

    def __init__(self, session: Session, threshold: int):
        self.session = session
        self.threshold = threshold
        self.spent = 0

    def send(self, speaker: Party, width: int, tag: str) -> bool:
        if self.spent + width > self.threshold:
            return False
        self.spent += width
        self.session.send(speaker, width, CLASSICAL, tag)
        return True


Base = Callable[[frozenset, frozenset, SparseConfig, RandomTape, "_Budget"],
                "tuple[frozenset, frozenset] | None"]


def bucket_filtering(A: frozenset[int], B_set: frozenset[int], cfg: SparseConfig,
                     tape: RandomTape, budget: _Budget):
    """The base protocol; returns the two candidate sets, or None on abort."""
    shift = 64 - cfg.log_buckets
    a_cand, b_cand = A, B_set
    for _ in range(cfg.T):
        mul = tape.draw_word() | 1
        add = tape.draw_word()
        if not budget.send(ALICE, cfg.B, "sparse-bitmap"):
            return None
        occ = {((mul * i + add) & MASK64) >> shift for i in a_cand}
        b_cand = frozenset(i for i in b_cand if ((mul * i + add) & MASK64) >> shift in occ)
        if not budget.send(BOB, cfg.B, "sparse-bitmap"):
            return None
        occ = {((mul * i + add) & MASK64) >> shift for i in b_cand}
        a_cand = frozenset(i for i in a_cand if ((mul * i + add) & MASK64) >> shift in occ)
    return a_cand, b_cand


def with_abort_budget(base: Base, k: int, k0: int = K0, C: int | None = None):
    """Wrap ``base`` with the sparsity floor ``k0`` and the cost-threshold abort."""
    cfg = SparseConfig.for_k(k, k0, C)

    def run(x_support: Iterable[int], y_support: Iterable[int], tape: RandomTape,
            session: Session) -> SparseDetail:
        A, B_set = frozenset(x_support), frozenset(y_support)
        if len(A) > cfg.k_eff or len(B_set) > cfg.k_eff:
            raise InputError(f"input has more than {cfg.k_eff} ones")
        budget = _Budget(session, cfg.threshold)
        out = base(A, B_set, cfg, tape, budget)
        if out is None:
            return SparseDetail(ABORT, ABORT, budget.spent)
        return SparseDetail(out[0], out[1], budget.spent)

    run.config = cfg
    return run


def _supports(x, y, k: int) -> tuple[frozenset[int], frozenset[int]]:
    if len(x) != len(y):
        raise InputError("inputs must have equal length")
    A, B_set = support(x), support(y)
    if len(A) > k or len(B_set) > k:
        raise InputError(f"sparsity violated: |x|={len(A)}, |y|={len(B_set)}, k={k}")
    return A, B_set


def sparse_intersect_detail(x, y, k: int, tape: RandomTape, session: Session,
                            k0: int = K0, C: int | None = None) -> SparseDetail:
    A, B_set = _supports(x, y, k)
    return with_abort_budget(bucket_filtering, k, k0, C)(A, B_set, tape, session)


def sparse_intersect(x, y, k: int, tape: RandomTape, session: Session,
                     k0: int = K0, C: int | None = None):
    """Indices where both ``x`` and ``y`` are 1, or ``ABORT``."""
    return sparse_intersect_detail(x, y, k, tape, session, k0, C).alice


def sparse_intersect_sets(A: frozenset[int], B_set: frozenset[int], cfg: SparseConfig,
                          tape: RandomTape, session: Session) -> SparseDetail:
    """Support-set entry point for callers that already hold the supports."""
    if len(A) > cfg.k or len(B_set) > cfg.k:
        raise InputError(f"sparsity violated: |A|={len(A)}, |B|={len(B_set)}, k={cfg.k}")
    budget = _Budget(session, cfg.threshold)
    out = bucket_filtering(A, B_set, cfg, tape, budget)
    if out is None:
        return SparseDetail(ABORT, ABORT, budget.spent)
    return SparseDetail(out[0], out[1], budget.spent)


__all__ = [
    "K0", "ABORT", "SparseConfig", "SparseDetail", "bucket_filtering", "with_abort_budget",
    "sparse_intersect", "sparse_intersect_detail", "sparse_intersect_sets",
]
