"""Composed-function protocols.

``compute_composed`` evaluates f(G(X_1,Y_1), ..., G(X_n,Y_n)) for a
symmetric f by counting marked coordinates from each end only as far as
f's outermost change points.  ``compute_sym_and`` handles f composed with
AND on single bits by splitting the spectrum in two: the low part goes to
``compute_composed`` and the high part to a classical sparse-intersection
count of the zeros.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .core import (ALICE, BOB, CLASSICAL, InputError, Instance, RandomTape, Session,
                   SymmetricSpec, bits, ceil_log2, middle_bounds, negate, support)
from .inner import and2
from .search import NO_COORDINATE, Found, find_more, find_one
from .sparse import ABORT, K0, SparseConfig, sparse_intersect_sets

PRIVATE_SEED_PAD = 16


@dataclass(frozen=True)
class Exact:
    count: int


@dataclass(frozen=True)
class AtLeast:
    cap: int


@dataclass(frozen=True)
class Below:
    """The weight is below ``bound`` (the high part of the spectrum is 0 there)."""

    bound: int


CountResult = Exact | AtLeast | Below


def count_up_to(instance: Instance, cap: int, polarity: str, session: Session) -> CountResult:
    """Count coordinates with G = 1 (``ones``) or G = 0 (``zeros``), stopping at ``cap``.

    Find-and-exclude with an adaptive promise: ask find_more for
    ``min(khat, active)`` marked coordinates, exclude each verified hit, and
    halve ``khat`` on a miss.  Once ``khat`` reaches 0 a plain find_one,
    repeated ceil(log2(cap+1)) times, must also come back empty before the
    count is reported as exact.  Every counted coordinate was verified, so
    the count never exceeds the truth.
    """
    if polarity not in ("ones", "zeros"):
        raise InputError(f"polarity must be 'ones' or 'zeros', not {polarity!r}")
    if not 0 <= cap <= instance.n:
        raise InputError(f"cap {cap} out of range for n={instance.n}")
    if cap == 0:
        return AtLeast(0)
    inst = instance if polarity == "ones" else instance.negated()
    confirmations = ceil_log2(cap + 1)
    count = 0
    khat = cap
    while True:
        if count >= cap:
            return AtLeast(cap)
        active = inst.active
        if active == 0:
            return Exact(count)
        if khat > 0:
            res = find_more(inst, min(khat, active), session)
            if res is NO_COORDINATE:
                khat //= 2
                continue
        else:
            for _ in range(confirmations):
                res = find_one(inst, session)
                if res is not NO_COORDINATE:
                    break
            if res is NO_COORDINATE:
                return Exact(count)
        count += 1
        inst = inst.exclude(res.index)


def compute_composed(f: SymmetricSpec, instance: Instance, session: Session) -> int:
    """Evaluate f o G with bounded error; constant f costs nothing."""
    n = instance.n
    if f.n != n:
        raise InputError(f"arity mismatch: f.n={f.n}, instance n={n}")
    D = f.D
    if f.is_constant:
        return D[0]
    lo, hi = middle_bounds(D)
    low_cap, high_cap = lo, n - hi
    # counting one past the cap separates the edge region from the middle;
    # at cap = n a full count already pins the weight
    if low_cap > 0:
        c = count_up_to(instance, min(low_cap + 1, n), "ones", session)
        if isinstance(c, Exact) and c.count <= low_cap:
            return D[c.count]
    if high_cap > 0:
        c = count_up_to(instance, min(high_cap + 1, n), "zeros", session)
        if isinstance(c, Exact) and c.count <= high_cap:
            return D[n - c.count]
    return D[lo]


@dataclass(frozen=True)
class SplitD:
    D0: tuple[int, ...]
    D1: tuple[int, ...]
    negated: bool
    l0: int
    l1: int

    @cached_property
    def low_spec(self) -> SymmetricSpec:
        return SymmetricSpec(self.D0, "low-part")

    def recombine(self) -> tuple[int, ...]:
        return tuple((a | b) ^ self.negated for a, b in zip(self.D0, self.D1))


@lru_cache(maxsize=256)
def split_d(f: SymmetricSpec) -> SplitD:
    """Split a non-constant spectrum into its low and high parts.

    The spectrum is first negated if needed so that it is 0 on its constant
    middle interval; ``negated`` records this so callers can flip the answer.
    """
    if f.is_constant:
        raise InputError("constant spectrum has no split; short-circuit it first")
    n = f.n
    lo, hi = middle_bounds(f.D)
    neg = f.D[lo] == 1
    D = tuple(d ^ neg for d in f.D)
    D0 = tuple(D[m] if m <= lo else 0 for m in range(n + 1))
    D1 = tuple(D[m] if m > hi else 0 for m in range(n + 1))
    return SplitD(D0, D1, neg, lo, n - hi)


def newman_seed_bits(n: int, l1: int) -> int:
    """Width of the seed Alice sends instead of shared randomness."""
    from .analysis import newman_budget

    return newman_budget(n, l1) + PRIVATE_SEED_PAD


def compute_f1_path(x, y, l1: int, session: Session, mode: str = "shared") -> CountResult:
    """Exact |x AND y| when it may exceed n - l1, else ``Below(n - l1)``.

    ``mode="private"`` replaces the shared tape with a seed Alice draws
    privately and sends in the clear.
    """
    x, y = bits(x), bits(y)
    n = len(x)
    if len(y) != n:
        raise InputError("inputs must have equal length")
    if mode not in ("shared", "private"):
        raise InputError(f"unknown randomness mode {mode!r}")
    zx, zy = support(negate(x)), support(negate(y))
    session.send(BOB, 1, CLASSICAL, "f1-sparsity")
    if len(zy) > l1 or len(zx) > l1:
        return Below(n - l1)
    if mode == "private":
        width = newman_seed_bits(n, l1)
        seed = session.alice.draw_int(width)
        session.send(ALICE, width, CLASSICAL, "private-seed")
        tape = RandomTape(seed, "newman")
    else:
        tape = session.shared
    cfg = _sparse_config(l1)
    detail = sparse_intersect_sets(zx, zy, cfg, tape, session)
    if detail.alice is ABORT:
        return Below(n - l1)
    w = ceil_log2(l1 + 1)
    session.send(ALICE, w, CLASSICAL, "f1-weights")
    session.send(BOB, w, CLASSICAL, "f1-weights")
    return Exact(n + len(detail.alice) - len(zx) - len(zy))


_configs: dict[int, SparseConfig] = {}


def _sparse_config(k: int) -> SparseConfig:
    cfg = _configs.get(k)
    if cfg is None:
        cfg = _configs[k] = SparseConfig.for_k(k, K0)
    return cfg


def compute_sym_and(f: SymmetricSpec, x, y, session: Session, mode: str = "shared") -> int:
    """Evaluate f(x AND y) for a symmetric f on single-bit inputs."""
    x, y = bits(x), bits(y)
    if not (f.n == len(x) == len(y)):
        raise InputError(f"arity mismatch: f.n={f.n}, |x|={len(x)}, |y|={len(y)}")
    if f.is_constant:
        return f.D[0]
    sp = split_d(f)
    b0 = 0
    f0 = sp.low_spec
    if not f0.is_constant:
        b0 = compute_composed(f0, Instance(and2(), x, y), session)
    b1 = 0
    if sp.l1 > 0:
        c = compute_f1_path(x, y, sp.l1, session, mode)
        if isinstance(c, Exact):
            b1 = sp.D1[c.count]
    return (b0 | b1) ^ sp.negated


__all__ = [
    "Exact", "AtLeast", "Below", "CountResult", "count_up_to", "compute_composed", "SplitD",
    "split_d", "newman_seed_bits", "compute_f1_path", "compute_sym_and", "PRIVATE_SEED_PAD",
]
