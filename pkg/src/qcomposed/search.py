"""Search protocols: distributed Grover (find_one), block sampling
(find_exact) and the geometric sweep with random checks (find_more).

Randomness: Grover iteration counts and measurement outcomes use Alice's
private tape; sample maps and the random coordinate checks use the shared
tape.  Every reported coordinate has passed a classical evaluation of G, so
``Found(i)`` always satisfies ``G(X_i, Y_i) = 1`` and an instance with no
marked coordinate can only ever yield ``NO_COORDINATE``.

Two cost modes share one control flow and one tape stream:

* ``sim`` evolves the distributed state gate by gate (``GroverEngine``) and
  reads the measurement distribution from it;
* ``ledger`` uses the closed-form Grover amplitudes and scales to large n.

Both charge identical message blocks, so for a fixed seed they agree on the
ledger and (up to floating-point ties) on the outcome.
"""
from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from . import _kernels
from .core import (ALICE, BOB, CLAIMED, CLASSICAL, QUBITS, Block, InputError, Instance,
                   InnerFunction, ProtocolError, Session)
from .inner import (TAG_INDEX, apply_oracle_og, classical_eval_g, index_width, query_block,
                    verify_block)
from .qsim import DistState, H_GATE, X_GATE, diffusion_unitary, uniform_state_unitary

FIND_EXACT_ROUNDS = 40
RANDOM_CHECKS = 12
SCHEDULE_GROWTH = Fraction(9, 8)
BUDGET_FACTOR = 9


@dataclass(frozen=True)
class Found:
    index: int


class _NoCoordinate:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "NO_COORDINATE"

    def __reduce__(self):
        return (_NoCoordinate, ())


NO_COORDINATE = _NoCoordinate()
FindResult = Found | _NoCoordinate


def ceil_sqrt(x: int) -> int:
    r = math.isqrt(x)
    return r if r * r == x else r + 1


def query_budget(n: int) -> int:
    """Oracle-call cap ceil(9 sqrt(n)) of one find_one run."""
    return ceil_sqrt(BUDGET_FACTOR * BUDGET_FACTOR * n)


_SYNC_BLOCK = Block([(ALICE, 1, CLAIMED, TAG_INDEX)])
_grover_blocks: dict[tuple, Block] = {}


def grover_iteration_block(G: InnerFunction, n: int) -> Block:
    """One Grover iteration over ``n`` items: a coherent query plus one claimed
    qubit of index synchronisation."""
    key = (G.key, n)
    blk = _grover_blocks.get(key)
    if blk is None:
        blk = query_block(G, n) + _SYNC_BLOCK
        _grover_blocks[key] = blk
    return blk


# ---------------------------------------------------------------------------
# Measurement distributions
# ---------------------------------------------------------------------------

def grover_distribution(n: int, marked: Sequence[int], r: int) -> np.ndarray:
    """Closed-form outcome distribution after ``r`` iterations over ``n`` items."""
    t = len(marked)
    if t == 0:
        return np.full(n, 1.0 / n)
    theta = math.asin(math.sqrt(t / n))
    p_hit = math.sin((2 * r + 1) * theta) ** 2
    probs = np.full(n, (1.0 - p_hit) / (n - t) if n > t else 0.0)
    probs[list(marked)] = p_hit / t
    return probs


class GroverEngine:
    """Gate-level Grover run on one (sub-)instance, extended lazily in ``r``.

    The engine owns a private scratch session.  Its real register transfers
    are checked once against the query block that the protocol charges.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        self.n = instance.n
        self.width = index_width(self.n)
        self.scratch = Session(0)
        self.state = DistState(self.scratch)
        self.index = self.state.alloc(ALICE, self.width, 0, "index")
        self.target = self.state.alloc(ALICE, 1, 0, "target")
        self.state.apply_local(ALICE, X_GATE, [self.target])
        self.state.apply_local(ALICE, H_GATE, [self.target])
        self.state.apply_local(ALICE, uniform_state_unitary(self.n, self.width), [self.index])
        self._diffusion = diffusion_unitary(self.n, self.width)
        self._probs: list[np.ndarray] = [self._read()]
        self._checked = False

    def _read(self) -> np.ndarray:
        return self.state.probabilities([self.index])[: self.n].copy()

    def _iterate(self) -> None:
        before = self.scratch.ledger
        apply_oracle_og(self.state, self.instance, self.index, self.target)
        self.state.apply_local(ALICE, self._diffusion, [self.index])
        if not self._checked:
            spent = self.scratch.ledger
            blk = query_block(self.instance.G, self.n)
            if (spent.qubits_sim - before.qubits_sim != blk.qubits
                    or spent.qubits_claimed - before.qubits_claimed != blk.claimed):
                raise ProtocolError("simulated oracle traffic differs from the charged block")
            self._checked = True
        self._probs.append(self._read())

    def distribution(self, r: int) -> np.ndarray:
        while len(self._probs) <= r:
            self._iterate()
        return self._probs[r]


class _EngineCache:
    def __init__(self, size: int = 1024):
        self.size = size
        self._d: OrderedDict = OrderedDict()
        self.hits = 0
        self.misses = 0

    def get(self, instance: Instance) -> GroverEngine:
        key = (instance.G.key, instance.X.tobytes(), instance.Y.tobytes(), instance.excluded)
        eng = self._d.get(key)
        if eng is not None:
            self.hits += 1
            self._d.move_to_end(key)
            return eng
        self.misses += 1
        eng = GroverEngine(instance)
        self._d[key] = eng
        if len(self._d) > self.size:
            self._d.popitem(last=False)
        return eng

    def clear(self) -> None:
        self._d.clear()


ENGINE_CACHE = _EngineCache()


def _inverse_cdf(probs: np.ndarray, u: float) -> int:
    cdf = np.cumsum(probs)
    return min(int(np.searchsorted(cdf, u * cdf[-1], side="right")), len(probs) - 1)


def measure_index(instance: Instance, r: int, session: Session) -> int:
    """Measure the index register after ``r`` Grover iterations (one 53-bit draw)."""
    u = session.alice.random()
    n = instance.n
    marked = instance.marked
    if not marked:
        # the state never leaves the uniform superposition
        return min(int(u * n), n - 1)
    if session.mode == "sim":
        probs = ENGINE_CACHE.get(instance).distribution(r)
    else:
        probs = grover_distribution(n, marked, r)
    return _inverse_cdf(probs, u)


# ---------------------------------------------------------------------------
# Protocols
# ---------------------------------------------------------------------------

def verify_candidate(instance: Instance, i: int, session: Session) -> bool:
    return classical_eval_g(instance, i, session) == 1


def find_one(instance: Instance, session: Session, lean: bool = True) -> FindResult:
    """Distributed Grover search with the unknown-count schedule.

    Each attempt draws an iteration count uniformly below the current
    ceiling, runs that many coherent queries, measures, and verifies the
    outcome classically.  The total number of oracle slots is capped at
    ``query_budget(n)``; attempts with zero iterations still use one slot.
    """
    n = instance.n
    if n < 1:
        raise InputError("find_one needs n >= 1")
    budget = query_budget(n)
    m_cap = ceil_sqrt(n)
    it_block = grover_iteration_block(instance.G, n)
    v_block = verify_block(instance.G, n)
    if lean and not instance.marked and session.transcript is None:
        _find_one_unmarked(instance, session, budget, m_cap, it_block, v_block)
        return NO_COORDINATE
    excluded = instance.excluded
    alice = session.alice
    G = instance.G
    table = G.protocol_table
    X, Y = instance.X, instance.Y
    m = 1
    used = 0
    while used < budget:
        r = alice.uniform(m)
        if r > budget - used:
            r = budget - used
        used += r if r > 0 else 1
        if r:
            session.charge_block(it_block, r)
        i = measure_index(instance, r, session)
        if i not in excluded:
            session.charge_block(v_block)
            if table[(int(X[i]) << G.k) | int(Y[i])]:
                return Found(i)
        m = min(-((-m * 9) // 8), m_cap)
    return NO_COORDINATE


def _code(p) -> int:
    return 0 if p is None else (1 if p is ALICE else 2)


def _block_codes(it_block: Block, v_block: Block) -> tuple[int, ...]:
    return (_code(it_block.first), _code(it_block.last), it_block.inner, it_block.wrap,
            _code(v_block.first), _code(v_block.last), v_block.inner)


def _excluded_mask(instance: Instance) -> np.ndarray:
    mask = np.zeros(instance.n, dtype=np.uint8)
    if instance.excluded:
        mask[list(instance.excluded)] = 1
    return mask


def _settle(session: Session, it_block: Block, v_block: Block, iters: int, checks: int,
            rounds: int, last: int) -> None:
    totals = session._totals
    totals[QUBITS] += it_block.qubits * iters + v_block.qubits * checks
    totals[CLAIMED] += it_block.claimed * iters + v_block.claimed * checks
    totals[CLASSICAL] += it_block.classical * iters + v_block.classical * checks
    session._rounds = int(rounds)
    session._last = (None, ALICE, BOB)[int(last)]


def _find_one_unmarked(instance: Instance, session: Session, budget: int, m_cap: int,
                       it_block: Block, v_block: Block) -> None:
    """find_one's loop for a sub-instance with nothing marked (compiled)."""
    tape = session.alice
    c, bits, iters, checks, rounds, last = _kernels.find_one_unmarked(
        np.uint64(tape._key), np.uint64(tape.words_drawn), instance.n, budget, m_cap,
        _excluded_mask(instance), *_block_codes(it_block, v_block), session._rounds,
        _code(session._last))
    tape.words_drawn = int(c)
    tape.bits_drawn += int(bits)
    _settle(session, it_block, v_block, int(iters), int(checks), rounds, last)


@dataclass(frozen=True)
class SampleMap:
    gamma: int
    chosen: tuple[int, ...]

    @property
    def blocks(self) -> int:
        return len(self.chosen)


def block_bounds(n: int, gamma: int) -> list[tuple[int, int]]:
    """Half-open coordinate ranges of the ceil(n/gamma) blocks."""
    return [(s, min(s + gamma, n)) for s in range(0, n, gamma)]


def sample_map(n: int, gamma: int, session: Session) -> SampleMap:
    """One uniformly chosen coordinate per block, read from the shared tape."""
    if not 1 <= gamma <= n:
        raise InputError(f"block size {gamma} must lie in [1, {n}]")
    full, rem = divmod(n, gamma)
    draws = session.shared.uniform_array(gamma, full)
    chosen = (np.arange(full, dtype=np.int64) * gamma + draws).tolist()
    if rem:
        chosen.append(full * gamma + session.shared.uniform(rem))
    return SampleMap(gamma, tuple(chosen))


def find_exact(instance: Instance, gamma: int, session: Session,
               rounds: int = FIND_EXACT_ROUNDS, lean: bool = True) -> FindResult:
    """Block sampling followed by find_one on the sampled coordinates, repeated."""
    n = instance.n
    if not 1 <= gamma <= n:
        raise InputError(f"block size {gamma} must lie in [1, {n}]")
    if lean and not instance.marked and session.transcript is None:
        _find_exact_unmarked(instance, gamma, session, rounds)
        return NO_COORDINATE
    for _ in range(rounds):
        smap = sample_map(n, gamma, session)
        res = find_one(instance.subsample(smap.chosen), session)
        if res is not NO_COORDINATE:
            return Found(smap.chosen[res.index])
    return NO_COORDINATE


def _find_exact_unmarked(instance: Instance, gamma: int, session: Session, rounds: int) -> None:
    n = instance.n
    s = -(-n // gamma)
    it_block = grover_iteration_block(instance.G, s)
    v_block = verify_block(instance.G, s)
    sh, al = session.shared, session.alice
    sc, sbits, ac, abits, iters, checks, rnds, last = _kernels.find_exact_unmarked(
        np.uint64(sh._key), np.uint64(sh.words_drawn), np.uint64(al._key),
        np.uint64(al.words_drawn), n, gamma, rounds, _excluded_mask(instance),
        query_budget(s), ceil_sqrt(s), *_block_codes(it_block, v_block), session._rounds,
        _code(session._last))
    sh.words_drawn, al.words_drawn = int(sc), int(ac)
    sh.bits_drawn += int(sbits)
    al.bits_drawn += int(abits)
    _settle(session, it_block, v_block, int(iters), int(checks), rnds, last)


def sweep_sizes(n: int, k: int) -> list[int]:
    """Block sizes k, 2k, 4k, ... up to n."""
    out, g = [], k
    while g <= n:
        out.append(g)
        g *= 2
    return out


def find_more(instance: Instance, k: int, session: Session, lean: bool = True) -> FindResult:
    """Find a marked coordinate when at least ``k`` exist."""
    n = instance.n
    if not 1 <= k <= n:
        raise InputError(f"k = {k} must lie in [1, {n}]")
    for gamma in sweep_sizes(n, k):
        res = find_exact(instance, gamma, session, lean=lean)
        if res is not NO_COORDINATE:
            return res
    for _ in range(RANDOM_CHECKS):
        i = session.shared.uniform(n)
        if verify_candidate(instance, i, session):
            return Found(i)
    return NO_COORDINATE


# ---------------------------------------------------------------------------
# Exact analysis of one block-sampling round
# ---------------------------------------------------------------------------

def exactly_one_probability(n: int, gamma: int, marked: Sequence[int]) -> Fraction:
    """P(the sample map picks exactly one marked coordinate), as a rational."""
    counts = []
    for lo, hi in block_bounds(n, gamma):
        c = sum(1 for i in marked if lo <= i < hi)
        counts.append(Fraction(c, hi - lo))
    return exactly_one_from_block_rates(counts)


def exactly_one_from_block_rates(rates: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for b, p in enumerate(rates):
        if p:
            term = p
            for c, q in enumerate(rates):
                if c != b:
                    term *= 1 - q
            total += term
    return total


def exactly_one_by_enumeration(n: int, gamma: int, marked: Sequence[int]) -> Fraction:
    """Same quantity by listing every sample map (small n only)."""
    marked = set(marked)
    ranges = [range(lo, hi) for lo, hi in block_bounds(n, gamma)]
    hits = total = 0
    for choice in product(*ranges):
        total += 1
        hits += sum(1 for i in choice if i in marked) == 1
    return Fraction(hits, total)


def block_placements(n: int, gamma: int, k: int):
    """Marked-count profiles per block (non-increasing), i.e. placements up to block symmetry."""
    blocks = n // gamma

    def rec(remaining: int, slots: int, cap: int):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for c in range(min(cap, remaining, gamma), -1, -1):
            if c * slots < remaining:
                break
            for rest in rec(remaining - c, slots - 1, c):
                yield (c, *rest)

    yield from rec(k, blocks, gamma)


def sampling_lower_bound(k: int, gamma: int) -> Fraction:
    q = Fraction(k, gamma)
    return max(Fraction(2, 9), q - q * q)


def find_one_success_probability(n: int, t: int, budget: int | None = None) -> float:
    """Exact success probability of find_one with ``t`` of ``n`` items marked.

    Sums over the random schedule paths (ideal amplitudes); used as an oracle
    for the empirical rates.
    """
    if t == 0:
        return 0.0
    budget = query_budget(n) if budget is None else budget
    m_cap = ceil_sqrt(n)
    theta = math.asin(math.sqrt(t / n))

    def p_hit(r: int) -> float:
        return math.sin((2 * r + 1) * theta) ** 2

    # state: (m, used) -> probability of still searching
    frontier = {(1, 0): 1.0}
    success = 0.0
    while frontier:
        nxt: dict[tuple[int, int], float] = {}
        for (m, used), pr in frontier.items():
            nm = min(-((-m * 9) // 8), m_cap)
            for r in range(m):
                rr = min(r, budget - used)
                w = pr / m
                h = p_hit(rr)
                success += w * h
                nu = used + max(rr, 1)
                if nu < budget:
                    nxt[(nm, nu)] = nxt.get((nm, nu), 0.0) + w * (1 - h)
        frontier = nxt
    return success


__all__ = [
    "Found", "NO_COORDINATE", "FindResult", "SampleMap", "FIND_EXACT_ROUNDS", "RANDOM_CHECKS",
    "query_budget", "grover_iteration_block", "grover_distribution", "GroverEngine",
    "ENGINE_CACHE", "measure_index", "verify_candidate", "find_one", "block_bounds",
    "sample_map", "find_exact", "sweep_sizes", "find_more", "exactly_one_probability",
    "exactly_one_from_block_rates", "exactly_one_by_enumeration", "block_placements",
    "sampling_lower_bound", "find_one_success_probability", "ceil_sqrt",
]
