"""Shared domain types: parties, bit strings, random tapes, cost metering and
the reference evaluator for composed functions.

Coordinates are 0-indexed throughout the package.
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field, fields
from enum import Enum
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class ProtocolError(Exception):
    """Base class for every error raised by the protocol library."""


class InputError(ProtocolError, ValueError):
    """Malformed or inconsistent input (arity mismatch, out-of-range parameter)."""


class LocalityError(ProtocolError):
    """A party tried to act on a register it does not own."""


class UsageError(ProtocolError):
    """An operation was invoked in a way the protocol model forbids."""


class CapacityError(ProtocolError):
    """The dense simulator would need more qubits than its ceiling."""


class Party(Enum):
    ALICE = "alice"
    BOB = "bob"

    @property
    def other(self) -> Party:
        return Party.BOB if self is Party.ALICE else Party.ALICE


ALICE = Party.ALICE
BOB = Party.BOB


# ---------------------------------------------------------------------------
# Bit strings (plain tuples of 0/1)
# ---------------------------------------------------------------------------

_BITSET = frozenset((0, 1))


def bits(value: str | Iterable[int]) -> tuple[int, ...]:
    """Parse ``"0110"`` or any iterable of 0/1 into a bit tuple."""
    if type(value) is tuple and _BITSET.issuperset(value):
        return value
    if isinstance(value, str):
        value = value.strip()
        if any(c not in "01" for c in value):
            raise InputError(f"not a bit string: {value!r}")
        return tuple(int(c) for c in value)
    out = tuple(int(b) for b in value)
    if any(b not in (0, 1) for b in out):
        raise InputError(f"not a bit string: {out!r}")
    return out


def bitstring(x: Sequence[int]) -> str:
    return "".join(str(b) for b in x)


def hamming_weight(x: Sequence[int]) -> int:
    return sum(x)


def negate(x: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 - b for b in x)


def support(x: str | Sequence[int]) -> frozenset[int]:
    if isinstance(x, str):
        x = bits(x)
    return frozenset(i for i, b in enumerate(x) if b)


def ceil_log2(n: int) -> int:
    """Smallest w with 2**w >= n (0 for n <= 1)."""
    return max(0, (n - 1).bit_length())


# ---------------------------------------------------------------------------
# Randomness
# ---------------------------------------------------------------------------

def mix64(z: int) -> int:
    """SplitMix64 finalizer."""
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def derive_seed(*parts: int) -> int:
    """Fold integers into one 64-bit seed; used for per-trial and per-row seeds."""
    h = 0x6A09E667F3BCC909
    for p in parts:
        h = mix64((h ^ (int(p) & MASK64)) + _GOLDEN & MASK64)
    return h


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


class RandomTape:
    """Counter-based bit source (SplitMix64 over ``key + counter * golden``).

    Word ``c`` of a tape is a pure function of ``(seed, kind, c)``, so two
    parties holding a shared tape with the same seed read identical bits at
    identical positions, and trials with derived seeds are independent
    streams.  Every draw takes fresh 64-bit words; ``bits_drawn`` counts only
    the bits actually consumed (``b`` per rejection-sampling attempt, ``m``
    for :meth:`draw_bits`, 53 per :meth:`random`).
    """

    __slots__ = ("seed", "kind", "bits_drawn", "words_drawn", "_key")

    def __init__(self, seed: int, kind: str = "shared"):
        self.seed = int(seed) & MASK64
        self.kind = kind
        self.bits_drawn = 0
        self.words_drawn = 0
        self._key = derive_seed(self.seed, zlib.crc32(kind.encode()))

    def __repr__(self) -> str:
        return f"RandomTape(seed={self.seed:#x}, kind={self.kind!r}, bits_drawn={self.bits_drawn})"

    def _word(self) -> int:
        self.words_drawn += 1
        z = (self._key + self.words_drawn * _GOLDEN) & MASK64
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def _words(self, count: int) -> np.ndarray:
        idx = np.arange(self.words_drawn + 1, self.words_drawn + count + 1, dtype=np.uint64)
        self.words_drawn += count
        return _mix64_array(np.uint64(self._key) + idx * np.uint64(_GOLDEN))

    def draw_bits(self, m: int) -> tuple[int, ...]:
        if m < 0:
            raise InputError("cannot draw a negative number of bits")
        out: list[int] = []
        while len(out) < m:
            take = min(64, m - len(out))
            w = self._word()
            out.extend((w >> (63 - t)) & 1 for t in range(take))
        self.bits_drawn += m
        return tuple(out)

    def draw_word(self) -> int:
        """A full 64-bit word (64 bits metered)."""
        self.bits_drawn += 64
        return self._word()

    def draw_int(self, m: int) -> int:
        """An ``m``-bit integer built from :meth:`draw_bits`."""
        v = 0
        for b in self.draw_bits(m):
            v = (v << 1) | b
        return v

    def uniform(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection on the top bits of a word."""
        if bound <= 0:
            raise InputError("uniform bound must be positive")
        if bound == 1:
            return 0
        b = (bound - 1).bit_length()
        shift = 64 - b
        while True:
            self.bits_drawn += b
            v = self._word() >> shift
            if v < bound:
                return v

    def uniform_array(self, bound: int, size: int) -> np.ndarray:
        """Same stream as ``[self.uniform(bound) for _ in range(size)]``, vectorised."""
        if bound <= 0:
            raise InputError("uniform bound must be positive")
        if size <= 0 or bound == 1:
            return np.zeros(max(size, 0), dtype=np.int64)
        if size < 32:
            return np.array([self.uniform(bound) for _ in range(size)], dtype=np.int64)
        b = (bound - 1).bit_length()
        shift = np.uint64(64 - b)
        accepted: list[np.ndarray] = []
        have = 0
        while have < size:
            need = size - have
            # over-draw a little so one pass usually suffices
            chunk = need + need // 2 + 8
            start = self.words_drawn
            cand = self._words(chunk) >> shift
            ok = np.flatnonzero(cand < np.uint64(bound))
            if len(ok) >= need:
                last = ok[need - 1]
                # rewind the words we did not need
                self.words_drawn = start + int(last) + 1
                self.bits_drawn += b * (int(last) + 1)
                accepted.append(cand[ok[:need]])
                have = size
            else:
                self.bits_drawn += b * chunk
                accepted.append(cand[ok])
                have += len(ok)
        return np.concatenate(accepted).astype(np.int64)

    def random(self) -> float:
        """Uniform float in [0, 1) from 53 bits."""
        self.bits_drawn += 53
        return (self._word() >> 11) * (1.0 / 9007199254740992.0)


# ---------------------------------------------------------------------------
# Cost metering
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CostLedger:
    qubits_sim: int = 0
    qubits_claimed: int = 0
    classical_bits: int = 0
    shared_random_bits: int = 0
    epr_pairs: int = 0
    rounds: int = 0

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise InputError(f"ledger field {f.name} must be non-negative")

    def __add__(self, other: CostLedger) -> CostLedger:
        return CostLedger(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    @property
    def total_claimed(self) -> int:
        """Claimed communication: claimed qubits plus classical bits."""
        return self.qubits_claimed + self.classical_bits

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


LEDGER_COLUMNS = tuple(f.name for f in fields(CostLedger))

QUBITS = "qubits"
CLAIMED = "claimed"
CLASSICAL = "classical"


@dataclass(frozen=True)
class Message:
    """One transcript entry; ``repeat`` > 1 stands for a block sent that many times."""

    speaker: Party
    width: int
    tag: str
    kind: str = QUBITS
    repeat: int = 1


class Block:
    """A fixed message pattern, charged as a unit (possibly many times over).

    ``entries`` are ``(speaker, width, kind, tag)``.  Totals and the speaker
    alternation structure are precomputed so repeated charging is cheap.
    """

    __slots__ = ("entries", "qubits", "claimed", "classical", "first", "last", "inner", "wrap")

    def __init__(self, entries: Iterable[tuple[Party, int, str, str]]):
        self.entries = tuple(entries)
        tot = {QUBITS: 0, CLAIMED: 0, CLASSICAL: 0}
        for _, width, kind, _ in self.entries:
            tot[kind] += width
        self.qubits, self.claimed, self.classical = tot[QUBITS], tot[CLAIMED], tot[CLASSICAL]
        real = [sp for sp, _, kind, _ in self.entries if kind != CLAIMED]
        self.first = real[0] if real else None
        self.last = real[-1] if real else None
        self.inner = sum(1 for a, b in zip(real, real[1:]) if a is not b)
        self.wrap = 1 if real and real[-1] is not real[0] else 0

    def __add__(self, other: Block) -> Block:
        return Block(self.entries + other.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Block) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"Block({list(self.entries)!r})"


EMPTY_BLOCK = Block(())


class Session:
    """Mutable per-run state: the three random tapes, the meter and the transcript.

    One session belongs to exactly one protocol run.  ``mode`` selects the
    cost model used by the search protocols: ``"sim"`` drives the dense
    statevector engine, ``"ledger"`` uses closed-form Grover amplitudes.
    """

    def __init__(self, seed: int = 0, mode: str = "sim", record: bool = False):
        if mode not in ("sim", "ledger"):
            raise InputError(f"unknown mode {mode!r}")
        self.seed = int(seed) & MASK64
        self.mode = mode
        self._shared = self._alice = self._bob = None
        self.transcript: list[Message] | None = [] if record else None
        self._totals = {QUBITS: 0, CLAIMED: 0, CLASSICAL: 0}
        self._rounds = 0
        self._last: Party | None = None

    @property
    def shared(self) -> RandomTape:
        if self._shared is None:
            self._shared = RandomTape(self.seed, "shared")
        return self._shared

    @property
    def alice(self) -> RandomTape:
        if self._alice is None:
            self._alice = RandomTape(self.seed, "alice")
        return self._alice

    @property
    def bob(self) -> RandomTape:
        if self._bob is None:
            self._bob = RandomTape(self.seed, "bob")
        return self._bob

    def private(self, party: Party) -> RandomTape:
        return self.alice if party is ALICE else self.bob

    def send(self, speaker: Party, width: int, kind: str, tag: str) -> None:
        if width < 0:
            raise InputError("message width must be non-negative")
        self._totals[kind] += width
        if kind != CLAIMED and self._last is not speaker:
            self._rounds += 1
            self._last = speaker
        if self.transcript is not None:
            self.transcript.append(Message(speaker, width, tag, kind))

    def charge_block(self, block: Block, repeat: int = 1) -> None:
        """Meter ``block`` sent ``repeat`` times back to back."""
        if repeat <= 0:
            return
        totals = self._totals
        totals[QUBITS] += block.qubits * repeat
        totals[CLAIMED] += block.claimed * repeat
        totals[CLASSICAL] += block.classical * repeat
        if block.first is not None:
            first = 1 if self._last is not block.first else 0
            self._rounds += first + block.inner * repeat + block.wrap * (repeat - 1)
            self._last = block.last
        if self.transcript is not None:
            for sp, width, kind, tag in block.entries:
                self.transcript.append(Message(sp, width, tag, kind, repeat))

    @property
    def ledger(self) -> CostLedger:
        return CostLedger(
            qubits_sim=self._totals[QUBITS],
            qubits_claimed=self._totals[CLAIMED],
            classical_bits=self._totals[CLASSICAL],
            shared_random_bits=0 if self._shared is None else self._shared.bits_drawn,
            epr_pairs=0,
            rounds=self._rounds,
        )

    def outcome(self, value) -> ProtocolOutcome:
        return ProtocolOutcome(value, self.ledger, tuple(self.transcript or ()))


@dataclass(frozen=True)
class ProtocolOutcome:
    value: object
    ledger: CostLedger
    transcript: tuple[Message, ...] = ()

    def transcript_totals(self) -> dict[str, int]:
        totals = {QUBITS: 0, CLAIMED: 0, CLASSICAL: 0}
        for m in self.transcript:
            totals[m.kind] += m.width * m.repeat
        return totals


# ---------------------------------------------------------------------------
# Functions
# ---------------------------------------------------------------------------

def compute_l0_l1(D: Sequence[int]) -> tuple[int, int]:
    """Outermost change points of a spectrum, measured from each end.

    ``l0`` is the largest ``l <= n/2`` with ``D[l] != D[l-1]``; ``l1`` is the
    largest ``n - l`` over ``n/2 <= l < n`` with ``D[l] != D[l+1]``.  Empty
    maxima are 0.
    """
    n = len(D) - 1
    l0 = max((l for l in range(1, n // 2 + 1) if D[l] != D[l - 1]), default=0)
    lo = (n + 1) // 2
    l1 = max((n - l for l in range(lo, n) if D[l] != D[l + 1]), default=0)
    return l0, l1


def middle_bounds(D: Sequence[int]) -> tuple[int, int]:
    """Bounds ``(a, b)`` of the weight interval on which ``D`` is constant.

    Normally ``(l0, n - l1)``.  For odd ``n`` the step between weights
    ``(n-1)/2`` and ``(n+1)/2`` is seen by neither change point, so ``a`` is
    widened to ``(n+1)/2`` when that step is present.
    """
    n = len(D) - 1
    l0, l1 = compute_l0_l1(D)
    a, b = l0, n - l1
    if len(set(D[a:b + 1])) > 1:
        a = max(l for l in range(1, b + 1) if D[l] != D[l - 1])
    return a, b

@dataclass(frozen=True)
class SymmetricSpec:
    """Symmetric outer function given by its spectrum ``D`` (``f(x) = D[|x|]``)."""

    D: tuple[int, ...]
    name: str = ""
    l0: int = field(init=False)
    l1: int = field(init=False)

    def __post_init__(self):
        D = bits(self.D)
        if not D:
            raise InputError("spectrum table must have n+1 >= 1 entries")
        object.__setattr__(self, "D", D)
        l0, l1 = compute_l0_l1(D)
        object.__setattr__(self, "l0", l0)
        object.__setattr__(self, "l1", l1)

    @property
    def n(self) -> int:
        return len(self.D) - 1

    @property
    def is_constant(self) -> bool:
        return len(set(self.D)) == 1

    def __call__(self, x: Sequence[int]) -> int:
        if len(x) != self.n:
            raise InputError(f"expected {self.n} bits, got {len(x)}")
        return self.D[sum(x)]


def parse_symmetric(desc: str, n: int | None = None) -> SymmetricSpec:
    """Parse ``or | and | parity | thr:<t> | table:<bits>`` into a spec on ``n`` bits."""
    desc = desc.strip()
    if desc.startswith("table:"):
        D = bits(desc[6:])
        if n is not None and len(D) != n + 1:
            raise InputError(f"table has {len(D)} entries, expected n+1 = {n + 1}")
        return SymmetricSpec(D, desc)
    if n is None or n < 1:
        raise InputError(f"descriptor {desc!r} needs an arity n >= 1")
    if desc == "or":
        D = [0] + [1] * n
    elif desc == "and":
        D = [0] * n + [1]
    elif desc == "parity":
        D = [m % 2 for m in range(n + 1)]
    elif desc.startswith("thr:"):
        try:
            t = int(desc[4:])
        except ValueError:
            raise InputError(f"bad threshold in {desc!r}") from None
        D = [int(m >= t) for m in range(n + 1)]
    else:
        raise InputError(f"unknown outer-function descriptor {desc!r}")
    return SymmetricSpec(tuple(D), desc)


@dataclass(frozen=True)
class Round:
    """One message of an exact protocol.

    ``compute(own_input, received)`` gives the message value, where
    ``received`` holds the values of earlier messages from the other party.
    """

    speaker: Party
    width: int
    compute: Callable[[int, tuple[int, ...]], int]


@dataclass(frozen=True)
class ExactProtocol:
    """Zero-error two-party protocol; Alice computes the output bit at the end."""

    rounds: tuple[Round, ...]
    output: Callable[[int, tuple[int, ...]], int]
    bob_learns_output: bool
    name: str = ""

    @property
    def total_cost(self) -> int:
        return sum(r.width for r in self.rounds)

    def received_by(self, party: Party, upto: int) -> tuple[int, ...]:
        """Indices of the messages among the first ``upto`` that ``party`` received."""
        return tuple(t for t in range(upto) if self.rounds[t].speaker is not party)

    def run(self, a: int, b: int) -> tuple[int, tuple[int, ...]]:
        msgs: list[int] = []
        for t, rnd in enumerate(self.rounds):
            own = a if rnd.speaker is ALICE else b
            got = tuple(msgs[s] for s in self.received_by(rnd.speaker, t))
            v = rnd.compute(own, got)
            if not 0 <= v < (1 << rnd.width):
                raise ProtocolError(f"round {t} produced {v} outside {rnd.width} bits")
            msgs.append(v)
        got = tuple(msgs[s] for s in self.received_by(ALICE, len(msgs)))
        return self.output(a, got) & 1, tuple(msgs)

    def negated(self) -> ExactProtocol:
        out = self.output
        return ExactProtocol(self.rounds, lambda a, got: 1 - out(a, got), self.bob_learns_output,
                             f"not({self.name})")


@dataclass(frozen=True, eq=False)
class InnerFunction:
    """Two-party inner function G: {0,1}^j x {0,1}^k -> {0,1} with its exact protocol.

    ``table[(a << k) | b]`` is ``G(a, b)``.
    """

    j: int
    k: int
    table: tuple[int, ...]
    exact: ExactProtocol
    name: str = ""

    def __post_init__(self):
        if self.j < 1 or self.k < 1:
            raise InputError("inner function widths must be >= 1")
        if len(self.table) != 1 << (self.j + self.k):
            raise InputError("truth table has the wrong length")
        if self.j + self.k <= 12:
            for a in range(1 << self.j):
                for b in range(1 << self.k):
                    if self.exact.run(a, b)[0] != self.table[(a << self.k) | b]:
                        raise ProtocolError(f"exact protocol disagrees with G at ({a}, {b})")

    @property
    def qcc_e(self) -> int:
        return self.exact.total_cost

    @cached_property
    def key(self) -> tuple:
        return (self.name, self.j, self.k, self.table, self.exact.name)

    @cached_property
    def protocol_table(self) -> tuple[int, ...]:
        """Output of the exact protocol on every input pair, indexed like ``table``."""
        return tuple(self.exact.run(a, b)[0] for a in range(1 << self.j) for b in range(1 << self.k))

    @cached_property
    def table_array(self) -> np.ndarray:
        return np.array(self.table, dtype=bool)

    def __call__(self, a: int, b: int) -> int:
        return self.table[(a << self.k) | b]

    def negated(self) -> InnerFunction:
        return self._negation

    @cached_property
    def _negation(self) -> InnerFunction:
        name = self.name[4:-1] if self.name.startswith("not(") else f"not({self.name})"
        return InnerFunction(self.j, self.k, tuple(1 - t for t in self.table),
                             self.exact.negated(), name)

    def preimage(self, value: int) -> list[tuple[int, int]]:
        return [(a, b) for a in range(1 << self.j) for b in range(1 << self.k)
                if self(a, b) == value]


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------

class Instance:
    """Composed-problem input: Alice's ``X``, Bob's ``Y`` and the excluded set.

    ``z`` and ``marked`` are the reference oracle's view; protocols only
    touch them through metered evaluations (and the simulator's privileged
    bookkeeping).
    """

    __slots__ = ("G", "X", "Y", "excluded", "_z", "_marked", "__weakref__")

    def __init__(self, G: InnerFunction, X: Sequence[int], Y: Sequence[int],
                 excluded: Iterable[int] = ()):
        X = np.asarray(X, dtype=np.int64).reshape(-1)
        Y = np.asarray(Y, dtype=np.int64).reshape(-1)
        if len(X) != len(Y):
            raise InputError(f"|X| = {len(X)} but |Y| = {len(Y)}")
        if len(X) and (X.min() < 0 or X.max() >= 1 << G.j):
            raise InputError(f"Alice's entries must be {G.j}-bit values")
        if len(Y) and (Y.min() < 0 or Y.max() >= 1 << G.k):
            raise InputError(f"Bob's entries must be {G.k}-bit values")
        excluded = frozenset(int(i) for i in excluded)
        if any(not 0 <= i < len(X) for i in excluded):
            raise InputError("excluded index out of range")
        self.G = G
        self.X = X
        self.Y = Y
        self.excluded = excluded
        self._z = None
        self._marked = None

    @classmethod
    def _derived(cls, G, X, Y, excluded, z):
        inst = cls.__new__(cls)
        inst.G, inst.X, inst.Y, inst.excluded = G, X, Y, excluded
        inst._z = z
        inst._marked = None
        return inst

    @classmethod
    def from_bits(cls, G: InnerFunction, x: str | Sequence[int], y: str | Sequence[int]) -> Instance:
        """Build from concatenated bit strings (``j`` bits per Alice entry, ``k`` per Bob entry)."""
        xb, yb = bits(x), bits(y)
        if len(xb) % G.j or len(yb) % G.k:
            raise InputError("input length is not a multiple of the entry width")
        X = [int(bitstring(xb[i:i + G.j]), 2) for i in range(0, len(xb), G.j)]
        Y = [int(bitstring(yb[i:i + G.k]), 2) for i in range(0, len(yb), G.k)]
        return cls(G, X, Y)

    def __repr__(self) -> str:
        return f"Instance(G={self.G.name}, n={self.n}, marked={list(self.marked)})"

    @property
    def n(self) -> int:
        return len(self.X)

    @property
    def z(self) -> np.ndarray:
        """Unmasked values G(X_i, Y_i)."""
        if self._z is None:
            self._z = self.G.table_array[(self.X << self.G.k) | self.Y]
        return self._z

    @property
    def marked(self) -> tuple[int, ...]:
        """Sorted indices i not excluded with G(X_i, Y_i) = 1."""
        if self._marked is None:
            m = np.flatnonzero(self.z)
            if self.excluded:
                m = [i for i in m if int(i) not in self.excluded]
            self._marked = tuple(int(i) for i in m)
        return self._marked

    @property
    def active(self) -> int:
        return self.n - len(self.excluded)

    def exclude(self, i: int) -> Instance:
        if not 0 <= i < self.n:
            raise InputError("excluded index out of range")
        return Instance._derived(self.G, self.X, self.Y, self.excluded | {int(i)}, self._z)

    def subsample(self, indices: Sequence[int]) -> Instance:
        """Sub-instance on ``indices`` (re-indexed 0..len-1); exclusions carry over."""
        idx = np.asarray(indices, dtype=np.int64)
        z = self.z[idx]
        excl = frozenset()
        if self.excluded:
            excl = frozenset(p for p, i in enumerate(idx.tolist()) if i in self.excluded)
        return Instance._derived(self.G, self.X[idx], self.Y[idx], excl, z)

    def negated(self) -> Instance:
        z = None if self._z is None else ~self._z
        return Instance._derived(self.G.negated(), self.X, self.Y, self.excluded, z)


def eval_composed(f: SymmetricSpec, G: InnerFunction, X: Sequence[int], Y: Sequence[int]) -> int:
    """Ground truth f(G(X_1, Y_1), ..., G(X_n, Y_n))."""
    if not (f.n == len(X) == len(Y)):
        raise InputError(f"arity mismatch: f.n={f.n}, |X|={len(X)}, |Y|={len(Y)}")
    return f.D[sum(G(int(a), int(b)) for a, b in zip(X, Y))]


