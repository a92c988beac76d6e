"""Exact protocols for the inner function and their coherent execution as an oracle.

Cost convention: an inner function's ``qcc_e`` is the total width of its
exact protocol in the compute direction.  A coherent query sends every
message once to compute and once more (back to its author) to uncompute,
so the claimed cost of one query is ``2 * qcc_e``.  The simulated cost also
includes the index copy that Bob needs, sent to him and returned.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import (ALICE, BOB, CLAIMED, CLASSICAL, QUBITS, Block, ExactProtocol,
                   InnerFunction, InputError, Instance, Party, Round, Session, ceil_log2)
from .qsim import DistState, RegisterId, classical_map

TAG_INDEX = "index-sync"
TAG_COMPUTE = "G-subprotocol"
TAG_UNCOMPUTE = "G-uncompute"
TAG_VERIFY = "verify"


def trivial_exact_protocol(j: int, k: int, table: tuple[int, ...]) -> ExactProtocol:
    """Alice sends her ``j`` bits; Bob answers with the 1-bit value of G."""
    return ExactProtocol(
        rounds=(
            Round(ALICE, j, lambda a, got: a),
            Round(BOB, 1, lambda b, got: table[(got[0] << k) | b]),
        ),
        output=lambda a, got: got[0],
        bob_learns_output=True,
        name="trivial",
    )


@lru_cache(maxsize=None)
def and2() -> InnerFunction:
    proto = ExactProtocol(
        rounds=(Round(BOB, 1, lambda b, got: b),),
        output=lambda a, got: a & got[0],
        bob_learns_output=False,
        name="bob-bit",
    )
    return InnerFunction(1, 1, (0, 0, 0, 1), proto, "and2")


@lru_cache(maxsize=None)
def xor2() -> InnerFunction:
    proto = ExactProtocol(
        rounds=(Round(BOB, 1, lambda b, got: b),),
        output=lambda a, got: a ^ got[0],
        bob_learns_output=False,
        name="bob-bit",
    )
    return InnerFunction(1, 1, (0, 1, 1, 0), proto, "xor2")


def from_truth_table(j: int, k: int, table, name: str = "") -> InnerFunction:
    table = tuple(int(t) for t in table)
    if j < 1 or k < 1:
        raise InputError("inner function widths must be >= 1")
    if len(table) != 1 << (j + k) or any(t not in (0, 1) for t in table):
        raise InputError(f"truth table needs {1 << (j + k)} bits")
    return InnerFunction(j, k, table, trivial_exact_protocol(j, k, table),
                         name or f"tt:{j}:{k}:{table_hex(table)}")


def table_hex(table) -> str:
    """Hex encoding, first table entry as the most significant bit."""
    width = max(1, len(table) // 4)
    return format(int("".join(str(t) for t in table), 2), f"0{width}x")


def parse_inner(desc: str) -> InnerFunction:
    """``and2 | xor2 | tt:<j>:<k>:<hex>``."""
    desc = desc.strip().lower()
    if desc == "and2":
        return and2()
    if desc == "xor2":
        return xor2()
    parts = desc.split(":")
    if len(parts) != 4 or parts[0] != "tt":
        raise InputError(f"unknown inner-function descriptor {desc!r}")
    try:
        j, k, value = int(parts[1]), int(parts[2]), int(parts[3], 16)
    except ValueError:
        raise InputError(f"malformed truth-table descriptor {desc!r}") from None
    if j < 1 or k < 1 or j + k > 16:
        raise InputError("truth-table widths must satisfy j, k >= 1 and j + k <= 16")
    size = 1 << (j + k)
    if value >= 1 << size:
        raise InputError(f"hex table has more than {size} bits")
    table = tuple(int(c) for c in format(value, f"0{size}b"))
    return from_truth_table(j, k, table, desc)


# ---------------------------------------------------------------------------
# Cost blocks
# ---------------------------------------------------------------------------

def _rounds_sig(G: InnerFunction) -> tuple[tuple[Party, int], ...]:
    return tuple((r.speaker, r.width) for r in G.exact.rounds)


def index_width(n: int) -> int:
    """Qubits of the coherent index register over ``n`` items."""
    return max(1, ceil_log2(n))


@lru_cache(maxsize=None)
def _query_block(sig: tuple[tuple[Party, int], ...], w: int) -> Block:
    entries = [(ALICE, w, QUBITS, TAG_INDEX)]
    entries += [(sp, wd, QUBITS, TAG_COMPUTE) for sp, wd in sig]
    entries += [(sp.other, wd, QUBITS, TAG_UNCOMPUTE) for sp, wd in reversed(sig)]
    entries.append((BOB, w, QUBITS, TAG_INDEX))
    entries += [(sp, wd, CLAIMED, TAG_COMPUTE) for sp, wd in sig]
    entries += [(sp.other, wd, CLAIMED, TAG_UNCOMPUTE) for sp, wd in reversed(sig)]
    return Block(entries)


def query_block(G: InnerFunction, n: int) -> Block:
    """Messages of one coherent oracle query over ``n`` items."""
    return _query_block(_rounds_sig(G), index_width(n))


@lru_cache(maxsize=None)
def _verify_block(sig: tuple[tuple[Party, int], ...], bob_learns: bool, w: int) -> Block:
    entries = []
    if w:
        entries.append((ALICE, w, CLASSICAL, TAG_INDEX))
    entries += [(sp, wd, CLASSICAL, TAG_VERIFY) for sp, wd in sig]
    if not bob_learns:
        entries.append((ALICE, 1, CLASSICAL, TAG_VERIFY))
    return Block(entries)


def verify_block(G: InnerFunction, n: int) -> Block:
    """Messages of one classical evaluation: index announcement, the exact
    protocol, and Alice's announcement of the result when Bob does not learn it."""
    return _verify_block(_rounds_sig(G), G.exact.bob_learns_output, ceil_log2(n))


def classical_eval_g(instance: Instance, i: int, session: Session) -> int:
    """Run G's exact protocol on coordinate ``i`` with classical messages.

    An excluded coordinate is known to both parties and reads as 0 for free.
    """
    if not 0 <= i < instance.n:
        raise InputError(f"coordinate {i} out of range for n={instance.n}")
    if i in instance.excluded:
        return 0
    G = instance.G
    session.charge_block(verify_block(G, instance.n))
    return G.protocol_table[(int(instance.X[i]) << G.k) | int(instance.Y[i])]


# ---------------------------------------------------------------------------
# Coherent oracle
# ---------------------------------------------------------------------------

def apply_oracle_og(state: DistState, instance: Instance, index_reg: RegisterId,
                    target_reg: RegisterId, session: Session | None = None) -> None:
    """Map ``|i, z>`` to ``|i, z xor G(X_i, Y_i)>`` with all scratch registers restored.

    Index values at or beyond ``instance.n`` and excluded coordinates leave the
    target unchanged.  Qubit transfers are metered through ``state``'s
    session; the claimed cost is charged to ``session`` (default: the same).
    """
    if state.owner(index_reg) is not ALICE or state.owner(target_reg) is not ALICE:
        raise InputError("index and target registers must belong to Alice")
    if target_reg.width != 1:
        raise InputError("target register must be one qubit")
    G, n = instance.G, instance.n
    proto = G.exact
    w = index_reg.width
    X = [int(v) for v in instance.X] + [0] * ((1 << w) - n)
    Y = [int(v) for v in instance.Y] + [0] * ((1 << w) - n)
    live = [i < n and i not in instance.excluded for i in range(1 << w)]

    copy = state.alloc(ALICE, w, 0, "index-copy")
    state.apply_local(ALICE, classical_map([w, w], lambda i, c: (i, c ^ i)), [index_reg, copy])
    state.send_register(copy, BOB, TAG_INDEX)
    holder = {ALICE: index_reg, BOB: copy}
    inputs = {ALICE: X, BOB: Y}

    msgs: list[RegisterId] = []
    gates = []
    for t, rnd in enumerate(proto.rounds):
        reg = state.alloc(rnd.speaker, rnd.width, 0, f"msg{t}")
        got = proto.received_by(rnd.speaker, t)
        own = inputs[rnd.speaker]
        widths = [w] + [msgs[s].width for s in got] + [rnd.width]

        def step(i, *rest, _own=own, _rnd=rnd):
            *recv, m = rest
            return (i, *recv, m ^ _rnd.compute(_own[i], tuple(recv)))

        gate = classical_map(widths, step)
        regs = [holder[rnd.speaker]] + [msgs[s] for s in got] + [reg]
        state.apply_local(rnd.speaker, gate, regs)
        gates.append((rnd.speaker, gate, regs))
        msgs.append(reg)
        state.send_register(reg, rnd.speaker.other, TAG_COMPUTE)

    got = proto.received_by(ALICE, len(msgs))
    widths = [w] + [msgs[s].width for s in got] + [1]

    def finish(i, *rest):
        *recv, z = rest
        return (i, *recv, z ^ (proto.output(X[i], tuple(recv)) & 1 if live[i] else 0))

    state.apply_local(ALICE, classical_map(widths, finish),
                      [index_reg] + [msgs[s] for s in got] + [target_reg])

    for t in reversed(range(len(msgs))):
        speaker, gate, regs = gates[t]
        state.send_register(msgs[t], speaker, TAG_UNCOMPUTE)
        state.apply_local(speaker, gate, regs)
        state.release(speaker, msgs[t])

    state.send_register(copy, ALICE, TAG_INDEX)
    state.apply_local(ALICE, classical_map([w, w], lambda i, c: (i, c ^ i)), [index_reg, copy])
    state.release(ALICE, copy)

    meter = session if session is not None else state.session
    if meter is not None:
        sig = _rounds_sig(G)
        for sp, wd in sig:
            meter.send(sp, wd, CLAIMED, TAG_COMPUTE)
        for sp, wd in reversed(sig):
            meter.send(sp.other, wd, CLAIMED, TAG_UNCOMPUTE)


def oracle_truth(instance: Instance, width: int) -> np.ndarray:
    """Reference bit G(X_i, Y_i) per index value, 0 for padding and excluded indices."""
    out = np.zeros(1 << width, dtype=np.int64)
    for i in range(instance.n):
        if i not in instance.excluded:
            out[i] = instance.G(int(instance.X[i]), int(instance.Y[i]))
    return out


__all__ = [
    "TAG_INDEX", "TAG_COMPUTE", "TAG_UNCOMPUTE", "TAG_VERIFY", "trivial_exact_protocol",
    "and2", "xor2", "from_truth_table", "table_hex", "parse_inner", "index_width",
    "query_block", "verify_block", "classical_eval_g", "apply_oracle_og", "oracle_truth",
]
