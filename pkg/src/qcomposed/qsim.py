"""Dense statevector simulator split between two parties.

The global pure state is a tensor with one axis per register (axis length
``2**width``).  Each register has an owner; local gates may only touch
registers owned by the acting party, and moving a register to the other
party is the only way quantum information crosses between them.  Every
transfer is metered on the session that drives the state.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import (ALICE, BOB, QUBITS, CapacityError, InputError, LocalityError, Party,
                   RandomTape, Session, UsageError)

MAX_QUBITS = 20
NORM_TOL = 1e-9
STATE_TOL = 1e-7


@dataclass(frozen=True)
class RegisterId:
    handle: int
    width: int
    name: str = ""

    @property
    def dim(self) -> int:
        return 1 << self.width


class Gate:
    """Gate acting on the concatenation of the registers it is applied to."""

    def apply(self, block: np.ndarray) -> np.ndarray:
        """``block`` has shape ``(dim, rest)``; return the transformed block."""
        raise NotImplementedError

    @property
    def dim(self) -> int:
        raise NotImplementedError


class Unitary(Gate):
    def __init__(self, matrix: np.ndarray, check: bool = True):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InputError("unitary must be a square matrix")
        if check and not np.allclose(matrix.conj().T @ matrix, np.eye(len(matrix)), atol=1e-9):
            raise InputError("matrix is not unitary")
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def apply(self, block: np.ndarray) -> np.ndarray:
        return self.matrix @ block


class Permutation(Gate):
    """Basis permutation: ``|b> -> |table[b]>``."""

    def __init__(self, table: Sequence[int]):
        table = np.asarray(table, dtype=np.int64)
        if sorted(table.tolist()) != list(range(len(table))):
            raise InputError("permutation table is not a bijection")
        self.table = table
        self._inverse = np.argsort(table)

    @property
    def dim(self) -> int:
        return len(self.table)

    def apply(self, block: np.ndarray) -> np.ndarray:
        return block[self._inverse]


def classical_map(widths: Sequence[int], fn: Callable[..., tuple[int, ...]]) -> Permutation:
    """Permutation gate from a reversible map on register values.

    ``fn(*values)`` receives one integer per register (in the order the gate
    is applied) and returns the new values.
    """
    dims = [1 << w for w in widths]
    table = []
    for vals in itertools.product(*(range(d) for d in dims)):
        out = fn(*vals)
        idx = 0
        for v, d in zip(out, dims):
            if not 0 <= v < d:
                raise InputError("classical map leaves the register range")
            idx = idx * d + v
        table.append(idx)
    return Permutation(table)


def controlled_family(control_width: int, family: Sequence[np.ndarray]) -> Unitary:
    """Block-diagonal ``sum_i |i><i| (x) U_i`` over a control register."""
    dim_c = 1 << control_width
    if len(family) > dim_c:
        raise InputError("more family members than control basis states")
    d = len(family[0]) if family else 1
    eye = np.eye(d, dtype=complex)
    blocks = [np.asarray(u, dtype=complex) for u in family] + [eye] * (dim_c - len(family))
    m = np.zeros((dim_c * d, dim_c * d), dtype=complex)
    for i, u in enumerate(blocks):
        m[i * d:(i + 1) * d, i * d:(i + 1) * d] = u
    return Unitary(m)


X_GATE = Unitary(np.array([[0, 1], [1, 0]]))
H_GATE = Unitary(np.array([[1, 1], [1, -1]]) / np.sqrt(2))


class DistState:
    """Pure state over named registers, each owned by Alice or Bob."""

    def __init__(self, session: Session | None = None, max_qubits: int = MAX_QUBITS):
        self.session = session
        self.max_qubits = max_qubits
        self.tensor = np.ones((), dtype=complex)
        self._regs: list[RegisterId] = []
        self._owner: dict[int, Party] = {}
        self._next = 0

    # -- bookkeeping -------------------------------------------------------
    @property
    def registers(self) -> tuple[RegisterId, ...]:
        return tuple(self._regs)

    @property
    def total_qubits(self) -> int:
        return sum(r.width for r in self._regs)

    def owner(self, reg: RegisterId) -> Party:
        self._axis(reg)
        return self._owner[reg.handle]

    def offsets(self) -> dict[RegisterId, int]:
        """Qubit offset of every register (big-endian over allocation order)."""
        out, off = {}, 0
        for r in self._regs:
            out[r] = off
            off += r.width
        return out

    def _axis(self, reg: RegisterId) -> int:
        for a, r in enumerate(self._regs):
            if r.handle == reg.handle:
                return a
        raise InputError(f"unknown register {reg}")

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.tensor) ** 2)))

    def _check_norm(self) -> None:
        if abs(self.norm() - 1.0) > NORM_TOL:
            raise AssertionError(f"state norm drifted to {self.norm()!r}")

    # -- operations --------------------------------------------------------
    def alloc(self, owner: Party, width: int, init: str | int = 0, name: str = "") -> RegisterId:
        if width < 1:
            raise InputError("register width must be >= 1")
        if self.total_qubits + width > self.max_qubits:
            raise CapacityError(
                f"{self.total_qubits + width} qubits exceed the dense-simulator ceiling of "
                f"{self.max_qubits}; use ledger mode")
        if isinstance(init, str):
            if len(init) != width or any(c not in "01" for c in init):
                raise InputError(f"init {init!r} is not a {width}-bit basis string")
            init = int(init, 2)
        if not 0 <= init < 1 << width:
            raise InputError("init value out of range")
        ket = np.zeros(1 << width, dtype=complex)
        ket[init] = 1.0
        self.tensor = np.multiply.outer(self.tensor, ket)
        reg = RegisterId(self._next, width, name)
        self._next += 1
        self._regs.append(reg)
        self._owner[reg.handle] = owner
        return reg

    def release(self, party: Party, reg: RegisterId) -> None:
        """Drop a register that is back in |0>; anything else is a usage error."""
        a = self._axis(reg)
        if self._owner[reg.handle] is not party:
            raise LocalityError(f"{party.value} cannot release a register owned by the other party")
        moved = np.moveaxis(self.tensor, a, 0)
        if np.max(np.abs(moved[1:]), initial=0.0) > STATE_TOL:
            raise UsageError(f"register {reg.name or reg.handle} is not in |0> and cannot be released")
        self.tensor = moved[0]
        del self._regs[a]
        del self._owner[reg.handle]

    def apply_local(self, party: Party, gate: Gate, regs: Sequence[RegisterId]) -> None:
        axes = [self._axis(r) for r in regs]
        for r in regs:
            if self._owner[r.handle] is not party:
                raise LocalityError(
                    f"{party.value} cannot act on register {r.name or r.handle} owned by "
                    f"{self._owner[r.handle].value}")
        dim = 1
        for r in regs:
            dim *= r.dim
        if gate.dim != dim:
            raise InputError(f"gate dimension {gate.dim} does not match registers ({dim})")
        moved = np.moveaxis(self.tensor, axes, list(range(len(axes))))
        shape = moved.shape
        block = gate.apply(moved.reshape(dim, -1))
        self.tensor = np.moveaxis(block.reshape(shape), list(range(len(axes))), axes)
        self._check_norm()

    def send_register(self, reg: RegisterId, to: Party, tag: str = "") -> None:
        a = self._axis(reg)  # noqa: F841  (existence check)
        if self._owner[reg.handle] is to:
            raise UsageError(f"register {reg.name or reg.handle} is already owned by {to.value}")
        self._owner[reg.handle] = to
        if self.session is not None:
            self.session.send(to.other, reg.width, QUBITS, tag or reg.name)

    def probabilities(self, regs: Sequence[RegisterId]) -> np.ndarray:
        """Born distribution of the joint value of ``regs`` (big-endian)."""
        axes = [self._axis(r) for r in regs]
        p = np.abs(self.tensor) ** 2
        others = tuple(a for a in range(p.ndim) if a not in axes)
        p = p.sum(axis=others) if others else p
        # sum keeps remaining axes in increasing order; reorder to the request
        order = sorted(range(len(axes)), key=lambda t: axes[t])
        p = np.transpose(p, np.argsort(order))
        return p.reshape(-1)

    def measure(self, party: Party, reg: RegisterId, rng: RandomTape) -> int:
        if self._owner[reg.handle] is not party:
            raise LocalityError(f"{party.value} cannot measure a register it does not own")
        probs = self.probabilities([reg])
        outcome = sample_from_probs(probs, rng)
        a = self._axis(reg)
        moved = np.moveaxis(self.tensor, a, 0)
        keep = np.zeros_like(moved)
        keep[outcome] = moved[outcome]
        self.tensor = np.moveaxis(keep / np.sqrt(probs[outcome]), 0, a)
        self._check_norm()
        return outcome

    def amplitudes(self) -> np.ndarray:
        return self.tensor.reshape(-1)


def sample_from_probs(probs: np.ndarray, rng: RandomTape) -> int:
    """Inverse-CDF sample; one 53-bit draw from ``rng``."""
    cdf = np.cumsum(probs)
    u = rng.random() * cdf[-1]
    return min(int(np.searchsorted(cdf, u, side="right")), len(probs) - 1)


def uniform_state_unitary(n_items: int, width: int) -> Unitary:
    """A unitary whose first column is the uniform superposition over ``n_items`` indices."""
    dim = 1 << width
    s = np.zeros(dim)
    s[:n_items] = 1 / np.sqrt(n_items)
    # Householder reflection taking |0> to |s>
    v = s.copy()
    v[0] -= 1.0
    nv = np.dot(v, v)
    m = np.eye(dim) if nv < 1e-15 else np.eye(dim) - 2 * np.outer(v, v) / nv
    return Unitary(m, check=False)


def diffusion_unitary(n_items: int, width: int) -> Unitary:
    """``2|s><s| - I`` about the uniform superposition over ``n_items`` indices."""
    dim = 1 << width
    s = np.zeros(dim)
    s[:n_items] = 1 / np.sqrt(n_items)
    return Unitary(2 * np.outer(s, s) - np.eye(dim), check=False)


__all__ = [
    "MAX_QUBITS", "RegisterId", "Gate", "Unitary", "Permutation", "classical_map",
    "controlled_family", "X_GATE", "H_GATE", "DistState", "sample_from_probs",
    "uniform_state_unitary", "diffusion_unitary", "ALICE", "BOB",
]
