"""Entanglement-free quantum protocols for composed functions f(G(X_1,Y_1), ..., G(X_n,Y_n)).

Two execution modes share one code path: ``sim`` runs the search kernels on
a dense distributed state vector, ``ledger`` replays the same draws with
closed-form amplitudes so that large n stays cheap.
"""
from .composed import AtLeast, Below, Exact, compute_composed, compute_sym_and, count_up_to
from .core import (ALICE, BOB, CapacityError, CostLedger, InnerFunction, InputError, Instance,
                   LocalityError, Party, ProtocolError, RandomTape, Session, SymmetricSpec,
                   UsageError, eval_composed, parse_symmetric)
from .inner import and2, parse_inner, xor2
from .search import NO_COORDINATE, Found, find_exact, find_more, find_one
from .sparse import ABORT, sparse_intersect

__version__ = "0.1.0"

__all__ = [
    "AtLeast", "Below", "Exact", "compute_composed", "compute_sym_and", "count_up_to",
    "ALICE", "BOB", "CapacityError", "CostLedger", "InnerFunction", "InputError", "Instance",
    "LocalityError", "Party", "ProtocolError", "RandomTape", "Session", "SymmetricSpec",
    "UsageError", "eval_composed", "parse_symmetric", "and2", "parse_inner", "xor2",
    "NO_COORDINATE", "Found", "find_exact", "find_more", "find_one", "ABORT", "sparse_intersect",
]
