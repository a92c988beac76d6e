"""Single runs with full reports, and seeded parameter sweeps written as CSV."""
from __future__ import annotations

import csv
import io
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

import numpy as np

from .composed import AtLeast, Below, Exact, compute_composed, compute_sym_and
from .core import (LEDGER_COLUMNS, CapacityError, InputError, Instance, InnerFunction, RandomTape,
                   Session, bits, bitstring, derive_seed, eval_composed, parse_symmetric, support)
from .inner import and2, index_width, parse_inner
from .qsim import MAX_QUBITS
from .search import NO_COORDINATE, Found, find_exact, find_more, find_one
from .sparse import ABORT, sparse_intersect

PROTOCOLS = ("find-one", "find-exact", "find-more", "composed", "sym-and", "sparse-intersect")


@dataclass
class RunReport:
    protocol: str
    inputs: dict[str, Any]
    mode: str
    value: Any
    oracle: Any
    match: bool
    ledger: dict[str, int]
    seed: int
    wallclock: float = field(default=0.0, compare=False)

    def as_dict(self, wallclock: bool = True) -> dict[str, Any]:
        d = asdict(self)
        if not wallclock:
            d.pop("wallclock")
        return d


def sim_qubits(G: InnerFunction, n: int) -> int:
    """Peak register count of the dense simulation of one oracle query over ``n`` items."""
    w = index_width(n)
    return 2 * w + 1 + sum(r.width for r in G.exact.rounds)


def check_capacity(G: InnerFunction, n: int, mode: str) -> None:
    if mode == "sim" and sim_qubits(G, n) > MAX_QUBITS:
        raise CapacityError(
            f"sim mode needs {sim_qubits(G, n)} qubits at n={n} (ceiling {MAX_QUBITS}); "
            "rerun with --mode ledger")


def _parse_entries(text: str | Sequence[int], width: int) -> list[int]:
    """Either comma-separated integers or a concatenated bit string of ``width``-bit entries."""
    if not isinstance(text, str):
        return [int(v) for v in text]
    text = text.strip()
    if "," in text:
        return [int(v) for v in text.split(",") if v.strip()]
    b = bits(text)
    if len(b) % width:
        raise InputError(f"bit string length {len(b)} is not a multiple of {width}")
    return [int(bitstring(b[i:i + width]), 2) for i in range(0, len(b), width)]


def _encode(value) -> Any:
    if isinstance(value, Found):
        return {"found": value.index}
    if value is NO_COORDINATE:
        return "no-coordinate"
    if value is ABORT:
        return "abort"
    if isinstance(value, (frozenset, set)):
        return sorted(int(v) for v in value)
    if isinstance(value, Exact):
        return {"exact": value.count}
    if isinstance(value, AtLeast):
        return {"at_least": value.cap}
    if isinstance(value, Below):
        return {"below": value.bound}
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def run_protocol(protocol: str, *, f: str | None = None, g: str = "and2", x=None, y=None,
                 k: int | None = None, gamma: int | None = None, seed: int = 0,
                 mode: str = "sim", randomness: str = "shared") -> RunReport:
    """Execute one protocol and compare against the reference evaluator."""
    if protocol not in PROTOCOLS:
        raise InputError(f"unknown protocol {protocol!r}; expected one of {', '.join(PROTOCOLS)}")
    if x is None or y is None:
        raise InputError("both --x and --y are required")
    session = Session(seed, mode)
    start = time.perf_counter()
    echo: dict[str, Any] = {}

    if protocol in ("find-one", "find-exact", "find-more", "composed"):
        G = parse_inner(g)
        inst = Instance(G, _parse_entries(x, G.j), _parse_entries(y, G.k))
        check_capacity(G, inst.n, mode)
        echo = {"g": g, "n": inst.n, "x": inst.X.tolist(), "y": inst.Y.tolist()}
        if protocol == "composed":
            if f is None:
                raise InputError("composed needs --f")
            spec = parse_symmetric(f, inst.n)
            echo["f"] = f
            value = compute_composed(spec, inst, session)
            oracle = eval_composed(spec, G, inst.X, inst.Y)
            match = value == oracle
        else:
            if protocol == "find-one":
                value = find_one(inst, session)
            elif protocol == "find-exact":
                gam = gamma if gamma is not None else 1
                echo["gamma"] = gam
                value = find_exact(inst, gam, session)
            else:
                kk = k if k is not None else 1
                echo["k"] = kk
                value = find_more(inst, kk, session)
            oracle = list(inst.marked)
            found = isinstance(value, Found)
            match = (found and value.index in inst.marked) or (not found and not inst.marked)
    elif protocol == "sym-and":
        xb, yb = bits(x), bits(y)
        if f is None:
            raise InputError("sym-and needs --f")
        spec = parse_symmetric(f, len(xb))
        echo = {"f": f, "n": len(xb), "x": bitstring(xb), "y": bitstring(yb),
                "randomness": randomness}
        value = compute_sym_and(spec, xb, yb, session, randomness)
        oracle = eval_composed(spec, and2(), xb, yb)
        match = value == oracle
    else:
        xb, yb = bits(x), bits(y)
        kk = k if k is not None else max(len(support(xb)), len(support(yb)))
        echo = {"n": len(xb), "x": bitstring(xb), "y": bitstring(yb), "k": kk}
        value = sparse_intersect(xb, yb, kk, session.shared, session)
        oracle = sorted(support(xb) & support(yb))
        match = value is not ABORT and sorted(value) == oracle

    ledger = session.ledger
    if ledger.epr_pairs != 0:
        raise AssertionError("a protocol consumed shared entanglement")
    return RunReport(protocol, echo, mode, _encode(value), _encode(oracle), bool(match),
                     ledger.as_dict(), seed, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

def random_marked_instance(G: InnerFunction, n: int, marked: int, tape: RandomTape) -> Instance:
    """An instance with exactly ``marked`` coordinates where G = 1, at random places."""
    ones, zeros = G.preimage(1), G.preimage(0)
    if marked and not ones or marked < n and not zeros:
        raise InputError("inner function cannot realise the requested marked count")
    if not 0 <= marked <= n:
        raise InputError("marked count out of range")
    perm = list(range(n))
    for i in range(n - 1, 0, -1):  # Fisher-Yates on the tape
        j = tape.uniform(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    chosen = set(perm[:marked])
    X, Y = np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64)
    for i in range(n):
        pool = ones if i in chosen else zeros
        a, b = pool[tape.uniform(len(pool))]
        X[i], Y[i] = a, b
    return Instance(G, X, Y)


def random_sparse_pair(n: int, k: int, tape: RandomTape) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two n-bit strings with at most k ones each and a random overlap."""
    size_a, size_b = tape.uniform(k + 1), tape.uniform(k + 1)
    common = tape.uniform(min(size_a, size_b) + 1)
    picked: list[int] = []
    seen = set()
    while len(picked) < size_a + size_b - common:
        i = tape.uniform(n)
        if i not in seen:
            seen.add(i)
            picked.append(i)
    A = set(picked[:size_a])
    B = set(picked[:common]) | set(picked[size_a:])
    x = tuple(int(i in A) for i in range(n))
    y = tuple(int(i in B) for i in range(n))
    return x, y


def _sweep_row(args) -> dict[str, Any]:
    row, protocol, params, trial, seed, mode = args
    p = dict(params)
    tape = RandomTape(seed, "instance")
    session = Session(seed, mode)
    n = int(p.get("n", 8))
    if protocol in ("find-one", "find-exact", "find-more", "composed"):
        G = parse_inner(str(p.get("g", "and2")))
        check_capacity(G, n, mode)
        default_m = p.get("k", 1) if protocol != "composed" else tape.uniform(n + 1)
        m = int(p.get("marked", default_m))
        inst = random_marked_instance(G, n, m, tape)
        if protocol == "composed":
            spec = parse_symmetric(str(p["f"]), n)
            value = compute_composed(spec, inst, session)
            success = value == spec.D[len(inst.marked)]
        else:
            if protocol == "find-one":
                value = find_one(inst, session)
            elif protocol == "find-exact":
                value = find_exact(inst, int(p.get("gamma", 1)), session)
            else:
                value = find_more(inst, int(p.get("k", 1)), session)
            success = isinstance(value, Found) == bool(inst.marked)
    elif protocol == "sym-and":
        spec = parse_symmetric(str(p["f"]), n)
        x = tuple(tape.uniform(2) for _ in range(n))
        y = tuple(tape.uniform(2) for _ in range(n))
        value = compute_sym_and(spec, x, y, session, str(p.get("randomness", "shared")))
        success = value == spec.D[sum(a & b for a, b in zip(x, y))]
    else:
        k = int(p.get("k", 1))
        x, y = random_sparse_pair(n, k, tape)
        value = sparse_intersect(x, y, k, session.shared, session)
        success = value is not ABORT and value == support(x) & support(y)
    out = {"row": row, **p, "trial": trial, "seed": seed, "success": int(bool(success))}
    out.update(session.ledger.as_dict())
    return out


def sweep(protocol: str, grid: dict[str, Sequence], trials: int, seed_base: int = 0,
          mode: str = "ledger", workers: int = 1) -> list[dict[str, Any]]:
    """One row per (grid point, trial); row ``r`` uses seed ``seed_base XOR r``."""
    if protocol not in PROTOCOLS:
        raise InputError(f"unknown protocol {protocol!r}")
    if not grid:
        raise InputError("parameter grid is empty")
    if trials < 0:
        raise InputError("trial count must be non-negative")
    keys = sorted(grid)
    points = [dict(zip(keys, vals)) for vals in itertools.product(*(grid[k] for k in keys))]
    jobs = []
    for pi, point in enumerate(points):
        for t in range(trials):
            row = pi * trials + t
            jobs.append((row, protocol, tuple(point.items()), t, seed_base ^ row, mode))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_sweep_row, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [_sweep_row(j) for j in jobs]
    rows.sort(key=lambda r: r["row"])
    return rows


def sweep_columns(grid: dict[str, Sequence]) -> list[str]:
    return ["row", *sorted(grid), "trial", "seed", "success", *LEDGER_COLUMNS]


def write_csv(rows: list[dict[str, Any]], columns: list[str], out) -> None:
    """Write to a path or a text stream."""
    if isinstance(out, (str, bytes)) or hasattr(out, "__fspath__"):
        with open(out, "w", newline="") as fh:
            write_csv(rows, columns, fh)
        return
    w = csv.DictWriter(out, fieldnames=columns, extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow(r)


def rows_to_csv(rows: list[dict[str, Any]], columns: list[str]) -> str:
    buf = io.StringIO()
    write_csv(rows, columns, buf)
    return buf.getvalue()


__all__ = [
    "PROTOCOLS", "RunReport", "sim_qubits", "check_capacity", "run_protocol",
    "random_marked_instance", "random_sparse_pair", "sweep", "sweep_columns", "write_csv",
    "rows_to_csv", "derive_seed",
]
