"""Acceptance criteria, runnable at full or reduced ("fast") scale.

Each criterion returns a :class:`CriterionResult` with the measured
numbers.  Every ledger produced along the way is fed to a shared
:class:`EprAudit`, which backs the zero-entanglement criterion.

Reduction by marked pattern.  A search or counting run touches the inputs
only through the verification results ``G(X_i, Y_i)`` and through the
oracle, whose action is fixed by the same bits; tapes and costs never read
the inputs.  So for a fixed seed all inputs with the same pattern
``z_i = G(X_i, Y_i)`` give the same outcome and ledger.  Criteria over
exhaustive input sets therefore run one representative per pattern and
additionally replay a sample of other members to confirm the reduction.
"""
from __future__ import annotations

import itertools
import math
import time
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from .analysis import (AND_LIKE, NEG_AND_LIKE, and_table, classify_and_private_lower,
                       compute_l0_l1, enumerate_fooling_set, fooling_property_holds,
                       fooling_set_bound, nand_table)
from .composed import compute_composed, compute_sym_and
from .core import (CostLedger, InnerFunction, Instance, RandomTape, Session, SymmetricSpec,
                   derive_seed, eval_composed, parse_symmetric, support)
from .inner import and2, from_truth_table, xor2
from .search import (NO_COORDINATE, Found, block_placements, exactly_one_by_enumeration,
                     exactly_one_from_block_rates, exactly_one_probability, find_exact,
                     find_more, find_one, sampling_lower_bound)
from .sparse import ABORT, SparseConfig, sparse_intersect_sets
from .harness import random_sparse_pair

SEED_BASE = 0x5EED


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    measured: dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        keys = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items() if not isinstance(v, (list, dict)))
        return f"[{status}] criterion {self.number}: {self.name} ({keys}; {self.seconds:.1f}s)"


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.4g}"
    return str(v)


class EprAudit:
    """Counts ledgers seen and the largest entanglement use among them."""

    def __init__(self):
        self.ledgers = 0
        self.max_epr = 0

    def see(self, ledger: CostLedger) -> None:
        self.ledgers += 1
        if ledger.epr_pairs > self.max_epr:
            self.max_epr = ledger.epr_pairs


def _patterns(n: int):
    return itertools.product((0, 1), repeat=n)


def representative(G: InnerFunction, z) -> Instance:
    """The instance realising pattern ``z`` with the first preimage of each bit."""
    pre = {v: G.preimage(v)[0] for v in (0, 1)}
    return Instance(G, [pre[v][0] for v in z], [pre[v][1] for v in z])


def random_member(G: InnerFunction, z, rng: np.random.Generator) -> Instance:
    pre = {v: G.preimage(v) for v in (0, 1)}
    pairs = [pre[v][rng.integers(len(pre[v]))] for v in z]
    return Instance(G, [p[0] for p in pairs], [p[1] for p in pairs])


def _timed(fn: Callable[..., CriterionResult]) -> Callable[..., CriterionResult]:
    def wrapper(*args, **kwargs) -> CriterionResult:
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------
# 1. one-sided error
# ---------------------------------------------------------------------------

@_timed
def criterion_one_sided(audit: EprAudit, fast: bool = False) -> CriterionResult:
    """No marked coordinate => every search returns NO_COORDINATE, for every seed."""
    seeds = 100 if fast else 1000
    failures = runs = 0
    mismatched_members = 0
    for n in (4, 8):
        for G in (and2(), xor2()):
            rep = representative(G, (0,) * n)
            for s in range(seeds):
                for proto, arg in [("one", None)] + [("exact", g) for g in range(1, n + 1)] + \
                        [("more", k) for k in range(1, n + 1)]:
                    se = Session(derive_seed(SEED_BASE, 1, n, s, zlib.crc32(proto.encode()) & 0xFF, arg or 0))
                    if proto == "one":
                        r = find_one(rep, se)
                    elif proto == "exact":
                        r = find_exact(rep, arg, se)
                    else:
                        r = find_more(rep, arg, se)
                    audit.see(se.ledger)
                    runs += 1
                    failures += r is not NO_COORDINATE
            # the general (non-specialised) loop on a subset of seeds
            for s in range(10 if fast else 50):
                se = Session(derive_seed(SEED_BASE, 11, n, s))
                r = find_more(rep, 1, se, lean=False)
                audit.see(se.ledger)
                runs += 1
                failures += r is not NO_COORDINATE
            # every no-marked instance, a few seeds each, must match the representative
            zeros = G.preimage(0)
            for combo in itertools.product(zeros, repeat=n):
                if fast and n == 8 and hash(combo) % 16:
                    continue
                inst = Instance(G, [c[0] for c in combo], [c[1] for c in combo])
                for s in range(2):
                    seed = derive_seed(SEED_BASE, 12, n, s)
                    se, ref = Session(seed), Session(seed)
                    r = find_more(inst, 1, se)
                    rr = find_more(rep, 1, ref)
                    audit.see(se.ledger)
                    runs += 1
                    failures += r is not NO_COORDINATE
                    mismatched_members += (r != rr) or (se.ledger != ref.ledger)
    return CriterionResult(1, "one-sided error on instances with nothing marked",
                           failures == 0 and mismatched_members == 0,
                           {"runs": runs, "failures": failures,
                            "reduction_mismatches": mismatched_members})


# ---------------------------------------------------------------------------
# 2. find_one success
# ---------------------------------------------------------------------------

@_timed
def criterion_find_one(audit: EprAudit, fast: bool = False) -> CriterionResult:
    """Single-marked AND instances at n = 8, empirical success >= 0.985 each."""
    trials = 1000 if fast else 10_000
    n = 8
    G = and2()
    rates = []
    for pos in range(n):
        z = tuple(int(i == pos) for i in range(n))
        inst = representative(G, z)
        ok = 0
        for t in range(trials):
            se = Session(derive_seed(SEED_BASE, 2, pos, t), "sim")
            r = find_one(inst, se)
            audit.see(se.ledger)
            ok += r == Found(pos)
        rates.append(ok / trials)
    worst = min(rates)
    return CriterionResult(2, "find_one success on single-marked AND instances, n=8",
                           worst >= 0.985, {"trials": trials, "min_rate": worst, "rates": rates})


# ---------------------------------------------------------------------------
# 3. block-sampling bound
# ---------------------------------------------------------------------------

@_timed
def criterion_sampling_bound(audit: EprAudit, fast: bool = False) -> CriterionResult:
    """Exact P(exactly one marked coordinate sampled) against the lower bound."""
    checked = violations = cross_checked = cross_mismatch = 0
    worst_margin = None
    for n in range(1, 25):
        for gamma in range(1, n + 1):
            if n % gamma:
                continue
            for k in range(1, n + 1):
                if not (Fraction(3 * k, 2) < gamma < 3 * k):
                    continue
                bound = sampling_lower_bound(k, gamma)
                for prof in block_placements(n, gamma, k):
                    rates = [Fraction(c, gamma) for c in prof]
                    p = exactly_one_from_block_rates(rates)
                    checked += 1
                    margin = p - bound
                    if worst_margin is None or margin < worst_margin:
                        worst_margin = margin
                    if p < bound:
                        violations += 1
                    if gamma ** (n // gamma) <= 4096 and not (fast and checked % 7):
                        marked = [b * gamma + i for b, c in enumerate(prof) for i in range(c)]
                        cross_checked += 1
                        if exactly_one_by_enumeration(n, gamma, marked) != p or \
                                exactly_one_probability(n, gamma, marked) != p:
                            cross_mismatch += 1
    return CriterionResult(3, "exact block-sampling probability vs. max(2/9, q - q^2)",
                           violations == 0 and cross_mismatch == 0 and checked > 0,
                           {"placements": checked, "violations": violations,
                            "min_margin": float(worst_margin), "enumerated": cross_checked,
                            "enumeration_mismatches": cross_mismatch})


# ---------------------------------------------------------------------------
# 4. find_more contract and cost scaling
# ---------------------------------------------------------------------------

def find_more_cost_ratio(n: int, k: int, trials: int, audit: EprAudit | None = None) -> float:
    """Mean claimed qubits of find_more on an instance with nothing marked, over
    sqrt(n/k) * qcc_e (ledger mode)."""
    G = and2()
    inst = Instance(G, np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64))
    total = 0
    for t in range(trials):
        se = Session(derive_seed(SEED_BASE, 41, n, k, t), "ledger")
        find_more(inst, k, se)
        if audit is not None:
            audit.see(se.ledger)
        total += se.ledger.qubits_claimed
    return total / trials / (math.sqrt(n / k) * G.qcc_e)


@_timed
def criterion_find_more(audit: EprAudit, fast: bool = False) -> CriterionResult:
    """Success >= 0.985 when at least k are marked (n = 8); claimed-cost ratio flat in n."""
    trials = 1000 if fast else 10_000
    n = 8
    G = and2()
    rng = np.random.default_rng(404)
    rates: dict[str, float] = {}
    for k in (1, 2, 4):
        for m in range(k, n + 1):
            pos = sorted(rng.choice(n, size=m, replace=False).tolist())
            z = tuple(int(i in pos) for i in range(n))
            inst = representative(G, z)
            ok = 0
            for t in range(trials):
                se = Session(derive_seed(SEED_BASE, 4, k, m, t), "sim")
                r = find_more(inst, k, se)
                audit.see(se.ledger)
                ok += isinstance(r, Found) and r.index in pos
            rates[f"k={k},m={m}"] = ok / trials
    worst = min(rates.values())
    sizes = [2 ** e for e in range(8, 15)]
    cost_trials = 3 if fast else 20
    ratios = {k: [find_more_cost_ratio(s, k, cost_trials, audit) for s in sizes] for k in (1, 2, 4)}

    def spread(rs):
        return (max(rs) - min(rs)) / min(rs)

    # the full range at k = 1, and the top decade (n >= 2^14 / 10) for every k
    full_spread = spread(ratios[1])
    top = [i for i, s in enumerate(sizes) if s * 10 >= sizes[-1]]
    top_spread = max(spread([ratios[k][i] for i in top]) for k in ratios)
    passed = worst >= 0.985 and full_spread < 0.25 and top_spread < 0.25
    return CriterionResult(4, "find_more success at n=8 and flat claimed-cost ratio over n=2^8..2^14",
                           passed, {"trials": trials, "min_rate": worst,
                                    "ratio_spread_k1": full_spread,
                                    "ratio_spread_k2": spread(ratios[2]),
                                    "ratio_spread_k4": spread(ratios[4]),
                                    "top_decade_spread": top_spread,
                                    "max_ratio": max(max(r) for r in ratios.values()),
                                    "rates": rates, "ratios": ratios})


# ---------------------------------------------------------------------------
# 5. composed end-to-end
# ---------------------------------------------------------------------------

def random_inner_1x1(seed: int = 5) -> InnerFunction:
    """A fixed, seeded, non-constant inner function on one bit per party."""
    tape = RandomTape(seed, "inner-choice")
    while True:
        table = tuple(tape.uniform(2) for _ in range(4))
        if 0 < sum(table) < 4:
            return from_truth_table(1, 1, table)


CRITERION5_FUNCTIONS = ("or", "thr:2", "table:010000000")


@_timed
def criterion_composed(audit: EprAudit, fast: bool = False) -> CriterionResult:
    """f o G agrees with the reference on every input at n = 8 (sim mode), >= 0.97 each."""
    trials = 30 if fast else 300
    n = 8
    inners = [and2(), xor2(), random_inner_1x1()]
    worst = 1.0
    worst_at = ""
    runs = 0
    reduction_mismatch = 0
    rng = np.random.default_rng(55)
    for fi, fdesc in enumerate(CRITERION5_FUNCTIONS):
        f = parse_symmetric(fdesc, n)
        for gi, G in enumerate(inners):
            for zi, z in enumerate(_patterns(n)):
                inst = representative(G, z)
                truth = eval_composed(f, G, inst.X, inst.Y)
                ok = 0
                for t in range(trials):
                    se = Session(derive_seed(SEED_BASE, 5, fi, gi, zi, t), "sim")
                    ok += compute_composed(f, inst, se) == truth
                    audit.see(se.ledger)
                runs += trials
                rate = ok / trials
                if rate < worst:
                    worst, worst_at = rate, f"f={fdesc},G={G.name},z={''.join(map(str, z))}"
                # other inputs with the same pattern replay identically
                for t in range(2 if fast else 4):
                    seed = derive_seed(SEED_BASE, 5, fi, gi, zi, t)
                    other = random_member(G, z, rng)
                    a, b = Session(seed, "sim"), Session(seed, "sim")
                    va, vb = compute_composed(f, inst, a), compute_composed(f, other, b)
                    reduction_mismatch += (va != vb) or (a.ledger != b.ledger)
    return CriterionResult(5, "composed protocol per-input agreement at n=8 (3 f x 3 G)",
                           worst >= 0.97 and reduction_mismatch == 0,
                           {"trials": trials, "runs": runs, "min_rate": worst,
                            "worst_input_class": worst_at,
                            "reduction_mismatches": reduction_mismatch})


# ---------------------------------------------------------------------------
# 6. symmetric-and end-to-end and cost regression
# ---------------------------------------------------------------------------

def high_end_table(n: int, l1: int) -> tuple[int, ...]:
    """D(m) = 1 exactly when m >= n - l1 + 1 (so l0 = 0 and the given l1)."""
    return tuple(int(m >= n - l1 + 1) for m in range(n + 1))


def _low_zero_inputs(n: int, max_zeros: int) -> list[tuple[int, ...]]:
    out = []
    for r in range(max_zeros + 1):
        for zeros in itertools.combinations(range(n), r):
            x = [1] * n
            for i in zeros:
                x[i] = 0
            out.append(tuple(x))
    return out


# Frozen from one run of calibrate_regression() (sizes 2^6..2^8, margin 1.25).
# Total claimed communication (claimed qubits + classical bits) of
# compute_sym_and with private randomness, ledger mode, must stay below
# c1*sqrt(n*l0) + c2*l1 + c3*log2(log2(n)) + c4 for every size up to 2^12.
REGRESSION_CONSTANTS = {"c1": 8910.0, "c2": 1295.0, "c3": 1.0, "c4": 0.0}
CALIBRATION_SIZES = (64, 128, 256)
CALIBRATION_MARGIN = 1.25
REGRESSION_FAMILIES = {
    "l0=0,l1=2": lambda n: high_end_table(n, 2),
    "l0=2,l1=2": lambda n: tuple(int(m == 1 or m >= n - 1) for m in range(n + 1)),
    "l0=4,l1=8": lambda n: tuple(int(m in (1, 3) or m >= n - 7) for m in range(n + 1)),
}


def regression_inputs(n: int, l1: int) -> dict[str, tuple[tuple[int, ...], tuple[int, ...]]]:
    """Inputs that drive each branch of the protocol to its expensive case."""
    ones = (1,) * n
    zx = [1] * n
    zy = [1] * n
    for i in range(l1):
        zx[i] = 0
        zy[n - 1 - i] = 0
    return {
        "disjoint": ((0,) * n, (0,) * n),          # low count must be confirmed empty
        "sparse-zeros": (tuple(zx), tuple(zy)),    # high branch runs the intersection
        "all-ones": (ones, ones),
    }


def measure_sym_and_cost(D: tuple[int, ...], trials: int, audit: EprAudit | None = None,
                         mode: str = "private") -> float:
    """Worst mean (over the regression inputs) of claimed qubits + classical bits."""
    f = SymmetricSpec(D)
    n = f.n
    worst = 0.0
    for name, (x, y) in regression_inputs(n, f.l1).items():
        total = 0
        for t in range(trials):
            se = Session(derive_seed(SEED_BASE, 61, n, zlib.crc32(bytes(D)) & 0xFFFF, zlib.crc32(name.encode()) & 0xFF, t),
                         "ledger")
            compute_sym_and(f, x, y, se, mode)
            if audit is not None:
                audit.see(se.ledger)
            total += se.ledger.total_claimed
        worst = max(worst, total / trials)
    return worst


def regression_bound(n: int, l0: int, l1: int, c: dict[str, float] = REGRESSION_CONSTANTS) -> float:
    return c["c1"] * math.sqrt(n * l0) + c["c2"] * l1 + c["c3"] * math.log2(math.log2(n)) + c["c4"]


def calibrate_regression(trials: int = 10) -> dict[str, float]:
    """Recompute the constants: c3 = 1 (one seed bit per doubling of log n), c4 = 0,
    c2 from the l0 = 0 family, c1 from the l0 > 0 families, each times the margin."""
    c1 = c2 = 0.0
    for make in REGRESSION_FAMILIES.values():
        for n in CALIBRATION_SIZES:
            D = make(n)
            l0, l1 = compute_l0_l1(D)
            cost = measure_sym_and_cost(D, trials)
            if l0:
                c1 = max(c1, cost / math.sqrt(n * l0))
            else:
                c2 = max(c2, (cost - math.log2(math.log2(n))) / l1)
    return {"c1": CALIBRATION_MARGIN * c1, "c2": CALIBRATION_MARGIN * c2, "c3": 1.0, "c4": 0.0}


@_timed
def criterion_sym_and(audit: EprAudit, fast: bool = False) -> CriterionResult:
    """f o AND at n = 16 with l0 = 0, l1 = 2 over all inputs with at most 3 zeros per
    side (>= 0.97 each, both randomness modes); frozen cost regression over n."""
    trials = 30 if fast else 300
    n = 16
    D = high_end_table(n, 2)
    f = SymmetricSpec(D)
    inputs = _low_zero_inputs(n, 3)
    worst = {"shared": 1.0, "private": 1.0}
    deterministic = random_path = 0
    det_mismatch = 0
    for mode in ("shared", "private"):
        if fast and mode == "shared":
            continue
        for xi, x in enumerate(inputs):
            zx = n - sum(x)
            if fast and xi % 4:
                continue
            for yi, y in enumerate(inputs):
                truth = eval_composed(f, and2(), x, y)
                zy = n - sum(y)
                if zx > f.l1 or zy > f.l1:
                    # early exit: no randomness is read, so one run stands for every seed
                    a = Session(derive_seed(SEED_BASE, 6, xi, yi, 0))
                    b = Session(derive_seed(SEED_BASE, 6, xi, yi, 1))
                    va, vb = compute_sym_and(f, x, y, a, mode), compute_sym_and(f, x, y, b, mode)
                    audit.see(a.ledger)
                    audit.see(b.ledger)
                    used = (a.ledger.shared_random_bits + a.alice.bits_drawn + a.bob.bits_drawn)
                    det_mismatch += (va != vb) or (a.ledger != b.ledger) or used != 0
                    rate = float(va == truth)
                    deterministic += 1
                else:
                    ok = 0
                    for t in range(trials):
                        se = Session(derive_seed(SEED_BASE, 6, xi, yi, t))
                        ok += compute_sym_and(f, x, y, se, mode) == truth
                        audit.see(se.ledger)
                    rate = ok / trials
                    random_path += 1
                worst[mode] = min(worst[mode], rate)
    # cost regression
    sizes = [2 ** e for e in range(6, 13)]
    cost_trials = 3 if fast else 10
    usage = []
    for make in REGRESSION_FAMILIES.values():
        for s in sizes:
            Dn = make(s)
            l0, l1 = compute_l0_l1(Dn)
            cost = measure_sym_and_cost(Dn, cost_trials, audit)
            usage.append(cost / regression_bound(s, l0, l1))
    passed = min(worst.values()) >= 0.97 and det_mismatch == 0 and max(usage) <= 1.0
    return CriterionResult(6, "symmetric-and agreement at n=16 and frozen cost regression",
                           passed, {"trials": trials, "min_rate_shared": worst["shared"],
                                    "min_rate_private": worst["private"],
                                    "random_path_inputs": random_path,
                                    "deterministic_inputs": deterministic,
                                    "deterministic_mismatches": det_mismatch,
                                    "max_cost_to_bound": max(usage)})


# ---------------------------------------------------------------------------
# 7. sparse intersection
# ---------------------------------------------------------------------------

@_timed
def criterion_sparse(audit: EprAudit, fast: bool = False) -> CriterionResult:
    trials = 1000 if fast else 10_000
    n = 1024
    rates = {}
    over_budget = completeness = asym = 0
    for k in (1, 2, 4, 8, 16):
        cfg = SparseConfig.for_k(k)
        errors = 0
        for t in range(trials):
            seed = derive_seed(SEED_BASE, 7, k, t)
            x, y = random_sparse_pair(n, k, RandomTape(seed, "instance"))
            A, B = support(x), support(y)
            truth = A & B
            se = Session(seed)
            d = sparse_intersect_sets(A, B, cfg, se.shared, se)
            audit.see(se.ledger)
            if se.ledger.classical_bits > cfg.threshold:
                over_budget += 1
            if d.alice is ABORT:
                errors += 1
                continue
            if not truth <= d.alice or not truth <= d.bob:
                completeness += 1
            if d.alice != truth:
                errors += 1
            if d.alice == truth and d.bob == truth and d.alice != d.bob:
                asym += 1
        rates[k] = errors / trials
    worst = max(rates.values())
    return CriterionResult(7, "sparse intersection error, budget and completeness at n=1024",
                           worst <= 0.015 and over_budget == 0 and completeness == 0 and asym == 0,
                           {"trials": trials, "max_error_rate": worst, "over_budget": over_budget,
                            "completeness_failures": completeness, "rates": rates})


# ---------------------------------------------------------------------------
# 8. fooling set and classifier
# ---------------------------------------------------------------------------

@_timed
def criterion_fooling(audit: EprAudit, fast: bool = False) -> CriterionResult:
    size_bad = prop_bad = cases = 0
    for n in range(2, 13):
        for l1 in (2, 3):
            if 2 * l1 > n:
                continue
            D = high_end_table(n, l1)
            if compute_l0_l1(D) != (0, l1):
                size_bad += 1
                continue
            fs = enumerate_fooling_set(n, l1)
            cases += 1
            if len(fs) != math.comb(n, l1 - 1) or fooling_set_bound(D).size != len(fs):
                size_bad += 1
            if not fooling_property_holds(D, fs):
                prop_bad += 1
    cls_bad = 0
    for n in range(1, 13):
        if classify_and_private_lower(and_table(n)).classification != AND_LIKE:
            cls_bad += 1
        if classify_and_private_lower(nand_table(n)).classification != NEG_AND_LIKE:
            cls_bad += 1
    tables = 0
    for n in range(1, 9 if not fast else 7):
        for D in itertools.product((0, 1), repeat=n + 1):
            theta = classify_and_private_lower(D).theta_one
            if theta != (D in (and_table(n), nand_table(n))):
                cls_bad += 1
            tables += 1
    return CriterionResult(8, "fooling-set size and cross-pair property; trivial classifier",
                           size_bad == 0 and prop_bad == 0 and cls_bad == 0 and cases > 0,
                           {"cases": cases, "size_mismatches": size_bad,
                            "property_failures": prop_bad, "tables_classified": tables,
                            "classifier_errors": cls_bad})


# ---------------------------------------------------------------------------
# 9. counting identity
# ---------------------------------------------------------------------------

_POP = np.array([bin(i).count("1") for i in range(1 << 12)], dtype=np.int16)


@_timed
def criterion_counting_identity(audit: EprAudit, fast: bool = False) -> CriterionResult:
    """|x & y| = n + #{both 0} - |not x| - |not y| for every x, y with n <= 12."""
    exceptions = checked = 0
    for n in range(0, 13):
        size = 1 << n
        mask = size - 1
        xs = np.arange(size, dtype=np.int64)
        for x in range(size):
            ys = xs
            both = _POP[x & ys]
            zeros = _POP[~x & ~ys & mask]
            nx = n - _POP[x]
            ny = n - _POP[ys]
            exceptions += int(np.count_nonzero(both != n + zeros - nx - ny))
            checked += size
    # second route: direct bit loops for small n
    for n in range(0, 7):
        for x in itertools.product((0, 1), repeat=n):
            for y in itertools.product((0, 1), repeat=n):
                lhs = sum(a & b for a, b in zip(x, y))
                rhs = n + sum((1 - a) & (1 - b) for a, b in zip(x, y)) - x.count(0) - y.count(0)
                exceptions += lhs != rhs
    return CriterionResult(9, "counting identity, exhaustive n <= 12", exceptions == 0,
                           {"pairs": checked, "exceptions": exceptions})


# ---------------------------------------------------------------------------
# 10. zero entanglement
# ---------------------------------------------------------------------------

def criterion_zero_epr(audit: EprAudit) -> CriterionResult:
    return CriterionResult(10, "no protocol run used an EPR pair",
                           audit.max_epr == 0 and audit.ledgers > 0,
                           {"ledgers": audit.ledgers, "max_epr_pairs": audit.max_epr})


CRITERIA = (
    criterion_one_sided, criterion_find_one, criterion_sampling_bound, criterion_find_more,
    criterion_composed, criterion_sym_and, criterion_sparse, criterion_fooling,
    criterion_counting_identity,
)


def run_all(fast: bool = False, only: set[int] | None = None,
            progress: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    audit = EprAudit()
    out = []
    for i, crit in enumerate(CRITERIA, start=1):
        if only is not None and i not in only:
            continue
        res = crit(audit, fast=fast)
        out.append(res)
        if progress:
            progress(res)
    res = criterion_zero_epr(audit)
    out.append(res)
    if progress:
        progress(res)
    return out


__all__ = [
    "CriterionResult", "EprAudit", "representative", "random_member", "CRITERIA", "run_all",
    "criterion_one_sided", "criterion_find_one", "criterion_sampling_bound",
    "criterion_find_more", "criterion_composed", "criterion_sym_and", "criterion_sparse",
    "criterion_fooling", "criterion_counting_identity", "criterion_zero_epr",
    "find_more_cost_ratio", "random_inner_1x1", "high_end_table", "measure_sym_and_cost",
    "regression_bound", "REGRESSION_CONSTANTS", "REGRESSION_FAMILIES",
]
