import itertools

import numpy as np

from qcomposed import acceptance as acc
from qcomposed.analysis import compute_l0_l1
from qcomposed.composed import compute_composed
from qcomposed.core import Session, SymmetricSpec, parse_symmetric
from qcomposed.inner import and2, xor2


def test_representative_realises_pattern():
    for G in (and2(), xor2(), acc.random_inner_1x1()):
        for z in itertools.product((0, 1), repeat=4):
            assert tuple(acc.representative(G, z).z.astype(int)) == z


def test_pattern_reduction_on_random_members():
    rng = np.random.default_rng(0)
    f = parse_symmetric("thr:2", 6)
    for t in range(60):
        z = tuple(int(v) for v in rng.integers(0, 2, 6))
        G = (and2(), xor2())[t % 2]
        rep, other = acc.representative(G, z), acc.random_member(G, z, rng)
        a, b = Session(t, "sim"), Session(t, "sim")
        assert compute_composed(f, rep, a) == compute_composed(f, other, b)
        assert a.ledger == b.ledger


def test_random_inner_is_non_constant_and_fixed():
    G = acc.random_inner_1x1()
    assert 0 < sum(G.table) < 4 and G.table == acc.random_inner_1x1().table


def test_criterion5_tables():
    assert compute_l0_l1(parse_symmetric("table:010000000").D) == (2, 0)
    assert compute_l0_l1(parse_symmetric("or", 8).D) == (1, 0)


def test_regression_families_have_stated_change_points():
    for name, make in acc.REGRESSION_FAMILIES.items():
        l0, l1 = compute_l0_l1(make(64))
        assert name == f"l0={l0},l1={l1}"


def test_frozen_constants_match_calibration():
    fresh = acc.calibrate_regression()
    for key, frozen in acc.REGRESSION_CONSTANTS.items():
        assert abs(fresh[key] - frozen) <= 0.01 * max(1.0, frozen)


def test_high_end_table():
    D = acc.high_end_table(16, 2)
    assert SymmetricSpec(D).l0 == 0 and SymmetricSpec(D).l1 == 2 and D[15] == 1 and D[14] == 0
