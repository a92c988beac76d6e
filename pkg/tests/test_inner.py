import itertools

import numpy as np
import pytest

from qcomposed.core import ALICE, BOB, InputError, Instance, Session
from qcomposed.inner import (and2, apply_oracle_og, classical_eval_g, from_truth_table,
                             oracle_truth, parse_inner, query_block, table_hex, trivial_exact_protocol,
                             verify_block, xor2)
from qcomposed.qsim import H_GATE, DistState, Unitary


def test_qcc_e_values():
    assert and2().qcc_e == 1 and xor2().qcc_e == 1
    table = tuple(np.random.default_rng(0).integers(0, 2, 32))
    assert trivial_exact_protocol(3, 2, table).total_cost == 4


def test_and2_query_claims_two_qubits():
    assert query_block(and2(), 16).claimed == 2


@pytest.mark.parametrize("desc", ["and2", "xor2", "tt:1:1:9", "tt:2:1:a5", "tt:1:2:3c"])
def test_exact_protocols_are_exact(desc):
    G = parse_inner(desc)
    for a in range(1 << G.j):
        for b in range(1 << G.k):
            assert G.exact.run(a, b)[0] == G(a, b)


def test_parse_inner_round_trip():
    G = parse_inner("tt:2:1:a5")
    assert G.table == (1, 0, 1, 0, 0, 1, 0, 1)
    assert table_hex(G.table) == "a5"
    assert from_truth_table(2, 1, G.table).table == G.table
    for bad in ("nand", "tt:1:1", "tt:0:1:1", "tt:1:1:1ff", "tt:a:1:1"):
        with pytest.raises(InputError):
            parse_inner(bad)


def test_classical_eval_g():
    s = Session(0)
    assert classical_eval_g(Instance(and2(), [1], [1]), 0, s) == 1
    assert classical_eval_g(Instance(xor2(), [1], [1]), 0, s) == 0


def test_verify_cost_and2_n16():
    # 4 index bits, Bob's bit, Alice's announcement
    s = Session(0)
    inst = Instance(and2(), [1] * 16, [1] * 16)
    classical_eval_g(inst, 5, s)
    assert s.ledger.classical_bits == 6 == verify_block(and2(), 16).classical


def test_excluded_coordinate_is_free_zero():
    s = Session(0)
    inst = Instance(and2(), [1, 1], [1, 1]).exclude(1)
    assert classical_eval_g(inst, 1, s) == 0
    assert s.ledger.classical_bits == 0


def _oracle_matrix(inst, w):
    out = {}
    for i in range(1 << w):
        for z in (0, 1):
            st = DistState()
            idx = st.alloc(ALICE, w, i)
            tgt = st.alloc(ALICE, 1, z)
            apply_oracle_og(st, inst, idx, tgt)
            p = st.probabilities([idx, tgt]).reshape(1 << w, 2)
            (ii, zz), = np.argwhere(p > 0.5)
            assert st.total_qubits == w + 1
            out[i, z] = (ii, zz)
    return out


def test_oracle_example_n4():
    inst = Instance(and2(), [1, 0, 1, 0], [1, 1, 0, 0])
    m = _oracle_matrix(inst, 2)
    assert m[0, 0] == (0, 1)
    assert m[1, 0] == (1, 0)


@pytest.mark.parametrize("desc", ["and2", "xor2", "tt:1:1:9", "tt:2:1:a5"])
def test_oracle_matches_truth_with_exclusions(desc):
    G = parse_inner(desc)
    rng = np.random.default_rng(len(desc))
    n = 3
    X = rng.integers(0, 1 << G.j, n)
    Y = rng.integers(0, 1 << G.k, n)
    inst = Instance(G, X, Y).exclude(1)
    w = 2
    truth = oracle_truth(inst, w)
    for (i, z), (ii, zz) in _oracle_matrix(inst, w).items():
        assert ii == i and zz == z ^ truth[i]


@pytest.mark.parametrize("desc", ["and2", "xor2", "tt:1:1:9", "tt:2:1:a5"])
def test_oracle_metering_matches_query_block(desc):
    G = parse_inner(desc)
    n = 8
    inst = Instance(G, [0] * n, [0] * n)
    s = Session(0)
    st = DistState(s)
    idx, tgt = st.alloc(ALICE, 3), st.alloc(ALICE, 1)
    apply_oracle_og(st, inst, idx, tgt)
    block = query_block(G, n)
    assert s.ledger.qubits_sim == block.qubits
    assert s.ledger.qubits_claimed == block.claimed == 2 * G.qcc_e


def test_oracle_superposition_is_coherent():
    # a superposed index must come back unentangled from the scratch registers
    inst = Instance(xor2(), [1, 0, 1, 1], [0, 0, 1, 0])
    st = DistState()
    idx, tgt = st.alloc(ALICE, 2), st.alloc(ALICE, 1)
    st.apply_local(ALICE, Unitary(np.kron(H_GATE.matrix, H_GATE.matrix)), [idx])
    apply_oracle_og(st, inst, idx, tgt)
    amps = st.amplitudes().reshape(4, 2)
    truth = oracle_truth(inst, 2)
    for i in range(4):
        assert abs(amps[i, truth[i]]) == pytest.approx(0.5)


def test_oracle_registers_must_be_alices():
    st = DistState()
    idx, tgt = st.alloc(BOB, 1), st.alloc(ALICE, 1)
    with pytest.raises(InputError):
        apply_oracle_og(st, Instance(and2(), [1, 1], [1, 1]), idx, tgt)


def test_exhaustive_small_truth_tables_build():
    for table in itertools.product((0, 1), repeat=4):
        G = from_truth_table(1, 1, table)
        assert G.protocol_table == table
        assert G.negated().table == tuple(1 - t for t in table)


def _random_tables():
    rng = np.random.default_rng(20)
    out = [from_truth_table(1, 1, t) for t in itertools.product((0, 1), repeat=4)]
    for _ in range(20):
        j, k = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        out.append(from_truth_table(j, k, tuple(rng.integers(0, 2, 1 << (j + k)))))
    return out


def test_oracle_correct_over_truth_tables():
    rng = np.random.default_rng(21)
    for G in _random_tables():
        n = int(rng.integers(1, 5))
        inst = Instance(G, rng.integers(0, 1 << G.j, n), rng.integers(0, 1 << G.k, n))
        truth = oracle_truth(inst, 2)
        for (i, z), (ii, zz) in _oracle_matrix(inst, 2).items():
            assert ii == i and zz == z ^ truth[i]


def test_oracle_exhaustive_n8_and2():
    rng = np.random.default_rng(22)
    inst = Instance(and2(), rng.integers(0, 2, 8), rng.integers(0, 2, 8)).exclude(5)
    truth = oracle_truth(inst, 3)
    for (i, z), (ii, zz) in _oracle_matrix(inst, 3).items():
        assert ii == i and zz == z ^ truth[i]


def test_oracle_is_an_involution():
    rng = np.random.default_rng(23)
    G = parse_inner("tt:2:1:a5")
    inst = Instance(G, rng.integers(0, 4, 4), rng.integers(0, 2, 4))
    st = DistState()
    idx, tgt = st.alloc(ALICE, 2), st.alloc(ALICE, 1)
    st.apply_local(ALICE, Unitary(np.kron(H_GATE.matrix, H_GATE.matrix)), [idx])
    st.apply_local(ALICE, H_GATE, [tgt])
    st.apply_local(ALICE, Unitary(np.diag([1, 1j])), [tgt])
    before = st.amplitudes().copy()
    apply_oracle_og(st, inst, idx, tgt)
    assert not np.allclose(st.amplitudes(), before)
    apply_oracle_og(st, inst, idx, tgt)
    assert np.allclose(st.amplitudes(), before, atol=1e-7)
