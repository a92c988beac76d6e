import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcomposed.core import (ALICE, BOB, CLAIMED, CLASSICAL, QUBITS, Block, CostLedger, InputError,
                            Instance, RandomTape, Session, SymmetricSpec, bits, ceil_log2,
                            compute_l0_l1, derive_seed, eval_composed, hamming_weight,
                            middle_bounds, mix64, negate, parse_symmetric, support)
from qcomposed.inner import and2, xor2


class TestBits:
    @pytest.mark.parametrize("s,w", [("0000", 0), ("1111", 4), ("1011", 3)])
    def test_hamming_weight(self, s, w):
        assert hamming_weight(bits(s)) == w

    def test_bits_rejects_garbage(self):
        with pytest.raises(InputError):
            bits("01x")
        with pytest.raises(InputError):
            bits([0, 2])

    def test_negate_and_support(self):
        assert negate((1, 0, 1)) == (0, 1, 0)
        assert support("0110") == frozenset({1, 2})

    @pytest.mark.parametrize("n,want", [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (1024, 10), (1025, 11)])
    def test_ceil_log2(self, n, want):
        assert ceil_log2(n) == want


class TestTape:
    def test_zero_draw(self):
        t = RandomTape(5)
        assert t.draw_bits(0) == ()
        assert t.bits_drawn == 0

    def test_same_seed_same_bits(self):
        a, b = RandomTape(9, "shared"), RandomTape(9, "shared")
        assert a.draw_bits(100) == b.draw_bits(100)

    def test_two_64_bit_draws(self):
        t = RandomTape(3)
        first, second = t.draw_bits(64), t.draw_bits(64)
        assert first != second
        assert t.bits_drawn == 128

    def test_kinds_are_independent_streams(self):
        assert RandomTape(1, "alice").draw_word() != RandomTape(1, "bob").draw_word()

    def test_word_matches_reference_splitmix(self):
        # counter-based SplitMix64: word c = mix64(key + c * golden)
        t = RandomTape(11, "x")
        key = t._key
        want = [mix64((key + c * 0x9E3779B97F4A7C15) & (2 ** 64 - 1)) for c in (1, 2, 3)]
        assert [t.draw_word() for _ in range(3)] == want

    def test_uniform_array_matches_sequential(self):
        for bound in (1, 2, 3, 5, 8, 13, 64, 1000):
            a, b = RandomTape(77), RandomTape(77)
            arr = a.uniform_array(bound, 257)
            seq = [b.uniform(bound) for _ in range(257)]
            assert arr.tolist() == seq
            assert (a.bits_drawn, a.words_drawn) == (b.bits_drawn, b.words_drawn)

    def test_uniform_is_roughly_uniform(self):
        t = RandomTape(2024)
        counts = np.bincount([t.uniform(6) for _ in range(60_000)], minlength=6)
        assert np.all(np.abs(counts / 60_000 - 1 / 6) < 0.01)

    def test_random_meters_53_bits(self):
        t = RandomTape(1)
        u = t.random()
        assert 0 <= u < 1
        assert t.bits_drawn == 53

    def test_derive_seed_is_order_sensitive(self):
        assert derive_seed(1, 2) != derive_seed(2, 1)


class TestLedger:
    @given(st.lists(st.tuples(*[st.integers(0, 1000)] * 6), min_size=1, max_size=6))
    def test_merge_is_fieldwise_sum(self, rows):
        total = sum((CostLedger(*r) for r in rows), CostLedger())
        for i, name in enumerate(("qubits_sim", "qubits_claimed", "classical_bits",
                                  "shared_random_bits", "epr_pairs", "rounds")):
            assert getattr(total, name) == sum(r[i] for r in rows)

    def test_negative_rejected(self):
        with pytest.raises(InputError):
            CostLedger(classical_bits=-1)

    def test_rounds_count_speaker_changes(self):
        s = Session(0)
        s.send(ALICE, 3, CLASSICAL, "a")
        s.send(ALICE, 1, CLASSICAL, "a")
        s.send(BOB, 2, QUBITS, "b")
        s.send(ALICE, 5, CLAIMED, "c")  # claimed entries do not alternate speakers
        s.send(ALICE, 1, CLASSICAL, "d")
        led = s.ledger
        assert (led.classical_bits, led.qubits_sim, led.qubits_claimed, led.rounds) == (5, 2, 5, 3)
        assert led.epr_pairs == 0

    @given(st.lists(st.tuples(st.sampled_from([ALICE, BOB]), st.integers(0, 5),
                              st.sampled_from([QUBITS, CLAIMED, CLASSICAL])),
                    min_size=1, max_size=6),
           st.integers(1, 5), st.lists(st.tuples(st.sampled_from([ALICE, BOB]), st.integers(0, 3),
                                                 st.sampled_from([QUBITS, CLASSICAL])), max_size=3))
    @settings(max_examples=150)
    def test_block_charge_equals_message_replay(self, entries, repeat, prefix):
        block = Block([(sp, w, kind, "t") for sp, w, kind in entries])
        a, b = Session(0), Session(0)
        for sp, w, kind in prefix:
            a.send(sp, w, kind, "p")
            b.send(sp, w, kind, "p")
        a.charge_block(block, repeat)
        for _ in range(repeat):
            for sp, w, kind in entries:
                b.send(sp, w, kind, "t")
        assert a.ledger == b.ledger

    def test_transcript_totals_match_ledger(self):
        s = Session(0, record=True)
        s.send(ALICE, 4, CLASSICAL, "x")
        s.charge_block(Block([(BOB, 2, QUBITS, "q"), (ALICE, 1, CLAIMED, "c")]), 3)
        out = s.outcome(None)
        tot = out.transcript_totals()
        assert tot[CLASSICAL] == out.ledger.classical_bits == 4
        assert tot[QUBITS] == out.ledger.qubits_sim == 6
        assert tot[CLAIMED] == out.ledger.qubits_claimed == 3


class TestSpectrum:
    @pytest.mark.parametrize("D,want", [
        ((0, 1, 1, 1, 1), (1, 0)),
        ((0, 1, 0, 1, 0), (2, 2)),
        ((1, 1, 1, 1, 1), (0, 0)),
        ((0, 0, 0, 0, 1), (0, 1)),
    ])
    def test_l0_l1_examples(self, D, want):
        assert compute_l0_l1(D) == want

    def test_middle_bounds_cover_constant_region(self):
        for n in range(0, 9):
            for D in itertools.product((0, 1), repeat=n + 1):
                a, b = middle_bounds(D)
                assert 0 <= a <= b <= n
                assert len(set(D[a:b + 1])) == 1
                l0, l1 = compute_l0_l1(D)
                assert b == n - l1 and a >= l0

    def test_odd_middle_step(self):
        # n = 3, single step between weights 1 and 2: neither change point sees it
        D = (0, 0, 1, 1)
        assert compute_l0_l1(D) == (0, 0)
        assert middle_bounds(D) == (2, 3)

    def test_parse_descriptors(self):
        assert parse_symmetric("or", 4).D == (0, 1, 1, 1, 1)
        assert parse_symmetric("and", 3).D == (0, 0, 0, 1)
        assert parse_symmetric("parity", 4).D == (0, 1, 0, 1, 0)
        assert parse_symmetric("thr:2", 3).D == (0, 0, 1, 1)
        assert parse_symmetric("table:0110").D == (0, 1, 1, 0)
        for bad in ("majority", "thr:x", "table:012"):
            with pytest.raises(InputError):
                parse_symmetric(bad, 3)
        with pytest.raises(InputError):
            parse_symmetric("table:011", 3)


class TestEvalComposed:
    def test_or_and(self):
        assert eval_composed(parse_symmetric("or", 4), and2(), (0, 1, 0, 1), (0, 0, 1, 1)) == 1

    def test_constant(self):
        f = SymmetricSpec((0,) * 5)
        assert eval_composed(f, xor2(), (1, 0, 1, 1), (0, 0, 1, 0)) == 0

    def test_parity_xor(self):
        assert eval_composed(parse_symmetric("parity", 4), xor2(), (1, 1, 0, 0), (1, 0, 1, 0)) == 0

    def test_arity_mismatch(self):
        with pytest.raises(InputError):
            eval_composed(parse_symmetric("or", 3), and2(), (1, 0, 1, 1), (1, 1, 1, 1))


class TestInstance:
    def test_marked_and_exclusion(self):
        inst = Instance(and2(), [1, 1, 0, 1], [1, 0, 1, 1])
        assert inst.marked == (0, 3)
        ex = inst.exclude(0)
        assert ex.marked == (3,) and ex.active == 3
        assert inst.marked == (0, 3)

    def test_subsample_reindexes(self):
        inst = Instance(and2(), [1, 1, 0, 1], [1, 0, 1, 1]).exclude(3)
        sub = inst.subsample([3, 0])
        assert sub.n == 2 and sub.excluded == frozenset({0}) and sub.marked == (1,)

    def test_negated(self):
        inst = Instance(xor2(), [1, 0, 1], [1, 1, 0])
        assert inst.negated().marked == (0,)

    def test_entry_range_checked(self):
        with pytest.raises(InputError):
            Instance(and2(), [2], [0])
        with pytest.raises(InputError):
            Instance(and2(), [1, 0], [1])
