import csv
import io

import pytest

from qcomposed.core import CapacityError, InputError, RandomTape, support
from qcomposed.harness import (random_marked_instance, random_sparse_pair, rows_to_csv, run_protocol,
                               sim_qubits, sweep, sweep_columns)
from qcomposed.inner import and2, parse_inner


def test_run_find_one_report():
    rep = run_protocol("find-one", g="and2", x="1001", y="0001", seed=7)
    assert rep.value == {"found": 3} and rep.match
    assert rep.ledger["epr_pairs"] == 0
    assert set(rep.ledger) == {"qubits_sim", "qubits_claimed", "classical_bits",
                               "shared_random_bits", "epr_pairs", "rounds"}


def test_replay_is_identical():
    kw = dict(f="table:000000011", x="11111110", y="11111101", seed=3, mode="ledger")
    a = run_protocol("sym-and", **kw).as_dict(wallclock=False)
    b = run_protocol("sym-and", **kw).as_dict(wallclock=False)
    assert a == b and a["value"] == 0 and a["match"]


@pytest.mark.parametrize("proto,kw", [
    ("find-exact", dict(g="xor2", x="0110", y="0100", gamma=2)),
    ("find-more", dict(g="tt:2:1:a5", x="1,2,3", y="0,1,1", k=1)),
    ("composed", dict(f="thr:2", g="and2", x="1110", y="1011")),
    ("sparse-intersect", dict(x="00110000", y="00010001", k=2)),
])
def test_protocols_run(proto, kw):
    rep = run_protocol(proto, seed=1, **kw)
    assert rep.match


def test_sparse_report_value():
    rep = run_protocol("sparse-intersect", x="00110000", y="00010001", k=2, seed=0)
    assert rep.value == [3] == rep.oracle


def test_capacity_error_in_sim_mode():
    x = ",".join(["1"] * 1000)
    with pytest.raises(CapacityError):
        run_protocol("find-one", g="and2", x=x, y=x, mode="sim")
    assert run_protocol("find-one", g="and2", x=x, y=x, mode="ledger").match


def test_sim_qubits():
    assert sim_qubits(and2(), 16) == 2 * 4 + 1 + 1
    assert sim_qubits(parse_inner("tt:2:1:a5"), 4) == 2 * 2 + 1 + 3


def test_input_errors():
    with pytest.raises(InputError):
        run_protocol("find-all", x="1", y="1")
    with pytest.raises(InputError):
        run_protocol("composed", g="and2", x="1", y="1")
    with pytest.raises(InputError):
        run_protocol("find-one", g="tt:2:1:a5", x="101", y="1,0")


def test_random_marked_instance_count():
    for m in range(9):
        inst = random_marked_instance(and2(), 8, m, RandomTape(m))
        assert len(inst.marked) == m


def test_random_sparse_pair_bounds():
    for t in range(200):
        x, y = random_sparse_pair(64, 5, RandomTape(t))
        assert len(support(x)) <= 5 and len(support(y)) <= 5


def test_sweep_rows_and_seeds():
    grid = {"n": [8, 16], "k": [1, 2]}
    rows = sweep("find-more", grid, 3, seed_base=100, mode="ledger")
    assert len(rows) == 12
    assert [r["row"] for r in rows] == list(range(12))
    assert all(r["seed"] == 100 ^ r["row"] for r in rows)
    text = rows_to_csv(rows, sweep_columns(grid))
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert list(parsed[0]) == sweep_columns(grid)


def test_sweep_zero_trials_header_only():
    grid = {"n": [8]}
    text = rows_to_csv(sweep("sparse-intersect", grid, 0), sweep_columns(grid))
    assert text.strip().split(",")[0] == "row" and len(text.strip().splitlines()) == 1


def test_sweep_empty_grid():
    with pytest.raises(InputError):
        sweep("find-one", {}, 1)


def test_sweep_workers_match_serial():
    grid = {"n": [8], "k": [1, 4]}
    a = sweep("sparse-intersect", grid, 5, seed_base=9, workers=1)
    b = sweep("sparse-intersect", grid, 5, seed_base=9, workers=2)
    assert a == b
