"""Every acceptance criterion at its stated scale and tolerance.

Each test prints one PASS/FAIL line (also repeated in the terminal summary).
Criterion 10 audits every ledger produced by the others, so this module
must run in file order.
"""
import pytest

from qcomposed import acceptance as acc

AUDIT = acc.EprAudit()


def _check(result, record_line):
    line = result.line()
    print(line)
    record_line(line)
    assert result.passed, line


@pytest.mark.parametrize("criterion", acc.CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion, record_line):
    _check(criterion(AUDIT, fast=False), record_line)


def test_criterion_zero_epr(record_line):
    if AUDIT.ledgers == 0:
        pytest.skip("no other criterion ran in this session")
    _check(acc.criterion_zero_epr(AUDIT), record_line)
