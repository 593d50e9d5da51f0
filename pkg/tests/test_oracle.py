import threading

import numpy as np
import pytest

from brute import all_patterns, brute_violations
from evensearch.criteria import CallableFunction, TabulatedFunction, as_indexed_function
from evensearch.errors import ContractError
from evensearch.oracle import (
    EVEN,
    ExhaustiveOracle,
    QueryLedger,
    Syndrome,
    Verdict,
    even_or_not_exhaustive,
)
from evensearch.indexcore import SignedIndex
from evensearch.register import RegisterPattern


def P(text):
    return RegisterPattern.parse(text)


def test_examples_on_instance_r(instance_r):
    f = as_indexed_function(*instance_r)
    ledger = QueryLedger()
    y = even_or_not_exhaustive(f, P("+00"), ledger)
    assert y.verdict is Verdict.UNEVEN and str(y.witness) == "010"
    assert ledger.oracle_calls == 1
    # early exit after the third point (000, 001, 010)
    assert ledger.point_evaluations == 6
    assert even_or_not_exhaustive(f, P("++0"), ledger) == EVEN
    assert ledger.snapshot() == {"oracle_calls": 2, "point_evaluations": 10, "shots": 0}


def test_constant_zero_is_even():
    f = TabulatedFunction(np.zeros(16, dtype=np.uint8))
    for text in all_patterns(4):
        assert even_or_not_exhaustive(f, P(text)) == EVEN


def test_width_mismatch(instance_r):
    f = as_indexed_function(*instance_r)
    with pytest.raises(ContractError):
        even_or_not_exhaustive(f, P("+000"))


def test_even_syndrome_has_no_witness():
    with pytest.raises(ContractError):
        Syndrome(Verdict.EVEN, SignedIndex.parse("00"))
    assert EVEN.to_json() == {"verdict": "even", "witness": None}


@pytest.mark.parametrize("width", [2, 3, 4])
def test_verdict_and_minimal_witness_exhaustive(width, rng):
    for _ in range(40):
        table = rng.integers(0, 2, size=1 << width).astype(np.uint8)
        f = TabulatedFunction(table)
        for text in all_patterns(width):
            bad = brute_violations(table, text)
            y = even_or_not_exhaustive(f, P(text))
            assert bool(y) == bool(bad)
            if bad:
                assert y.witness.code == bad[0]


def test_callable_function_matches_tabulated(rng):
    table = rng.integers(0, 4, size=32).astype(np.uint8)
    tab = TabulatedFunction(table, out_width=2)
    fn = CallableFunction(lambda x: int(table[x.code]), 5, out_width=2)
    for text in ["+0000", "00000", "0-0+0", "-0000"]:
        l1, l2 = QueryLedger(), QueryLedger()
        assert even_or_not_exhaustive(tab, P(text), l1) == even_or_not_exhaustive(fn, P(text), l2)
        assert l1.snapshot() == l2.snapshot()


def test_repeated_calls_are_deterministic(instance_r):
    f = as_indexed_function(*instance_r)
    oracle = ExhaustiveOracle()
    assert len({oracle.detect(f, P("+00")) for _ in range(5)}) == 1


def test_ledger_is_linearisable():
    ledger = QueryLedger()

    def work():
        for _ in range(2000):
            ledger.record(calls=1, evaluations=3, shots=2)

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert ledger.snapshot() == {"oracle_calls": 16000, "point_evaluations": 48000, "shots": 32000}
    with pytest.raises(ValueError):
        ledger.record(calls=-1)
