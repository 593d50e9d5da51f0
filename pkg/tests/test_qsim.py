import math

import numpy as np
import pytest

from brute import all_patterns, brute_violations, pattern_members
from evensearch.criteria import TabulatedFunction, as_indexed_function, gen_instance
from evensearch.errors import ContractError
from evensearch.oracle import EVEN, QueryLedger, Verdict, even_or_not_exhaustive
from evensearch.qsim import amplified_oracle, oracle_stats, prepare, sample_even_or_not, violation_probability
from evensearch.register import RegisterPattern


def P(text):
    return RegisterPattern.parse(text)


def test_prepare_examples():
    s = prepare(P("+0"))
    assert np.allclose(s.amplitudes, [1 / math.sqrt(2), 1 / math.sqrt(2), 0, 0])
    s = prepare(P("+-+"))
    assert s.amplitudes[0b010] == 1.0 and s.norm() == 1.0
    assert np.allclose(prepare(P("00")).amplitudes, 0.5)


@pytest.mark.parametrize("width", range(2, 7))
def test_prepare_normalised_and_supported_on_domain(width):
    for text in all_patterns(width):
        s = prepare(P(text))
        assert abs(s.norm() - 1.0) < 1e-9
        assert sorted(np.flatnonzero(s.amplitudes).tolist()) == pattern_members(text)


def test_violation_probability_examples(instance_r):
    f = as_indexed_function(*instance_r)
    assert abs(violation_probability(f, P("+00")) - 0.25) < 1e-9
    assert violation_probability(TabulatedFunction(np.ones(8, dtype=np.uint8)), P("000")) == 0.0
    odd = TabulatedFunction(np.array([0, 0, 0, 0, 1, 1, 1, 1], dtype=np.uint8))
    assert abs(violation_probability(odd, P("000")) - 1.0) < 1e-9


@pytest.mark.parametrize("width", [2, 3, 4])
def test_probability_agrees_with_exhaustive(width, rng):
    for _ in range(25):
        table = rng.integers(0, 2, size=1 << width).astype(np.uint8)
        f = TabulatedFunction(table)
        for text in all_patterns(width):
            t = len(brute_violations(table, text))
            d = 2 ** text.count("0")
            p = violation_probability(f, P(text))
            assert abs(p - t / d) < 1e-9
            assert (p > 0) == bool(even_or_not_exhaustive(f, P(text)))


def test_sampling_examples():
    even = TabulatedFunction(np.zeros(8, dtype=np.uint8))
    ledger = QueryLedger()
    assert sample_even_or_not(even, P("000"), 10_000, seed=1, ledger=ledger) == EVEN
    assert ledger.snapshot() == {"oracle_calls": 1, "point_evaluations": 16, "shots": 10_000}
    odd = TabulatedFunction(np.array([1, 0, 1, 0, 0, 0, 0, 0], dtype=np.uint8))
    y = sample_even_or_not(odd, P("+0+"), 1, seed=5)
    assert y.verdict is Verdict.UNEVEN and str(y.witness) == "000"
    with pytest.raises(ContractError):
        sample_even_or_not(odd, P("000"), 0)


def test_witness_is_a_violation_and_uniform(instance_r, rng):
    items, spec = gen_instance(4, 3, 8, [1, 6])
    f = as_indexed_function(spec, items)
    seen = {}
    for seed in range(400):
        y = sample_even_or_not(f, P("+000"), 8, seed=seed)
        if y:
            seen[str(y.witness)] = seen.get(str(y.witness), 0) + 1
    assert set(seen) == {"0001", "0110"}
    assert abs(seen["0001"] - seen["0110"]) < 0.2 * sum(seen.values())


def test_miss_probability_for_64_shots(instance_r):
    f = as_indexed_function(*instance_r)
    st = oracle_stats(f, P("+00"), shots=64)
    assert (st.domain_size, st.violations, st.probability) == (4, 1, 0.25)
    assert st.miss_probability == pytest.approx(1.0e-8, rel=0.02)


def test_amplified_oracle_seeded(instance_r):
    f = as_indexed_function(*instance_r)
    a, b = amplified_oracle(1, seed=11), amplified_oracle(1, seed=11)
    pats = [P(t) for t in ["+00", "++0", "+-0", "+-+"]] * 10
    assert [a.detect(f, p) for p in pats] == [b.detect(f, p) for p in pats]
    strong = amplified_oracle(64, seed=3)
    assert strong.detect(f, P("+00")).verdict is Verdict.UNEVEN
    assert strong.detect(f, P("++0")) == EVEN


def test_single_match_detection_rate_is_one_over_n_points():
    for n in range(1, 12):
        items, spec = gen_instance(n, n, 8, [(1 << n) - 1])
        f = as_indexed_function(spec, items)
        assert violation_probability(f, RegisterPattern.positive(n + 1)) == pytest.approx(2.0**-n, abs=1e-12)
