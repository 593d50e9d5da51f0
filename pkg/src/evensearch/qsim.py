"""State-vector realisation of the evenness black box.

The input register is prepared in the uniform superposition over the
pattern's domain, the output bit coherently records ``f(x) XOR f(-x)`` and
is then measured. Measuring 1 means "uneven" and collapses the input
register onto a violating point, which becomes the witness. Error is
one-sided: an even function can never produce a 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _accel
from .criteria import IndexedFunction
from .errors import ContractError
from .indexcore import SignedIndex
from .oracle import EVEN, EvennessOracle, QueryLedger, Syndrome, Verdict, check_widths
from .register import RegisterPattern, domain_codes

MAX_DENSE_WIDTH = 26


@dataclass(frozen=True, eq=False)
class PreparedState:
    width: int
    amplitudes: np.ndarray

    def probability(self, code: int) -> float:
        return float(self.amplitudes[code] ** 2)

    def norm(self) -> float:
        return float(np.sum(self.amplitudes**2))


def prepare(pattern: RegisterPattern) -> PreparedState:
    if pattern.width > MAX_DENSE_WIDTH:
        raise ContractError(f"dense state of width {pattern.width} exceeds {MAX_DENSE_WIDTH}")
    amps = np.zeros(1 << pattern.width, dtype=np.float64)
    amps[domain_codes(pattern)] = 1.0 / math.sqrt(pattern.domain_size)
    amps.setflags(write=False)
    return PreparedState(pattern.width, amps)


def _violation_weight(f, pattern, state):
    check_widths(f, pattern)
    codes = domain_codes(pattern)
    flip = 1 << pattern.n
    if f.table is not None:
        bad = f.table[codes] != f.table[codes ^ flip]
    else:
        bad = f.values(codes) != f.values(codes ^ flip)
    return float(np.sum(state.amplitudes[codes[bad]] ** 2)), int(bad.sum())


def violation_probability(f: IndexedFunction, pattern: RegisterPattern) -> float:
    """Probability that one shot measures the output bit as 1 (= t / D)."""
    p, _ = _violation_weight(f, pattern, prepare(pattern))
    return p


@dataclass(frozen=True)
class OracleStats:
    domain_size: int
    violations: int
    probability: float
    shots: int

    @property
    def miss_probability(self) -> float:
        return (1.0 - self.probability) ** self.shots

    def to_json(self) -> dict:
        return {
            "D": self.domain_size,
            "t": self.violations,
            "p": self.probability,
            "shots": self.shots,
            "miss_probability": self.miss_probability,
        }


def oracle_stats(f: IndexedFunction, pattern: RegisterPattern, shots: int = 1) -> OracleStats:
    p, t = _violation_weight(f, pattern, prepare(pattern))
    return OracleStats(pattern.domain_size, t, p, shots)


def sample_even_or_not(
    f: IndexedFunction,
    pattern: RegisterPattern,
    shots: int,
    seed=None,
    ledger: QueryLedger | None = None,
    rng: np.random.Generator | None = None,
) -> Syndrome:
    """Repeat prepare-compute-measure ``shots`` times; Uneven if any shot reads 1."""
    if shots < 1:
        raise ContractError("shots must be at least 1")
    if rng is None:
        rng = np.random.default_rng(seed)
    state = prepare(pattern)
    p, t = _violation_weight(f, pattern, state)
    if ledger is not None:
        ledger.record(calls=1, evaluations=2 * pattern.domain_size, shots=shots)
    hit = t > 0 and bool((rng.random(shots) < p).any())
    if not hit:
        return EVEN
    # post-measurement input register is uniform over the violating points
    r = int(rng.integers(t))
    if f.table is not None:
        code = _accel.nth_violation(f.table, 1 << pattern.n, pattern.free_mask, pattern.fixed_value, r)
    else:
        codes = domain_codes(pattern)
        flip = 1 << pattern.n
        code = int(codes[f.values(codes) != f.values(codes ^ flip)][r])
    return Syndrome(Verdict.UNEVEN, SignedIndex.from_code(code, pattern.n))


class SampledOracle(EvennessOracle):
    """Repetition-amplified sampling oracle; owns one seeded generator."""

    name = "sampled"
    exact = False

    def __init__(self, shots: int, seed=None):
        if shots < 1:
            raise ContractError("shots must be at least 1")
        self.shots = shots
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    def detect(self, f, pattern, ledger=None):
        return sample_even_or_not(f, pattern, self.shots, ledger=ledger, rng=self.rng)


def amplified_oracle(shots: int, seed=None) -> SampledOracle:
    return SampledOracle(shots, seed)
