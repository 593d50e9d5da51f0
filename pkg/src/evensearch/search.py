"""Unstructured search driven only by evenness-oracle calls.

Both algorithms bisect the positive half of the signed index domain. The
register starts as ``+0...0`` (sign fixed non-negative, magnitude free);
the sign-extended predicate is zero on negative indices, so it is uneven
on a sub-domain exactly when that sub-domain holds a match.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .criteria import ItemList, SearchSpec, apply_f2, as_indexed_function, f1
from .errors import ContractError
from .oracle import EvennessOracle, QueryLedger, Syndrome
from .register import MINUS, PLUS, RegisterPattern, readout, with_cell

EVENT_KINDS = ("presence_check", "probe", "decide", "recurse", "prune", "emit")


@dataclass(frozen=True)
class TraceEvent:
    kind: str
    pattern: str
    j: int
    depth: int
    syndrome: Syndrome | None = None

    def to_json(self) -> dict:
        s = self.syndrome.to_json() if self.syndrome is not None else {"verdict": None, "witness": None}
        return {
            "kind": self.kind,
            "pattern": self.pattern,
            "j": self.j,
            "verdict": s["verdict"],
            "witness": s["witness"],
            "depth": self.depth,
        }


@dataclass
class SearchTrace:
    algo: str
    n: int
    seed: int | None = None
    oracle: str = ""
    events: list[TraceEvent] = field(default_factory=list)

    def add(self, kind, pattern, j, depth, syndrome=None):
        self.events.append(TraceEvent(kind, str(pattern), j, depth, syndrome))

    def to_json(self, result, ledger: QueryLedger) -> dict:
        return {
            "algo": self.algo,
            "n": self.n,
            "seed": self.seed,
            "oracle": self.oracle,
            "events": [e.to_json() for e in self.events],
            "result": list(result),
            "result_indices": [format(p, f"0{self.n + 1}b") for p in result],
            "ledger": ledger.snapshot(),
        }


@dataclass
class SearchResult:
    positions: list[int]
    trace: SearchTrace
    ledger: QueryLedger

    @property
    def position(self) -> int | None:
        return self.positions[0] if self.positions else None

    @property
    def found(self) -> bool:
        return bool(self.positions)

    @property
    def oracle_calls(self) -> int:
        return self.ledger.oracle_calls

    def to_json(self) -> dict:
        return self.trace.to_json(self.positions, self.ledger)


@dataclass(frozen=True)
class SearchStats:
    """c = number of matches; a = shared magnitude prefix length when c == 2."""

    match_count: int
    shared_prefix: int | None
    oracle_calls: int


def shared_prefix_length(p: int, q: int, n: int) -> int:
    """Number of leading magnitude bits two n-bit positions have in common."""
    return n - (p ^ q).bit_length()


def search_stats(positions, n, oracle_calls) -> SearchStats:
    positions = sorted(positions)
    a = shared_prefix_length(positions[0], positions[1], n) if len(positions) == 2 else None
    return SearchStats(len(positions), a, oracle_calls)


def linear_scan(spec: SearchSpec, items: ItemList) -> list[int]:
    """Reference answer: check every stored item directly."""
    spec.check_item_width(items.item_width)
    return [p for p in range(items.logical_size) if apply_f2(spec, items[p]) == spec.z]


def _probe(f, oracle, ledger, trace, kind, pattern, j, depth) -> Syndrome:
    y = oracle.detect(f, pattern, ledger)
    trace.add(kind, pattern, j, depth, y)
    return y


def presence(f, oracle: EvennessOracle, ledger: QueryLedger, trace: SearchTrace | None = None) -> bool:
    """One oracle call over the whole positive domain."""
    if trace is None:
        trace = SearchTrace("presence", f.width - 1, oracle=oracle.name)
    y = _probe(f, oracle, ledger, trace, "presence_check", RegisterPattern.positive(f.width), 0, 1)
    return bool(y)


def single_search(f, oracle: EvennessOracle, ledger: QueryLedger, trace: SearchTrace) -> int | None:
    """Leftmost-match bisection, n + 1 oracle calls when a match exists."""
    n = f.width - 1
    if not presence(f, oracle, ledger, trace):
        return None
    pattern = RegisterPattern.positive(f.width)
    for j in range(1, n + 1):
        left = with_cell(pattern, j, PLUS)
        if _probe(f, oracle, ledger, trace, "probe", left, j, 1):
            pattern = left
        else:
            pattern = with_cell(pattern, j, MINUS)
        trace.add("decide", pattern, j, 1)
    position = readout(pattern).magnitude
    trace.add("emit", pattern, n, 1)
    return position


def multi_search(
    f,
    oracle: EvennessOracle,
    ledger: QueryLedger,
    trace: SearchTrace,
    adaptive: bool = False,
) -> list[int]:
    """All matches: two probes per bit, recursing when both halves are uneven."""
    if adaptive and not oracle.exact:
        raise ValueError("the adaptive shortcut is only valid with an exact oracle")
    n = f.width - 1
    found: list[int] = []
    if not presence(f, oracle, ledger, trace):
        return found

    def walk(pattern, start, depth):
        for j in range(start, n + 1):
            left = with_cell(pattern, j, PLUS)
            right = with_cell(pattern, j, MINUS)
            y1 = _probe(f, oracle, ledger, trace, "probe", left, j, depth)
            if adaptive and not y1:
                # parent domain is known uneven, so the right half must be
                pattern = right
                trace.add("decide", pattern, j, depth)
                continue
            y2 = _probe(f, oracle, ledger, trace, "probe", right, j, depth)
            if y1 and not y2:
                pattern = left
            elif y2 and not y1:
                pattern = right
            elif y1 and y2:
                trace.add("recurse", pattern, j, depth)
                walk(left, j + 1, depth + 1)
                walk(right, j + 1, depth + 1)
                return
            else:
                if oracle.exact:
                    raise ContractError(
                        f"both halves of uneven domain {pattern} reported even at bit {j}"
                    )
                trace.add("prune", pattern, j, depth)
                return
            trace.add("decide", pattern, j, depth)
        found.append(readout(pattern).magnitude)
        trace.add("emit", pattern, n, depth)

    walk(RegisterPattern.positive(f.width), 1, 1)
    return sorted(set(found))


def search_single(
    spec: SearchSpec,
    items: ItemList,
    oracle: EvennessOracle,
    ledger: QueryLedger | None = None,
    seed: int | None = None,
) -> SearchResult:
    """Find one matching position (the leftmost under an exact oracle).

    An exact oracle whose answer fails the match check raises
    :class:`ContractError`. For sampling oracles the final answer is checked
    directly against the list and discarded if it does not match, since a
    missed detection steers the bisection into an empty half.
    """
    ledger = ledger if ledger is not None else QueryLedger()
    f = as_indexed_function(spec, items)
    trace = SearchTrace("single", f.width - 1, seed, oracle.name)
    p = single_search(f, oracle, ledger, trace)
    if p is not None and not f1(spec, items, p):
        if oracle.exact:
            raise ContractError(f"exact oracle led to position {p}, which does not match")
        ledger.record(calls=0, evaluations=1)
        p = None
    return SearchResult([] if p is None else [p], trace, ledger)


def search_multi(
    spec: SearchSpec,
    items: ItemList,
    oracle: EvennessOracle,
    ledger: QueryLedger | None = None,
    seed: int | None = None,
    adaptive: bool = False,
) -> SearchResult:
    ledger = ledger if ledger is not None else QueryLedger()
    f = as_indexed_function(spec, items)
    trace = SearchTrace("multi", f.width - 1, seed, oracle.name)
    positions = multi_search(f, oracle, ledger, trace, adaptive=adaptive)
    return SearchResult(positions, trace, ledger)


_BITS = {"type": "string", "pattern": "^[01]+$"}

TRACE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["algo", "n", "seed", "events", "result", "ledger"],
    "properties": {
        "algo": {"enum": ["single", "multi"]},
        "n": {"type": "integer", "minimum": 1},
        "seed": {"type": ["integer", "null"]},
        "oracle": {"type": "string"},
        "events": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["kind", "pattern", "j", "verdict", "witness", "depth"],
                "properties": {
                    "kind": {"enum": list(EVENT_KINDS)},
                    "pattern": {"type": "string", "pattern": "^[-+0]+$"},
                    "j": {"type": "integer", "minimum": 0},
                    "verdict": {"enum": ["even", "uneven", None]},
                    "witness": {"oneOf": [_BITS, {"type": "null"}]},
                    "depth": {"type": "integer", "minimum": 1},
                },
                "additionalProperties": False,
            },
        },
        "result": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "result_indices": {"type": "array", "items": _BITS},
        "ledger": {
            "type": "object",
            "required": ["oracle_calls", "point_evaluations", "shots"],
            "properties": {
                k: {"type": "integer", "minimum": 0}
                for k in ("oracle_calls", "point_evaluations", "shots")
            },
        },
    },
}
