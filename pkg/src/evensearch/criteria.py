"""Search criteria: the item list, the item transform family, and the
match predicates over list positions and signed indices.

The transform is always one of five named poly-time functions, selected
declaratively so instances serialize to JSON:

==============  =========================================================
``identity``    output is the item itself (l = m)
``truncate``    the ``l`` most significant bits
``parity``      XOR of all bits (l = 1)
``xor_fold``    pad the item on the right to a multiple of ``l``, split it
                into MSB-first ``l``-bit chunks and XOR them together
``affine_mod``  ``(multiplier * v + addend) mod 2**l`` on the unsigned value
==============  =========================================================
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import FormatError, GenerationError, IndexRangeError
from .indexcore import BitString, SignedIndex, magnitude_width

F2_NAMES = ("identity", "truncate", "parity", "xor_fold", "affine_mod")

_PARAM_KEYS = {
    "identity": (),
    "truncate": ("l",),
    "parity": (),
    "xor_fold": ("l",),
    "affine_mod": ("multiplier", "addend", "l"),
}


def _values_array(values, m):
    if m <= 64:
        return np.asarray(values, dtype=np.uint64)
    return np.array([int(v) for v in values], dtype=object)


@dataclass(frozen=True, eq=False)
class ItemList:
    """Immutable list of m-bit items.

    ``values`` holds the unsigned item values (``uint64`` for m <= 64,
    Python ints in an object array otherwise).
    """

    item_width: int
    values: np.ndarray

    def __post_init__(self):
        if self.item_width < 1:
            raise FormatError("item width must be positive")
        vals = _values_array(self.values, self.item_width)
        if vals.ndim != 1:
            raise FormatError("items must form a flat sequence")
        if vals.size and (self.item_width < 64 or vals.dtype == object) and (
            int(vals.max()) >> self.item_width or int(vals.min()) < 0
        ):
            raise FormatError(f"an item does not fit in {self.item_width} bits")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_bitstrings(cls, items, m=None) -> ItemList:
        items = list(items)
        if m is None:
            if not items:
                raise FormatError("cannot infer item width from an empty list")
            m = items[0].width
        for it in items:
            if it.width != m:
                raise FormatError(f"item {it} has width {it.width}, expected {m}")
        return cls(m, _values_array([it.value for it in items], m))

    @classmethod
    def from_strings(cls, texts) -> ItemList:
        return cls.from_bitstrings([BitString.parse(t) for t in texts])

    @property
    def logical_size(self) -> int:
        return int(self.values.size)

    @property
    def n(self) -> int:
        return magnitude_width(self.logical_size)

    @property
    def size(self) -> int:
        """Padded size N = 2**n."""
        return 1 << self.n

    def __len__(self):
        return self.logical_size

    def __getitem__(self, p) -> BitString:
        return BitString(self.item_width, int(self.values[p]))

    @property
    def items(self) -> list[BitString]:
        return [self[p] for p in range(self.logical_size)]


@dataclass(frozen=True)
class SearchSpec:
    f2: str
    z: BitString
    params: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.f2 not in F2_NAMES:
            raise FormatError(f"unknown f2 {self.f2!r}; expected one of {F2_NAMES}")
        params = {k: int(v) for k, v in dict(self.params).items()}
        missing = [k for k in _PARAM_KEYS[self.f2] if k not in params]
        extra = [k for k in params if k not in _PARAM_KEYS[self.f2]]
        if missing or extra:
            raise FormatError(
                f"{self.f2} takes parameters {_PARAM_KEYS[self.f2]}, got {sorted(params)}"
            )
        if "l" in params and params["l"] < 1:
            raise FormatError("output width l must be positive")
        if self.f2 == "affine_mod" and (params["multiplier"] < 0 or params["addend"] < 0):
            raise FormatError("affine_mod coefficients must be nonnegative")
        object.__setattr__(self, "params", params)
        if self.f2 == "parity" and self.z.width != 1:
            raise FormatError("parity produces one bit; z must have width 1")
        if "l" in params and self.z.width != params["l"]:
            raise FormatError(f"z has width {self.z.width} but l = {params['l']}")

    def output_width(self, m: int) -> int:
        if self.f2 == "identity":
            l = m
        elif self.f2 == "parity":
            l = 1
        else:
            l = self.params["l"]
        if l > m:
            raise FormatError(f"{self.f2} output width {l} exceeds item width {m}")
        return l

    def check_item_width(self, m: int) -> None:
        if self.output_width(m) != self.z.width:
            raise FormatError(
                f"{self.f2} on {m}-bit items yields {self.output_width(m)} bits; "
                f"z has {self.z.width}"
            )

    def to_json(self) -> dict:
        return {"f2": self.f2, "params": dict(self.params), "z": str(self.z)}

    @classmethod
    def from_json(cls, obj) -> SearchSpec:
        try:
            return cls(obj["f2"], BitString.parse(obj["z"]), obj.get("params", {}))
        except (KeyError, TypeError, AttributeError) as exc:
            raise FormatError(f"malformed spec object: {exc}") from exc


# --------------------------------------------------------------------------
# transforms
# --------------------------------------------------------------------------


def apply_f2(spec: SearchSpec, item: BitString, m: int | None = None) -> BitString:
    """Apply the spec's transform to one item (scalar reference path)."""
    if m is not None and item.width != m:
        raise FormatError(f"item width {item.width} != {m}")
    m = item.width
    l = spec.output_width(m)
    v = item.value
    if spec.f2 == "identity":
        out = v
    elif spec.f2 == "truncate":
        out = v >> (m - l)
    elif spec.f2 == "parity":
        out = bin(v).count("1") & 1
    elif spec.f2 == "xor_fold":
        chunks = -(-m // l)
        padded = v << (chunks * l - m)
        out = 0
        for c in range(chunks):
            out ^= (padded >> (c * l)) & ((1 << l) - 1)
    else:
        p = spec.params
        out = (p["multiplier"] * v + p["addend"]) % (1 << l)
    return BitString(l, out)


def f2_values(spec: SearchSpec, values: np.ndarray, m: int) -> np.ndarray:
    """Vectorised transform over an array of unsigned m-bit item values."""
    l = spec.output_width(m)
    if values.dtype == object:
        return np.array(
            [apply_f2(spec, BitString(m, int(v))).value for v in values], dtype=object
        )
    v = values.astype(np.uint64, copy=False)
    mask = np.uint64((1 << l) - 1) if l < 64 else np.uint64(0xFFFFFFFFFFFFFFFF)
    if spec.f2 == "identity":
        return v.copy()
    if spec.f2 == "truncate":
        return v >> np.uint64(m - l)
    if spec.f2 == "parity":
        return np.bitwise_count(v).astype(np.uint64) & np.uint64(1)
    if spec.f2 == "xor_fold":
        chunks = -(-m // l)
        pad = chunks * l - m
        out = np.zeros_like(v)
        # chunk c covers padded bits [c*l, (c+1)*l); shift the unpadded value instead
        for c in range(chunks):
            lo = c * l - pad
            part = (v >> np.uint64(lo)) if lo >= 0 else (v << np.uint64(-lo))
            out ^= part & mask
        return out
    p = spec.params
    mult = np.uint64(p["multiplier"] % (1 << 64))
    add = np.uint64(p["addend"] % (1 << 64))
    return (v * mult + add) & mask


def match_mask(spec: SearchSpec, items: ItemList) -> np.ndarray:
    """Boolean array over the padded domain: f1 at every position."""
    spec.check_item_width(items.item_width)
    out = np.zeros(items.size, dtype=np.uint8)
    if items.logical_size:
        got = f2_values(spec, items.values, items.item_width)
        if got.dtype == object:
            hits = np.array([int(g) == spec.z.value for g in got], dtype=bool)
        else:
            hits = got == np.uint64(spec.z.value)
        out[: items.logical_size] = hits
    return out


def f1(spec: SearchSpec, items: ItemList, p: int) -> int:
    if not 0 <= p < items.size:
        raise IndexRangeError(f"position {p} outside padded domain [0, {items.size})")
    if p >= items.logical_size:
        return 0
    spec.check_item_width(items.item_width)
    return int(apply_f2(spec, items[p]) == spec.z)


def f3(spec: SearchSpec, items: ItemList, i: SignedIndex) -> int:
    if i.magnitude_bits != items.n:
        raise FormatError(f"index has {i.magnitude_bits} magnitude bits, list needs {items.n}")
    if i.sign:
        return 0
    return f1(spec, items, i.magnitude)


# --------------------------------------------------------------------------
# black-box functions over signed indices
# --------------------------------------------------------------------------


class IndexedFunction:
    """Deterministic function from (n1)-bit signed indices to m1-bit strings.

    Subclasses implement :meth:`values`, a batch evaluator over integer
    encodings. Functions that can afford it expose a full truth table via
    :attr:`table`, which lets the oracles use the compiled scan kernels.
    """

    width: int
    out_width: int
    table: np.ndarray | None = None

    def values(self, codes: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, x: SignedIndex) -> BitString:
        if x.width != self.width:
            raise FormatError(f"input width {x.width} != {self.width}")
        return BitString(self.out_width, int(self.values(np.array([x.code], dtype=np.int64))[0]))


class TabulatedFunction(IndexedFunction):
    def __init__(self, table, out_width=1):
        table = np.ascontiguousarray(table)
        if table.ndim != 1 or table.size < 4 or table.size & (table.size - 1):
            raise FormatError("table length must be a power of two >= 4")
        if table.dtype.kind not in "ui":
            table = table.astype(np.uint64)
        table.setflags(write=False)
        self.table = table
        self.width = table.size.bit_length() - 1
        self.out_width = out_width

    def values(self, codes):
        return self.table[np.asarray(codes, dtype=np.int64)]


class CallableFunction(IndexedFunction):
    """Wraps a Python callable ``fn(SignedIndex) -> int | BitString``; no table."""

    def __init__(self, fn, width, out_width=1):
        if width < 2:
            raise FormatError("width must include a sign bit and a magnitude bit")
        self.fn = fn
        self.width = width
        self.out_width = out_width

    def values(self, codes):
        n = self.width - 1
        out = np.empty(len(codes), dtype=np.uint64)
        for k, c in enumerate(codes):
            y = self.fn(SignedIndex.from_code(int(c), n))
            out[k] = y.value if isinstance(y, BitString) else int(y)
        return out


class SignExtendedPredicate(IndexedFunction):
    """f3: f1 on non-negative indices, 0 on every index with sign bit 1."""

    out_width = 1

    def __init__(self, spec: SearchSpec, items: ItemList):
        self.spec = spec
        self.items = items
        self.n = items.n
        self.width = self.n + 1
        self._table = None

    @property
    def table(self):
        if self._table is None:
            t = np.zeros(1 << self.width, dtype=np.uint8)
            t[: 1 << self.n] = match_mask(self.spec, self.items)
            t.setflags(write=False)
            self._table = t
        return self._table

    def values(self, codes):
        return self.table[np.asarray(codes, dtype=np.int64)]


def as_indexed_function(spec: SearchSpec, items: ItemList) -> SignExtendedPredicate:
    spec.check_item_width(items.item_width)
    return SignExtendedPredicate(spec, items)


# --------------------------------------------------------------------------
# files and generated instances
# --------------------------------------------------------------------------


def parse_items(text: str) -> ItemList:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise FormatError("items file is empty")
    try:
        m = int(lines[0])
    except ValueError:
        raise FormatError(f"first line must be the item width, got {lines[0]!r}") from None
    if m < 1:
        raise FormatError("item width must be positive")
    values = []
    for lineno, ln in enumerate(lines[1:], start=2):
        if len(ln) != m or any(ch not in "01" for ch in ln):
            raise FormatError(f"line {lineno}: expected {m} bits, got {ln!r}")
        values.append(int(ln, 2))
    return ItemList(m, _values_array(values, m))


def load_items(path) -> ItemList:
    return parse_items(Path(path).read_text())


def format_items(items: ItemList) -> str:
    lines = [str(items.item_width)]
    lines += [format(int(v), f"0{items.item_width}b") for v in items.values]
    return "\n".join(lines) + "\n"


def save_items(items: ItemList, path) -> None:
    Path(path).write_text(format_items(items))


def load_spec(path) -> SearchSpec:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"spec file is not JSON: {exc}") from exc
    return SearchSpec.from_json(obj)


def save_spec(spec: SearchSpec, path) -> None:
    Path(path).write_text(json.dumps(spec.to_json(), sort_keys=True) + "\n")


def random_spec(rng: np.random.Generator, m: int, target: int, f2: str | None = None) -> SearchSpec:
    """Draw a transform and set z so that ``target`` matches."""
    if f2 is None:
        f2 = F2_NAMES[int(rng.integers(len(F2_NAMES)))]
    if f2 in ("identity", "parity"):
        params = {}
    elif f2 == "affine_mod":
        top = 1 << min(m, 32)
        params = {
            "multiplier": int(rng.integers(0, top // 2)) * 2 + 1 if top > 1 else 1,
            "addend": int(rng.integers(0, top)),
            "l": int(rng.integers(1, m + 1)),
        }
    else:
        params = {"l": int(rng.integers(1, m + 1))}
    probe = SearchSpec(f2, BitString(1 if f2 == "parity" else params.get("l", m), 0), params)
    z = apply_f2(probe, BitString(m, target))
    return SearchSpec(f2, z, params)


def _random_values(rng, m, count):
    if m == 64:
        return rng.integers(0, 1 << 64, size=count, dtype=np.uint64, endpoint=False)
    return rng.integers(0, 1 << m, size=count, dtype=np.uint64)


def gen_instance(
    seed: int,
    n: int,
    m: int,
    planted_positions=(),
    size: int | None = None,
    f2: str | None = None,
    max_rounds: int = 64,
) -> tuple[ItemList, SearchSpec]:
    """Build a list of ``size`` items (default 2**n) where f1 = 1 exactly at
    ``planted_positions``.

    The target item and transform are drawn from ``seed``; every other slot is
    filled with items re-drawn until they do not match.
    """
    if n < 1:
        raise GenerationError("n must be at least 1")
    if not 1 <= m <= 64:
        raise GenerationError("generated instances support item widths 1..64")
    if size is None:
        size = 1 << n
    if not 1 <= size <= (1 << n) or magnitude_width(size) != n:
        raise GenerationError(f"size {size} is not compatible with n={n}")
    planted = sorted({int(p) for p in planted_positions})
    for p in planted:
        if not 0 <= p < size:
            raise GenerationError(f"planted position {p} outside [0, {size})")

    rng = np.random.default_rng(seed)
    target = int(_random_values(rng, m, 1)[0])
    spec = random_spec(rng, m, target, f2)

    values = _random_values(rng, m, size)
    is_planted = np.zeros(size, dtype=bool)
    is_planted[planted] = True
    values[is_planted] = np.uint64(target)

    def hits(vals):
        return f2_values(spec, vals, m) == np.uint64(spec.z.value)

    bad = hits(values) & ~is_planted
    rounds = 0
    while bad.any() and rounds < max_rounds:
        values[bad] = _random_values(rng, m, int(bad.sum()))
        bad = hits(values) & ~is_planted
        rounds += 1
    if bad.any():
        # rejection failed; fall back to the explicit non-matching set
        if m > 20:
            raise GenerationError(f"could not draw non-matching {m}-bit items for {spec.f2}")
        pool = np.arange(1 << m, dtype=np.uint64)
        pool = pool[~hits(pool)]
        if pool.size == 0:
            raise GenerationError(f"every {m}-bit item matches under {spec.to_json()}")
        values[bad] = pool[rng.integers(0, pool.size, size=int(bad.sum()))]

    return ItemList(m, values), spec
