"""Fixed-width bit strings and signed-magnitude indices.

Bit order is MSB-first everywhere. A :class:`SignedIndex` with ``n``
magnitude bits is encoded as an ``(n+1)``-bit integer whose top bit is the
sign, so ``+0`` is ``0`` and ``-0`` is ``1 << n``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import FormatError, IndexRangeError


@dataclass(frozen=True)
class BitString:
    width: int
    value: int

    def __post_init__(self):
        if self.width < 1:
            raise FormatError(f"width must be positive, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise FormatError(f"value {self.value} does not fit in {self.width} bits")

    @classmethod
    def parse(cls, text: str) -> BitString:
        text = text.strip()
        if not text or any(ch not in "01" for ch in text):
            raise FormatError(f"not a bit string: {text!r}")
        return cls(len(text), int(text, 2))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.width - 1 - k)) & 1 for k in range(self.width))

    def __str__(self):
        return format(self.value, f"0{self.width}b")


@dataclass(frozen=True)
class SignedIndex:
    """Signed-magnitude index: one sign bit followed by ``n`` magnitude bits."""

    magnitude_bits: int
    sign: int
    magnitude: int

    def __post_init__(self):
        if self.magnitude_bits < 1:
            raise FormatError("magnitude_bits must be positive")
        if self.sign not in (0, 1):
            raise FormatError(f"sign must be 0 or 1, got {self.sign}")
        if not 0 <= self.magnitude < (1 << self.magnitude_bits):
            raise IndexRangeError(
                f"magnitude {self.magnitude} out of range for n={self.magnitude_bits}"
            )

    @property
    def width(self) -> int:
        return self.magnitude_bits + 1

    @property
    def code(self) -> int:
        return (self.sign << self.magnitude_bits) | self.magnitude

    @classmethod
    def from_code(cls, code: int, n: int) -> SignedIndex:
        if not 0 <= code < (1 << (n + 1)):
            raise IndexRangeError(f"code {code} out of range for n={n}")
        return cls(n, code >> n, code & ((1 << n) - 1))

    @classmethod
    def parse(cls, text: str) -> SignedIndex:
        bits = BitString.parse(text)
        if bits.width < 2:
            raise FormatError("a signed index needs a sign bit and at least one magnitude bit")
        return cls.from_code(bits.value, bits.width - 1)

    def to_bitstring(self) -> BitString:
        return BitString(self.width, self.code)

    def __str__(self):
        return format(self.code, f"0{self.width}b")


def negate(x: SignedIndex) -> SignedIndex:
    return SignedIndex(x.magnitude_bits, 1 - x.sign, x.magnitude)


def magnitude_position(x: SignedIndex) -> int:
    return x.magnitude


def from_position(p: int, n: int, sign: int = 0) -> SignedIndex:
    if not 0 <= p < (1 << n):
        raise IndexRangeError(f"position {p} out of range [0, {1 << n})")
    return SignedIndex(n, sign, p)


def magnitude_width(size: int) -> int:
    """Smallest n >= 1 with 2**n >= size."""
    if size < 0:
        raise ValueError("size must be nonnegative")
    return max(1, (size - 1).bit_length())
