"""Control-register patterns selecting the domain an evenness test covers.

A pattern has one cell per index bit, sign cell first. ``PLUS`` fixes the
bit to 0, ``MINUS`` fixes it to 1 and ``FREE`` leaves it open, mirroring the
kets |+>, |-> and |0> that a Hadamard layer turns into 0, 1 and an even
superposition. Text form uses ``+``, ``-`` and ``0``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _accel
from .errors import FormatError, IndexRangeError, ReadoutError
from .indexcore import SignedIndex


class Cell(enum.Enum):
    PLUS = "+"
    MINUS = "-"
    FREE = "0"


PLUS, MINUS, FREE = Cell.PLUS, Cell.MINUS, Cell.FREE


@dataclass(frozen=True)
class RegisterPattern:
    cells: tuple[Cell, ...]

    def __post_init__(self):
        cells = tuple(self.cells)
        if len(cells) < 2:
            raise FormatError("a pattern needs a sign cell and at least one magnitude cell")
        if not all(isinstance(c, Cell) for c in cells):
            raise FormatError("pattern cells must be Cell values")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def parse(cls, text: str) -> RegisterPattern:
        try:
            return cls(tuple(Cell(ch) for ch in text))
        except ValueError:
            raise FormatError(f"bad pattern {text!r}: use '+', '-' and '0'") from None

    @classmethod
    def free(cls, width: int) -> RegisterPattern:
        return cls((FREE,) * width)

    @classmethod
    def positive(cls, width: int) -> RegisterPattern:
        """Sign cell fixed to Plus, everything else Free."""
        return cls((PLUS,) + (FREE,) * (width - 1))

    @property
    def width(self) -> int:
        return len(self.cells)

    @property
    def n(self) -> int:
        return len(self.cells) - 1

    def __str__(self):
        return "".join(c.value for c in self.cells)

    def __len__(self):
        return len(self.cells)

    @property
    def free_count(self) -> int:
        return sum(c is FREE for c in self.cells)

    @property
    def domain_size(self) -> int:
        return 1 << self.free_count

    @property
    def free_mask(self) -> int:
        w = self.width
        return sum(1 << (w - 1 - k) for k, c in enumerate(self.cells) if c is FREE)

    @property
    def fixed_value(self) -> int:
        w = self.width
        return sum(1 << (w - 1 - k) for k, c in enumerate(self.cells) if c is MINUS)

    def is_determined(self) -> bool:
        return FREE not in self.cells


def with_cell(pattern: RegisterPattern, j: int, value: Cell) -> RegisterPattern:
    if not 0 <= j < pattern.width:
        raise IndexRangeError(f"cell {j} outside pattern of width {pattern.width}")
    cells = list(pattern.cells)
    cells[j] = value
    return RegisterPattern(tuple(cells))


def domain_codes(pattern: RegisterPattern) -> np.ndarray:
    """Encodings of the domain members, ascending."""
    return _accel.domain_codes(pattern.free_mask, pattern.fixed_value)


def domain(pattern: RegisterPattern) -> list[SignedIndex]:
    n = pattern.n
    return [SignedIndex.from_code(int(c), n) for c in domain_codes(pattern)]


def readout(pattern: RegisterPattern) -> SignedIndex:
    """Classical index of a fully determined register (Plus -> 0, Minus -> 1)."""
    if not pattern.is_determined():
        raise ReadoutError(f"register {pattern} still has Free cells")
    return SignedIndex.from_code(pattern.fixed_value, pattern.n)
