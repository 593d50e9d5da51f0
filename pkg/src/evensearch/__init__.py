"""Unstructured search reduced to function evenness detection."""
from .criteria import (
    CallableFunction,
    IndexedFunction,
    ItemList,
    SearchSpec,
    SignExtendedPredicate,
    TabulatedFunction,
    apply_f2,
    as_indexed_function,
    f1,
    f3,
    gen_instance,
    load_items,
    load_spec,
)
from .errors import (
    ContractError,
    EvenSearchError,
    FormatError,
    GenerationError,
    IndexRangeError,
    ReadoutError,
)
from .indexcore import BitString, SignedIndex, from_position, magnitude_position, negate
from .oracle import (
    EvennessOracle,
    ExhaustiveOracle,
    QueryLedger,
    Syndrome,
    Verdict,
    even_or_not_exhaustive,
)
from .qsim import amplified_oracle, prepare, sample_even_or_not, violation_probability
from .register import FREE, MINUS, PLUS, Cell, RegisterPattern, domain, readout, with_cell
from .search import linear_scan, presence, search_multi, search_single

__version__ = "0.1.0"
