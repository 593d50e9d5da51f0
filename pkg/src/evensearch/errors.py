"""Exception hierarchy. CLI exit codes key off these classes."""


class EvenSearchError(Exception):
    pass


class FormatError(EvenSearchError, ValueError):
    """Malformed input: bad widths, bad files, unparsable text."""


class IndexRangeError(EvenSearchError, IndexError):
    """A position or cell index outside its valid range."""


class ReadoutError(EvenSearchError):
    """Readout attempted on a register that still has Free cells."""


class ContractError(EvenSearchError):
    """An oracle or caller broke a documented contract."""


class GenerationError(EvenSearchError):
    """A planted instance cannot be constructed."""
