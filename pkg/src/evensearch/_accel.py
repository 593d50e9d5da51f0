"""Domain-scan kernels with an optional numba backend.

Every kernel walks the domain of a register pattern in ascending encoding
order. A domain is described by ``free_mask`` (bits left undetermined) and
``fixed_value`` (the determined bits); its members are
``fixed_value | s`` for each submask ``s`` of ``free_mask``.

Set ``EVENSEARCH_DISABLE_NUMBA=1`` to force the pure-numpy path. Both paths
are always importable so they can be benchmarked against each other.
"""
import os

import numpy as np


def _noop_jit(*args, **kwargs):
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def _have_numba():
    try:
        import numba  # noqa: F401

        return True
    except ImportError:
        return False


HAVE_NUMBA = _have_numba()
NUMBA_DISABLED = os.environ.get("EVENSEARCH_DISABLE_NUMBA", "").strip().lower() in (
    "1",
    "true",
    "yes",
    "on",
)
USE_NUMBA = HAVE_NUMBA and not NUMBA_DISABLED

if HAVE_NUMBA:
    from numba import njit
else:
    njit = _noop_jit

# numpy path evaluates the domain in blocks of this many points
BLOCK = 1 << 14


# --------------------------------------------------------------------------
# numba kernels
# --------------------------------------------------------------------------


@njit(cache=True)
def _first_violation_nb(table, flip, free_mask, fixed_value):
    # submask walk: s -> (s - free_mask) & free_mask visits submasks ascending
    s = 0
    k = 0
    while True:
        x = fixed_value | s
        if table[x] != table[x ^ flip]:
            return x, k
        k += 1
        s = (s - free_mask) & free_mask
        if s == 0:
            return -1, k - 1


@njit(cache=True)
def _count_violations_nb(table, flip, free_mask, fixed_value):
    s = 0
    t = 0
    while True:
        x = fixed_value | s
        if table[x] != table[x ^ flip]:
            t += 1
        s = (s - free_mask) & free_mask
        if s == 0:
            return t


@njit(cache=True)
def _nth_violation_nb(table, flip, free_mask, fixed_value, r):
    s = 0
    seen = 0
    while True:
        x = fixed_value | s
        if table[x] != table[x ^ flip]:
            if seen == r:
                return x
            seen += 1
        s = (s - free_mask) & free_mask
        if s == 0:
            return -1


# --------------------------------------------------------------------------
# numpy fallbacks
# --------------------------------------------------------------------------


def _free_positions(free_mask):
    return [b for b in range(int(free_mask).bit_length()) if (free_mask >> b) & 1]


def domain_block(free_mask, fixed_value, start, stop):
    """Domain members with ranks ``start..stop-1`` as an int64 array."""
    ranks = np.arange(start, stop, dtype=np.int64)
    codes = np.full(ranks.shape, fixed_value, dtype=np.int64)
    for i, pos in enumerate(_free_positions(free_mask)):
        codes |= ((ranks >> i) & 1) << pos
    return codes


def domain_codes(free_mask, fixed_value):
    size = 1 << bin(int(free_mask)).count("1")
    return domain_block(free_mask, fixed_value, 0, size)


def _first_violation_np(table, flip, free_mask, fixed_value):
    size = 1 << bin(int(free_mask)).count("1")
    for start in range(0, size, BLOCK):
        stop = min(size, start + BLOCK)
        codes = domain_block(free_mask, fixed_value, start, stop)
        bad = table[codes] != table[codes ^ flip]
        if bad.any():
            k = int(np.argmax(bad))
            return int(codes[k]), start + k
    return -1, size - 1


def _count_violations_np(table, flip, free_mask, fixed_value):
    size = 1 << bin(int(free_mask)).count("1")
    t = 0
    for start in range(0, size, BLOCK):
        codes = domain_block(free_mask, fixed_value, start, min(size, start + BLOCK))
        t += int(np.count_nonzero(table[codes] != table[codes ^ flip]))
    return t


def _nth_violation_np(table, flip, free_mask, fixed_value, r):
    size = 1 << bin(int(free_mask)).count("1")
    for start in range(0, size, BLOCK):
        codes = domain_block(free_mask, fixed_value, start, min(size, start + BLOCK))
        hits = codes[table[codes] != table[codes ^ flip]]
        if r < hits.size:
            return int(hits[r])
        r -= hits.size
    return -1


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------


def first_violation(table, flip, free_mask, fixed_value, use_numba=None):
    """Return ``(code, rank)`` of the first x with table[x] != table[x ^ flip].

    ``code`` is -1 when the domain has no violation; ``rank`` is then the
    rank of the last domain member, so ``rank + 1`` points were scanned.
    """
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        x, k = _first_violation_nb(table, np.int64(flip), np.int64(free_mask), np.int64(fixed_value))
        return int(x), int(k)
    return _first_violation_np(table, flip, free_mask, fixed_value)


def count_violations(table, flip, free_mask, fixed_value, use_numba=None):
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return int(_count_violations_nb(table, np.int64(flip), np.int64(free_mask), np.int64(fixed_value)))
    return _count_violations_np(table, flip, free_mask, fixed_value)


def nth_violation(table, flip, free_mask, fixed_value, r, use_numba=None):
    """Code of the r-th (0-based, ascending) violating domain member, or -1."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return int(
            _nth_violation_nb(
                table, np.int64(flip), np.int64(free_mask), np.int64(fixed_value), np.int64(r)
            )
        )
    return _nth_violation_np(table, flip, free_mask, fixed_value, r)
