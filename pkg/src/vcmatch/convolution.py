"""Correlation-based backend.

A window matches iff (1) every constant position of the pattern agrees with
the text and (2) for each variable, all text symbols aligned under its
occurrences are equal.  Both checks reduce to sliding cross-correlations:

* constant agreement is checked with one 0/1 indicator correlation per
  distinct pattern constant;
* per-variable equality uses the squared-sum identity
  ``k * sum(a_i^2) == (sum(a_i))^2  iff  all a_i equal``,
  which needs two correlations per variable (text and squared text against
  the variable's occurrence indicator).

In injective (pvc) mode the per-variable window values must additionally be
pairwise distinct.  Correlations run block-wise over a fast transform and
are rounded back to exact integers; inputs too large for exact float
arithmetic raise :class:`OverflowRiskError` and callers fall back to direct
summation with arbitrary-precision integers.
"""

from __future__ import annotations

import logging

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import PatternString, Symbol, TextString, is_injective_mode
from .naive import MatchReport

logger = logging.getLogger(__name__)

# Exactness guard for the float transform path: with per-value bound 2**26
# and kernels up to 2**26 taps the correlation sums stay below 2**53.
VALUE_LIMIT = 1 << 26
EXACT_SUM_LIMIT = 1 << 53


class OverflowRiskError(OverflowError):
    """Inputs may produce correlation sums too large to round exactly."""


def _as_int_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError(f"{name} must contain integers")
    arr = arr.astype(np.int64)
    if arr.size and arr.min() < 0:
        raise ValueError(f"{name} must be non-negative")
    return arr


def _check_value_bound(a_max: int, b_max: int, m: int) -> None:
    if a_max >= VALUE_LIMIT or b_max >= VALUE_LIMIT or a_max * b_max * m >= EXACT_SUM_LIMIT:
        raise OverflowRiskError(
            f"values up to {max(a_max, b_max)} with kernel length {m} exceed the exact "
            f"float-transform range; use direct summation"
        )


def _next_pow2(x: int) -> int:
    return 1 << max(0, (x - 1).bit_length())


def _fft_correlate_batch(a: np.ndarray, b_rows: np.ndarray) -> np.ndarray:
    """Correlate one sequence against many kernels of equal length.

    The sequence is split into overlapping blocks of length 2m-1 with stride
    m; each block is handled by one transform of size >= 2m-1, so wrap-around
    never touches the m retained outputs per block.
    """
    n = a.shape[0]
    rows, m = b_rows.shape
    n_out = n - m + 1
    size = _next_pow2(2 * m - 1)
    nblocks = -(-n_out // m)
    padded = np.zeros((nblocks - 1) * m + 2 * m - 1, dtype=np.float64)
    padded[:n] = a
    blocks = sliding_window_view(padded, 2 * m - 1)[::m]
    fa = np.fft.rfft(blocks, size, axis=1)
    fb = np.fft.rfft(b_rows[:, ::-1], size, axis=1)
    conv = np.fft.irfft(fb[:, None, :] * fa[None, :, :], size, axis=2)
    vals = conv[:, :, m - 1 : 2 * m - 1]
    return vals.reshape(rows, nblocks * m)[:, :n_out]


def _fft_correlate_pairs(a_rows: np.ndarray, b_rows: np.ndarray) -> np.ndarray:
    """Correlate row i of ``a_rows`` against row i of ``b_rows``."""
    rows, n = a_rows.shape
    m = b_rows.shape[1]
    n_out = n - m + 1
    size = _next_pow2(2 * m - 1)
    nblocks = -(-n_out // m)
    padded = np.zeros((rows, (nblocks - 1) * m + 2 * m - 1), dtype=np.float64)
    padded[:, :n] = a_rows
    blocks = sliding_window_view(padded, 2 * m - 1, axis=1)[:, ::m, :]
    fa = np.fft.rfft(blocks, size, axis=2)
    fb = np.fft.rfft(b_rows[:, ::-1], size, axis=1)
    conv = np.fft.irfft(fa * fb[:, None, :], size, axis=2)
    vals = conv[:, :, m - 1 : 2 * m - 1]
    return vals.reshape(rows, nblocks * m)[:, :n_out]


def correlate(a, b) -> np.ndarray:
    """Sliding dot product: R[j] = sum_i a[j+i] * b[i], exact integers.

    ``a`` has length n, ``b`` length m <= n; the result has length n-m+1.
    Computed block-wise with a fast transform and rounded to the nearest
    integer.  Raises :class:`OverflowRiskError` when the inputs exceed the
    exactness guard (callers then use :func:`correlate_direct`).
    """
    a_arr = _as_int_array(a, "a")
    b_arr = _as_int_array(b, "b")
    n, m = a_arr.size, b_arr.size
    if m < 1:
        raise ValueError("kernel must be non-empty")
    if m > n:
        raise ValueError(f"kernel length {m} exceeds sequence length {n}")
    a_max = int(a_arr.max()) if n else 0
    b_max = int(b_arr.max()) if m else 0
    _check_value_bound(a_max, b_max, m)
    vals = _fft_correlate_batch(a_arr.astype(np.float64), b_arr.astype(np.float64)[None, :])[0]
    return np.rint(vals).astype(np.int64)


def correlate_direct(a, b) -> list[int]:
    """Direct O(n*m) summation with Python integers; exact for any magnitude."""
    a_list = [int(v) for v in a]
    b_list = [int(v) for v in b]
    n, m = len(a_list), len(b_list)
    if m < 1:
        raise ValueError("kernel must be non-empty")
    if m > n:
        raise ValueError(f"kernel length {m} exceeds sequence length {n}")
    return [sum(a_list[j + i] * b_list[i] for i in range(m)) for j in range(n - m + 1)]


def _dense_text_codes(text: TextString) -> np.ndarray:
    """Re-encode text symbols as dense positive integers 1..|distinct symbols|."""
    codes = np.asarray(text.codes, dtype=np.int64)
    if codes.size == 0:
        return codes
    _, dense = np.unique(codes, return_inverse=True)
    return dense.astype(np.int64) + 1


def _constant_mismatch_counts(pattern: PatternString, text: TextString) -> np.ndarray:
    """Per window, how many constant positions of the pattern disagree."""
    n_out = len(text) - len(pattern) + 1
    constants = pattern.constants
    if not constants:
        return np.zeros(n_out, dtype=np.int64)
    pcodes = np.asarray(pattern.codes, dtype=np.int64)
    tcodes = np.asarray(text.codes, dtype=np.int64)
    cids = np.asarray([c.id for c in constants], dtype=np.int64)
    pattern_is = (pcodes[None, :] == cids[:, None]).astype(np.float64)
    text_not = (tcodes[None, :] != cids[:, None]).astype(np.float64)
    vals = _fft_correlate_pairs(text_not, pattern_is)
    return np.rint(vals).astype(np.int64).sum(axis=0)


def wildcard_mask(pattern: PatternString, text: TextString) -> np.ndarray:
    """Boolean mask over windows: True iff every constant position agrees.

    Variable positions act as don't-cares.  Entry i-1 describes the window
    starting at 1-based position i.  Uses one indicator correlation per
    distinct pattern constant.
    """
    if len(pattern) > len(text):
        raise ValueError("pattern longer than text")
    return _constant_mismatch_counts(pattern, text) == 0


def _occurrence_indicators(pattern: PatternString) -> tuple[list[Symbol], np.ndarray, np.ndarray]:
    """Stack per-variable 0/1 occurrence rows and their occurrence counts."""
    variables = list(pattern.variables)
    pcodes = np.asarray(pattern.codes, dtype=np.int64)
    vcodes = np.asarray([v.code for v in variables], dtype=np.int64)
    rows = (pcodes[None, :] == vcodes[:, None]).astype(np.float64)
    counts = np.asarray([pattern.occurrence_counts[v] for v in variables], dtype=np.int64)
    return variables, rows, counts


def _consistency_tables(pattern: PatternString, text: TextString):
    """Correlations of the dense text and its squares against each variable row.

    Returns (variables, counts, corr_text, corr_squares) where the
    correlation tables have one row per pattern variable.  Falls back to
    direct summation when the squared text exceeds the exactness guard.
    """
    variables, rows, counts = _occurrence_indicators(pattern)
    m = len(pattern)
    dense = _dense_text_codes(text)
    top = int(dense.max()) if dense.size else 0
    try:
        _check_value_bound(top * top, 1, m)
    except OverflowRiskError:
        logger.warning(
            "text alphabet too large for exact transform arithmetic; "
            "falling back to direct summation"
        )
        dense_list = [int(v) for v in dense]
        squares = [v * v for v in dense_list]
        kernels = [[int(x) for x in row] for row in rows]
        corr_text = np.array([correlate_direct(dense_list, k) for k in kernels], dtype=object)
        corr_squares = np.array([correlate_direct(squares, k) for k in kernels], dtype=object)
        return variables, counts, corr_text, corr_squares
    corr_text = np.rint(_fft_correlate_batch(dense.astype(np.float64), rows)).astype(np.int64)
    corr_squares = np.rint(
        _fft_correlate_batch((dense * dense).astype(np.float64), rows)
    ).astype(np.int64)
    return variables, counts, corr_text, corr_squares


def variable_consistent(pattern: PatternString, text: TextString, x: Symbol) -> np.ndarray:
    """Boolean mask over windows: True iff all text symbols under ``x`` agree.

    Uses the squared-sum identity on two correlations against the 0/1
    occurrence row of ``x``.
    """
    if x not in pattern.occurrence_counts:
        raise ValueError(f"{x} does not occur in the pattern")
    if len(pattern) > len(text):
        raise ValueError("pattern longer than text")
    variables, counts, corr_text, corr_squares = _consistency_tables(pattern, text)
    idx = variables.index(x)
    count = int(counts[idx])
    ok = count * corr_squares[idx] == corr_text[idx] * corr_text[idx]
    return np.asarray(ok, dtype=bool)


def conv_match_all(pattern: PatternString, text: TextString, mode: str = "fvc") -> MatchReport:
    """Find all matching windows with the correlation backend."""
    injective = is_injective_mode(mode)
    n_out = len(text) - len(pattern) + 1
    if n_out <= 0:
        return MatchReport([])
    ok = _constant_mismatch_counts(pattern, text) == 0
    if pattern.variables:
        variables, counts, corr_text, corr_squares = _consistency_tables(pattern, text)
        for idx in range(len(variables)):
            count = int(counts[idx])
            same = count * corr_squares[idx] == corr_text[idx] * corr_text[idx]
            ok &= np.asarray(same, dtype=bool)
        if injective and len(variables) > 1:
            # Window values are exact on consistent windows only, which is
            # all that survives the mask above.
            values = [corr_text[idx] // int(counts[idx]) for idx in range(len(variables))]
            for i in range(len(variables)):
                for j in range(i + 1, len(variables)):
                    ok &= np.asarray(values[i] != values[j], dtype=bool)
    return MatchReport([int(i) + 1 for i in np.flatnonzero(ok)])
