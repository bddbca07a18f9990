"""Bit-row helpers: rows are little-endian tuples of chunk_width-bit words.

Bit j lives at word j // chunk_width, offset j % chunk_width.
"""

from __future__ import annotations

from typing import Sequence

MACHINE_WORD = 64


def word_count(nbits: int, chunk_width: int) -> int:
    return max(1, -(-nbits // chunk_width))


def and_words(acc: list[int], row: Sequence[int]) -> None:
    for i, w in enumerate(row):
        acc[i] &= w


def highest_set_bit(words: Sequence[int], chunk_width: int) -> int:
    """Index of the highest set bit, scanning words from the top; -1 if none."""
    for i in range(len(words) - 1, -1, -1):
        w = words[i]
        if w:
            return i * chunk_width + w.bit_length() - 1
    return -1
