"""Estimator-style matcher classes: fit a pattern once, search many texts.

The classes follow the familiar fit/predict surface -- parameters are
stored verbatim by ``__init__``, ``fit`` compiles the pattern and returns
``self``, fitted state lives in trailing-underscore attributes, and
``get_params``/``set_params`` allow cloning and grid-style composition.
"""

from __future__ import annotations

import inspect
from typing import Union

from .convolution import conv_match_all
from .core import (
    PatternString,
    Symbol,
    SymbolTable,
    TextString,
    is_injective_mode,
    normalize_charset,
)
from .kmp_fvc import FvcKmp
from .kmp_pvc import PvcKmp
from .naive import MatchReport, naive_all, window_match

ALGORITHMS = ("naive", "conv", "kmp")


class NotFittedError(RuntimeError):
    """The matcher must be fitted with a pattern before searching."""


def check_pattern(pattern) -> Union[str, bytes]:
    if not isinstance(pattern, (str, bytes, bytearray)):
        raise TypeError(f"pattern must be str or bytes, got {type(pattern).__name__}")
    if len(pattern) == 0:
        raise ValueError("pattern must be non-empty")
    return pattern


def check_text(text) -> Union[str, bytes]:
    if not isinstance(text, (str, bytes, bytearray)):
        raise TypeError(f"text must be str or bytes, got {type(text).__name__}")
    return text


class BaseMatcher:
    """Shared parameter handling, input validation, and search surface."""

    def get_params(self, deep: bool = True) -> dict:
        names = [
            p.name
            for p in inspect.signature(type(self).__init__).parameters.values()
            if p.name != "self" and p.kind not in (p.VAR_POSITIONAL, p.VAR_KEYWORD)
        ]
        return {name: getattr(self, name) for name in names}

    def set_params(self, **params) -> "BaseMatcher":
        valid = self.get_params()
        for name, value in params.items():
            if name not in valid:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}; "
                    f"valid parameters are {sorted(valid)}"
                )
            setattr(self, name, value)
        return self

    def fit(self, pattern, y=None) -> "BaseMatcher":
        """Classify and preprocess the pattern; returns self."""
        check_pattern(pattern)
        self.injective_ = is_injective_mode(self.mode)
        charset = normalize_charset(self.variables)
        raw = pattern.encode() if isinstance(pattern, str) else bytes(pattern)
        table = SymbolTable()
        symbols = tuple(
            Symbol.variable(table.intern_variable(b))
            if b in charset
            else Symbol.constant(table.intern_constant(b))
            for b in raw
        )
        self.symbol_table_ = table
        self.pattern_ = PatternString(symbols, table)
        self._compile()
        return self

    def _compile(self) -> None:
        """Hook for per-backend preprocessing; default is none."""

    def _check_fitted(self) -> None:
        if not hasattr(self, "pattern_"):
            raise NotFittedError(f"{type(self).__name__} must be fitted before searching")

    def _encode_text(self, text) -> TextString:
        if isinstance(text, TextString):
            if text.table is not self.symbol_table_:
                raise ValueError("text was classified against a different symbol table")
            return text
        check_text(text)
        raw = text.encode() if isinstance(text, str) else bytes(text)
        table = self.symbol_table_
        return TextString(tuple(Symbol.constant(table.intern_constant(b)) for b in raw), table)

    def find(self, text, with_witnesses: bool = False) -> MatchReport:
        """Search a text; optionally attach a witness binding per position."""
        self._check_fitted()
        encoded = self._encode_text(text)
        report = self._search(encoded)
        if with_witnesses:
            report.witnesses = {
                pos: window_match(self.pattern_, encoded, pos, injective=self.injective_)[1]
                for pos in report.positions
            }
        return report

    def predict(self, text) -> list[int]:
        """1-based start positions of all matching windows."""
        return self.find(text).positions

    def _search(self, text: TextString) -> MatchReport:
        raise NotImplementedError


class NaiveMatcher(BaseMatcher):
    """Window-by-window scan; the reference backend."""

    def __init__(self, mode: str = "fvc", variables=None):
        self.mode = mode
        self.variables = variables

    def _search(self, text: TextString) -> MatchReport:
        return naive_all(self.pattern_, text, mode=self.mode)


class ConvolutionMatcher(BaseMatcher):
    """Cross-correlation backend."""

    def __init__(self, mode: str = "fvc", variables=None):
        self.mode = mode
        self.variables = variables

    def _search(self, text: TextString) -> MatchReport:
        return conv_match_all(self.pattern_, text, mode=self.mode)


class KmpMatcher(BaseMatcher):
    """Single-pass backend with bit-packed shift tables."""

    def __init__(self, mode: str = "fvc", variables=None, chunk_width: int = 64):
        self.mode = mode
        self.variables = variables
        self.chunk_width = chunk_width

    def _compile(self) -> None:
        engine_cls = PvcKmp if self.injective_ else FvcKmp
        self.engine_ = engine_cls(self.pattern_, chunk_width=self.chunk_width)

    def _search(self, text: TextString) -> MatchReport:
        return self.engine_.find_all(text)


def make_matcher(algo: str, mode: str = "fvc", variables=None, chunk_width: int = 64) -> BaseMatcher:
    """Instantiate a backend by name (one of 'naive', 'conv', 'kmp')."""
    if algo == "naive":
        return NaiveMatcher(mode=mode, variables=variables)
    if algo == "conv":
        return ConvolutionMatcher(mode=mode, variables=variables)
    if algo == "kmp":
        return KmpMatcher(mode=mode, variables=variables, chunk_width=chunk_width)
    raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")


def find_all(
    pattern,
    text,
    mode: str = "fvc",
    algo: str = "kmp",
    variables=None,
    chunk_width: int = 64,
) -> list[int]:
    """Convenience one-shot search returning 1-based match positions."""
    matcher = make_matcher(algo, mode=mode, variables=variables, chunk_width=chunk_width)
    return matcher.fit(pattern).predict(text)
