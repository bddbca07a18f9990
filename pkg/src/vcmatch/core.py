"""Symbol model, string types, and substitutions shared by every backend.

A pattern is a sequence of *constants* and *variables*; a text contains
constants only.  A substitution maps variables to constants; applying it to
the pattern yields a plain constant string that can be compared against a
text window.  Two matching modes exist:

* ``fvc`` -- any function from variables to constants is admissible,
* ``pvc`` -- the function must additionally be injective (distinct
  variables receive distinct constants).

Constants and variables live in two disjoint, append-only registries that
assign dense integer ids in first-appearance order.  All iteration orders
downstream follow registration order, which keeps outputs deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Literal, Mapping, Optional, Union

ASCII_UPPERCASE = frozenset(range(ord("A"), ord("Z") + 1))

MODES = ("fvc", "pvc")


class InvalidInputError(ValueError):
    """Raw input cannot be turned into a valid pattern or text."""


class UndefinedVariableError(KeyError):
    """A substitution was applied to a variable it does not bind."""


def is_injective_mode(mode: str) -> bool:
    """Map a mode name to the injectivity flag, rejecting unknown modes."""
    if mode == "fvc":
        return False
    if mode == "pvc":
        return True
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


@dataclass(frozen=True)
class Symbol:
    """A single constant or variable, identified by a dense registry id."""

    kind: Literal["constant", "variable"]
    id: int

    @classmethod
    def constant(cls, ident: int) -> "Symbol":
        return cls("constant", ident)

    @classmethod
    def variable(cls, ident: int) -> "Symbol":
        return cls("variable", ident)

    @property
    def is_variable(self) -> bool:
        return self.kind == "variable"

    @property
    def code(self) -> int:
        """Integer encoding: constants are >= 0, variables are negative."""
        return self.id if self.kind == "constant" else -1 - self.id


def symbol_from_code(code: int) -> Symbol:
    return Symbol.constant(code) if code >= 0 else Symbol.variable(-1 - code)


class SymbolTable:
    """Append-only byte registries for constants and variables.

    Ids are dense and assigned in first-appearance order; the constant and
    variable registries are disjoint, so the same raw byte may name a
    pattern variable and a text constant without ambiguity.
    """

    def __init__(self) -> None:
        self._constant_ids: dict[int, int] = {}
        self._variable_ids: dict[int, int] = {}
        self.constant_bytes: list[int] = []
        self.variable_bytes: list[int] = []

    @property
    def num_constants(self) -> int:
        return len(self.constant_bytes)

    @property
    def num_variables(self) -> int:
        return len(self.variable_bytes)

    def intern_constant(self, byte: int) -> int:
        ident = self._constant_ids.get(byte)
        if ident is None:
            ident = len(self.constant_bytes)
            self._constant_ids[byte] = ident
            self.constant_bytes.append(byte)
        return ident

    def intern_variable(self, byte: int) -> int:
        ident = self._variable_ids.get(byte)
        if ident is None:
            ident = len(self.variable_bytes)
            self._variable_ids[byte] = ident
            self.variable_bytes.append(byte)
        return ident

    def constant(self, char: Union[str, int]) -> Symbol:
        """Look up an already-registered constant by raw byte or character."""
        byte = ord(char) if isinstance(char, str) else char
        return Symbol.constant(self._constant_ids[byte])

    def variable(self, char: Union[str, int]) -> Symbol:
        byte = ord(char) if isinstance(char, str) else char
        return Symbol.variable(self._variable_ids[byte])

    def byte_of(self, symbol: Symbol) -> int:
        bank = self.variable_bytes if symbol.is_variable else self.constant_bytes
        return bank[symbol.id]

    def decode(self, symbols: Iterable[Symbol]) -> str:
        """Render symbols back to their raw characters (for display only)."""
        return "".join(chr(self.byte_of(s)) for s in symbols)


def normalize_charset(variable_charset=None) -> frozenset[int]:
    """Canonicalize a variable charset given as str, bytes, or ints."""
    if variable_charset is None:
        return ASCII_UPPERCASE
    if isinstance(variable_charset, str):
        raw: Iterable[int] = variable_charset.encode()
    else:
        raw = variable_charset
    values = frozenset(int(b) for b in raw)
    if any(not 0 <= v <= 255 for v in values):
        raise InvalidInputError("variable charset entries must be bytes (0..255)")
    return values


@dataclass(frozen=True)
class PatternString:
    """A non-empty sequence of constants and variables plus derived indexes."""

    symbols: tuple[Symbol, ...]
    table: SymbolTable

    def __post_init__(self) -> None:
        if not self.symbols:
            raise InvalidInputError("pattern must be non-empty")
        for sym in self.symbols:
            bound = self.table.num_variables if sym.is_variable else self.table.num_constants
            if not 0 <= sym.id < bound:
                raise InvalidInputError(f"symbol id out of registry range: {sym}")

    def __len__(self) -> int:
        return len(self.symbols)

    @cached_property
    def codes(self) -> tuple[int, ...]:
        """Per-position integer encoding (constants >= 0, variables < 0)."""
        return tuple(s.code for s in self.symbols)

    @cached_property
    def variables(self) -> tuple[Symbol, ...]:
        """Distinct variables occurring in the pattern, in registration order."""
        ids = sorted({s.id for s in self.symbols if s.is_variable})
        return tuple(Symbol.variable(i) for i in ids)

    @cached_property
    def constants(self) -> tuple[Symbol, ...]:
        """Distinct constants occurring in the pattern, in registration order."""
        ids = sorted({s.id for s in self.symbols if not s.is_variable})
        return tuple(Symbol.constant(i) for i in ids)

    @cached_property
    def occurrence_counts(self) -> dict[Symbol, int]:
        counts: dict[Symbol, int] = {}
        for sym in self.symbols:
            if sym.is_variable:
                counts[sym] = counts.get(sym, 0) + 1
        return counts

    @cached_property
    def occurrence_positions(self) -> dict[Symbol, tuple[int, ...]]:
        """0-based positions of each variable, ascending."""
        where: dict[Symbol, list[int]] = {}
        for pos, sym in enumerate(self.symbols):
            if sym.is_variable:
                where.setdefault(sym, []).append(pos)
        return {sym: tuple(posns) for sym, posns in where.items()}

    @cached_property
    def variables_by_prefix(self) -> tuple[tuple[int, ...], ...]:
        """For each prefix length j, the distinct variable ids in the first j symbols."""
        out: list[tuple[int, ...]] = [()]
        seen: list[int] = []
        for sym in self.symbols:
            if sym.is_variable and sym.id not in seen:
                seen.append(sym.id)
            out.append(tuple(seen))
        return tuple(out)


@dataclass(frozen=True)
class TextString:
    """A (possibly empty) sequence of constants."""

    symbols: tuple[Symbol, ...]
    table: SymbolTable

    def __post_init__(self) -> None:
        for sym in self.symbols:
            if sym.is_variable:
                raise InvalidInputError("text must contain constants only")
            if not 0 <= sym.id < self.table.num_constants:
                raise InvalidInputError(f"symbol id out of registry range: {sym}")

    def __len__(self) -> int:
        return len(self.symbols)

    @cached_property
    def codes(self) -> tuple[int, ...]:
        return tuple(s.id for s in self.symbols)


class Substitution:
    """A partial map from variable ids to constant ids plus its inverse.

    The inverse (constant id -> set of variable ids) is maintained on every
    update so injectivity checks are O(1).
    """

    def __init__(self, mapping: Optional[Mapping[int, int]] = None) -> None:
        self.forward: dict[int, int] = {}
        self.inverse: dict[int, set[int]] = {}
        if mapping:
            for var_id, const_id in mapping.items():
                self.forward[var_id] = const_id
                self.inverse.setdefault(const_id, set()).add(var_id)

    def get(self, var_id: int) -> Optional[int]:
        return self.forward.get(var_id)

    def __contains__(self, var_id: int) -> bool:
        return var_id in self.forward

    def __len__(self) -> int:
        return len(self.forward)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Substitution):
            return NotImplemented
        return self.forward == other.forward

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}->{c}" for v, c in sorted(self.forward.items()))
        return f"Substitution({{{inner}}})"

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self.forward.items())

    @property
    def is_injective(self) -> bool:
        return all(len(vs) <= 1 for vs in self.inverse.values())

    def bind(self, var_id: int, const_id: int, injective: bool = False) -> bool:
        """Try to add var -> const; return False (and change nothing) on conflict."""
        current = self.forward.get(var_id)
        if current is not None:
            return current == const_id
        if injective and self.inverse.get(const_id):
            return False
        self.forward[var_id] = const_id
        self.inverse.setdefault(const_id, set()).add(var_id)
        return True

    def copy(self) -> "Substitution":
        return Substitution(self.forward)

    def as_char_map(self, table: SymbolTable) -> dict[str, str]:
        """Render the map with raw characters, for reports and JSON output."""
        return {
            chr(table.variable_bytes[v]): chr(table.constant_bytes[c])
            for v, c in sorted(self.forward.items())
        }


def classify_input(raw_pattern, raw_text, variable_charset=None) -> tuple[PatternString, TextString]:
    """Split raw byte strings into a pattern and an all-constant text.

    Pattern bytes found in ``variable_charset`` (default: ASCII uppercase)
    become variables; every other pattern byte and *every* text byte becomes
    a constant, so a text may freely contain bytes from the variable charset.
    Registries are filled in first-appearance order, pattern first.
    """
    pattern_bytes = _as_bytes(raw_pattern)
    text_bytes = _as_bytes(raw_text)
    if not pattern_bytes:
        raise InvalidInputError("pattern must be non-empty")
    charset = normalize_charset(variable_charset)
    table = SymbolTable()
    pattern_symbols = tuple(
        Symbol.variable(table.intern_variable(b))
        if b in charset
        else Symbol.constant(table.intern_constant(b))
        for b in pattern_bytes
    )
    text_symbols = tuple(Symbol.constant(table.intern_constant(b)) for b in text_bytes)
    return PatternString(pattern_symbols, table), TextString(text_symbols, table)


def _as_bytes(raw) -> bytes:
    if isinstance(raw, bytes):
        return raw
    if isinstance(raw, bytearray):
        return bytes(raw)
    if isinstance(raw, str):
        return raw.encode()
    raise InvalidInputError(f"expected str or bytes, got {type(raw).__name__}")


def apply_substitution(pi: Substitution, pattern) -> tuple[Symbol, ...]:
    """Replace each variable by its image; constants pass through unchanged.

    The result always has the same length as the input.  Raises
    :class:`UndefinedVariableError` if some variable is unbound.
    """
    symbols = getattr(pattern, "symbols", pattern)
    out = []
    for sym in symbols:
        if sym.is_variable:
            const_id = pi.get(sym.id)
            if const_id is None:
                raise UndefinedVariableError(sym)
            out.append(Symbol.constant(const_id))
        else:
            out.append(sym)
    return tuple(out)


def extend_mapping(pi: Substitution, x: Symbol, c: Symbol, injective: bool = False) -> bool:
    """Try to extend ``pi`` with x -> c; return False on conflict.

    Re-binding a variable to its current image is a no-op and succeeds; in
    injective mode a constant already used by another variable is refused.
    """
    if not x.is_variable:
        raise ValueError(f"{x} is not a variable")
    if c.is_variable:
        raise ValueError(f"{c} is not a constant")
    return pi.bind(x.id, c.id, injective=injective)
