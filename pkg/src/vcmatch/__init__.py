"""vcmatch: pattern matching with variable symbols bound to text symbols.

A pattern mixes constants with variables; a window of the text matches when
some substitution of constants for variables reproduces it exactly.  The
``pvc`` mode additionally requires the substitution to be injective.  Three
cross-checking backends are provided: a brute-force scan, a cross-
correlation method, and a single-pass scanner with bit-packed shift tables.
"""

from .convolution import (
    OverflowRiskError,
    conv_match_all,
    correlate,
    correlate_direct,
    variable_consistent,
    wildcard_mask,
)
from .core import (
    InvalidInputError,
    PatternString,
    Substitution,
    Symbol,
    SymbolTable,
    TextString,
    UndefinedVariableError,
    apply_substitution,
    classify_input,
    extend_mapping,
)
from .kmp_fvc import BitmapSet, FvcKmp, add_condition, build_bitmaps, build_table, match_fvc
from .kmp_pvc import PvcKmp, TBitmapSet, build_injective_table, build_t_bitmaps, match_pvc
from .matchers import (
    ConvolutionMatcher,
    KmpMatcher,
    NaiveMatcher,
    NotFittedError,
    find_all,
    make_matcher,
)
from .naive import MatchReport, naive_all, window_match

__version__ = "0.1.0"
