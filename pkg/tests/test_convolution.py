import itertools
import random

import pytest

from helpers import classify, random_pattern_text
from vcmatch.convolution import (
    OverflowRiskError,
    conv_match_all,
    correlate,
    correlate_direct,
    variable_consistent,
    wildcard_mask,
)
from vcmatch.core import PatternString, Symbol, SymbolTable, TextString
from vcmatch.naive import naive_all, window_match


class TestCorrelate:
    def test_hand_example(self):
        assert list(correlate([1, 2, 3], [1, 1])) == [3, 5]
        assert correlate_direct([1, 2, 3], [1, 1]) == [3, 5]

    def test_identity_kernel(self):
        a = [5, 0, 7, 2, 9]
        assert list(correlate(a, [1])) == a

    def test_indicator_example(self):
        # T=aabcbc encoded a=1,b=2,c=3 against the occurrence row of B in AaBBb.
        a = [1, 1, 2, 3, 2, 3]
        b = [0, 0, 1, 1, 0]
        assert list(correlate(a, b)) == [5, 5]
        assert correlate_direct(a, b) == [5, 5]

    def test_matches_direct_summation_randomized(self):
        rng = random.Random(21)
        for _ in range(300):
            m = rng.randint(1, 24)
            n = rng.randint(m, 96)
            top = rng.choice([1, 3, 9, 100, 1 << 16, (1 << 20) - 1])
            a = [rng.randint(0, top) for _ in range(n)]
            b = [rng.randint(0, min(top, 3)) for _ in range(m)]
            assert list(correlate(a, b)) == correlate_direct(a, b)

    def test_value_bound_violation_raises(self):
        with pytest.raises(OverflowRiskError):
            correlate([1 << 26, 1], [1])
        with pytest.raises(OverflowRiskError):
            correlate([1, 2, 3], [1 << 26])
        # combined bound: values fine individually, sum guard trips
        big = (1 << 25) - 1
        with pytest.raises(OverflowRiskError):
            correlate([big] * 512, [big] * 256)

    def test_direct_summation_unbounded(self):
        big = 1 << 40
        assert correlate_direct([big, big], [big]) == [big * big, big * big]

    def test_kernel_validation(self):
        with pytest.raises(ValueError):
            correlate([1, 2], [1, 1, 1])
        with pytest.raises(ValueError):
            correlate([1, 2], [])
        with pytest.raises(ValueError):
            correlate([-1, 2], [1])


class TestWildcardMask:
    def test_mixed_pattern_example(self):
        P, T = classify("AaBBb", "aabcbc")
        assert list(wildcard_mask(P, T)) == [True, False]

    def test_all_variable_pattern(self):
        P, T = classify("ABA", "abcd")
        assert list(wildcard_mask(P, T)) == [True, True]

    def test_variable_free_pattern_is_exact_match_mask(self):
        P, T = classify("ab", "abab")
        assert list(wildcard_mask(P, T)) == [True, False, True]

    def test_direct_window_check_randomized(self):
        rng = random.Random(22)
        for _ in range(200):
            P, T = random_pattern_text(rng, max_m=6, max_n=24)
            if len(P) > len(T):
                continue
            mask = wildcard_mask(P, T)
            for i in range(len(T) - len(P) + 1):
                expected = all(
                    code < 0 or code == T.codes[i + off]
                    for off, code in enumerate(P.codes)
                )
                assert bool(mask[i]) == expected


class TestVariableConsistent:
    def test_inconsistent_variable(self):
        P, T = classify("AaBBb", "aabcbc")
        B = P.table.variable("B")
        assert list(variable_consistent(P, T, B)) == [False, False]

    def test_single_occurrence_always_consistent(self):
        P, T = classify("AaBBb", "aabcbc")
        A = P.table.variable("A")
        assert list(variable_consistent(P, T, A)) == [True, True]

    def test_equal_symbols(self):
        P, T = classify("AA", "aa")
        assert list(variable_consistent(P, T, P.table.variable("A"))) == [True]

    def test_unknown_variable_rejected(self):
        P, T = classify("Aa", "aa")
        other = Symbol.variable(5)
        with pytest.raises(ValueError):
            variable_consistent(P, T, other)

    def test_direct_alignment_check_randomized(self):
        rng = random.Random(23)
        for _ in range(200):
            P, T = random_pattern_text(rng, max_m=6, max_n=24)
            if len(P) > len(T) or not P.variables:
                continue
            for x in P.variables:
                mask = variable_consistent(P, T, x)
                where = P.occurrence_positions[x]
                for i in range(len(T) - len(P) + 1):
                    aligned = {T.codes[i + off] for off in where}
                    assert bool(mask[i]) == (len(aligned) == 1)


class TestSquaredSumIdentity:
    def test_exhaustive_small_tuples(self):
        for k in range(1, 5):
            for values in itertools.product(range(9), repeat=k):
                lhs = k * sum(v * v for v in values)
                rhs = sum(values) ** 2
                assert (lhs == rhs) == (len(set(values)) == 1)


class TestConvMatchAll:
    def test_reference_vectors(self):
        P, T = classify("ABAb", "ababbbb")
        assert conv_match_all(P, T, "fvc").positions == [1, 2, 4]
        assert conv_match_all(P, T, "pvc").positions == [1, 2]

    def test_no_match_example(self):
        P, T = classify("AaBBb", "aabcbc")
        assert conv_match_all(P, T, "fvc").positions == []
        assert conv_match_all(P, T, "pvc").positions == []

    def test_constant_only(self):
        P, T = classify("ab", "abab")
        assert conv_match_all(P, T, "fvc").positions == [1, 3]
        assert conv_match_all(P, T, "pvc").positions == [1, 3]

    def test_pattern_longer_than_text(self):
        P, T = classify("ABC", "ab")
        assert conv_match_all(P, T, "fvc").positions == []

    def test_window_decomposition_equals_window_match(self):
        # Per window: constant agreement plus per-variable consistency (plus
        # distinct values in injective mode) must equal the direct check.
        rng = random.Random(24)
        for _ in range(150):
            P, T = random_pattern_text(rng, max_m=6, max_n=24)
            if len(P) > len(T):
                continue
            wild = wildcard_mask(P, T)
            cons = [variable_consistent(P, T, x) for x in P.variables]
            for i in range(len(T) - len(P) + 1):
                fvc_decomposed = bool(wild[i]) and all(bool(c[i]) for c in cons)
                assert fvc_decomposed == window_match(P, T, i + 1, injective=False)[0]
                values = {}
                for x in P.variables:
                    aligned = [T.codes[i + off] for off in P.occurrence_positions[x]]
                    values[x] = aligned[0]
                pvc_decomposed = fvc_decomposed and len(set(values.values())) == len(values)
                assert pvc_decomposed == window_match(P, T, i + 1, injective=True)[0]

    def test_equals_oracle_randomized(self):
        rng = random.Random(25)
        for _ in range(400):
            P, T = random_pattern_text(rng)
            for mode in ("fvc", "pvc"):
                assert conv_match_all(P, T, mode).positions == naive_all(P, T, mode).positions

    def test_large_alphabet_falls_back_to_direct_summation(self):
        # More than 2**13 distinct text symbols squares past the transform
        # guard; the backend must fall back and still agree with the oracle.
        table = SymbolTable()
        table.intern_variable(ord("A"))
        n = 9000
        ids = [table.intern_constant(i) for i in range(n)]
        pattern = PatternString(
            (Symbol.variable(0), Symbol.variable(0), Symbol.constant(5)), table
        )
        text = TextString(tuple(Symbol.constant(i) for i in ids), table)
        got = conv_match_all(pattern, text, "fvc").positions
        assert got == naive_all(pattern, text, "fvc").positions == []
        # A planted hit: the repeated variable needs two equal text symbols.
        planted = list(ids)
        planted[3] = 4
        text2 = TextString(tuple(Symbol.constant(i) for i in planted), table)
        got2 = conv_match_all(pattern, text2, "fvc").positions
        assert got2 == naive_all(pattern, text2, "fvc").positions == [4]
