import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordsearch import oracle
from wordsearch.errors import DimensionMismatch, MixedParity, ParseError, ShapeError, UnmappedLetter
from wordsearch.grid import Grid, count
from wordsearch.reductions import (
    LetterMap,
    ReductionCheck,
    abb_reductions,
    apply_map,
    check_repetition_inequality,
    count_1d,
    f_value,
    is_parity_respecting,
    parity_classes,
    repeat_word,
    subsampled_grids,
    to_parity_respecting,
    verify_reduction,
)
from wordsearch.words import c1


def test_letter_map_parse():
    pi = LetterMap.parse("C:B", "ABC")
    assert pi.as_dict() == {"A": "A", "B": "B", "C": "B"}
    assert str(pi) == "A:A,B:B,C:B"
    assert pi("C") == "B"
    with pytest.raises(UnmappedLetter):
        pi("D")
    for bad in ("C", "CB:A", "C:"):
        with pytest.raises(ParseError):
            LetterMap.parse(bad)


def test_apply_map():
    pi = LetterMap.parse("C:B", "ABC")
    assert apply_map(pi, Grid.from_word("ABCA")) == Grid.from_word("ABBA")
    with pytest.raises(UnmappedLetter):
        apply_map(pi, Grid.from_word("ABD"))


@settings(max_examples=100, deadline=None)
@given(st.text("ABC", min_size=1, max_size=8), st.text("ABC", min_size=2, max_size=4))
def test_projection_keeps_appearances(s, w):
    if len(set(w)) < 2:
        return
    pi = LetterMap.from_dict({"A": "A", "B": "B", "C": "B"})
    w2 = "".join(pi(x) for x in w)
    if len(set(w2)) < 2:
        return
    g = Grid.from_word(s)
    assert count(w2, apply_map(pi, g)) >= count(w, g)


def test_count_1d_matches_grid_count():
    for t in itertools.product("AB", repeat=5):
        s = "".join(t)
        assert count_1d("ABB", s) == count("ABB", Grid.from_word(s))


def test_four_reductions_onto_abb():
    ratios = []
    for rc in abb_reductions():
        verify_reduction(rc, 9)
        assert rc.cond_a and rc.cond_b and rc.cond_c and rc.passed
        assert rc.checked_upto == 9
        ratios.append(rc.ratio_r)
    assert ratios == [Fraction(1, 2), Fraction(1, 2), 1, 1]


def test_false_reduction_finds_counterexample():
    # (a) and (b) hold for this map, but the injection behind (c) does not exist.
    pi = LetterMap.from_dict({"A": "B", "B": "B", "C": "A"})
    rc = ReductionCheck("ABCA", "ABB", pi, Grid.from_word("ABC"))
    verify_reduction(rc, 7)
    assert rc.cond_a and rc.cond_b and rc.cond_c is False
    assert not rc.passed
    g = rc.counterexample
    assert g.size == rc.checked_upto == 6
    assert count("ABCA", g) * count("ABB", apply_map(pi, rc.gamma0)) > count("ABB", apply_map(pi, g)) * count(
        "ABCA", rc.gamma0
    )


def test_wrong_target_fails_projection_condition():
    rc = ReductionCheck("ABB", "AB", LetterMap.identity("AB"), Grid.from_word("ABB"))
    verify_reduction(rc, 4)
    assert rc.cond_a and not rc.cond_b and not rc.passed


def test_reduction_checks():
    with pytest.raises(DimensionMismatch):
        ReductionCheck("AB", "AB", LetterMap.identity("AB"), Grid.from_rows(["AB", "AB"]))
    rc = ReductionCheck("ABB", "ABB", LetterMap.identity("AB"), Grid.from_word("ABB"))
    with pytest.raises(ValueError):
        verify_reduction(rc, 2)


def test_parity_classes():
    assert parity_classes("ABACA") == (frozenset("A"), frozenset("BC"))
    assert parity_classes("ABB") is None
    with pytest.raises(MixedParity):
        to_parity_respecting("ABB", Grid.from_word("ABB"))


def test_parity_example():
    out = to_parity_respecting("ABA", Grid.from_word("ABAA"))
    assert out == Grid.from_word("ABAB")
    assert is_parity_respecting("ABA", out)


def test_parity_no_appearance_falls_back():
    out = to_parity_respecting("ABA", Grid.from_word("BBBB"))
    assert is_parity_respecting("ABA", out)
    assert f_value("ABA", out) > 0


PARITY_WORDS = ["ABA", "ABACA", "AB", "ABCD", "ABCB", "ELEPHANT"]


@settings(max_examples=400, deadline=None)
@given(st.sampled_from(PARITY_WORDS), st.data())
def test_parity_transformation(w, data):
    letters = sorted(set(w)) + ["Z"]
    s = data.draw(st.text("".join(letters), min_size=1, max_size=12))
    g = Grid.from_word(s)
    out = to_parity_respecting(w, g)
    assert is_parity_respecting(w, out)
    assert f_value(w, out) >= f_value(w, g)


def test_repeat_word():
    assert repeat_word("AB", 3) == "AAABBB"
    with pytest.raises(ValueError):
        repeat_word("AB", 0)


@pytest.mark.parametrize("w", ["AB", "ABB", "ABA", "ABC", "ABCA", "AABAB"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_repeated_word_closed_form(w, k):
    assert c1(repeat_word(w, k)) == c1(w) / k


@pytest.mark.parametrize("w, k", [("AB", 2), ("ABB", 2), ("AB", 3)])
def test_repeated_word_oracle(w, k):
    wk = repeat_word(w, k)
    best = max(oracle.max_concentration(wk, (n,)).best_value for n in range(1, 2 * len(wk) + 1))
    assert best == c1(w) / k


def test_subsampled_grids():
    g = Grid.from_rows(["ABCD", "EFGH"])
    subs = subsampled_grids(g, 2)
    assert [s.word() for s in subs] == ["AC", "BD", "EG", "FH"]
    assert all(s.shape == (1, 2) for s in subs)
    with pytest.raises(ShapeError):
        subsampled_grids(Grid.from_word("ABC"), 2)


def test_repetition_examples():
    assert check_repetition_inequality("AB", 2, Grid.from_word("AABB"))
    assert check_repetition_inequality("ABB", 1, Grid.from_word("ABAB"))


def test_repetition_random():
    rng = random.Random(2)
    for _ in range(200):
        shape = (rng.choice((2, 4, 6)), rng.choice((2, 4, 6)))
        g = Grid.from_function(shape, lambda p: rng.choice("AB"))
        assert check_repetition_inequality("AB", 2, g)
