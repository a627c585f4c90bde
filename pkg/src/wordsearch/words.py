"""One-dimensional word statistics, extremal constructions and stability."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .errors import DegenerateConstruction, DimensionMismatch
from .grid import Grid, check_word, concentration, letter_distribution, total_variation


class WordProfile(NamedTuple):
    ell: int
    c_left: int
    c_right: int
    c_repeat: int
    is_palindrome: bool


def _is_palindrome(s: str) -> bool:
    return s == s[::-1]


def profile(w: str) -> WordProfile:
    check_word(w)
    ell = len(w)
    c_left = max(k for k in range(1, ell + 1) if _is_palindrome(w[:k]))
    c_right = max(k for k in range(1, ell + 1) if _is_palindrome(w[ell - k :]))
    c_repeat = max(k for k in range(ell) if w[:k] == w[ell - k :])
    return WordProfile(ell, c_left, c_right, c_repeat, _is_palindrome(w))


def c1(w: str) -> Fraction:
    """Supremum concentration of w over all one-dimensional grids."""
    ell, cl, cr, crep, pal = profile(w)
    if pal:
        return Fraction(2, ell - crep)
    return max(Fraction(1, ell - crep), Fraction(2, 2 * ell - cl - cr))


def construct_rep(w: str) -> Grid:
    """Grid of the first len(w) - c_repeat letters, overlapping copies read forward."""
    p = profile(w)
    return Grid.from_word(w[: p.ell - p.c_repeat])


def construct_pal(w: str) -> Grid:
    """Grid(u2 + reverse(u1)): copies alternate direction and share palindromic ends."""
    p = profile(w)
    if p.is_palindrome:
        raise DegenerateConstruction(f"{w} is a palindrome; the alternating grid is empty")
    u2 = w[: p.ell - p.c_right]
    u1 = w[p.c_left :]
    return Grid.from_word(u2 + u1[::-1])


@dataclass(frozen=True)
class ExtremalClass:
    """Which construction is extremal for a word.

    For ``Mixed`` words, ``v`` and ``v_prime`` are the two blocks whose
    concatenations give every extremal grid.  ``x``, ``y`` and ``z`` split the
    analysed word (``word`` itself, or its reverse when ``reversed`` is set)
    as ``x y z rev(y) x y``.
    """

    kind: str
    word: str
    v: str | None = None
    v_prime: str | None = None
    x: str | None = None
    y: str | None = None
    z: str | None = None
    reversed: bool = False

    def extremal_grid(self) -> Grid:
        if self.kind == "PalOnly":
            return construct_pal(self.word)
        return construct_rep(self.word)

    def grids(self, m: int) -> Iterator[Grid]:
        """All grids Grid(v_1 ... v_m) with each block v or v_prime."""
        if self.kind != "Mixed":
            raise ValueError("only Mixed words have a family of block grids")
        for blocks in itertools.product((self.v, self.v_prime), repeat=m):
            yield Grid.from_word("".join(blocks))


def _mixed_decomposition(u: str, p: WordProfile):
    ell, cl, cr, crep, _ = p
    a = ell - crep
    x = u[:cl]
    y = u[cl:crep]
    z = u[crep : ell - cr]
    if x + y + z + y[::-1] + x + y != u:
        raise AssertionError(f"decomposition failed for {u}")
    v = x + y + z + y[::-1]
    v_prime = x + y + z[::-1] + y[::-1]
    pal_block = u[: ell - cr] + u[cl:][::-1]
    if v != u[:a] or v_prime != pal_block[-a:]:
        raise AssertionError(f"block mismatch for {u}")
    return v, v_prime, x, y, z


def classify_extremal(w: str) -> ExtremalClass:
    p = profile(w)
    if p.is_palindrome or p.c_left + p.c_right < 2 * p.c_repeat:
        return ExtremalClass("RepOnly", w)
    if p.c_left + p.c_right > 2 * p.c_repeat:
        return ExtremalClass("PalOnly", w)
    if p.c_left <= p.c_right:
        v, vp, x, y, z = _mixed_decomposition(w, p)
        return ExtremalClass("Mixed", w, v, vp, x, y, z)
    u = w[::-1]
    v, vp, x, y, z = _mixed_decomposition(u, profile(u))
    return ExtremalClass("Mixed", w, v[::-1], vp[::-1], x, y, z, reversed=True)


def canonical_distribution(w: str) -> dict[str, Fraction]:
    """Letter distribution shared by every one-dimensional w-extremal grid."""
    return letter_distribution(classify_extremal(w).extremal_grid())


class StabilityGap(NamedTuple):
    delta: Fraction
    tv: Fraction
    holds: bool


def stability_gap(w: str, g: Grid) -> StabilityGap:
    best = c1(w)
    if g.dim != 1:
        raise DimensionMismatch("stability is defined for one-dimensional grids")
    delta = 1 - concentration(w, g) / best
    tv = total_variation(letter_distribution(g), canonical_distribution(w))
    return StabilityGap(delta, tv, tv <= delta)
