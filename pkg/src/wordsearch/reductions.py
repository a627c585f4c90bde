"""Projection reductions, the parity-respecting transformation and letter repetition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, DimensionMismatch, MixedParity, ParseError, ShapeError, UnmappedLetter
from .grid import Grid, check_word, count
from .words import c1, construct_pal, construct_rep, profile


@dataclass(frozen=True)
class LetterMap:
    mapping: tuple  # sorted (source, target) pairs

    @classmethod
    def from_dict(cls, d) -> LetterMap:
        return cls(tuple(sorted(d.items())))

    @classmethod
    def parse(cls, text: str, alphabet=()) -> LetterMap:
        """Parse ``X:Y,...``; letters of ``alphabet`` missing from the text map to themselves."""
        d = {a: a for a in alphabet}
        for part in filter(None, (p.strip() for p in text.split(","))):
            src, sep, dst = part.partition(":")
            src, dst = src.strip(), dst.strip()
            if not sep or len(src) != 1 or len(dst) != 1:
                raise ParseError(f"bad letter map entry {part!r}; expected X:Y")
            d[src] = dst
        return cls.from_dict(d)

    @classmethod
    def identity(cls, alphabet) -> LetterMap:
        return cls.from_dict({a: a for a in alphabet})

    def as_dict(self) -> dict:
        return dict(self.mapping)

    def __call__(self, letter: str) -> str:
        d = self.as_dict()
        if letter not in d:
            raise UnmappedLetter(f"letter {letter!r} is not mapped")
        return d[letter]

    def __str__(self):
        return ",".join(f"{a}:{b}" for a, b in self.mapping)


def apply_map(pi: LetterMap, g: Grid) -> Grid:
    d = pi.as_dict()
    missing = sorted(set(g.cells) - set(d))
    if missing:
        raise UnmappedLetter(f"letters {missing} are not mapped")
    return Grid(g.shape, tuple(d[c] for c in g.cells))


def count_1d(w: str, s: str) -> int:
    """Appearances of w in the cyclic string s, read forwards and backwards."""
    n = len(s)
    ext = s * (len(w) // n + 2)
    rw = w[::-1]
    fwd = sum(1 for p in range(n) if ext.startswith(w, p))
    bwd = sum(1 for p in range(n) if ext.startswith(rw, p))
    return fwd + bwd


@dataclass
class ReductionCheck:
    """Data for a projection reduction of w onto w_prime along pi with witness grid gamma0."""

    w: str
    w_prime: str
    pi: LetterMap
    gamma0: Grid
    ratio_r: Fraction | None = None
    cond_a: bool | None = None
    cond_b: bool | None = None
    cond_c: bool | None = None
    checked_upto: int = 0
    counterexample: Grid | None = None

    def __post_init__(self):
        check_word(self.w)
        check_word(self.w_prime)
        if self.gamma0.dim != 1:
            raise DimensionMismatch("gamma0 must be one-dimensional")
        num = count(self.w, self.gamma0)
        den = count(self.w_prime, apply_map(self.pi, self.gamma0))
        self.ratio_r = Fraction(num, den) if den else None

    @property
    def passed(self) -> bool:
        return bool(self.cond_a and self.cond_b and self.cond_c)


def verify_reduction(rc: ReductionCheck, n_max: int, budget: int | None = None) -> ReductionCheck:
    """Check (a), (b) exactly and (c) for every 1-D grid of size at most n_max.

    (c) is only verified up to n_max; the universal statement is not.
    """
    g0 = rc.gamma0
    if n_max < g0.size:
        raise ValueError("n_max must be at least the size of gamma0")
    pg0 = apply_map(rc.pi, g0)
    rc.cond_a = Fraction(count(rc.w, g0), g0.size) == c1(rc.w)
    rc.cond_b = Fraction(count(rc.w_prime, pg0), g0.size) == c1(rc.w_prime)
    num0 = count(rc.w, g0)
    den0 = count(rc.w_prime, pg0)
    d = rc.pi.as_dict()
    letters = sorted(set(rc.w) | set(g0.cells))
    missing = [a for a in letters if a not in d]
    if missing:
        raise UnmappedLetter(f"letters {missing} are not mapped")
    table = str.maketrans(d)
    rc.cond_c = True
    rc.counterexample = None
    seen = 0
    for n in range(1, n_max + 1):
        for cells in itertools.product(letters, repeat=n):
            seen += 1
            if budget is not None and seen > budget:
                raise BudgetExceeded(f"more than {budget} grids", nodes=seen)
            s = "".join(cells)
            lhs = count_1d(rc.w, s) * den0
            rhs = count_1d(rc.w_prime, s.translate(table)) * num0
            if lhs > rhs:
                rc.cond_c = False
                rc.counterexample = Grid.from_word(s)
                rc.checked_upto = n
                return rc
    rc.checked_upto = n_max
    return rc


def abb_reductions() -> list[ReductionCheck]:
    """The four reductions of four-letter words onto ABB."""
    ident = LetterMap.identity("AB")
    return [
        ReductionCheck("ABCA", "ABB", LetterMap.from_dict({"A": "A", "B": "B", "C": "B"}), Grid.from_word("ABC")),
        ReductionCheck(
            "ABBC", "ABB", LetterMap.from_dict({"A": "A", "B": "B", "C": "A"}), Grid.from_word("ABBCBB")
        ),
        ReductionCheck("ABBA", "ABB", ident, Grid.from_word("ABB")),
        ReductionCheck("BABB", "ABB", ident, Grid.from_word("ABB")),
    ]


# -- parity-respecting grids ---------------------------------------------------


def parity_classes(w: str):
    """(odd, even) letter classes, or None if some letter sits at both parities.

    Positions are 1-based here, so w[0] is at an odd index.
    """
    odd = {x for i, x in enumerate(w) if i % 2 == 0}
    even = {x for i, x in enumerate(w) if i % 2 == 1}
    if odd & even:
        return None
    return frozenset(odd), frozenset(even)


def _classifier(w):
    classes = parity_classes(w)
    if classes is None:
        raise MixedParity(f"{w} has a letter at both parities")
    odd, even = classes
    return {**{a: "O" for a in odd}, **{a: "E" for a in even}}


def parity_projection(w: str, s: str) -> str:
    """Replace odd-class letters by O, even-class by E and anything else by X."""
    cls = _classifier(w)
    return "".join(cls.get(c, "X") for c in s)


def f_ratio(w: str, s: str):
    """(count of w, count of OE in the projection); the ratio is 0 when both vanish."""
    return count_1d(w, s), count_1d("OE", parity_projection(w, s))


def _f_less(a, b) -> bool:
    """Compare f values given as (numerator, denominator), with 0 for empty denominators."""
    (n1, d1), (n2, d2) = ((n, d) if d else (0, 1) for n, d in (a, b))
    return n1 * d2 < n2 * d1


def f_value(w: str, g: Grid) -> Fraction:
    num, den = f_ratio(w, g.word())
    return Fraction(num, den) if den else Fraction(0)


def is_parity_respecting(w: str, g: Grid) -> bool:
    if g.dim != 1 or g.size < 2:
        return False
    p = parity_projection(w, g.word())
    n = len(p)
    return all({p[i], p[(i + 1) % n]} == {"O", "E"} for i in range(n))


def _used_positions(w: str, s: str) -> set:
    n, ell = len(s), len(w)
    used = set()
    for word in (w, w[::-1]):
        for p in range(n):
            if all(s[(p + i) % n] == word[i] for i in range(ell)):
                used.update((p + i) % n for i in range(ell))
    return used


def extremal_witness(w: str) -> Grid:
    """The extremal witness grid: rep construction when it beats pal, else pal."""
    p = profile(w)
    if p.is_palindrome or p.c_left + p.c_right < 2 * p.c_repeat:
        return construct_rep(w)
    return construct_pal(w)


def to_parity_respecting(w: str, g: Grid) -> Grid:
    """Turn a 1-D grid into a parity-respecting one without lowering f.

    Letters in no appearance of w are dropped and the cycle is cut where they
    were, rather than spliced shut: splicing can join an O to an E and so add
    an OE adjacency.  The cycle is also cut at every same-class adjacency
    (including the w1 w1 and wl wl pairs).  No appearance crosses a cut, so
    the pieces hold every appearance and at most the original OE pairs.  Each
    piece s becomes the cycle s + reverse(s)[1:-1], which doubles both counts;
    the best piece wins, ties going to the first.  Grids with no appearance
    are replaced by the extremal witness grid.
    """
    check_word(w)
    cls = _classifier(w)
    if g.dim != 1:
        raise DimensionMismatch("parity transformation needs a one-dimensional grid")
    if is_parity_respecting(w, g):
        return g
    s = g.word()
    n = len(s)
    used = _used_positions(w, s)
    if not used:
        return extremal_witness(w)

    def cut_after(i):
        j = (i + 1) % n
        return i not in used or j not in used or cls[s[i]] == cls[s[j]]

    cuts = [i for i in range(n) if cut_after(i)]
    start = (cuts[0] + 1) % n
    pieces, piece = [], ""
    for k in range(n):
        i = (start + k) % n
        if i in used:
            piece += s[i]
        if cut_after(i):
            if piece:
                pieces.append(piece)
            piece = ""
    best, best_f = None, None
    for piece in pieces:
        if len(piece) < 2:
            continue
        doubled = piece + piece[::-1][1:-1]
        fv = f_ratio(w, doubled)
        if best is None or _f_less(best_f, fv):
            best, best_f = doubled, fv
    if best is None:
        return extremal_witness(w)
    return Grid.from_word(best)


# -- letter repetition -------------------------------------------------------


def repeat_word(w: str, k: int) -> str:
    if k < 1:
        raise ValueError("k must be positive")
    return "".join(c * k for c in w)


def subsampled_grids(g: Grid, k: int) -> list[Grid]:
    """Grids z -> g(k z + v) for every v in {0..k-1}^d."""
    if any(n % k for n in g.shape):
        raise ShapeError(f"{k} does not divide every extent of {g.shape}")
    arr = g.array
    out = []
    for v in itertools.product(range(k), repeat=g.dim):
        sub = arr[tuple(slice(o, None, k) for o in v)]
        out.append(Grid.from_array(sub))
    return out


def check_repetition_inequality(w: str, k: int, g: Grid) -> bool:
    """k * count(w^(k), g) <= sum over subsampled grids of count(w, .)."""
    check_word(w)
    subs = subsampled_grids(g, k)
    return k * count(repeat_word(w, k), g) <= sum(count(w, s) for s in subs)


__all__ = [
    "LetterMap",
    "ReductionCheck",
    "apply_map",
    "check_repetition_inequality",
    "count_1d",
    "f_value",
    "is_parity_respecting",
    "abb_reductions",
    "parity_classes",
    "repeat_word",
    "subsampled_grids",
    "to_parity_respecting",
    "verify_reduction",
]
