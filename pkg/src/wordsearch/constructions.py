"""Lower-bound constructions: stacking, modular queens and hand-made grids."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import BudgetExceeded, GcdError, ShapeMismatch
from .grid import Grid, directions, loads, stack

__all__ = [
    "QueensPlacement",
    "is_nonattacking",
    "attacking_pairs",
    "polya_queens",
    "power_queen_positions",
    "power_queens",
    "queens_to_grid",
    "search_queens",
    "paper_grids",
    "stack",
]


@dataclass(frozen=True)
class QueensPlacement:
    n: int
    d: int
    positions: frozenset

    @property
    def shape(self):
        return (self.n,) * self.d

    def __len__(self):
        return len(self.positions)


def _attack_differences(n: int, d: int) -> set:
    """Every nonzero k*v mod n with v a direction."""
    out = set()
    for v in directions(d):
        for k in range(1, n):
            delta = tuple((k * c) % n for c in v)
            if any(delta):
                out.add(delta)
    return out


def attacking_pairs(q: QueensPlacement) -> list:
    bad = _attack_differences(q.n, q.d)
    pts = sorted(q.positions)
    return [
        (p, r)
        for p, r in itertools.combinations(pts, 2)
        if tuple((b - a) % q.n for a, b in zip(p, r)) in bad
    ]


def is_nonattacking(q: QueensPlacement) -> bool:
    """All-pairs check: no difference of two queens is a multiple of a direction."""
    return not attacking_pairs(q)


def polya_queens(n: int) -> QueensPlacement:
    """n queens at (i, 2i) on the modular n x n board, valid when gcd(n, 6) = 1."""
    if math.gcd(n, 6) != 1:
        raise GcdError(f"gcd({n}, 6) != 1")
    return QueensPlacement(n, 2, frozenset((i, 2 * i % n) for i in range(n)))


def power_queen_positions(n: int, d: int) -> frozenset:
    """Points (sum 2^i a_i, a_1, ..., a_{d-1}) mod n, with no validity check."""
    pts = set()
    for alpha in itertools.product(range(n), repeat=d - 1):
        head = sum(2 ** (i + 1) * a for i, a in enumerate(alpha)) % n
        pts.add((head,) + alpha)
    return frozenset(pts)


def power_queens(n: int, d: int) -> QueensPlacement:
    """n^(d-1) nonattacking queens on (Z/n)^d when gcd(n, (2^d)!) = 1."""
    if math.gcd(n, math.factorial(2**d)) != 1:
        raise GcdError(f"gcd({n}, (2^{d})!) != 1")
    return QueensPlacement(n, d, power_queen_positions(n, d))


def queens_to_grid(q: QueensPlacement, ell: int, queen="A", empty="B") -> Grid:
    """A at queen positions, B elsewhere, on the board (Z/ell)^d."""
    if q.n != ell:
        raise ShapeMismatch(f"board side {q.n} differs from word length {ell}")
    return Grid.from_function(q.shape, lambda p: queen if p in q.positions else empty)


def search_queens(n: int, d: int = 2, target: int | None = None, budget: int = 10**7):
    """Backtracking for ``target`` nonattacking queens on the modular n x n board.

    Rows are visited in order; each row takes one queen (columns ascending)
    or is skipped, so fewer than n queens can be placed.  Returns None when
    the search space is exhausted.
    """
    if d != 2:
        raise ValueError("search_queens supports d = 2 only")
    if target is None:
        target = n
    if target > n:
        return None
    nodes = 0
    cols, diag, anti = [False] * n, [False] * n, [False] * n
    placed = []

    def rec(r, skips):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"queens search exceeded {budget} nodes", best=len(placed), nodes=nodes)
        if len(placed) == target:
            return True
        if r == n:
            return False
        for c in range(n):
            a, b = (c - r) % n, (c + r) % n
            if cols[c] or diag[a] or anti[b]:
                continue
            cols[c] = diag[a] = anti[b] = True
            placed.append((r, c))
            if rec(r + 1, skips):
                return True
            placed.pop()
            cols[c] = diag[a] = anti[b] = False
        if skips > 0:
            return rec(r + 1, skips - 1)
        return False

    if rec(0, n - target):
        return QueensPlacement(n, 2, frozenset(placed))
    return None


_PAPER_GRIDS = {
    "fig1-left": """shape: 5 5
ABBBB
BBBAB
BABBB
BBBBA
BBABB
""",
    "fig1-right": """shape: 4 4
ABBB
ABBB
ABBB
ABBB
""",
    "lemma67": """shape: 5 5
ABBBB
BBBAB
BABBB
BBBBA
BBABB
""",
    "fig5": """shape: 7 7
ABBBBBB
BBABBBB
BBBBABB
BBBBBBA
BABBBBB
BBBABBB
BBBBBAB
""",
    "fig7-left": """shape: 6 6
ABABBB
BBBBAB
BBBBBB
BABBBB
BBBABA
BBBBBB
""",
    "fig7-right": """shape: 8 8
BBBBABBB
BBBBBABB
BABBBBBB
ABBBBBBB
BBBBBBAB
BBBABBBB
BBBBBBBA
BBABBBBB
""",
    "fig9-diag": """shape: 3 3
ABB
BAB
BBA
""",
    "fig9-stack": """shape: 3 3
ABB
ABB
ABB
""",
}


def paper_grids() -> dict[str, Grid]:
    """The named example grids, parsed from their text form."""
    return {name: loads(text) for name, text in _PAPER_GRIDS.items()}
