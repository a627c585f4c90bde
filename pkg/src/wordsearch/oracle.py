"""Brute-force ground truth: exact maxima over all grids of a fixed shape."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import BudgetExceeded, DomainError, ShapeError
from .grid import Grid, check_word, directions, search_lines
from .search import PatternProblem
from .words import c1, profile


@dataclass
class OracleResult:
    best_value: Fraction
    witnesses: list[Grid]
    shapes_searched: list[tuple[int, ...]]
    nodes_explored: int


def _flat(point, shape):
    idx = 0
    for x, n in zip(point, shape):
        idx = idx * n + x % n
    return idx


def appearance_patterns(w: str, shape):
    """One requirement list per (position, direction), cells as flat indices."""
    patterns = []
    for p in itertools.product(*map(range, shape)):
        for v in directions(len(shape)):
            reqs = [
                (_flat(tuple(x + i * c for x, c in zip(p, v)), shape), w[i]) for i in range(len(w))
            ]
            patterns.append((reqs, 1))
    return patterns


def max_concentration(w: str, shape, budget=None, witness_cap=1, symmetry=False, workers=1):
    """Exact maximum of concentration(w, .) over grids of ``shape``.

    Cells are decided in row-major order with letters in alphabetical order,
    so the first witness is the lexicographically least maximiser.  With
    ``symmetry`` the first cell is fixed to w[0]; every grid with an
    appearance has a translate of that form, so the maximum is unchanged but
    the witness list no longer covers all translates.
    """
    check_word(w)
    shape = tuple(int(n) for n in shape)
    if not shape or any(n < 1 for n in shape):
        raise ShapeError(f"invalid shape {shape}")
    size = math.prod(shape)
    letters = tuple(sorted(set(w)))
    prob = PatternProblem(
        {i: letters for i in range(size)},
        appearance_patterns(w, shape),
        order=range(size),
        reduce_domains=False,
    )
    prefix = {0: w[0]} if symmetry else None
    try:
        if workers > 1 and not symmetry:
            res = prob.solve(budget=budget, max_witnesses=witness_cap, workers=workers)
        else:
            res = prob.solve(budget=budget, max_witnesses=witness_cap, prefix=prefix)
    except BudgetExceeded as exc:
        exc.best = exc.best / size if exc.best is not None else None
        if exc.witness is not None:
            exc.witness = Grid(shape, tuple(exc.witness[i] for i in range(size)))
        raise
    witnesses = [Grid(shape, tuple(a[i] for i in range(size))) for a in res.witnesses]
    return OracleResult(res.best / size, witnesses, [shape], res.nodes)


@dataclass
class C1Verification:
    ok: bool
    best: Fraction
    closed_form: Fraction
    attained: list[int] = field(default_factory=list)
    nodes_explored: int = 0

    def __bool__(self):
        return self.ok


def verify_c1(w: str, n_max: int, budget=None) -> C1Verification:
    """Compare c1(w) with the oracle maximum over 1-D shapes n <= n_max."""
    p = profile(w)
    target = c1(w)
    best = Fraction(0)
    attained = []
    nodes = 0
    for n in range(1, n_max + 1):
        res = max_concentration(w, (n,), budget=budget)
        nodes += res.nodes_explored
        if res.best_value > best:
            best, attained = res.best_value, [n]
        elif res.best_value == best:
            attained.append(n)
    small = any(n <= 2 * p.ell - 2 or n == p.ell - p.c_repeat for n in attained)
    return C1Verification(best == target and small, best, target, attained, nodes)


class AveragingCheck(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    holds: bool


def lemma72_check(f) -> AveragingCheck:
    """E f(x)(1-f(x+y))(1-f(x+2y)) over (Z/3)^d against 3/2 a(1-a)^2.

    ``f`` maps every point of (Z/3)^d (tuples) to a value in [0, 1].
    """
    f = {tuple(k): Fraction(v) for k, v in dict(f).items()}
    if not f:
        raise DomainError("f has an empty domain")
    d = len(next(iter(f)))
    points = list(itertools.product(range(3), repeat=d))
    if set(f) != set(points):
        raise DomainError(f"f must be defined exactly on (Z/3)^{d}")
    if any(not 0 <= v <= 1 for v in f.values()):
        raise DomainError("f takes values outside [0, 1]")
    den = math.lcm(*(v.denominator for v in f.values()))
    a = {p: int(v * den) for p, v in f.items()}
    b = {p: den - x for p, x in a.items()}
    total = 0
    for x in points:
        ax = a[x]
        if not ax:
            continue
        acc = 0
        for y in points:
            x1 = tuple((i + j) % 3 for i, j in zip(x, y))
            x2 = tuple((i + 2 * j) % 3 for i, j in zip(x, y))
            acc += b[x1] * b[x2]
        total += ax * acc
    n = len(points)
    lhs = Fraction(total, n * n * den**3)
    alpha = Fraction(sum(a.values()), n * den)
    rhs = Fraction(3, 2) * alpha * (1 - alpha) ** 2
    return AveragingCheck(lhs, rhs, lhs <= rhs)


class Spread(NamedTuple):
    max_diff: int
    bound: float
    holds: bool


def searchline_spread(g: Grid, a: str) -> Spread:
    """Spread of letter counts across search lines of a cubic grid with n < 2^d.

    ``holds`` is decided exactly: max_diff >= sqrt(m) n / 3^(d/2) with
    m = min(alpha, 1 - alpha) is equivalent to max_diff^2 3^d >= m n^2.
    """
    d = g.dim
    n = g.shape[0]
    if any(m != n for m in g.shape):
        raise ShapeError(f"shape {g.shape} is not cubic")
    if n >= 2**d:
        raise ShapeError(f"side {n} must be below 2^{d}")
    counts = [line.grid.cells.count(a) for line in search_lines(g)]
    max_diff = max(counts) - min(counts)
    alpha = Fraction(g.cells.count(a), g.size)
    m = min(alpha, 1 - alpha)
    bound = math.sqrt(m) / 3 ** (d / 2) * n
    return Spread(max_diff, bound, max_diff**2 * 3**d >= m * n * n)
