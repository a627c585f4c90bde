"""Linear programs whose optima are weight certificates.

Fix a window S of Z^d and a letter A of w.  Only pairs (p, v) whose word
path stays in S except where w wants A are allowed weight; then the
weighted appearance count is maximised on grids equal to A off S, so one
constraint per such grid suffices.  Variables and grids are collapsed into
orbits under the lattice symmetries (with translation) that preserve S.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .certificates import SymmetryGroup, WeightCertificate, certified_bound
from .errors import EmptySupport, WordSearchError
from .grid import check_word, direction_classes, directions, weight_class
from .search import PatternProblem
from .simplex import minimize

EXPLICIT_LIMIT = 2**16
INITIAL_SAMPLE = 64


@dataclass
class LinearProgram:
    word: str
    dim: int
    window: tuple
    fixed_letter: str
    letters: tuple
    pairs: list
    symmetries: list
    orbits: list
    orbit_class: list
    class_sizes: dict
    grid_count: int
    grid_orbit_count: int
    _paths: list = field(default_factory=list, repr=False)

    @property
    def counts(self) -> dict:
        return {
            "variables_before": len(self.pairs) + 1,
            "variables_after": len(self.orbits) + 1,
            "constraints_before": self.grid_count,
            "constraints_after": self.grid_orbit_count,
        }

    def coefficients(self, grid) -> list[int]:
        """Per-orbit count of allowed pairs that appear in ``grid`` (a tuple over the window)."""
        out = [0] * len(self.orbits)
        for k, orbit in enumerate(self.orbits):
            for idx in orbit:
                if all(grid[c] == x for c, x in self._paths[idx]):
                    out[k] += 1
        return out

    def canonical(self, grid) -> tuple:
        return min(_image(grid, perm) for perm in self._cell_perms)

    @property
    def _cell_perms(self):
        return self.__dict__.setdefault("_perm_cache", _cell_permutations(self))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _cell_permutations(lp):
    index = {c: i for i, c in enumerate(lp.window)}
    return [tuple(index[_add(g(c), t)] for c in lp.window) for g, t in lp.symmetries]


def _image(grid, perm):
    out = [None] * len(grid)
    for i, j in enumerate(perm):
        out[j] = grid[i]
    return tuple(out)


def _cycles(perm) -> int:
    seen = [False] * len(perm)
    n = 0
    for i in range(len(perm)):
        if not seen[i]:
            n += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return n


def build_lp(w: str, d: int, window, fixed_letter: str) -> LinearProgram:
    check_word(w)
    if fixed_letter not in w:
        raise ValueError(f"fixed letter {fixed_letter!r} does not occur in {w}")
    window = tuple(sorted({tuple(p) for p in window}))
    if not window or any(len(p) != d for p in window):
        raise ValueError("window must be a nonempty set of d-dimensional points")
    wset = set(window)
    index = {c: i for i, c in enumerate(window)}
    ell = len(w)
    pairs, paths = [], []
    seen = set()
    for v in directions(d):
        for i, x in enumerate(w):
            if x == fixed_letter:
                continue
            for s in window:
                p = tuple(a - i * b for a, b in zip(s, v))
                if (p, v) in seen:
                    continue
                seen.add((p, v))
                path = [tuple(a + k * b for a, b in zip(p, v)) for k in range(ell)]
                if all(q in wset or y == fixed_letter for q, y in zip(path, w)):
                    reqs = {}
                    ok = True
                    for q, y in zip(path, w):
                        if q in wset and reqs.setdefault(index[q], y) != y:
                            ok = False
                    if ok:
                        pairs.append((p, v))
                        paths.append(tuple(reqs.items()))
    if not pairs:
        raise EmptySupport(f"no allowed pairs for {w} with this window and letter {fixed_letter}")
    order = sorted(range(len(pairs)), key=lambda k: pairs[k])
    pairs = [pairs[k] for k in order]
    paths = [paths[k] for k in order]
    pos = {pr: k for k, pr in enumerate(pairs)}
    syms = SymmetryGroup.full(d).affine_stabilizer(window)
    orbit_id = [None] * len(pairs)
    orbits = []
    for k, (p, v) in enumerate(pairs):
        if orbit_id[k] is not None:
            continue
        members = sorted({pos[_add(g(p), t), g(v)] for g, t in syms})
        for m in members:
            orbit_id[m] = len(orbits)
        orbits.append(members)
    orbit_class = [weight_class(pairs[o[0]][1]) for o in orbits]
    class_sizes = {j: len(vs) for j, vs in direction_classes(d).items()}
    missing = set(class_sizes) - set(orbit_class)
    if missing:
        raise EmptySupport(f"no allowed pairs in direction classes {sorted(missing)}")
    letters = tuple(sorted(set(w)))
    lp = LinearProgram(
        w, d, window, fixed_letter, letters, pairs, syms, orbits, orbit_class, class_sizes, 0, 0, paths
    )
    q = len(letters)
    lp.grid_count = q ** len(window)
    # Burnside: orbits of letterings of S under the window symmetries.
    lp.grid_orbit_count = sum(q ** _cycles(perm) for perm in lp._cell_perms) // len(syms)
    return lp


class LPSolution(NamedTuple):
    optimum: Fraction
    certificate: WeightCertificate
    rounds: int
    constraints_used: int


def _solve_rows(lp: LinearProgram, rows):
    k = len(lp.orbits)
    c = [0] * k + [1]
    a_eq, b_eq = [], []
    for j, size in lp.class_sizes.items():
        a_eq.append([len(o) if cls == j else 0 for o, cls in zip(lp.orbits, lp.orbit_class)] + [0])
        b_eq.append(size)
    a_ub = [list(r) + [-1] for r in rows]
    res = minimize(c, a_ub, [0] * len(a_ub), a_eq, b_eq)
    if res.status != "optimal":
        raise WordSearchError(f"restricted LP is {res.status}")
    return res.x[:k], res.x[k]


def solve_restricted(lp: LinearProgram, grids) -> Fraction:
    """Optimum of the program keeping only the constraints of ``grids``."""
    rows = [lp.coefficients(tuple(g)) for g in grids]
    return _solve_rows(lp, rows)[1]


def _all_grid_orbits(lp):
    reps = {}
    for g in itertools.product(lp.letters, repeat=len(lp.window)):
        reps.setdefault(lp.canonical(g), None)
    return list(reps)


def _separate(lp, x):
    """Grid maximising the weighted count under orbit weights x."""
    domains = {i: lp.letters for i in range(len(lp.window))}
    patterns = []
    for k, orbit in enumerate(lp.orbits):
        if x[k]:
            for idx in orbit:
                patterns.append((lp._paths[idx], x[k]))
    if not patterns:
        return Fraction(0), tuple(lp.fixed_letter for _ in lp.window)
    res = PatternProblem(domains, patterns, reduce_domains=False).solve()
    g = tuple(res.witnesses[0][i] for i in range(len(lp.window)))
    return res.best, g


def solve_lp(lp: LinearProgram, sampler_seed: int = 0, max_rounds: int = 1000) -> LPSolution:
    """Row generation until no constraint of the full program is violated.

    Small windows enumerate every grid orbit and add the most violated ones
    (at most 64 * 2^round per round); large windows find the most violated
    grid by branch and bound instead.
    """
    rng = random.Random(sampler_seed)
    explicit = lp.grid_count <= EXPLICIT_LIMIT
    if explicit:
        all_reps = _all_grid_orbits(lp)
        all_rows = [lp.coefficients(g) for g in all_reps]
        active = sorted(rng.sample(range(len(all_reps)), min(INITIAL_SAMPLE, len(all_reps))))
        rows = [all_rows[i] for i in active]
        active = set(active)
    else:
        sample = {
            lp.canonical(tuple(rng.choice(lp.letters) for _ in lp.window)) for _ in range(INITIAL_SAMPLE)
        }
        rows = [lp.coefficients(g) for g in sorted(sample)]
    for rnd in range(max_rounds):
        x, m1 = _solve_rows(lp, rows)
        if explicit:
            slack = []
            for i, row in enumerate(all_rows):
                if i in active:
                    continue
                val = sum(a * b for a, b in zip(row, x))
                if val > m1:
                    slack.append((-(val - m1), i))
            if not slack:
                break
            slack.sort()
            for _, i in slack[: INITIAL_SAMPLE * 2**rnd]:
                active.add(i)
                rows.append(all_rows[i])
        else:
            val, g = _separate(lp, x)
            if val <= m1:
                break
            rows.append(lp.coefficients(g))
    else:
        raise WordSearchError("row generation did not converge")
    entries = {}
    for k, orbit in enumerate(lp.orbits):
        if x[k]:
            for idx in orbit:
                entries[lp.pairs[idx]] = x[k]
    cert = WeightCertificate(
        lp.word, lp.dim, entries, 1, m1, lp.fixed_letter, frozenset(lp.window), name=f"lp-{lp.word}"
    )
    return LPSolution(m1, cert, rnd + 1, len(rows))


def box(extents, low=None) -> list:
    """Points of a box with the given side lengths, starting at ``low`` (default 0)."""
    low = low or (0,) * len(extents)
    return [tuple(a + b for a, b in zip(low, p)) for p in itertools.product(*map(range, extents))]


def verify_solution(sol: LPSolution):
    return certified_bound(sol.certificate)
