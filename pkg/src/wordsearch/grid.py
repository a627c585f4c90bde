"""Toroidal letter grids and word-search appearance counting.

A grid is a map from ``Z/n1 x ... x Z/nd`` to single-character symbols,
stored densely in row-major order.  Words are plain strings.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotPeriodic,
    ParseError,
    ShapeError,
    TrivialWord,
)

MAX_CELLS = 10**8


def check_word(w: str) -> str:
    if not isinstance(w, str) or len(w) < 2 or len(set(w)) < 2:
        raise TrivialWord(f"word {w!r} needs length >= 2 and two distinct letters")
    return w


@lru_cache(maxsize=None)
def directions(d: int) -> tuple[tuple[int, ...], ...]:
    """All vectors of {-1, 0, 1}^d except zero, in lexicographic order."""
    return tuple(v for v in itertools.product((-1, 0, 1), repeat=d) if any(v))


def weight_class(v) -> int:
    return sum(1 for c in v if c)


def direction_classes(d: int) -> dict[int, list[tuple[int, ...]]]:
    """V_j for j = 1..d: directions with exactly j nonzero components."""
    classes = {j: [] for j in range(1, d + 1)}
    for v in directions(d):
        classes[weight_class(v)].append(v)
    return classes


def unsigned_directions(d: int) -> tuple[tuple[int, ...], ...]:
    """One direction from each pair {v, -v}: the one whose first nonzero entry is +1."""
    return tuple(v for v in directions(d) if next(c for c in v if c) > 0)


@dataclass(frozen=True)
class Grid:
    shape: tuple[int, ...]
    cells: tuple[str, ...]

    def __post_init__(self):
        shape = tuple(int(n) for n in self.shape)
        if not shape or any(n < 1 for n in shape):
            raise ShapeError(f"invalid shape {self.shape}")
        size = math.prod(shape)
        if size > MAX_CELLS:
            raise ShapeError(f"grid of {size} cells exceeds the {MAX_CELLS} cell cap")
        cells = tuple(self.cells)
        if len(cells) != size:
            raise ShapeError(f"{len(cells)} cells given for shape {shape}")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_word(cls, word: str) -> Grid:
        """The one-dimensional grid Grid(word) of shape Z/len(word)."""
        if not word:
            raise ShapeError("cannot build a grid from an empty word")
        return cls((len(word),), tuple(word))

    @classmethod
    def from_rows(cls, rows) -> Grid:
        rows = [r.replace(" ", "") for r in rows]
        if len({len(r) for r in rows}) != 1:
            raise ShapeError("rows of unequal length")
        return cls((len(rows), len(rows[0])), tuple("".join(rows)))

    @classmethod
    def from_function(cls, shape, fn) -> Grid:
        shape = tuple(shape)
        return cls(shape, tuple(fn(p) for p in itertools.product(*map(range, shape))))

    @classmethod
    def from_array(cls, arr) -> Grid:
        arr = np.asarray(arr)
        return cls(arr.shape, tuple(str(c) for c in arr.ravel()))

    @property
    def dim(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return len(self.cells)

    @property
    def alphabet(self) -> frozenset:
        return frozenset(self.cells)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.cells, dtype="<U1").reshape(self.shape)
        arr.flags.writeable = False
        return arr

    def points(self):
        return itertools.product(*map(range, self.shape))

    def __getitem__(self, point) -> str:
        if isinstance(point, int):
            point = (point,)
        idx = 0
        for x, n in zip(point, self.shape):
            idx = idx * n + x % n
        return self.cells[idx]

    def word(self) -> str:
        """Cells concatenated in row-major order."""
        return "".join(self.cells)

    def __str__(self):
        return dumps(self)


def _roll(arr, v, i):
    # rolled[p] == arr[p + i*v]
    return np.roll(arr, tuple(-i * c for c in v), axis=tuple(range(arr.ndim)))


def appearance_mask(w: str, g: Grid, v) -> np.ndarray:
    """Boolean array: True at p when w reads from p in direction v."""
    arr = g.array
    mask = arr == w[0]
    for i in range(1, len(w)):
        mask &= _roll(arr, v, i) == w[i]
    return mask


def count_by_direction(w: str, g: Grid) -> dict[tuple[int, ...], int]:
    check_word(w)
    return {v: int(appearance_mask(w, g, v).sum()) for v in directions(g.dim)}


def count(w: str, g: Grid) -> int:
    """Number of appearances (p, v) of w in g, wraparound included."""
    return sum(count_by_direction(w, g).values())


def appearances(w: str, g: Grid):
    check_word(w)
    for v in directions(g.dim):
        for p in zip(*np.nonzero(appearance_mask(w, g, v))):
            yield tuple(int(x) for x in p), v


def concentration(w: str, g: Grid) -> Fraction:
    return Fraction(count(w, g), g.size)


def count_by_class(w: str, g: Grid) -> dict[int, int]:
    out = Counter()
    for v, n in count_by_direction(w, g).items():
        out[weight_class(v)] += n
    return {j: out[j] for j in range(1, g.dim + 1)}


def letter_distribution(g: Grid) -> dict[str, Fraction]:
    counts = Counter(g.cells)
    return {a: Fraction(n, g.size) for a, n in sorted(counts.items())}


def total_variation(h1: dict, h2: dict) -> Fraction:
    keys = set(h1) | set(h2)
    return sum((abs(h1.get(k, 0) - h2.get(k, 0)) for k in keys), Fraction(0)) / 2


# -- search lines -----------------------------------------------------------


@dataclass(frozen=True)
class SearchLine:
    grid: Grid
    start: tuple[int, ...]
    direction: tuple[int, ...]

    @property
    def period(self) -> int:
        return self.grid.size


def search_lines(g: Grid) -> list[SearchLine]:
    """One line per (unsigned direction, orbit) pair.

    The representative starts at the orbit's least point and reads in the
    direction whose first nonzero component is +1.
    """
    lines = []
    for v in unsigned_directions(g.dim):
        seen = set()
        for p in g.points():
            if p in seen:
                continue
            orbit = []
            q = p
            while q not in seen:
                seen.add(q)
                orbit.append(q)
                q = tuple((x + c) % n for x, c, n in zip(q, v, g.shape))
            line = Grid((len(orbit),), tuple(g[q] for q in orbit))
            lines.append(SearchLine(line, p, v))
    return lines


# -- equivalence operations -------------------------------------------------


@dataclass(frozen=True)
class Enlarge:
    axis: int
    k: int


@dataclass(frozen=True)
class Contract:
    axis: int
    k: int


@dataclass(frozen=True)
class Reverse:
    axis: int


@dataclass(frozen=True)
class Translate:
    offset: tuple[int, ...]


@dataclass(frozen=True)
class Swap:
    i: int
    j: int


def _axis(g: Grid, i: int) -> int:
    if not 0 <= i < g.dim:
        raise IndexOutOfRange(f"axis {i} out of range for a {g.dim}-dimensional grid")
    return i


def transform(g: Grid, op) -> Grid:
    arr = g.array
    if isinstance(op, Enlarge):
        i = _axis(g, op.axis)
        if op.k < 1:
            raise ValueError("enlarge factor must be positive")
        return Grid.from_array(np.concatenate([arr] * op.k, axis=i))
    if isinstance(op, Contract):
        i = _axis(g, op.axis)
        n = g.shape[i]
        if op.k < 1 or n % op.k:
            raise NotPeriodic(f"extent {n} is not divisible by {op.k}")
        m = n // op.k
        if not np.array_equal(arr, np.roll(arr, m, axis=i)):
            raise NotPeriodic(f"grid is not {m}-periodic along axis {i}")
        return Grid.from_array(np.take(arr, range(m), axis=i))
    if isinstance(op, Reverse):
        i = _axis(g, op.axis)
        idx = [(-x) % g.shape[i] for x in range(g.shape[i])]
        return Grid.from_array(np.take(arr, idx, axis=i))
    if isinstance(op, Translate):
        if len(op.offset) != g.dim:
            raise DimensionMismatch("translation vector has the wrong dimension")
        return Grid.from_array(_roll(arr, op.offset, 1))
    if isinstance(op, Swap):
        i, j = _axis(g, op.i), _axis(g, op.j)
        return Grid.from_array(np.swapaxes(arr, i, j))
    raise TypeError(f"unknown grid operation {op!r}")


def stack(g: Grid) -> Grid:
    """Add a trailing axis of extent 1; every count of a nontrivial word triples."""
    return Grid(g.shape + (1,), g.cells)


def is_one_dimensional(g: Grid) -> bool:
    return g.dim == 1


# -- text format ------------------------------------------------------------


def dumps(g: Grid) -> str:
    lines = ["shape: " + " ".join(map(str, g.shape))]
    width = g.shape[-1]
    rows = [g.word()[i : i + width] for i in range(0, g.size, width)]
    if g.dim <= 2:
        lines += rows
    else:
        block = g.shape[-2]
        for b in range(0, len(rows), block):
            if b:
                lines.append("")
            lines += rows[b : b + block]
    return "\n".join(lines) + "\n"


def loads(text: str) -> Grid:
    if not text.endswith("\n"):
        raise ParseError("grid text must end with a newline")
    lines = text[:-1].split("\n")
    head = lines[0]
    if not head.startswith("shape:"):
        raise ParseError("first line must be 'shape: n1 ... nd'")
    try:
        shape = tuple(int(t) for t in head[len("shape:") :].split())
    except ValueError as exc:
        raise ParseError(f"bad shape line {head!r}") from exc
    if not shape or any(n < 1 for n in shape):
        raise ParseError(f"bad shape {shape}")
    body = lines[1:]
    width = shape[-1]
    rows = []
    for k, line in enumerate(body):
        if line == "":
            if len(shape) < 3:
                raise ParseError("blank lines only separate blocks of 3+ dimensional grids")
            block = shape[-2]
            if not rows or len(rows) % block or k + 1 == len(body) or body[k + 1] == "":
                raise ParseError(f"misplaced blank line at line {k + 2}")
            continue
        if len(line) != width or not all("A" <= c <= "Z" for c in line):
            raise ParseError(f"line {k + 2}: expected {width} uppercase letters, got {line!r}")
        rows.append(line)
    if len(shape) >= 3:
        block = shape[-2]
        blanks = sum(1 for line in body if line == "")
        if blanks != len(rows) // block - 1:
            raise ParseError("blocks must be separated by exactly one blank line")
    cells = "".join(rows)
    if len(cells) != math.prod(shape):
        raise ParseError(f"expected {math.prod(shape)} cells, found {len(cells)}")
    return Grid(shape, tuple(cells))


def load(path) -> Grid:
    with open(path) as fh:
        return loads(fh.read())


def save(g: Grid, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(g))
