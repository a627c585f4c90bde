"""Weight-function certificates for upper bounds on C_d(w).

A certificate is a finitely supported weight F(p, v) >= 0 on pairs of a point
of Z^d and a direction, with constants K and M.  If for each j the average
over directions with j nonzero entries of the total weight equals K, and the
weighted appearance count of w in every infinite grid is at most M, then
C_d(w) <= M / K.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import NamedTuple

from .errors import BudgetExceeded, CertificateInvalid, ParseError
from .grid import check_word, direction_classes, directions, weight_class
from .search import PatternProblem


@dataclass
class WeightCertificate:
    word: str
    dim: int
    entries: dict
    K: Fraction
    M: Fraction
    fixed_letter: str | None = None
    window: frozenset | None = None
    name: str | None = None

    def __post_init__(self):
        check_word(self.word)
        self.K = Fraction(self.K)
        self.M = Fraction(self.M)
        entries = {}
        for (p, v), wt in self.entries.items():
            p, v, wt = tuple(p), tuple(v), Fraction(wt)
            if len(p) != self.dim or len(v) != self.dim:
                raise ValueError(f"entry {(p, v)} has the wrong dimension")
            if not any(v) or any(c not in (-1, 0, 1) for c in v):
                raise ValueError(f"{v} is not a direction")
            if wt < 0:
                raise ValueError("weights must be nonnegative")
            if wt:
                entries[p, v] = wt
        self.entries = entries
        if self.K <= 0:
            raise ValueError("K must be positive")
        if self.window is not None:
            self.window = frozenset(tuple(p) for p in self.window)
        if (self.window is None) != (self.fixed_letter is None):
            raise ValueError("window and fixed letter must be given together")

    @property
    def bound(self) -> Fraction:
        return self.M / self.K

    def path(self, p, v):
        return [tuple(x + i * c for x, c in zip(p, v)) for i in range(len(self.word))]

    def relevant_cells(self) -> set:
        return {q for p, v in self.entries for q in self.path(p, v)}

    def scaled(self, factor) -> WeightCertificate:
        factor = Fraction(factor)
        return WeightCertificate(
            self.word,
            self.dim,
            {k: wt * factor for k, wt in self.entries.items()},
            self.K * factor,
            self.M * factor,
            self.fixed_letter,
            self.window,
            self.name,
        )


# -- the lattice symmetry group ------------------------------------------------


@dataclass(frozen=True)
class SignedPermutation:
    """x -> y with y[i] = signs[i] * x[perm[i]]."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __call__(self, x):
        return tuple(s * x[j] for s, j in zip(self.signs, self.perm))

    def compose(self, other):
        """self after other."""
        perm = tuple(other.perm[j] for j in self.perm)
        signs = tuple(s * other.signs[j] for s, j in zip(self.signs, self.perm))
        return SignedPermutation(perm, signs)


@dataclass(frozen=True)
class SymmetryGroup:
    dim: int
    elements: tuple = field(default=())

    @classmethod
    def full(cls, d: int) -> SymmetryGroup:
        elems = tuple(
            SignedPermutation(perm, signs)
            for perm in itertools.permutations(range(d))
            for signs in itertools.product((1, -1), repeat=d)
        )
        return cls(d, elems)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def affine_stabilizer(self, window) -> list:
        """Maps x -> g(x) + t with g in the group that carry ``window`` onto itself."""
        window = frozenset(window)
        low = min(window)
        out = []
        for g in self.elements:
            image = [g(x) for x in window]
            t = tuple(a - b for a, b in zip(low, min(image)))
            if {tuple(a + b for a, b in zip(x, t)) for x in image} == window:
                out.append((g, t))
        return out


def symmetrize(cert: WeightCertificate) -> WeightCertificate:
    """Average F over all lattice symmetries fixing the origin.

    K is unchanged because each symmetry permutes every direction class, and
    the condition-(ii) maximum cannot grow since the average of maxima bounds
    the maximum of the average.
    """
    group = SymmetryGroup.full(cert.dim)
    acc = {}
    for g in group:
        for (p, v), wt in cert.entries.items():
            key = (g(p), g(v))
            acc[key] = acc.get(key, 0) + wt
    n = len(group)
    window = None
    if cert.window is not None:
        window = frozenset(g(x) for g in group for x in cert.window)
    return WeightCertificate(
        cert.word,
        cert.dim,
        {k: Fraction(wt) / n for k, wt in acc.items()},
        cert.K,
        cert.M,
        cert.fixed_letter,
        window,
        cert.name,
    )


# -- checks ----------------------------------------------------------------------


class ConditionI(NamedTuple):
    per_class: dict
    ok: bool


def check_condition_i(cert: WeightCertificate) -> ConditionI:
    totals = {j: Fraction(0) for j in range(1, cert.dim + 1)}
    for (_, v), wt in cert.entries.items():
        totals[weight_class(v)] += wt
    sizes = {j: len(vs) for j, vs in direction_classes(cert.dim).items()}
    per_class = {j: totals[j] / sizes[j] for j in totals}
    return ConditionI(per_class, all(k == cert.K for k in per_class.values()))


class ConditionII(NamedTuple):
    max_found: Fraction
    witness: dict
    ok: bool
    nodes: int = 0


def _local_problem(cert: WeightCertificate):
    """Domains and weighted patterns of the condition-(ii) maximisation."""
    w = cert.word
    letters = tuple(sorted(set(w)))
    cells = cert.relevant_cells()
    if cert.fixed_letter is None:
        varying = cells
    else:
        varying = cells & cert.window
        for (p, v) in cert.entries:
            for q, x in zip(cert.path(p, v), w):
                if q not in cert.window and x != cert.fixed_letter:
                    raise CertificateInvalid(
                        f"arrow {p} {v} needs {x} at {q}, outside the window",
                        condition="support",
                        witness=(p, v),
                    )
    domains = {q: letters for q in sorted(varying)}
    patterns = []
    for (p, v), wt in cert.entries.items():
        reqs = [(q, x) for q, x in zip(cert.path(p, v), w) if q in varying]
        patterns.append((reqs, wt))
    return domains, patterns


def _fill_witness(cert, assignment):
    out = dict(assignment)
    if cert.fixed_letter is not None:
        for q in cert.relevant_cells():
            out.setdefault(q, cert.fixed_letter)
    return dict(sorted(out.items()))


def _full_enumeration(domains, patterns, budget):
    cells = list(domains)
    index = {c: i for i, c in enumerate(cells)}
    total = math.prod(len(domains[c]) for c in cells)
    if budget is not None and total > budget:
        raise BudgetExceeded(f"{total} assignments exceed the budget {budget}", nodes=0)
    compiled = [([(index[c], x) for c, x in reqs], Fraction(wt)) for reqs, wt in patterns]
    best, witness = None, None
    for combo in itertools.product(*(domains[c] for c in cells)):
        value = sum((wt for reqs, wt in compiled if all(combo[i] == x for i, x in reqs)), Fraction(0))
        if best is None or value > best:
            best, witness = value, dict(zip(cells, combo))
    return best, witness, total


def check_condition_ii(cert: WeightCertificate, strategy="bnb", budget=None, workers=1):
    """Maximum weighted appearance sum over local assignments, compared with M.

    ``strategy`` is ``"full"`` (plain enumeration) or ``"bnb"``.  With a fixed
    letter, cells outside the window hold that letter and only window cells
    vary; otherwise every cell touched by an arrow varies.
    """
    domains, patterns = _local_problem(cert)
    if strategy == "full":
        best, witness, nodes = _full_enumeration(domains, patterns, budget)
    elif strategy == "bnb":
        prob = PatternProblem(domains, patterns)
        res = prob.solve(budget=budget, workers=workers)
        best, witness, nodes = res.best, res.witnesses[0], res.nodes
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return ConditionII(best, _fill_witness(cert, witness), best <= cert.M, nodes)


class BoundReport(NamedTuple):
    value: Fraction
    provenance: str
    kind: str


def certified_bound(cert: WeightCertificate, strategy="bnb", budget=None, workers=1) -> BoundReport:
    ci = check_condition_i(cert)
    if not ci.ok:
        raise CertificateInvalid(
            f"condition (i) fails: class averages {ci.per_class} != K={cert.K}",
            condition="i",
            witness=ci.per_class,
        )
    cii = check_condition_ii(cert, strategy=strategy, budget=budget, workers=workers)
    if not cii.ok:
        raise CertificateInvalid(
            f"condition (ii) fails: weighted sum {cii.max_found} > M={cert.M}",
            condition="ii",
            witness=cii.witness,
        )
    return BoundReport(cert.bound, cert.name or f"certificate for {cert.word}", "certificate")


def ab_power_certificate(d: int) -> WeightCertificate:
    """Hypercube certificate for AB: weight 2^|v| on arrows inside {0,1}^d."""
    if d < 1:
        raise ValueError("dimension must be positive")
    cube = list(itertools.product((0, 1), repeat=d))
    cube_set = set(cube)
    entries = {}
    for p in cube:
        for v in directions(d):
            if tuple(a + b for a, b in zip(p, v)) in cube_set:
                entries[p, v] = 2 ** weight_class(v)
    return WeightCertificate(
        "AB", d, entries, 2**d, 3 ** (d - 1) * 2**d, name=f"ab-power-{d}"
    )


# -- text format -------------------------------------------------------------------


def _rational(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {tok!r}") from exc


def _ints(tokens, where):
    try:
        return tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise ParseError(f"{where}: expected integers, got {tokens}") from exc


def loads(text: str, name=None) -> WeightCertificate:
    header = {}
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep and key.strip() in ("word", "dim", "K", "M", "fixed-letter", "window"):
            key = key.strip()
            if key in header:
                raise ParseError(f"line {lineno}: duplicate {key}")
            header[key] = rest.strip()
            continue
        if "dim" not in header:
            raise ParseError(f"line {lineno}: entry before the dim header")
        d = _ints([header["dim"]], f"line {lineno}")[0]
        toks = line.split()
        if len(toks) != 2 * d + 1:
            raise ParseError(f"line {lineno}: expected {2 * d + 1} fields, got {len(toks)}")
        p = _ints(toks[:d], f"line {lineno}")
        v = _ints(toks[d : 2 * d], f"line {lineno}")
        if not any(v) or any(c not in (-1, 0, 1) for c in v):
            raise ParseError(f"line {lineno}: {v} is not a direction")
        wt = _rational(toks[-1])
        if wt < 0:
            raise ParseError(f"line {lineno}: negative weight")
        if (p, v) in entries:
            raise ParseError(f"line {lineno}: duplicate entry {p} {v}")
        entries[p, v] = wt
    for key in ("word", "dim", "K", "M"):
        if key not in header:
            raise ParseError(f"missing {key} header")
    d = _ints([header["dim"]], "dim")[0]
    window = None
    if "window" in header:
        window = set()
        for chunk in header["window"].split(";"):
            pt = _ints(chunk.split(), "window")
            if len(pt) != d:
                raise ParseError(f"window point {pt} has the wrong dimension")
            window.add(pt)
    try:
        return WeightCertificate(
            header["word"],
            d,
            entries,
            _rational(header["K"]),
            _rational(header["M"]),
            header.get("fixed-letter"),
            window,
            name,
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def dumps(cert: WeightCertificate) -> str:
    lines = [f"word: {cert.word}", f"dim: {cert.dim}", f"K: {cert.K}", f"M: {cert.M}"]
    if cert.fixed_letter is not None:
        lines.append(f"fixed-letter: {cert.fixed_letter}")
        lines.append("window: " + "; ".join(" ".join(map(str, p)) for p in sorted(cert.window)))
    for (p, v), wt in sorted(cert.entries.items()):
        lines.append(" ".join(map(str, p + v)) + f" {wt}")
    return "\n".join(lines) + "\n"


BUNDLED = ("fig2-ab", "fig3-abb", "fig4-abcc", "fig6-babbb", "fig8-abbb")


def load(path) -> WeightCertificate:
    """Read a certificate file, falling back to the bundled data by basename."""
    p = Path(path)
    if p.exists():
        return loads(p.read_text(), name=p.stem)
    base = p.name if p.suffix else p.name + ".cert"
    res = resources.files("wordsearch") / "data" / base
    if not res.is_file():
        raise FileNotFoundError(path)
    return loads(res.read_text(), name=Path(base).stem)


def bundled(name: str) -> WeightCertificate:
    return load(name)


def save(cert: WeightCertificate, path) -> None:
    Path(path).write_text(dumps(cert))
