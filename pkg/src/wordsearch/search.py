"""Exact maximisation of a weighted sum of letter patterns.

A pattern is a set of (cell, letter) requirements with a nonnegative weight;
it is satisfied when every listed cell holds its letter.  The search assigns
cells in a fixed order and prunes with an admissible bound: each live pattern
is charged to its last unassigned cell, and a cell can only realise the
patterns of the single letter it ends up holding.
"""

from __future__ import annotations

import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceeded


@dataclass
class SearchResult:
    best: Fraction
    witnesses: list[dict]
    nodes: int
    free_cells: int = 0
    cells: list = field(default_factory=list)


class PatternProblem:
    """Maximise sum of weights of satisfied patterns over cell assignments.

    ``domains`` maps every cell to the tuple of letters it may take, in the
    order they are tried.  ``order`` optionally fixes the cell order; by
    default cells are sorted by the total weight of patterns through them.
    """

    def __init__(self, domains, patterns, order=None, reduce_domains=True):
        self.domains = {c: tuple(ls) for c, ls in domains.items()}
        clean = []
        for reqs, weight in patterns:
            if weight < 0:
                raise ValueError("pattern weights must be nonnegative")
            if weight == 0:
                continue
            merged = {}
            ok = True
            for cell, letter in reqs:
                if cell not in self.domains:
                    raise KeyError(f"pattern uses unknown cell {cell!r}")
                if merged.setdefault(cell, letter) != letter or letter not in self.domains[cell]:
                    ok = False
                    break
            if ok:
                clean.append((merged, Fraction(weight)))
        if reduce_domains:
            # A cell that every pattern wants to be the same letter may as well hold it.
            wanted = {c: set() for c in self.domains}
            for reqs, _ in clean:
                for c, letter in reqs.items():
                    wanted[c].add(letter)
            for c, ls in wanted.items():
                if len(ls) == 1:
                    self.domains[c] = tuple(ls)
        self.patterns = clean
        denom = math.lcm(*(w.denominator for _, w in clean)) if clean else 1
        self.scale = denom
        self.int_weights = [int(w * denom) for _, w in clean]
        through = {c: 0 for c in self.domains}
        for (reqs, _), w in zip(clean, self.int_weights):
            for c in reqs:
                through[c] += w
        if order is None:
            order = sorted(self.domains, key=lambda c: (-through[c], c))
        else:
            order = list(order)
            missing = set(self.domains) - set(order)
            order += sorted(missing)
        self.order = order

    def free_cells(self):
        return [c for c in self.order if len(self.domains[c]) > 1]

    def value(self, assignment) -> Fraction:
        return sum(
            (w for reqs, w in self.patterns if all(assignment[c] == x for c, x in reqs.items())),
            Fraction(0),
        )

    def solve(self, budget=None, max_witnesses=1, prefix=None, lower_bound=None, workers=1):
        if workers > 1:
            return _solve_parallel(self, budget, max_witnesses, workers)
        return _Solver(self, prefix or {}, lower_bound).run(budget, max_witnesses)


class _Solver:
    def __init__(self, prob: PatternProblem, prefix, lower_bound):
        self.prob = prob
        fixed = {c: ls[0] for c, ls in prob.domains.items() if len(ls) == 1}
        fixed.update(prefix)
        self.fixed = fixed
        self.vars = [c for c in prob.order if c not in fixed]
        index = {c: i for i, c in enumerate(self.vars)}
        self.letters = [prob.domains[c] for c in self.vars]
        letter_code = [{x: k for k, x in enumerate(ls)} for ls in self.letters]
        n = len(self.vars)
        self.through = [[] for _ in range(n)]
        self.bucket = [[0] * len(ls) for ls in self.letters]
        self.weight = []
        self.last = []
        self.last_code = []
        base = 0
        for (reqs, _), w in zip(prob.patterns, prob.int_weights):
            free = [(index[c], letter_code[index[c]][x]) for c, x in reqs.items() if c in index]
            if any(fixed[c] != x for c, x in reqs.items() if c in fixed):
                continue
            if not free:
                base += w
                continue
            pid = len(self.weight)
            self.weight.append(w)
            li, lc = max(free)
            self.last.append(li)
            self.last_code.append(lc)
            self.bucket[li][lc] += w
            for i, code in free:
                self.through[i].append((pid, code))
        self.alive = [True] * len(self.weight)
        self.bmax = [max(b) for b in self.bucket]
        self.base = base
        self.lower = None if lower_bound is None else lower_bound * prob.scale

    def run(self, budget, max_witnesses) -> SearchResult:
        n = len(self.vars)
        self.best = -1 if self.lower is None else self.lower - 1
        self.cap = max_witnesses
        self.witnesses = []
        self.nodes = 0
        self.budget = budget
        self.current = [0] * n
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 10 * n + 1000))
        try:
            self._dfs(0, self.base, sum(self.bmax))
        finally:
            sys.setrecursionlimit(limit)
        best = Fraction(max(self.best, 0), self.prob.scale)
        return SearchResult(best, self.witnesses, self.nodes, n, self.vars)

    def _record(self, value):
        assignment = dict(self.fixed)
        for c, ls, k in zip(self.vars, self.letters, self.current):
            assignment[c] = ls[k]
        if value > self.best:
            self.best = value
            self.witnesses = [assignment]
        elif len(self.witnesses) < self.cap:
            self.witnesses.append(assignment)

    def _dfs(self, k, satisfied, rest):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(
                f"node budget {self.budget} exhausted",
                best=Fraction(max(self.best, 0), self.prob.scale),
                witness=self.witnesses[0] if self.witnesses else None,
                nodes=self.nodes,
            )
        if k == len(self.vars):
            if satisfied > self.best or (satisfied == self.best and len(self.witnesses) < self.cap):
                self._record(satisfied)
            return
        alive, bucket, bmax, weight = self.alive, self.bucket, self.bmax, self.weight
        last, last_code = self.last, self.last_code
        for x in range(len(self.letters[k])):
            killed = []
            r = rest
            for pid, code in self.through[k]:
                if code != x and alive[pid]:
                    alive[pid] = False
                    killed.append(pid)
                    li = last[pid]
                    b = bucket[li]
                    b[last_code[pid]] -= weight[pid]
                    if li != k:
                        m = max(b)
                        r += m - bmax[li]
                        bmax[li] = m
            m = max(bucket[k])
            r -= bmax[k]
            bmax[k] = m
            gain = bucket[k][x]
            bound = satisfied + gain + r
            if bound > self.best or (bound == self.best and len(self.witnesses) < self.cap):
                self.current[k] = x
                self._dfs(k + 1, satisfied + gain, r)
            for pid in killed:
                alive[pid] = True
                bucket[last[pid]][last_code[pid]] += weight[pid]
            for pid in killed:
                li = last[pid]
                bmax[li] = max(bucket[li])
            bmax[k] = max(bucket[k])


def _run_prefix(args):
    prob, prefix, budget, cap = args
    return _Solver(prob, prefix, None).run(budget, cap)


def _solve_parallel(prob, budget, max_witnesses, workers):
    import itertools

    free = prob.free_cells()
    depth = 0
    span = 1
    while depth < len(free) and span < 4 * workers:
        span *= len(prob.domains[free[depth]])
        depth += 1
    heads = free[:depth]
    prefixes = [
        dict(zip(heads, combo)) for combo in itertools.product(*(prob.domains[c] for c in heads))
    ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_run_prefix, [(prob, p, budget, max_witnesses) for p in prefixes]))
    best = max(r.best for r in results)
    witnesses = [w for r in results if r.best == best for w in r.witnesses][:max_witnesses]
    nodes = sum(r.nodes for r in results)
    return SearchResult(best, witnesses, nodes, len(free), free)
