"""Command line front end.

Every command prints ``key: value`` lines, or one JSON object with
``--format json``.  Rationals are printed as ``a/b``.  Exit codes: 0 ok,
2 trivial word, 3 parse or input error, 4 invalid certificate, 5 budget
exhausted, 6 other domain errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import certificates as certs
from . import constructions, grid, lp, oracle, reductions, words
from .errors import BudgetExceeded, CertificateInvalid, ParseError, WordSearchError


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, grid.Grid):
        return grid.dumps(x)
    if isinstance(x, dict):
        return {str(k): _fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    if isinstance(x, frozenset):
        return sorted(_fmt(v) for v in x)
    return x


def _emit(args, payload: dict, elapsed=None):
    payload = {k: _fmt(v) for k, v in payload.items()}
    if args.format == "json":
        print(json.dumps(payload, sort_keys=False))
        return
    for k, v in payload.items():
        if isinstance(v, str) and "\n" in v:
            print(f"{k}:")
            print(v, end="" if v.endswith("\n") else "\n")
        elif isinstance(v, dict):
            print(f"{k}: " + ", ".join(f"{a}={b}" for a, b in v.items()))
        elif isinstance(v, list):
            print(f"{k}: " + " ".join(map(str, v)))
        else:
            print(f"{k}: {v}")
    if elapsed is not None:
        print(f"seconds: {elapsed:.3f}")


def _data_file(path: str) -> str:
    """Read ``path``, or a bundled data file with the same basename."""
    p = Path(path)
    if p.exists():
        return p.read_text()
    res = resources.files("wordsearch") / "data" / p.name
    if res.is_file():
        return res.read_text()
    raise ParseError(f"no such file: {path}")


def _grid(path: str) -> grid.Grid:
    return grid.loads(_data_file(path))


def _budget(text):
    if text is None:
        return None
    try:
        return int(float(text))
    except ValueError as exc:
        raise ParseError(f"bad budget {text!r}") from exc


def _ints(text: str, sep=","):
    try:
        return tuple(int(t) for t in text.replace("x", sep).split(sep) if t.strip())
    except ValueError as exc:
        raise ParseError(f"bad integer list {text!r}") from exc


# -- commands ------------------------------------------------------------------


def cmd_c1(args):
    w = args.word
    p = words.profile(w)
    cls = words.classify_extremal(w)
    out = {
        "word": w,
        "ell": p.ell,
        "c_left": p.c_left,
        "c_right": p.c_right,
        "c_repeat": p.c_repeat,
        "palindrome": p.is_palindrome,
        "C1": words.c1(w),
        "class": cls.kind,
        "rep_construction": words.construct_rep(w).word(),
        "pal_construction": None if p.is_palindrome else words.construct_pal(w).word(),
    }
    if cls.kind == "Mixed":
        out.update(v=cls.v, v_prime=cls.v_prime, x=cls.x, y=cls.y, z=cls.z)
    return out


def cmd_count(args):
    g = _grid(args.grid)
    by_class = grid.count_by_class(args.word, g)
    n = sum(by_class.values())
    return {
        "word": args.word,
        "count": n,
        "size": g.size,
        "concentration": Fraction(n, g.size),
        "by_class": by_class,
    }


def cmd_cert(args):
    cert = certs.load(args.file)
    ci = certs.check_condition_i(cert)
    out = {"certificate": cert.name, "word": cert.word, "dim": cert.dim, "K": cert.K, "M": cert.M}
    out["class_averages"] = ci.per_class
    if not ci.ok:
        raise CertificateInvalid(f"condition (i) fails: {ci.per_class} != {cert.K}", condition="i")
    cii = certs.check_condition_ii(cert, strategy=args.strategy, budget=_budget(args.budget), workers=args.threads)
    out["max_weighted_sum"] = cii.max_found
    if args.action == "verify":
        out["witness"] = {" ".join(map(str, k)): v for k, v in cii.witness.items()}
        out["nodes"] = cii.nodes
    if not cii.ok:
        raise CertificateInvalid(f"condition (ii) fails: {cii.max_found} > {cert.M}", condition="ii")
    out["bound"] = cert.bound
    return out


def cmd_lp(args):
    extents = _ints(args.window)
    if len(extents) != args.dim:
        raise ParseError(f"window {args.window} does not have {args.dim} extents")
    program = lp.build_lp(args.word, args.dim, lp.box(extents), args.fixed_letter)
    sol = lp.solve_lp(program, args.seed)
    report = certs.certified_bound(sol.certificate)
    out = {"word": args.word, "dim": args.dim, **program.counts}
    out.update(optimum=sol.optimum, rounds=sol.rounds, constraints_used=sol.constraints_used)
    out["certificate_bound"] = report.value
    if args.emit:
        certs.save(sol.certificate, args.emit)
        out["emitted"] = args.emit
    return out


def cmd_queens(args):
    n, d = args.n, args.dim
    if args.search is not None:
        q = constructions.search_queens(n, d, args.search, budget=_budget(args.budget) or 10**7)
        if q is None:
            return {"n": n, "dim": d, "target": args.search, "found": False}
    elif d == 2 and args.method == "polya":
        q = constructions.polya_queens(n)
    else:
        q = constructions.power_queens(n, d)
    g = constructions.queens_to_grid(q, n)
    w = "A" + "B" * (n - 1)
    out = {
        "n": n,
        "dim": d,
        "queens": len(q),
        "nonattacking": constructions.is_nonattacking(q),
        "positions": sorted(q.positions),
        "word": w,
        "concentration": grid.concentration(w, g),
    }
    if args.emit_grid == "-":
        out["grid"] = g
    elif args.emit_grid:
        grid.save(g, args.emit_grid)
        out["emitted"] = args.emit_grid
    return out


def cmd_oracle(args):
    shape = _ints(args.shape)
    try:
        res = oracle.max_concentration(
            args.word,
            shape,
            budget=_budget(args.budget),
            witness_cap=args.witnesses,
            symmetry=args.symmetry,
            workers=args.threads,
        )
    except BudgetExceeded as exc:
        exc.args = (f"{exc.args[0]}; best lower bound so far {exc.best}",)
        raise
    return {
        "word": args.word,
        "shape": list(shape),
        "best": res.best_value,
        "nodes": res.nodes_explored,
        "witnesses": [g.word() for g in res.witnesses],
    }


def cmd_reduce(args):
    if args.builtin:
        rows = {}
        for rc in reductions.abb_reductions():
            reductions.verify_reduction(rc, args.check_upto)
            rows[f"{rc.w}->{rc.w_prime}"] = "pass" if rc.passed else "FAIL"
        return {"checked_upto": args.check_upto, **rows}
    if not (args.word and args.target and args.gamma0):
        raise ParseError("reduce needs --word, --target and --gamma0 (or --builtin)")
    g0 = _grid(args.gamma0)
    pi = reductions.LetterMap.parse(args.map or "", sorted(set(args.word) | set(g0.cells)))
    rc = reductions.ReductionCheck(args.word, args.target, pi, g0)
    reductions.verify_reduction(rc, args.check_upto, budget=_budget(args.budget))
    return {
        "word": rc.w,
        "target": rc.w_prime,
        "map": str(rc.pi),
        "ratio": rc.ratio_r,
        "a_extremal": rc.cond_a,
        "b_projection_extremal": rc.cond_b,
        "c_bounded": rc.cond_c,
        "c_checked_upto": rc.checked_upto,
        "counterexample": rc.counterexample.word() if rc.counterexample else None,
        "all_pass": rc.passed,
    }


def cmd_fourier(args):
    if args.kind == "lemma72":
        d = args.dim
        pts = list(itertools.product(range(3), repeat=d))
        if args.values:
            vals = [Fraction(v) for v in args.values.split(",")]
            if len(vals) != len(pts):
                raise ParseError(f"expected {len(pts)} values, got {len(vals)}")
        else:
            rng = random.Random(args.seed)
            vals = [Fraction(rng.randint(0, 4), 4) for _ in pts]
        res = oracle.lemma72_check(dict(zip(pts, vals)))
        return {"dim": d, "lhs": res.lhs, "rhs": res.rhs, "holds": res.holds}
    if not args.grid:
        raise ParseError("spread needs a grid file")
    g = _grid(args.grid)
    res = oracle.searchline_spread(g, args.letter)
    return {"letter": args.letter, "max_diff": res.max_diff, "bound": res.bound, "holds": res.holds}


def cmd_grids(args):
    gs = constructions.paper_grids()
    if args.name:
        if args.name not in gs:
            raise ParseError(f"unknown grid {args.name!r}; choose from {sorted(gs)}")
        return {"name": args.name, "grid": gs[args.name]}
    return {"grids": sorted(gs)}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for every randomised step")
    common.add_argument("--threads", type=int, default=1, help="worker processes for searches")

    parser = argparse.ArgumentParser(prog="wordsearch", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("c1", parents=[common], help="one-dimensional closed form and constructions")
    p.add_argument("word")
    p.set_defaults(func=cmd_c1)

    p = sub.add_parser("count", parents=[common], help="count appearances of a word in a grid file")
    p.add_argument("grid")
    p.add_argument("word")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("cert", parents=[common], help="check a weight certificate")
    p.add_argument("action", choices=("verify", "bound"))
    p.add_argument("file")
    p.add_argument("--strategy", choices=("full", "bnb"), default="bnb")
    p.add_argument("--budget")
    p.set_defaults(func=cmd_cert)

    p = sub.add_parser("lp", parents=[common], help="solve the certificate linear program")
    p.add_argument("word")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--window", required=True, help="box extents, e.g. 3x3")
    p.add_argument("--fixed-letter", required=True)
    p.add_argument("--emit", help="write the optimal certificate here")
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("queens", parents=[common], help="modular queens constructions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--method", choices=("polya", "power"), default="polya")
    p.add_argument("--search", type=int, metavar="TARGET", help="backtracking search for TARGET queens")
    p.add_argument("--budget")
    p.add_argument("--emit-grid", nargs="?", const="-", help="write the A B^(n-1) grid (stdout if no path)")
    p.set_defaults(func=cmd_queens)

    p = sub.add_parser("oracle", parents=[common], help="exact maximum over grids of one shape")
    p.add_argument("word")
    p.add_argument("--shape", required=True, help="extents, e.g. 5,5")
    p.add_argument("--budget")
    p.add_argument("--witnesses", type=int, default=1)
    p.add_argument("--symmetry", action="store_true", help="fix the first cell to the first letter")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reduce", parents=[common], help="bounded check of a projection reduction")
    p.add_argument("--word")
    p.add_argument("--target")
    p.add_argument("--map", help="letter map X:Y,...; identity entries may be omitted")
    p.add_argument("--gamma0", help="one-dimensional witness grid file")
    p.add_argument("--check-upto", type=int, default=8)
    p.add_argument("--budget")
    p.add_argument("--builtin", action="store_true", help="run the four reductions onto ABB")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("fourier", parents=[common], help="numeric checks of the Fourier inequalities")
    p.add_argument("kind", choices=("lemma72", "spread"))
    p.add_argument("grid", nargs="?")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--values", help="comma-separated values of f in row-major order")
    p.add_argument("--letter", default="A")
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("grids", parents=[common], help="list or print the hand-made grids")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_grids)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        payload = args.func(args)
    except WordSearchError as exc:
        _report_error(args, exc)
        return exc.exit_code
    except FileNotFoundError as exc:
        _report_error(args, ParseError(f"no such file: {exc}"))
        return ParseError.exit_code
    elapsed = time.perf_counter() - start
    _emit(args, {"status": "ok", **payload}, None if args.format == "json" else elapsed)
    return 0


def _report_error(args, exc):
    payload = {"status": "error", "kind": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, CertificateInvalid):
        payload["condition"] = exc.condition
    if isinstance(exc, BudgetExceeded):
        payload["best_lower_bound"] = exc.best
    if args.format == "json":
        print(json.dumps(_fmt(payload)))
    else:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
