from fractions import Fraction

import pytest

from wordsearch import certificates as certs
from wordsearch.errors import EmptySupport
from wordsearch.lp import box, build_lp, solve_lp, solve_restricted, verify_solution
from wordsearch.simplex import minimize

F = Fraction


def test_simplex_small_programs():
    # max x + y with x + 2y <= 4, 3x + y <= 6  ->  x = 8/5, y = 6/5
    res = minimize([-1, -1], [[1, 2], [3, 1]], [4, 6])
    assert res.status == "optimal"
    assert res.x == [F(8, 5), F(6, 5)] and res.value == F(-14, 5)
    res = minimize([1, 1], A_eq=[[1, 1], [2, 2]], b_eq=[1, 2])
    assert res.status == "optimal" and res.value == 1
    assert minimize([1], A_eq=[[1]], b_eq=[-1]).status == "infeasible"
    assert minimize([-1, 0], [[-1, 1]], [1]).status == "unbounded"
    res = minimize([1, 0], [[-1, 0]], [-3])
    assert res.value == 3


def test_simplex_degenerate_cycling_example():
    # Beale's example cycles under the textbook rule; Bland's rule terminates.
    c = [F(-3, 4), 150, F(-1, 50), 6]
    A = [[F(1, 4), -60, F(-1, 25), 9], [F(1, 2), -90, F(-1, 50), 3], [0, 0, 1, 0]]
    res = minimize(c, A, [0, 0, 1])
    assert res.status == "optimal" and res.value == F(-1, 20)


def test_abb_counts_and_optimum():
    lp = build_lp("ABB", 2, box((3, 3)), "B")
    assert lp.counts == {
        "variables_before": 73,
        "variables_after": 13,
        "constraints_before": 512,
        "constraints_after": 102,
    }
    sol = solve_lp(lp, sampler_seed=0)
    assert sol.optimum == 2
    assert sol.certificate.K == 1 and sol.certificate.M == 2
    assert verify_solution(sol).value == 2


@pytest.mark.parametrize(
    "word, dim, extents, letter, want",
    [
        ("AB", 2, (2, 2), "B", 3),
        ("AB", 1, (2,), "B", 1),
        ("ABB", 1, (3,), "B", F(2, 3)),
    ],
)
def test_lp_optima(word, dim, extents, letter, want):
    sol = solve_lp(build_lp(word, dim, box(extents), letter))
    assert sol.optimum == want
    assert certs.certified_bound(sol.certificate, strategy="full").value == want


@pytest.mark.slow
def test_abcc_window():
    sol = solve_lp(build_lp("ABCC", 2, box((3, 3)), "C"))
    assert sol.optimum == 2
    assert verify_solution(sol).value == 2


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_seed_does_not_change_optimum(seed):
    assert solve_lp(build_lp("ABB", 2, box((3, 3)), "B"), sampler_seed=seed).optimum == 2


def test_solution_is_a_fixpoint_of_the_full_program():
    lp = build_lp("AB", 2, box((2, 2)), "B")
    sol = solve_lp(lp)
    import itertools

    weights = {}
    for k, orbit in enumerate(lp.orbits):
        weights[k] = sol.certificate.entries.get(lp.pairs[orbit[0]], 0)
    for g in itertools.product(lp.letters, repeat=len(lp.window)):
        row = lp.coefficients(g)
        assert sum(a * weights[k] for k, a in enumerate(row)) <= sol.optimum


def test_single_all_fixed_constraint_gives_zero():
    lp = build_lp("ABB", 2, box((3, 3)), "B")
    assert solve_restricted(lp, [("B",) * 9]) == 0


def test_empty_support():
    with pytest.raises(EmptySupport):
        build_lp("ABB", 2, box((1, 1)), "A")
    with pytest.raises(ValueError):
        build_lp("AB", 2, box((2, 2)), "C")


def test_box():
    assert box((2, 1)) == [(0, 0), (1, 0)]
    assert box((2,), low=(-1,)) == [(-1,), (0,)]
