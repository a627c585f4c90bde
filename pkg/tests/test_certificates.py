import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordsearch import certificates as certs
from wordsearch.certificates import (
    SignedPermutation,
    SymmetryGroup,
    WeightCertificate,
    ab_power_certificate,
    certified_bound,
    check_condition_i,
    check_condition_ii,
    symmetrize,
)
from wordsearch.errors import BudgetExceeded, CertificateInvalid, ParseError
from wordsearch.grid import Grid, concentration
from wordsearch.oracle import max_concentration

F = Fraction


@pytest.mark.parametrize(
    "name, K, M, bound",
    [
        ("fig2-ab", 1, 3, F(3)),
        ("fig3-abb", 6, 12, F(2)),
        ("fig4-abcc", 10, 12, F(6, 5)),
        ("fig6-babbb", 40, 64, F(8, 5)),
        ("fig8-abbb", 141836, 238104, F(59526, 35459)),
    ],
)
def test_bundled_headers(name, K, M, bound):
    cert = certs.bundled(name)
    assert (cert.K, cert.M, cert.bound) == (K, M, bound)
    assert check_condition_i(cert).ok


def test_fig3_both_conditions():
    cert = certs.bundled("fig3-abb")
    ci = check_condition_i(cert)
    assert ci.per_class == {1: 6, 2: 6}
    cii = check_condition_ii(cert, strategy="full")
    assert cii.max_found == 12 and cii.ok


@pytest.mark.parametrize("name", ["fig2-ab", "fig3-abb"])
def test_full_and_bnb_agree(name):
    cert = certs.bundled(name)
    full = check_condition_ii(cert, strategy="full")
    bnb = check_condition_ii(cert, strategy="bnb")
    assert full.max_found == bnb.max_found


@pytest.mark.parametrize("d", [1, 2, 3])
def test_ab_power_certificate(d):
    cert = ab_power_certificate(d)
    full = check_condition_ii(cert, strategy="full")
    assert full.max_found == check_condition_ii(cert, strategy="bnb").max_found == cert.M
    assert certified_bound(cert, strategy="full").value == 3 ** (d - 1)


def test_witness_attains_maximum():
    cert = certs.bundled("fig3-abb")
    cii = check_condition_ii(cert, strategy="bnb")
    total = F(0)
    for (p, v), wt in cert.entries.items():
        if all(cii.witness.get(q) == x for q, x in zip(cert.path(p, v), cert.word)):
            total += wt
    assert total == cii.max_found


def test_condition_ii_failure_is_reported():
    cert = certs.bundled("fig3-abb")
    bad = WeightCertificate(cert.word, 2, cert.entries, cert.K, 11, cert.fixed_letter, cert.window)
    with pytest.raises(CertificateInvalid) as info:
        certified_bound(bad)
    assert info.value.condition == "ii"


def test_condition_i_failure_is_reported():
    cert = certs.bundled("fig2-ab")
    entries = dict(cert.entries)
    key = next(k for k in entries if sum(map(abs, k[1])) == 1)
    entries[key] += 1
    with pytest.raises(CertificateInvalid) as info:
        certified_bound(WeightCertificate("AB", 2, entries, cert.K, cert.M))
    assert info.value.condition == "i"


def test_missing_direction_class_fails_condition_i():
    cert = WeightCertificate("AB", 2, {((0, 0), (1, 0)): 1}, 1, 3)
    assert not check_condition_i(cert).ok


def test_support_outside_window():
    cert = WeightCertificate("AB", 1, {((0,), (1,)): 1, ((0,), (-1,)): 1}, 1, 1, "B", {(0,)})
    # A is needed at 0 (inside) and B at +-1 (outside, fixed letter) -> fine
    assert check_condition_ii(cert).max_found == 2
    cert = WeightCertificate("AB", 1, {((1,), (-1,)): 1, ((0,), (-1,)): 1}, 1, 1, "A", {(0,)})
    with pytest.raises(CertificateInvalid) as info:
        check_condition_ii(cert)
    assert info.value.condition == "support"


def test_budget():
    with pytest.raises(BudgetExceeded):
        check_condition_ii(certs.bundled("fig6-babbb"), strategy="bnb", budget=10)
    with pytest.raises(BudgetExceeded):
        check_condition_ii(certs.bundled("fig3-abb"), strategy="full", budget=10)


@pytest.mark.parametrize("name", ["fig2-ab", "fig3-abb"])
def test_symmetrize_preserves_bound(name):
    cert = certs.bundled(name)
    sym = symmetrize(cert)
    assert sym.K == cert.K
    assert check_condition_i(sym).ok
    assert check_condition_ii(sym, strategy="full").max_found <= check_condition_ii(cert, strategy="full").max_found
    assert certified_bound(sym).value == certified_bound(cert).value


@settings(max_examples=20, deadline=None)
@given(st.fractions(min_value=F(1, 10), max_value=10).filter(lambda x: x > 0))
def test_scaling_leaves_bound_unchanged(factor):
    cert = certs.bundled("fig3-abb")
    assert certified_bound(cert.scaled(factor), strategy="full").value == certified_bound(cert).value


@pytest.mark.parametrize(
    "name, word, shapes",
    [
        ("fig2-ab", "AB", [(2, 2), (3, 3), (2, 4), (4, 4)]),
        ("fig3-abb", "ABB", [(3, 3), (3, 4), (4, 4)]),
        ("fig6-babbb", "BABBB", [(2, 5), (3, 3), (4, 4)]),
    ],
)
def test_oracle_never_beats_certificate(name, word, shapes):
    bound = certified_bound(certs.bundled(name)).value
    for shape in shapes:
        assert max_concentration(word, shape).best_value <= bound


def test_certified_bounds_match_constructions():
    from wordsearch.constructions import paper_grids

    grids = paper_grids()
    assert concentration("BABBB", grids["lemma67"]) == certified_bound(certs.bundled("fig6-babbb")).value
    assert concentration("ABB", grids["fig9-diag"]) == certified_bound(certs.bundled("fig3-abb")).value
    assert concentration("ABBB", grids["fig1-left"]) < certs.bundled("fig8-abbb").bound


def test_round_trip_all_bundled():
    for name in certs.BUNDLED:
        cert = certs.bundled(name)
        again = certs.loads(certs.dumps(cert))
        assert (again.word, again.dim, again.entries, again.K, again.M) == (
            cert.word,
            cert.dim,
            cert.entries,
            cert.K,
            cert.M,
        )
        assert (again.fixed_letter, again.window) == (cert.fixed_letter, cert.window)


def test_load_paths(tmp_path):
    assert certs.load("data/fig3-abb.cert").word == "ABB"
    assert certs.load("fig3-abb").word == "ABB"
    path = tmp_path / "x.cert"
    certs.save(certs.bundled("fig2-ab"), path)
    assert certs.load(path).entries == certs.bundled("fig2-ab").entries
    with pytest.raises(FileNotFoundError):
        certs.load(tmp_path / "missing.cert")


HEADER = "word: AB\ndim: 1\nK: 1\nM: 1\n"


@pytest.mark.parametrize(
    "text",
    [
        HEADER + "0 1 1/0\n",
        HEADER + "0 1 x\n",
        HEADER + "0 2 1\n",
        HEADER + "0 0 1\n",
        HEADER + "0 1 -1\n",
        HEADER + "0 1 1\n0 1 2\n",
        HEADER + "0 1\n",
        HEADER + "K: 2\n",
        "word: AB\nK: 1\nM: 1\n0 1 1\n",
        "word: AB\ndim: 1\nK: 1\n",
        HEADER + "fixed-letter: B\n0 1 1\n",
        HEADER + "window: 0 0\nfixed-letter: B\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        certs.loads(text)


def test_comments_and_rationals():
    cert = certs.loads("# note\nword: AB  # trailing\ndim: 1\nK: 2/2\nM: 3\n0 1 1/2\n0 -1 1/2\n")
    assert cert.K == 1 and cert.entries == {((0,), (1,)): F(1, 2), ((0,), (-1,)): F(1, 2)}


def test_signed_permutations():
    group = SymmetryGroup.full(2)
    assert len(group) == 8
    for g, h in itertools.product(group, repeat=2):
        x = (2, -5)
        assert g.compose(h)(x) == g(h(x))
    r = SignedPermutation((1, 0), (1, -1))
    assert r((1, 0)) == (0, -1)


def test_affine_stabilizer_of_boxes():
    group = SymmetryGroup.full(2)
    square = [(x, y) for x in range(3) for y in range(3)]
    assert len(group.affine_stabilizer(square)) == 8
    rect = [(x, y) for x in range(2) for y in range(3)]
    assert len(group.affine_stabilizer(rect)) == 4
    for g, t in group.affine_stabilizer(rect):
        assert {tuple(a + b for a, b in zip(g(p), t)) for p in rect} == set(rect)


def test_constructor_validation():
    with pytest.raises(ValueError):
        WeightCertificate("AB", 1, {((0,), (0,)): 1}, 1, 1)
    with pytest.raises(ValueError):
        WeightCertificate("AB", 1, {((0,), (1,)): 1}, 0, 1)
    with pytest.raises(ValueError):
        WeightCertificate("AB", 1, {((0,), (1,)): 1}, 1, 1, fixed_letter="B")
    cert = WeightCertificate("AB", 1, {((0,), (1,)): 0, ((0,), (-1,)): 1}, 1, 1)
    assert list(cert.entries) == [((0,), (-1,))]
