from fractions import Fraction

import pytest

from geo4 import lefschetz as L
from geo4 import mcg
from geo4.errors import (CommutationFails, GenusMismatch, InvariantMismatch, MissingPi1Words, NonPositiveInput,
                         ParamOutOfRange, SignatureUnavailable)
from geo4.grouppres import abelianization
from geo4.invariants import Z2Kind, z2_table_chars


@pytest.mark.parametrize("name,params,es", [
    ("En", {"n": 1}, (12, -8)),
    ("En", {"n": 2}, (24, -16)),
    ("XgLF", {"g": 2}, (16, -12)),
    ("XgLF", {"g": 3}, (20, -16)),
    ("Wg", {"g": 2}, (16, -12)),
    ("Vg", {"g": 2}, (36, -24)),
    ("Vg2k", {"g": 2, "k": 1}, (34, -22)),
    ("Vg2k", {"g": 2, "k": 3}, (30, -18)),
])
def test_family_chars(name, params, es):
    c = L.total_space_chars(L.build_family(name, **params))
    assert c.es == es
    assert c.b1 == 0


def test_endo_signature_formula():
    pf = L.build_family("XgLF", g=3)
    br = L.signature_breakdown(pf)
    assert br.total == len(pf.word) and br.n0 == 28
    assert L.endo_signature(3, br) == Fraction(-4 * 28, 7)


def test_separating_counts():
    pf = L.build_family("Vg2k", g=2, k=2)
    br = L.signature_breakdown(pf)
    assert br.nh == (4,)  # 2k separating z twists, half of them reflected
    assert br.to_json()["nh"] == {"1": 4}


def test_signature_needs_hyperelliptic():
    pf = L.build_family("Vg", g=3)
    with pytest.raises(SignatureUnavailable):
        L.hyperelliptic_signature(pf)


def test_lantern_family_shifts():
    base = L.total_space_chars(L.build_family("Vg", g=2))
    for count in (1, 2, 3):
        w = L.lantern_family(2, count)
        pf = L.PositiveFactorization(mcg.standard_surface(2), w, 0, True, True)
        c = L.total_space_chars(pf)
        assert c.es == (base.e - count, base.sigma + count)


def test_endo_path_matches_y_table():
    for k in range(4):
        dx = L.total_space_chars(L.build_family("Vg2k", g=2, k=k))
        y = z2_table_chars(dx, 2, Z2Kind.Quotient)
        assert (y.e, y.sigma, y.b2plus, y.b2minus) == (18 - k, -12 + k, 2, 14 - k)
    with pytest.raises(ParamOutOfRange):
        L.build_family("Vg2k", g=2, k=4)


def test_h1_trivial_and_pi1_modes():
    pf = L.build_family("XgLF", g=2)
    assert L.homology_h1(pf).trivial
    assert len(L.pi1_presentation(pf, "homology")) == len(pf.word)
    with pytest.raises(MissingPi1Words):
        L.pi1_presentation(pf)
    torus = L.PositiveFactorization(mcg.torus_surface(), mcg.word("a", "b") * 6, 0, True, True,
                                    vanishing_pi1_words=("x1", "y1"))
    G = L.pi1_presentation(torus)
    assert abelianization(G).trivial


def test_closure_and_positivity_guards():
    with pytest.raises(InvariantMismatch):
        L.PositiveFactorization(mcg.standard_surface(2), mcg.word("c1"), 0)
    with pytest.raises(NonPositiveInput):
        L.PositiveFactorization(mcg.standard_surface(2), mcg.t("c1", -1), 1)


def test_fiber_sums():
    e1 = L.build_family("En", n=1)
    e2 = L.fiber_sum_fibrations(e1, e1)
    assert L.total_space_chars(e2).es == (24, -16)
    with pytest.raises(GenusMismatch):
        L.fiber_sum_fibrations(e1, L.build_family("XgLF", g=2))
    n2 = L.build_family("Nk", k=2)
    assert n2.word is None and n2.base_genus == 2


def test_fiber_reversing_double():
    s = mcg.standard_surface(2)
    half = L.PositiveFactorization(s, mcg.word("c1", "c1"), 0, check_closed=False)
    with pytest.raises(CommutationFails):
        L.fiber_reversing_double(half)
    with pytest.raises(ParamOutOfRange):
        L.fiber_reversing_double(L.trivial_fibration(s, 1))
    w = mcg.chain_word(2) * 2
    pf = L.PositiveFactorization(s, w, 0, True, True)
    d = L.fiber_reversing_double(pf)
    assert len(d.word) == 2 * len(w) and not d.involution
    assert d.is_closed()
