import pytest
from hypothesis import given, settings, strategies as st

from geo4.dsl import Ident, parse_recipe, print_recipe
from geo4.errors import InvariantMismatch, MissingAnchor, NoSolution, OutOfRegion
from geo4.geography import (ExternalReference, Open, Realized, brute_force, covered, decompose, in_region, plan,
                            validate, validate_full)
from geo4.geography import recipes as R
from geo4.geography.blocks import spec, table_rows
from geo4.geography.decompose import brute_force_table
from geo4.geography.plan import y_g2k
from geo4.geography.region import LatticePoint
from geo4.geography.scan import Bounds, scan


def test_region():
    assert in_region((1, 9)) and not in_region((1, 10)) and in_region((7, 7))
    assert not in_region((0, 3))
    assert LatticePoint(3, 5).c1sq == 14 and LatticePoint(3, 5).mirror() == (5, 3)


def test_decompose_examples():
    assert decompose(3, 1) == (1, 0, 0, 0, 0)
    assert decompose(0, 5) == (0, 0, 0, 0, 5)
    for g in range(1, 6):
        d = decompose(4 * g + 3, g + 1)
        assert d == (1, 0, 0, g, 0)
        bg = R.block("Bg", g=g)
        assert (bg.e, bg.sigma) == (4 * g + 6, -2)
    with pytest.raises(NoSolution):
        decompose(100, 2)


@pytest.mark.parametrize("chi", [1, 2, 7, 13])
def test_decompose_matches_table(chi):
    table = brute_force_table(chi)
    for h in range(0, 4 * chi + 1):
        if covered(h, chi):
            assert decompose(h, chi) == table[h]


def test_block_table_consistent():
    rows = table_rows()
    assert rows and all(r["note"] and (r["curated"] or r["derived"] or r["name"] == "Prod") for r in rows)
    assert spec("B").chars() == (6, -2)
    for name, const in R.CONSTS.items():
        s = spec(name)
        if not s.params and s.chars is not None:
            c, chi = const()
            assert s.chars() == (12 * chi - c, c - 8 * chi), name


def test_plan_examples():
    r = plan((2, 14))
    assert isinstance(r, Realized)
    assert r.recipe.get("root").kind == "Z2"
    r = plan((4, 9))
    assert isinstance(r, Realized)
    r = plan((2, 5))
    assert isinstance(r, Realized) and r.stage == "final"
    assert isinstance(plan((5, 5)), Open)
    assert isinstance(plan((6, 5)), ExternalReference)
    with pytest.raises(OutOfRegion):
        plan((1, 10))


def test_sigma_minus3_line_uses_nk():
    r = plan((6, 9))
    assert isinstance(r, Realized)
    text = print_recipe(r.recipe)
    assert "Nk" in text and "Luttinger" in text


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 40), st.integers(1, 40))
def test_plan_validate_coherence(m, n):
    if not in_region((m, n)):
        with pytest.raises(OutOfRegion):
            plan((m, n))
        return
    r = plan((m, n))
    if isinstance(r, Realized):
        v = validate_full(r.recipe)
        assert (v.model.kind, v.model.a, v.model.b) == ("Rab", m, n)
        assert v.descriptor.irreducible.yes
        assert v.descriptor.chars.c1sq == 4 + 5 * m - n >= 0 or m > n
        mirror = plan((n, m))
        assert isinstance(mirror, Realized)
        assert validate(mirror.recipe).chars.es == (v.descriptor.chars.e, -v.descriptor.chars.sigma)
    elif isinstance(r, Open):
        assert m == n <= 7
    else:
        assert abs(m - n) <= 1


def test_wrong_sigma_is_caught():
    r = plan((3, 9)).recipe
    root = r.get("root")
    bad = r.replace_kw("root", root.replace_kw("sigma", root.get("sigma") + 1))
    with pytest.raises(InvariantMismatch):
        validate(bad)


def test_anchorless_flag_rejected():
    node = R.with_flags(R.block("B"), [parse_recipe("Flag(pi1, Trivial)")]).node
    rec = parse_recipe(f'Recipe(id="x", root={print_recipe(node)})')
    with pytest.raises(MissingAnchor):
        validate(rec)


def test_y_table():
    for g in range(2, 11):
        for k in range(5):
            y = validate(R.recipe("y", 0, 0, "main", y_g2k(g, k)).replace_kw("m", None))
            c = y.chars
            assert (c.e, c.sigma, c.b2plus, c.b2minus) == (6 * g + 6 - k, -4 - 4 * g + k, g, 5 * g + 4 - k)


def test_scan_small_and_empty():
    rep = scan(Bounds.parse("1:15"))
    assert len(rep.markers) == 31
    assert rep.to_csv().startswith("m,n,status,recipe-id\n")
    empty = scan(Bounds(100, 101, 1, 2))
    assert empty.entries == [] and empty.to_csv() == "m,n,status,recipe-id\n"
    with pytest.raises(ValueError):
        Bounds.parse("3")


def test_scan_parallel_matches_serial():
    b = Bounds.parse("1:25")
    assert scan(b, workers=1).to_csv() == scan(b, workers=3).to_csv()


def test_svg_has_lines_and_markers():
    svg = scan(Bounds.parse("1:15")).to_svg("abc")
    assert svg.count('stroke="red"') >= 2
    assert svg.count('r="5"') >= 31 and "fixture-hash abc" in svg
