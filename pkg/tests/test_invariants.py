from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from geo4.errors import DescriptorRejected, IndivisibleQuotient, InsufficientCertificates, NegativeBetti, ParityMismatch
from geo4.invariants import (Parity, Pi1Class, ManifoldDescriptor, Verdict, W2Type, Z2Kind, FiberSumMeta,
                             blow_up_chars, chars_from, chars_from_betti, chars_from_c1sq_chih, classify,
                             fiber_sum_chars, hk_irreducible, infer_parity, lantern_chars, product_chars,
                             usher_minimality, z2_table_chars)

betti = st.tuples(st.integers(0, 200), st.integers(0, 200), st.integers(0, 20))


@given(betti)
def test_conversion_identities(bpm):
    bp, bm, b1 = bpm
    e, s = 2 - 2 * b1 + bp + bm, bp - bm
    c = chars_from(e, s, b1)
    assert (c.b2plus, c.b2minus) == (bp, bm)
    assert c.c1sq == 2 * e + 3 * s
    assert c.chih == Fraction(e + s, 4)
    assert c.e == 12 * c.chih - c.c1sq
    assert c.sigma == c.c1sq - 8 * c.chih


@given(st.integers(0, 100), st.integers(0, 100))
def test_three_entry_points_agree(bp, bm):
    a = chars_from_betti(bp, bm)
    b = chars_from_c1sq_chih(a.c1sq, a.chih)
    assert a == b == chars_from(a.e, a.sigma, 0)


def test_examples():
    c = chars_from(16, -12)
    assert (c.b2plus, c.b2minus, c.c1sq, c.chih) == (1, 13, -4, 1)
    assert chars_from_c1sq_chih(0, 1).e == 12
    with pytest.raises(ParityMismatch):
        chars_from(3, 0)
    with pytest.raises(NegativeBetti):
        chars_from(0, -10)
    with pytest.raises(ParityMismatch):
        chars_from_c1sq_chih(1, Fraction(1, 3))


def test_undetermined_b1():
    c = chars_from(10, -2, None)
    assert c.b2plus is None and c.c1sq == 14


def test_json_round_trip():
    c = chars_from(21, -11)
    assert type(c).from_json(c.to_json()) == c


@given(st.integers(0, 60), st.integers(0, 60), st.integers(0, 5))
def test_z2_table_double_after_quotient(bp, bm, g):
    assume(g > 0 or min(bp, bm) > 0)  # b2 of the output must stay non-negative
    a = chars_from_betti(bp, bm)
    z = z2_table_chars(a, g, Z2Kind.Z2Construction)
    d = z2_table_chars(a, g, "Double")
    assert z2_table_chars(d, g, Z2Kind.Quotient) == z


def test_z2_genus_two_shift():
    a = chars_from_betti(3, 10)
    z = z2_table_chars(a, 2, Z2Kind.Z2Construction)
    assert (z.c1sq, z.chih) == (a.c1sq + 4, a.chih + Fraction(1, 2))


def test_quotient_rejects_odd():
    with pytest.raises(IndivisibleQuotient):
        z2_table_chars(chars_from_betti(2, 4), 2, Z2Kind.Quotient)


def test_operations():
    a = chars_from_betti(1, 9)
    assert blow_up_chars(a, 2).es == (a.e + 2, a.sigma - 2)
    assert lantern_chars(a, 3).es == (a.e - 3, a.sigma + 3)
    assert fiber_sum_chars(a, a, 1, 0).es == (2 * a.e, 2 * a.sigma)
    assert product_chars(1, 1).es == (0, 0)
    assert product_chars(2, 2).es == (4, 0)
    with pytest.raises(ValueError):
        blow_up_chars(a, -1)


def test_infer_parity():
    assert infer_parity(chars_from(15, -5), Pi1Class("Z2"))[0] is Parity.Odd
    assert infer_parity(chars_from(24, -16), Pi1Class("Z2"))[0] is Parity.Unknown
    assert infer_parity(chars_from(10, -8), Pi1Class("Trivial"))[0] is Parity.Odd
    assert infer_parity(chars_from(10, -8), Pi1Class("Z2"), Parity.Even)[0] is Parity.Even


def test_classify():
    d = ManifoldDescriptor(chars_from_betti(3, 5), Pi1Class("Z2"), Parity.Odd)
    assert str(classify(d)) == "Rab(3,5)"
    assert d.w2type is W2Type.TypeI
    assert classify(ManifoldDescriptor(chars_from_betti(2, 5), Pi1Class("Z2"), Parity.Odd)).kind == "Rab"
    assert classify(ManifoldDescriptor(chars_from_betti(1, 9), Pi1Class("Trivial"), Parity.Odd)).kind == "CPsum"
    with pytest.raises(InsufficientCertificates):
        classify(ManifoldDescriptor(chars_from_betti(3, 5), Pi1Class("Unknown"), Parity.Odd))
    assert classify(ManifoldDescriptor(chars_from(4, 0, 2), Pi1Class("FreeAbelian", 2), Parity.Even)).kind \
        == "Unclassified"


def test_descriptor_guards():
    with pytest.raises(DescriptorRejected):
        ManifoldDescriptor(chars_from_betti(3, 11), Pi1Class("Trivial"), Parity.Even)
    with pytest.raises(DescriptorRejected):
        ManifoldDescriptor(chars_from_betti(3, 5), minimal=Verdict("No"), irreducible=Verdict("Yes"))


def test_hk_and_usher():
    d = ManifoldDescriptor(chars_from_betti(3, 5), Pi1Class("Z2"), Parity.Odd, minimal=Verdict("Yes"),
                           symplectic=True)
    assert hk_irreducible(d).irreducible.yes
    assert usher_minimality(FiberSumMeta(2, False, False, False, False)) == "Minimal"
    assert usher_minimality(FiberSumMeta(2, True, False, False, False)) == "NotMinimal"
    assert usher_minimality(FiberSumMeta(2)) == "Unknown"
    assert usher_minimality(FiberSumMeta(2, False, False, True, False, right_minimal=True)) == "Minimal"
