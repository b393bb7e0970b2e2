import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geo4 import mcg
from geo4.errors import (IndexOutOfRange, InconsistentAssignment, NonPositiveInput, PatternMismatch,
                         UnknownCurve)

S2 = mcg.standard_surface(2)
CURVES2 = sorted(S2.curves)


def words(surface, max_len=12):
    names = sorted(surface.curves)
    letter = st.builds(mcg.Letter, st.sampled_from(names), st.sampled_from([1, -1, 2]))
    return st.lists(letter, min_size=2, max_size=max_len).map(lambda ls: mcg.MappingClassWord(tuple(ls)))


def test_chain_classes_meet_once():
    for g in (2, 3, 4):
        s = mcg.standard_surface(g, lantern=False)
        for i in range(1, 2 * g + 1):
            u, v = s.curve(f"c{i}").vector, s.curve(f"c{i + 1}").vector
            assert abs(mcg.pairing(s.J, u, v)) == 1
        odd = sum(s.curve(f"c{i}").vector for i in range(1, 2 * g + 2, 2))
        assert not odd.any()


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_hyperelliptic(g):
    s = mcg.standard_surface(g, lantern=False)
    w = mcg.chain_word(g)
    assert mcg.evaluate(s, w).is_minus_identity()
    assert mcg.evaluate(s, w * 2).is_identity()


@settings(max_examples=60, deadline=None)
@given(words(S2))
def test_evaluate_is_symplectic(w):
    M = mcg.evaluate(S2, w)
    assert M.check()
    assert (mcg.evaluate(S2, w.inverse()) @ M).is_identity()


@settings(max_examples=100, deadline=None)
@given(words(S2), st.data())
def test_hurwitz_invariance(w, data):
    i = data.draw(st.integers(1, len(w) - 1))
    d = data.draw(st.sampled_from(["Right", "Left"]))
    w2 = mcg.hurwitz_move(w, i, d)
    assert len(w2) == len(w)
    assert mcg.evaluate(S2, w2) == mcg.evaluate(S2, w)
    back = mcg.hurwitz_move(w2, i, "Left" if d == "Right" else "Right")
    assert back == w


def test_hurwitz_bounds():
    with pytest.raises(IndexOutOfRange):
        mcg.hurwitz_move(mcg.word("a", "b"), 2)


@settings(max_examples=50, deadline=None)
@given(words(S2, 6), words(S2, 6))
def test_conjugation_invariance(w, by):
    lhs = mcg.evaluate(S2, w.conjugate(by))
    rhs = mcg.evaluate(S2, by) @ mcg.evaluate(S2, w) @ mcg.evaluate(S2, by).inverse()
    assert lhs == rhs


def test_lantern_substitution():
    w = mcg.word("c2", "a", "b", "c", "d", "c4")
    at = mcg.find_lantern(w)
    assert at == 1
    w2 = mcg.lantern_substitute(w, at)
    assert len(w2) == len(w) - 1
    assert mcg.evaluate(S2, w2) == mcg.evaluate(S2, w)
    with pytest.raises(PatternMismatch):
        mcg.lantern_substitute(w, 0)


def test_twist_image():
    assert np.array_equal(mcg.twist_image(S2, mcg.word("a"), "a"), S2.curve("a").vector)
    assert np.array_equal(mcg.twist_image(S2, mcg.MappingClassWord(), "x"), S2.curve("x").vector)
    assert np.array_equal(mcg.twist_image(S2, mcg.word("y"), "z"), S2.reflection.entries @ S2.curve("z").vector)
    with pytest.raises(UnknownCurve):
        mcg.twist_image(S2, mcg.word("a"), "nope")


def test_reflection_matrix():
    R = mcg.reflection_matrix(S2, [("a", "c"), ("b", "d"), ("x", "x"), ("y", "y")])
    assert R.character == "AntiSymplectic" and R.check()
    assert np.array_equal(R.entries @ R.entries, np.eye(4, dtype=np.int64))
    with pytest.raises(InconsistentAssignment):
        mcg.reflection_matrix(S2, [])


def test_reversed_double_word():
    w = mcg.word("c1", "c2")
    assert mcg.reversed_double_word(w, mcg.MappingClassWord()) == w
    out = mcg.reversed_double_word(w, mcg.word("y"))
    assert out[-1].reflected and out[-1].curve == "y"
    with pytest.raises(NonPositiveInput):
        mcg.reversed_double_word(mcg.t("a", -1), w)
    s = mcg.standard_surface(2, lantern=False)
    s.reflection = S2.reflection
    sq = mcg.chain_word(2) * 2
    assert mcg.evaluate(s, mcg.reversed_double_word(sq, sq)).is_identity()
