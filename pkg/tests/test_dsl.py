from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from geo4 import lefschetz as L
from geo4 import mcg
from geo4.dsl import (Ident, Node, format_group, format_word, parse_group, parse_recipe, parse_word,
                      print_recipe, tokenize)
from geo4.errors import ParseError
from geo4.grouppres import FpGroup


def test_example_parses():
    n = parse_recipe("Z2(g=2, child=Block(XgLF, g=2))")
    assert n.kind == "Z2" and n.get("g") == 2
    child = n.get("child")
    assert child.kind == "Block" and child.name == "XgLF"


def test_comments_and_values():
    n = parse_recipe('''
        # a comment
        Luttinger(count=2, coeff=1/2, torus=T1_T2, ok=true, neg=-3,
                  note="say \\"hi\\"", parts=[Block(B), Block(C)])
    ''')
    assert n.get("coeff") == Fraction(1, 2)
    assert n.get("torus") == Ident("T1_T2")
    assert n.get("ok") is True and n.get("neg") == -3
    assert n.get("note") == 'say "hi"'
    assert [p.name for p in n.get("parts")] == ["B", "C"]


@pytest.mark.parametrize("text,line,col", [
    ("Z2(g=2, child=Block(XgLF, g=2)", 1, 31),
    ("Z2(\n  g=2,,\n)", 2, 7),
    ("Z2(g=2, g=3)", 1, 9),
    ("Z2(g=1/0)", 1, 6),
    ("Z2(g=@)", 1, 6),
])
def test_parse_errors_have_spans(text, line, col):
    with pytest.raises(ParseError) as e:
        parse_recipe(text)
    assert (e.value.line, e.value.col) == (line, col)


idents = st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,6}", fullmatch=True).filter(lambda s: s not in ("true", "false"))
scalars = st.one_of(
    st.integers(-50, 50),
    st.fractions(max_denominator=9).filter(lambda f: f.denominator != 1),
    st.booleans(),
    idents.map(Ident),
    st.text(st.characters(blacklist_categories=("Cs",)), max_size=12),
)


def nodes(depth=3):
    if depth == 0:
        children = scalars
    else:
        children = st.one_of(scalars, st.deferred(lambda: nodes(depth - 1)),
                             st.lists(st.deferred(lambda: nodes(depth - 1)), max_size=3))
    return st.builds(
        lambda kind, args, kw: Node(kind, tuple(args), tuple(kw)),
        idents,
        st.lists(scalars, max_size=2),
        st.dictionaries(idents, children, max_size=3).map(lambda d: list(d.items())),
    )


@settings(max_examples=150, deadline=None)
@given(nodes())
def test_recipe_round_trip(n):
    assert parse_recipe(print_recipe(n)) == n


@pytest.mark.parametrize("w", [
    mcg.chain_word(2), L.a_word(2), L.v_word(2, 1), L.v_word(3, 2), L.w_word(3),
    mcg.t("b", -1) + mcg.t("y", 2, reflected=True) + mcg.t("c1", by=mcg.word("c2", "c3"), reflected=True),
])
def test_word_round_trip(w):
    assert parse_word(format_word(w)) == w


def test_word_syntax():
    w = parse_word("t[c1] t[c3]^-1 conj(t[b], by=t[a] t[c]) refl(t[y])")
    assert [l.curve for l in w] == ["c1", "c3", "b", "y"]
    assert w[1].power == -1 and w[2].conjugator == mcg.word("a", "c") and w[3].reflected


def test_group_round_trip():
    G = FpGroup.from_strings(["a1", "b2"], ["[a1,b2]", "a1", "b2^2"])
    assert parse_group(format_group(G)) == G
    assert FpGroup.parse(str(G)) == G


def test_tokenizer_positions():
    toks = tokenize("A(\n  x=1)")
    assert [(t.text, t.line, t.col) for t in toks[:4]] == [("A", 1, 1), ("(", 1, 2), ("x", 2, 3), ("=", 2, 4)]
