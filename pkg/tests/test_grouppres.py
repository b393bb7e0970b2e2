import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geo4 import _kernels
from geo4 import grouppres as gp
from geo4.errors import InvalidWord
from geo4.grouppres import FpGroup

from snf_oracle import elimination_divisors, minor_divisors

matrices = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_against_minors(M):
    res = gp.smith_normal_form(M)
    assert gp.check_snf(M, res)
    assert [abs(d) for d in res.divisors] == minor_divisors(M)


def test_snf_random_against_elimination():
    rng = np.random.default_rng(7)
    for _ in range(200):
        m, n = rng.integers(1, 9, size=2)
        M = rng.integers(-9, 10, size=(m, n)).tolist()
        res = gp.smith_normal_form(M)
        assert gp.check_snf(M, res)
        assert [abs(d) for d in res.divisors] == elimination_divisors(M)


def test_snf_edge_cases():
    assert gp.smith_normal_form([[0, 0], [0, 0]]).divisors == [0, 0]
    assert gp.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).divisors == [2, 6, 12]


def test_words():
    assert gp.free_reduce((1, -1, 2)) == (2,)
    assert gp.cyclic_reduce((1, 2, -1)) == (2,)
    assert gp.comm((1,), (2,)) == (1, 2, -1, -2)
    assert gp.wpow((1, 2), -1) == (-2, -1)
    with pytest.raises(InvalidWord):
        FpGroup(("a",), ((2,),))


def test_abelianization():
    G = FpGroup.from_strings(["a", "b"], ["a^4", "b^6", "[a,b]"])
    ab = gp.abelianization(G)
    assert ab.invariant_factors == [2, 12]
    assert ab.order == 24
    assert gp.abelianization(gp.free_group(["x", "y"])).free_rank == 2


KNOWN = [
    (FpGroup.from_strings(["a", "b"], ["a^2", "b^3", "(a*b)^3"]), 12),
    (FpGroup.from_strings(["a", "b"], ["a^2", "b^3", "(a*b)^4"]), 24),
    (FpGroup.from_strings(["a", "b"], ["a^2", "b^3", "(a*b)^5"]), 60),
    (FpGroup.from_strings(["a", "b"], ["a^2", "b^3", "(a*b)^7", "[a,b]^4"]), 168),
    (FpGroup.from_strings(["a", "b"], ["a^4", "b^2*a^-2", "b^-1*a*b*a"]), 8),
    (FpGroup.from_strings(["x"], ["x^1"]), 1),
]


@pytest.mark.parametrize("jit", [True, False])
@pytest.mark.parametrize("G,order", KNOWN)
def test_coset_orders_both_backends(G, order, jit, monkeypatch):
    monkeypatch.setenv("GEO4_NUMBA", "1" if jit else "0")
    r = gp.coset_enumeration(G)
    assert r.finite and r.index == order


def test_backends_identical_tables():
    for G, _ in KNOWN:
        rels = [gp.cyclic_reduce(r) for r in G.relators]
        rel, roff = gp._flatten(sorted(rels, key=lambda r: (len(r), r)))
        a = _kernels.enumerate_cosets(2 * G.ngens, rel, roff, [], [0], 1000, jit=True)
        b = _kernels.enumerate_cosets(2 * G.ngens, rel, roff, [], [0], 1000, jit=False)
        assert a[0] == b[0] and a[1] == b[1]
        assert np.array_equal(a[2][:a[1]], b[2][:b[1]])


def _coxeter_a(n):
    gens = [f"s{i}" for i in range(1, n + 1)]
    rels = [f"{g}^2" for g in gens]
    rels += [f"({gens[i]}*{gens[j]})^{3 if j == i + 1 else 2}" for i in range(n) for j in range(i + 1, n)]
    return FpGroup.from_strings(gens, rels)


@pytest.mark.parametrize("jit", [True, False])
def test_overflow_recovery(jit, monkeypatch):
    # the cap forces several compaction rounds before the table closes
    monkeypatch.setenv("GEO4_NUMBA", "1" if jit else "0")
    r = gp.coset_enumeration(_coxeter_a(5), max_cosets=800)
    assert r.finite and r.index == 720


def test_cap_reports_exceeded():
    G = FpGroup.from_strings(["a", "b"], ["a^2", "b^5", "(a*b)^4"])
    r = gp.coset_enumeration(G, max_cosets=2000)
    assert not r.finite and str(r) == "Exceeded"
    assert gp.group_order(G, 2000) is None


def test_subgroup_index_and_word_problem():
    S3 = FpGroup.from_strings(["a", "b"], ["a^2", "b^3", "(a*b)^2"])
    assert gp.coset_enumeration(S3, ["a"]).index == 3
    assert gp.coset_enumeration(S3, ["b"]).index == 2
    assert gp.word_is_trivial(S3, "a*b*a*b") is True
    assert gp.word_is_trivial(S3, "a*b") is False


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=6), min_size=3,
                max_size=6))
def test_tietze_preserves_abelianization(rels):
    G = FpGroup(("a", "b", "c"), tuple(tuple(r) for r in rels) + ((1, 1), (2, 2, 2)))
    H = gp.tietze_simplify(G)
    assert gp.abelianization(H).invariant_factors == gp.abelianization(G).invariant_factors
    og, oh = gp.group_order(G, 5000), gp.group_order(H, 5000)
    if og is not None and oh is not None:
        assert og == oh


def test_surgery_quotient():
    G = FpGroup.from_strings(["a", "b"], ["[a,b]"])
    H = gp.surgery_quotient(G, "a", "b", 1, 3)
    assert gp.abelianization(H).invariant_factors == [0]
    K = gp.surgery_quotient(H, (), "b", 1, 1)
    assert gp.abelianization(K).trivial


def test_certificate_json_is_stable():
    G = KNOWN[0][0]
    a = gp.certificate_json(G, gp.abelianization(G), gp.coset_enumeration(G))
    b = gp.certificate_json(G, gp.abelianization(G), gp.coset_enumeration(G))
    assert a == b
