"""Named pi_1 / H_1 certificates backing the construction recipes.

Each certificate builds a finite presentation, abelianizes it and, where the
claim is a finite order, enumerates cosets of the trivial subgroup. Claims the
source leaves sign-ambiguous are checked for every sign choice. Conjugates of
[a3, a4] that the source only specifies up to conjugacy are fresh generators g
with relator g = w [a3, a4] w^-1 for a fresh w; a certificate that needs them
drops every relator mentioning a fresh symbol, so it only uses what holds for
every choice of conjugate.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

from . import grouppres as gp
from .grouppres import AmalgamDescription, FpGroup, abelianization, coset_enumeration, evaluate_amalgam

MAX_COSETS = gp.DEFAULT_MAX_COSETS


@dataclass(frozen=True)
class Certificate:
    name: str
    anchor: str
    claim: str  # "order n" or "H1 trivial"
    passed: bool
    variants: int = 1
    detail: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "claim": self.claim,
                "passed": self.passed, "variants": self.variants, "detail": self.detail}


def _order_check(G: FpGroup, order: int) -> tuple[bool, dict]:
    ab = abelianization(G)
    cos = coset_enumeration(G, (), MAX_COSETS)
    ok = cos.finite and cos.index == order and (ab.order is not None and order % ab.order == 0)
    return ok, {"divisors": ab.invariant_factors, "cosets": str(cos), "transcript": cos.transcript}


def _over_variants(name, anchor, order, groups: Sequence[FpGroup]) -> Certificate:
    details = []
    ok = True
    for G in groups:
        good, d = _order_check(G, order)
        ok &= good
        details.append(d)
    summary = details[0] if len(details) == 1 else {
        "all_cosets": sorted({d["cosets"] for d in details}),
        "all_divisors": sorted({tuple(d["divisors"]) for d in details})}
    return Certificate(name, anchor, f"order {order}", ok, len(groups), summary)


def _drop_fresh(G: FpGroup, fresh: Sequence[str]) -> FpGroup:
    idx = {G.index_of(f) for f in fresh}
    keep = [r for r in G.relators if not any(abs(x) in idx for x in r)]
    gens = [x for x in G.generators if x not in fresh]
    out = FpGroup(tuple(gens))
    rename = {G.index_of(x): out.index_of(x) for x in gens}
    return FpGroup(out.generators, tuple(tuple(rename[abs(x)] * (1 if x > 0 else -1) for x in r)
                                         for r in keep))


# ---------------------------------------------------------------------------
# telescoping surgeries


def telescoping_group() -> FpGroup:
    """pi_1 of a telescoping triple complement: <a1, b2 | [a1, b2]> with b1 and both meridians trivial."""
    return FpGroup.from_strings(["a1", "b2"], ["[a1,b2]"])


def cyclic_surgery_group(n: int) -> FpGroup:
    """1/1 surgery on T1 along a1 and 1/n surgery on T2 along b2 (trivial meridians)."""
    G = telescoping_group()
    G = gp.surgery_quotient(G, (), "a1", 1, 1)
    return gp.surgery_quotient(G, (), "b2", 1, n)


def prop_half_surgery() -> Certificate:
    G = cyclic_surgery_group(2)
    ok, d = _order_check(G, 2)
    ok &= abelianization(G).invariant_factors == [2]
    return Certificate("half_surgery", "1/2 surgery on a telescoping triple gives order two", "order 2", ok, 1, d)


def cyclic_quotient(n: int) -> Certificate:
    """1/n surgery: abelianization Z/n (Z for n = 0)."""
    G = gp.tietze_simplify(cyclic_surgery_group(n))
    ab = abelianization(G)
    ok = ab.invariant_factors == [n]
    d = {"divisors": ab.invariant_factors}
    if n > 0:
        cos = coset_enumeration(G, (), MAX_COSETS)
        ok &= cos.finite and cos.index == n
        d["cosets"] = str(cos)
    return Certificate(f"cyclic_1_over_{n}", "1/n surgery gives any cyclic group", f"H1 Z/{n}", ok, 1, d)


def pk_half_surgery() -> Certificate:
    # pi_1(P_k - T_k) = Z generated by a push-off lambda; meridian trivial
    G = gp.surgery_quotient(FpGroup.from_strings(["t"], []), (), "t", 1, 2)
    ok, d = _order_check(G, 2)
    return Certificate("pk_half_surgery", "1/2 Luttinger surgery on P_k along lambda", "order 2", ok, 1, d)


def sigma_minus3_group(k: int) -> FpGroup:
    G, bd = gp.product_complement_presentation(k, True)
    schedule = [("J1", "a2"), ("J2", "b2")]
    schedule += [(f"T{i}", f"x{i}") for i in range(1, k + 1)]
    schedule += [(f"L{i}", f"y{i}") for i in range(1, k + 1)]
    for torus, curve in schedule:
        mu, _, _ = bd[torus]
        G = gp.surgery_quotient(G, mu, curve, 1, 1)
    return G.add_relators("b1*b2", "a1*a2^2*b2^4")


def sigma_minus3_schedule(k: int) -> Certificate:
    G = sigma_minus3_group(k)
    ok, d = _order_check(G, 1)
    return Certificate(f"sigma_minus3_k{k}", "Luttinger schedule on N_k kills pi_1(N_k' - F)",
                       "order 1", ok, 1, d)


# ---------------------------------------------------------------------------
# fiber sums with the torus-surgered blocks of T^4 # CPbar^2


Z2_11 = ["al3=[al1^-1,al4^-1]", "al4=[al1,al3^-1]", "[al1,al2]", "[al2,al3]", "[al2,al4]"]


def z11_group() -> FpGroup:
    return FpGroup.from_strings(["al1", "al2", "al3", "al4"], Z2_11 + ["[al3,al4]"])


def z11_complement_group() -> FpGroup:
    """Complement of a parallel copy: [al3, al4] only up to a conjugate g = w [al3, al4] w^-1."""
    return FpGroup.from_strings(["al1", "al2", "al3", "al4", "g", "w"],
                                Z2_11 + ["g = w*[al3,al4]*w^-1"])


def m_group(half: bool) -> FpGroup:
    second = "be2^2=[be1^-1,be4]" if half else "be2=[be1^-1,be4]"
    return FpGroup.from_strings(["be1", "be2", "be3", "be4"],
                                ["be1=[be2^-1,be4^-1]", second,
                                 "[be1,be3]", "[be2,be3]", "[be1,be2]", "[be3,be4]"])


_PSI = [("a1", "al1", "be1"), ("b1", "al2", "be2"), ("a2", "al3^2", "be3"), ("b2", "al4", "be4")]


def r14_group() -> FpGroup:
    return evaluate_amalgam(AmalgamDescription.build(z11_group(), m_group(True), _PSI))


def r14_amalgam() -> Certificate:
    G = r14_group()
    ok, d = _order_check(G, 2)
    return Certificate("r14_amalgam", "M(1,1/2) glued to Z''(1,1): only al2^2 survives", "order 2", ok, 1, d)


def _torus_identifications(signs) -> list[str]:
    s1, s2, s3, s4 = signs
    return [f"x = al1^{s1}", f"x = al3^{s2}", f"y = al2^{s3}", f"y = al4^{s4}"]


def r16_groups() -> list[FpGroup]:
    out = []
    for signs in itertools.product((1, -1), repeat=4):
        rels = ["al3^2=[al1^-1,al4^-1]", "al4=[al1,al3^-1]", "[al1,al2]", "[al2,al3]", "[al2,al4]",
                "[al3,al4]", "[x,y]"] + _torus_identifications(signs)
        out.append(FpGroup.from_strings(["al1", "al2", "al3", "al4", "x", "y"], rels))
    return out


def r16_amalgam() -> Certificate:
    return _over_variants("r16_amalgam", "(T^2 x S^2) # 4 CPbar^2 glued to Z''(1/2,1), every sign choice",
                          2, r16_groups())


def r25_group() -> FpGroup:
    A = AmalgamDescription.build(z11_complement_group(), m_group(False), _PSI)
    return _drop_fresh(evaluate_amalgam(A), ["g", "w"])


def r25_complement() -> Certificate:
    ok, d = _order_check(r25_group(), 1)
    return Certificate("r25_complement", "M(1,1) glued to Z''(1,1) minus a parallel surface", "order 1", ok, 1, d)


def r27_groups() -> list[FpGroup]:
    out = []
    for signs in itertools.product((1, -1), repeat=4):
        G = FpGroup.from_strings(["al1", "al2", "al3", "al4", "g", "w", "x", "y"],
                                 Z2_11 + ["g = w*[al3,al4]*w^-1", "[x,y]"] + _torus_identifications(signs))
        out.append(_drop_fresh(G, ["g", "w"]))
    return out


def r27_complement() -> Certificate:
    return _over_variants("r27_complement",
                          "(T^2 x S^2) # 4 CPbar^2 glued to Z''(1,1) minus a parallel surface, every sign choice",
                          1, r27_groups())


def zprime_group() -> FpGroup:
    G = FpGroup.from_strings(["al1", "al2", "al3", "al4", "g", "w"],
                             ["al3=[al1^-1,al4^-1]", "[al1,al3]", "[al2,al3]", "[al2,al4]",
                              "g = w*[al3,al4]*w^-1"])
    # a1, b1, b2 of the parallel surface are trivial on the simply connected side
    G = G.add_relators("al1", "al2", "al4")
    return _drop_fresh(G, ["g", "w"])


def zprime_complement() -> Certificate:
    ok, d = _order_check(zprime_group(), 1)
    return Certificate("zprime_complement", "X - H simply connected glued to Z' - Sigma", "order 1", ok, 1, d)


def zprime_closed() -> Certificate:
    """pi_1(Z') = <a1,a2,a3,a4 | [ai,aj] ({i,j} != {1,4}), [a1,a4] a3^-1> has H1 of rank 3."""
    pairs = [(i, j) for i in range(1, 5) for j in range(i + 1, 5) if (i, j) != (1, 4)]
    G = FpGroup.from_strings(["a1", "a2", "a3", "a4"],
                             [f"[a{i},a{j}]" for i, j in pairs] + ["[a1,a4]*a3^-1"])
    ab = abelianization(G)
    return Certificate("zprime_closed", "pi_1(Z') after the Luttinger surgery", "H1 rank 3",
                       ab.free_rank == 3 and not ab.torsion, 1, {"divisors": ab.invariant_factors})


def r613_groups() -> list[FpGroup]:
    out = []
    sgn = list(itertools.product((1, -1), repeat=2))
    for choice in itertools.product(sgn, repeat=4):
        (p1, q1), (p2, q2), (p3, q3), (p4, q4) = choice
        rels = ["c1", "d1", "c2", "d2",
                f"[b1^{p1},d1^{q1}]*a1", f"[a1^{p2},d1^{q2}]*b1",
                f"[b2^{p3},d1^{q3}]*a2", f"[a2^{p4},d1^{q4}]*b2"]
        out.append(FpGroup.from_strings(["a1", "b1", "a2", "b2", "c1", "d1", "c2", "d2"], rels))
    return out


def r613_complement() -> Certificate:
    return _over_variants("r613_complement", "four Luttinger surgeries on the genus two base, every sign choice",
                          1, r613_groups())


def r615_groups() -> list[FpGroup]:
    out = []
    for p1, q1, p2, q2 in itertools.product((1, -1), repeat=4):
        rels = ["c1", "d1", "c2", "d2", f"a*[d1^{p1},b^{q1}]", f"b*[d2^{p2},a^{q2}]"]
        out.append(FpGroup.from_strings(["a", "b", "c1", "d1", "c2", "d2"], rels))
    return out


def r615_complement() -> Certificate:
    return _over_variants("r615_complement", "two Luttinger surgeries on the torus base, every sign choice",
                          1, r615_groups())


def dx26_h1() -> Certificate:
    from .lefschetz import DX26_RELATORS, build_family, homology_h1
    res = gp.smith_normal_form([list(r) for r in DX26_RELATORS])
    listed = all(abs(d) == 1 for d in res.divisors) and len(res.divisors) == 5
    computed = homology_h1(build_family("Vg2k", g=2, k=3))
    ok = listed and computed.trivial
    return Certificate("dx26_h1", "c1 + c3 + c5 = 0 with 2 c1 = 0 forces H1(DX_{2,6}) = 0", "H1 trivial", ok, 1,
                       {"listed_divisors": [abs(d) for d in res.divisors],
                        "computed": computed.invariant_factors})


REGISTRY: dict[str, Callable[[], Certificate]] = {
    "half_surgery": prop_half_surgery,
    "pk_half_surgery": pk_half_surgery,
    "r14_amalgam": r14_amalgam,
    "r16_amalgam": r16_amalgam,
    "r25_complement": r25_complement,
    "r27_complement": r27_complement,
    "zprime_complement": zprime_complement,
    "zprime_closed": zprime_closed,
    "r613_complement": r613_complement,
    "r615_complement": r615_complement,
    "dx26_h1": dx26_h1,
}
for _k in (1, 2, 3):
    REGISTRY[f"sigma_minus3_k{_k}"] = (lambda k=_k: sigma_minus3_schedule(k))
for _n in range(0, 7):
    REGISTRY[f"cyclic_1_over_{_n}"] = (lambda n=_n: cyclic_quotient(n))


@lru_cache(maxsize=None)
def run(name: str) -> Certificate:
    if name not in REGISTRY:
        raise KeyError(f"unknown certificate {name!r}")
    return REGISTRY[name]()


def run_all() -> list[Certificate]:
    return [run(n) for n in REGISTRY]
