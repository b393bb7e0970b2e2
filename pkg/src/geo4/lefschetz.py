"""Positive factorizations as Lefschetz fibration monodromy data.

Homological shadows only: closure over S^2 is checked in Sp(2g, Z), H_1 is read
off vanishing classes, and the signature comes from the hyperelliptic formula
when the factorization is flagged hyperelliptic.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import mcg
from .errors import (CommutationFails, GenusMismatch, InvariantMismatch, MissingPi1Words,
                     NonIntegerSignature, NonPositiveInput, ParamOutOfRange, SignatureUnavailable)
from .grouppres import Abelianization, FpGroup, comm, mul, smith_normal_form
from .invariants import CharNumbers, chars_from, fiber_sum_chars
from .mcg import MappingClassWord, SurfaceModel, SymplecticMatrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SignatureBreakdown:
    n0: int
    nh: tuple[int, ...]  # nh[h-1] counts separating cycles of type h

    @property
    def total(self) -> int:
        return self.n0 + sum(self.nh)

    def to_json(self) -> dict:
        return {"n0": self.n0, "nh": {str(h + 1): c for h, c in enumerate(self.nh)}}


@dataclass(frozen=True)
class PositiveFactorization:
    surface: SurfaceModel
    word: Optional[MappingClassWord]
    base_genus: int = 0
    has_section: bool = False
    hyperelliptic: bool = False
    vanishing_pi1_words: Optional[tuple[str, ...]] = None
    known_chars: Optional[CharNumbers] = None  # for blocks shipped without a word
    involution: bool = False
    name: str = ""
    check_closed: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.base_genus < 0:
            raise ParamOutOfRange("base genus must be non-negative")
        if self.word is None:
            if self.known_chars is None:
                raise ParamOutOfRange("a factorization without a word needs known chars")
            return
        if not self.word.is_positive():
            raise NonPositiveInput("positive factorizations take power +1 letters only")
        if self.check_closed and self.base_genus == 0 and not self.is_closed():
            raise InvariantMismatch(f"{self.name or 'word'} does not evaluate to I over S^2")

    @property
    def genus(self) -> int:
        return self.surface.genus

    def is_closed(self) -> bool:
        return mcg.evaluate(self.surface, self.word).is_identity()


def signature_breakdown(pf: PositiveFactorization) -> SignatureBreakdown:
    g = pf.genus
    nh = [0] * (g // 2)
    n0 = 0
    for l in pf.word:
        h = pf.surface.curve(l.curve).separating_type
        if h == 0:
            n0 += 1
        else:
            nh[min(h, g - h) - 1] += 1
    return SignatureBreakdown(n0, tuple(nh))


def euler_characteristic(pf: PositiveFactorization) -> int:
    if pf.word is None:
        return pf.known_chars.e
    return (2 - 2 * pf.genus) * (2 - 2 * pf.base_genus) + len(pf.word)


def endo_signature(g: int, br: SignatureBreakdown) -> Fraction:
    s = Fraction(-(g + 1), 2 * g + 1) * br.n0
    for i, n in enumerate(br.nh):
        h = i + 1
        s += (Fraction(4 * h * (g - h), 2 * g + 1) - 1) * n
    return s


def hyperelliptic_signature(pf: PositiveFactorization) -> int:
    if not pf.hyperelliptic or pf.base_genus != 0:
        raise SignatureUnavailable("signature needs a hyperelliptic factorization over S^2")
    s = endo_signature(pf.genus, signature_breakdown(pf))
    if s.denominator != 1:
        raise NonIntegerSignature(f"hyperelliptic formula gives {s}; separating data is inconsistent")
    return int(s)


def total_space_chars(pf: PositiveFactorization, b1: Optional[int] = None) -> CharNumbers:
    if pf.word is None:
        return pf.known_chars
    e = euler_characteristic(pf)
    if len(pf.word) == 0:
        # a product of surfaces
        return chars_from(e, 0, 2 * pf.genus + 2 * pf.base_genus if b1 is None else b1)
    sigma = hyperelliptic_signature(pf)
    if b1 is None and pf.base_genus == 0:
        b1 = homology_h1(pf).free_rank
    return chars_from(e, sigma, b1)


# ---------------------------------------------------------------------------
# fundamental group and homology


def fiber_generators(g: int) -> tuple[str, ...]:
    return tuple(x for i in range(1, g + 1) for x in (f"x{i}", f"y{i}"))


def vanishing_matrix(pf: PositiveFactorization) -> list[list[int]]:
    """Vanishing classes as rows over the basis (a_1..a_g, b_1..b_g)."""
    return [[int(v) for v in mcg.vanishing_class(pf.surface, l)] for l in pf.word]


def homology_h1(pf: PositiveFactorization) -> Abelianization:
    """H_1 of the total space over S^2: H_1(fiber) modulo the vanishing classes."""
    if pf.base_genus != 0:
        raise ParamOutOfRange("homology mode covers fibrations over S^2")
    n = 2 * pf.genus
    rows = [r for r in vanishing_matrix(pf) if any(r)]
    if not rows:
        return Abelianization((0,) * n)
    d = list(smith_normal_form(rows).divisors) + [0] * n
    return Abelianization(tuple(abs(x) for x in d[:n]))


def pi1_presentation(pf: PositiveFactorization, mode: str = "exact"):
    """Exact mode: fiber surface group modulo the supplied vanishing words.

    Homology mode: the vanishing-class relator matrix (rows over a_i, b_i).
    """
    if mode == "homology":
        return vanishing_matrix(pf)
    if pf.vanishing_pi1_words is None:
        raise MissingPi1Words("exact mode needs vanishing cycles as pi_1 words")
    gens = fiber_generators(pf.genus)
    G = FpGroup(gens)
    surf = mul(*[comm(G.word(f"x{i}"), G.word(f"y{i}")) for i in range(1, pf.genus + 1)])
    rels = [surf] + [G.word(w) for w in pf.vanishing_pi1_words]
    return FpGroup(gens, tuple(r for r in rels if r))


# ---------------------------------------------------------------------------
# combining fibrations


def fiber_sum_fibrations(p1: PositiveFactorization, p2: PositiveFactorization) -> PositiveFactorization:
    if p1.genus != p2.genus:
        raise GenusMismatch(f"fiber genera {p1.genus} and {p2.genus} differ")
    h = p1.base_genus + p2.base_genus
    name = f"{p1.name}+{p2.name}" if p1.name or p2.name else ""
    if p1.word is None or p2.word is None:
        chars = fiber_sum_chars(total_space_chars(p1), total_space_chars(p2), p1.genus)
        return PositiveFactorization(p1.surface, None, h, p1.has_section and p2.has_section,
                                     known_chars=chars, name=name)
    return PositiveFactorization(p1.surface, p1.word + p2.word, h,
                                 p1.has_section and p2.has_section,
                                 p1.hyperelliptic and p2.hyperelliptic, name=name,
                                 check_closed=False)


def trivial_fibration(surface: SurfaceModel, base_genus: int) -> PositiveFactorization:
    """Product Sigma_g x Sigma_h: empty word over a genus h base."""
    return PositiveFactorization(surface, MappingClassWord(), base_genus, has_section=True,
                                 name=f"Sigma{surface.genus}xSigma{base_genus}")


def commutes(a: SymplecticMatrix, b: SymplecticMatrix) -> bool:
    return np.array_equal(a.entries @ b.entries, b.entries @ a.entries)


def fiber_reversing_double(pf: PositiveFactorization, r: Optional[SymplecticMatrix] = None,
                           attest_involution: bool = False) -> PositiveFactorization:
    """V (V^-1)^r over S^2 for a monodromy V over D^2 that commutes with r on homology.

    The free involution flag is set only on explicit attestation that r commutes
    with a representative of V; homology cannot certify that.
    """
    if pf.base_genus != 0:
        raise ParamOutOfRange("the fiber-reversing double takes fibrations over a disk")
    r = r if r is not None else pf.surface.reflection
    if r is None:
        raise mcg.NoReflectionRegistered("no reflection to double with")
    V = mcg.evaluate(pf.surface, pf.word)
    if not commutes(V, r):
        raise CommutationFails("monodromy does not commute with r on homology")
    s = pf.surface if r is pf.surface.reflection else replace_reflection(pf.surface, r)
    w = mcg.reversed_double_word(pf.word, pf.word)
    return PositiveFactorization(s, w, 0, pf.has_section, pf.hyperelliptic,
                                 involution=attest_involution, name=f"D({pf.name})")


def replace_reflection(s: SurfaceModel, r: SymplecticMatrix) -> SurfaceModel:
    out = SurfaceModel(s.genus, dict(s.curves))
    out.reflection = r
    return out


# ---------------------------------------------------------------------------
# named families


def a_word(g: int) -> MappingClassWord:
    """A_g: t1^t2 t2^t3 ... t_2g^t_{2g+1} t_{2g+1}^t_2g ... t4^t3, then t3 and t2 with long conjugators.

    The last two conjugators are read iteratively, (psi^{t2})^{t3^{2g+2}}, i.e.
    conjugation by t3^{2g+2} t2, and likewise t3^{2g+2} t1 for t2.
    """
    W = MappingClassWord()
    for i in range(1, 2 * g + 1):
        W += mcg.t(f"c{i}", by=mcg.word(f"c{i + 1}"))
    for j in range(2 * g, 2, -1):
        W += mcg.t(f"c{j + 1}", by=mcg.word(f"c{j}"))
    long3 = mcg.power_word("c3", 2 * g + 2)
    W += mcg.t("c3", by=long3 + mcg.word("c2"))
    W += mcg.t("c2", by=long3 + mcg.word("c1"))
    return W


def _lantern_surface(g: int) -> SurfaceModel:
    if g < 2:
        raise ParamOutOfRange("lantern families need genus at least 2")
    return mcg.standard_surface(g)


def w_word(g: int) -> MappingClassWord:
    return a_word(g) + mcg.power_word("c1", 2 * g + 2) + mcg.power_word("c3", 2 * g + 2)


def half_monodromy(g: int, k: int) -> MappingClassWord:
    """A_g^phi (t_x t_y t_z)^k (t_a t_b)^{2(g+1-k)}; phi carries (c1, c3) to (a, b)."""
    if not 0 <= k <= g + 1:
        raise ParamOutOfRange(f"k={k} outside 0..{g + 1}")
    return a_word(g) + mcg.word("x", "y", "z") * k + mcg.word("a", "b") * (2 * (g + 1 - k))


def v_word(g: int, k: int = 0) -> MappingClassWord:
    """V_{g,2k} = A^phi (xyz)^k (abcd)^{2(g+1-k)} r(reverse(A^phi (xyz)^k)) r^-1."""
    if not 0 <= k <= g + 1:
        raise ParamOutOfRange(f"k={k} outside 0..{g + 1}")
    head = a_word(g) + mcg.word("x", "y", "z") * k
    mid = mcg.word("a", "b", "c", "d") * (2 * (g + 1 - k))
    return mcg.reversed_double_word(head + mid, head)


def build_family(name: str, **params) -> PositiveFactorization:
    """Named monodromies: Wg, Vg, Vg2k, N0, Nk, En (elliptic), XgLF (hyperelliptic involution squared)."""
    if name == "Wg":
        g = params["g"]
        return PositiveFactorization(_lantern_surface(g), w_word(g), 0, True, True, name=f"W{g}")
    if name == "Vg":
        g = params["g"]
        return PositiveFactorization(_lantern_surface(g), v_word(g, 0), 0, True, g == 2,
                                     name=f"V{g}")
    if name == "Vg2k":
        g, k = params["g"], params["k"]
        s = _lantern_surface(g)
        # the hyperelliptic formula applies in genus 2 (and trivially when no lantern is used)
        return PositiveFactorization(s, v_word(g, k), 0, True, g == 2 or k == 0, name=f"V{g},{2 * k}")
    if name == "N0":
        return PositiveFactorization(mcg.standard_surface(2, lantern=False), None, 0, True,
                                     known_chars=chars_from(3, -3, 2), name="N0")
    if name == "Nk":
        k = params["k"]
        if k < 1:
            raise ParamOutOfRange("N_k needs k >= 1")
        n0 = build_family("N0")
        out = fiber_sum_fibrations(n0, trivial_fibration(n0.surface, k))
        return replace(out, name=f"N{k}")
    if name in ("En", "E(n)-word"):
        n = params["n"]
        if n < 1:
            raise ParamOutOfRange("E(n) needs n >= 1")
        return PositiveFactorization(mcg.torus_surface(), mcg.word("a", "b") * (6 * n), 0, True,
                                     True, name=f"E({n})")
    if name == "XgLF":
        g = params["g"]
        if g < 1:
            raise ParamOutOfRange("genus must be positive")
        return PositiveFactorization(mcg.standard_surface(g, lantern=False), mcg.chain_word(g) * 2,
                                     0, True, True, name=f"X{g}LF")
    raise ParamOutOfRange(f"unknown family {name!r}")


def lantern_family(g: int, count: int) -> MappingClassWord:
    """V_g after `count` lantern substitutions, each at the first remaining abcd block."""
    w = v_word(g, 0)
    for _ in range(count):
        at = mcg.find_lantern(w)
        if at < 0:
            raise ParamOutOfRange(f"no lantern block left after {_} substitutions")
        w = mcg.lantern_substitute(w, at)
    return w


# the H_1 relators of DX_{2,6} as written over c1..c5 on the genus two fiber
DX26_RELATORS = (
    (-1, 1, 0, 0, 0),
    (0, -1, 1, 0, 0),
    (0, 0, -1, 1, 0),
    (0, 0, 0, -1, 1),
    (0, 0, 0, 1, 1),
    (1, 0, 1, 0, 1),
)
