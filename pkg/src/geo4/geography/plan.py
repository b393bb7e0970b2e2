"""Ordered rule list mapping a lattice point to a construction recipe.

Work happens in (c1^2, chi_h) coordinates. For even m the target is the
Z2-construction along a genus-2 surface of a simply connected Y with
(c_Y, chi_Y) = (5m - n, m/2); for odd m the point itself has
(c, chi) = (5m + 4 - n, (m + 1)/2). Points with sigma > 1 are planned at the
mirror point and wrapped in an orientation reversal. First match wins.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from ..dsl import Node
from ..errors import NoSolution, OutOfRegion
from . import recipes as R
from .decompose import Decomposition, decompose
from .region import LatticePoint, in_region, point

CITATION = "baykur2024smooth"

# anchors shared by several rules
A_COMPLEMENT_H = ("Y has a symplectically embedded genus two surface H such that mu_H is trivial in Y - H, "
                  "so the Z2-construction along H has order two fundamental group")
A_LUTT_SC = "+-1 Luttinger surgeries on T1 and T2 of a minimal telescoping triple give a simply connected manifold"
A_ODD_TRIPLE = "the odd surface in Z - (T1 u T2) is not affected"
A_HALF_EK = ("pi_1(Z #_{T1=Fiber} E(k)) is generated freely by b_2, and after the 1/2 surgery we obtain a "
             "relation b_2^2")
A_E22 = ("fiber summing with E(k)_{2,2}, the manifold with fundamental group of order two: Seifert-Van Kampen "
         "gives order two")
A_ODD_C = "fiber sum Z with S_{1,1} along T1 and apply 1/2-surgery along T2; generated by b_2 with order two"
A_DX_SC = "all the vanishing cycles of X_g are in DX_{g,2k}, which makes the latter simply-connected"
A_DX26 = ("the subfactorization t_1^{t_2}t_2^{t_3}t_3^{t_4}t_4^{t_5}t_5^4 guarantees simply-connectedness "
          "of DX_{2,6}")
A_DX8_SC = "all of the vanishing cycles in V_g remain vanishing cycles in V_{g,8}"
A_DX8_ODD = "DX_{g,2k} is non-spin"
A_RELMIN = "after two blow-ups, we get a relatively minimal pair (W~, Sigma~)"
A_RELMIN_B = "B blown up once with the resolved genus three surface is a relatively minimal pair"


@dataclass(frozen=True)
class Realized:
    point: LatticePoint
    recipe: Node
    rule: str
    stage: str

    status = "Realized"

    @property
    def recipe_id(self) -> str:
        return self.recipe.get("id")


@dataclass(frozen=True)
class ExternalReference:
    point: LatticePoint
    citation: str
    reason: str

    status = "ExternalReference"
    recipe_id = ""


@dataclass(frozen=True)
class Open:
    point: LatticePoint
    reason: str

    status = "Open"
    recipe_id = ""


PlanResult = Union[Realized, ExternalReference, Open]


# ---------------------------------------------------------------------------
# telescoping sums


def telescoping(d: Decomposition) -> R.Built:
    """B_g, B, C, D blocks summed along tori (the genus-1 sum adds nothing)."""
    parts = []
    b = d.b
    if d.g:
        parts.append(R.block("Bg", g=d.g))
        b -= 1
    parts += [R.block("B")] * b + [R.block("C")] * d.c + [R.block("D")] * d.d
    if not parts:
        raise NoSolution("empty telescoping sum")
    return R.fiber_sum(1, parts, note="telescoping triples summed along tori")


def _even_z(halfc: int, chi: int) -> R.Built:
    """Simply connected Y realizing (2 halfc, chi) with a genus-2 surface H of trivial meridian."""
    d = decompose(halfc, chi)
    z = telescoping(d)
    if d.k == 0:
        return R.luttinger(z, count=2, torus="T1_T2", flags=[R.flag("pi1", "Trivial", A_LUTT_SC)])
    s = R.fiber_sum(1, [z, R.block("E", k=d.k)], note="T2 = fiber of E(k)")
    return R.luttinger(s, count=1, torus="T1", flags=[R.flag("pi1", "Trivial", "a single Luttinger surgery on "
                                                               "Z #_{T2=Fiber} E(k) is simply connected")])


_ODD_EXTRA = {"S11": (1, 2), "X312": (7, 2), "P58": (21, 3)}


def _odd_y(c: int, chi: int, extra: str) -> R.Built:
    """Simply connected Y for odd c built from a telescoping sum and S11, X312 or P58."""
    dc, dchi = _ODD_EXTRA[extra]
    cp, chip = c - dc, chi - dchi
    x = R.block(extra)
    if cp == 0:
        return R.fiber_sum(1, [R.block("E", k=chip), x], flags=[
            R.flag("pi1", "Trivial", "E(k) has a section, the torus in " + extra + " has trivial meridian")])
    d = decompose(cp // 2, chip)
    z = telescoping(d)
    if d.k == 0:
        s = R.fiber_sum(1, [z, x], note=extra + " along T1")
        return R.luttinger(s, count=1, torus="T2", flags=[
            R.flag("pi1", "Trivial", "fiber sum Z with " + extra + " along T1, Luttinger surgery on T2")])
    return R.fiber_sum(1, [x, z, R.block("E", k=d.k)], note=extra + " along T2, E(k) along T1",
                       flags=[R.flag("pi1", "Trivial", "pi_1(S_{1,1} #_{T2} Z) is trivial")])


def _z2h(y: R.Built, anchor: str = A_COMPLEMENT_H) -> R.Built:
    return R.z2(2, R.with_flags(y, [R.flag("complement", True, anchor)]))


def y_g2k(g: int, k: int) -> R.Built:
    """Fiber-reversing double of X_g, 2k lantern substitutions, quotient by the free involution."""
    dx = R.double(g, R.block("XgLF", g=g))
    if k == 4:
        lf = [R.flag("pi1", "Trivial", A_DX8_SC)]
    elif (g, k) == (2, 3):
        lf = [R.cert("dx26_h1", "h1", "H_1(DX_{2,6}) = 0 from c_1 + c_3 + c_5 = 0 and 2c_1 = 0"),
              R.flag("pi1", "Trivial", A_DX26)]
    else:
        lf = [R.flag("pi1", "Trivial", A_DX_SC)]
    lant = R.lantern(dx, 2 * k, flags=lf)
    qf = [R.flag("parity", "Odd", A_DX8_ODD)] if k == 4 else []
    return R.quotient(g, lant, flags=qf)


# ---------------------------------------------------------------------------
# even m


def _plan_even(m: int, n: int) -> Optional[tuple[str, str, R.Built]]:
    chi = m // 2
    cy = 5 * m - n
    if cy == -4:
        return "z2-xg", "main", R.z2(m, R.block("XgLF", g=m))
    if cy in (-3, -2, -1):
        return "y-g2k", "main", y_g2k(m, cy + 4)
    if cy == 0:
        if m >= 12:
            y = R.fiber_sum(1, [R.block("E", k=4), R.block("E2", k=chi - 4)], note="Lambda = T", flags=[
                R.flag("pi1", "Trivial", "Lambda intersects a sphere, so pi_1(E(4)-Lambda) is trivial")])
            return "z2-e4-en2", "main", _z2h(y, "Y - Sigma is also simply-connected")
        if m in (4, 6, 8, 10):
            return "y-g8", "main", y_g2k(m, 4)
        return None
    if cy > 0 and cy % 2 == 0:
        return "z2-telescoping", "main", _z2h(_even_z(cy // 2, chi))
    if cy > 0:
        for extra, lo, hi, lo_strict in (("S11", 1, 8 * chi - 17, False), ("X312", 7, 8 * chi - 11, False),
                                         ("P58", 21, 8 * chi - 5, True)):
            if (cy > lo if lo_strict else cy >= lo) and cy <= hi:
                return f"z2-odd-{extra.lower()}", "main", _z2h(_odd_y(cy, chi, extra))
    if cy == 8 * chi - 3 and chi >= 2:
        nk = R.block("Nk", k=chi)
        s = nk
        for count, torus in ((1, "J1"), (1, "J2"), (chi, "T"), (chi, "L")):
            s = R.luttinger(s, count=count, torus=torus)
        if chi <= 3:
            fl = [R.cert(f"sigma_minus3_k{chi}", "complement", "the Luttinger schedule on N_k kills pi_1(N_k' - F)")]
        else:
            fl = [R.flag("complement", True, "the Luttinger schedule on N_k kills pi_1(N_k' - F)")]
        return "z2-nk", "main", R.z2(2, R.with_flags(s, fl))
    return _sporadic_even(m, n)


def _sporadic_even(m: int, n: int) -> Optional[tuple[str, str, R.Built]]:
    if (m, n) == (4, 19):
        return "z2-s11", "sporadic", R.z2(2, R.block("S11"))
    if (m, n) == (4, 17):
        return "z2-r21", "sporadic", R.z2(2, R.block("R21"))
    if (m, n) in ((4, 9), (4, 11)):
        x = R.luttinger(R.block("C" if n == 9 else "D"), count=2, torus="T1_T2",
                        flags=[R.flag("pi1", "Trivial", A_LUTT_SC)])
        s = R.fiber_sum(2, [x, R.block("Zprime")], note="H = Sigma_bar",
                        flags=[R.cert("zprime_complement", "complement", "pi_1(Y_k - H') = 1")])
        return "z2-zprime", "sporadic", R.z2(2, s)
    if (m, n) == (6, 13):
        s = R.fiber_sum(2, [R.block("LF8"), R.block("Prod", g1=2, g2=2)], note="regular Sigma_2 fibers")
        s = R.luttinger(s, count=4, torus="ai_x_c1",
                        flags=[R.cert("r613_complement", "complement",
                                      "Luttinger surgeries on a_1 x c_1, b_1 x c'_1, a_2 x c_1, b_2 x c'_1")])
        return "z2-r613", "sporadic", R.z2(2, s)
    if (m, n) == (6, 15):
        s = R.fiber_sum(2, [R.block("LF12"), R.block("Prod", g1=1, g2=2)], note="regular Sigma_2 fibers")
        s = R.luttinger(s, count=2, torus="a_x_c1",
                        flags=[R.cert("r615_complement", "complement", "two Luttinger surgeries over the torus base")])
        return "z2-r615", "sporadic", R.z2(2, s)
    if (m, n) == (6, 11):
        bh = R.luttinger(R.block("B"), count=2, torus="T1_T2", flags=[R.flag("pi1", "Trivial", A_LUTT_SC)])
        s = R.fiber_sum(2, [R.block("LF4"), bh], note="Sigma = H")
        return "z2-lf4-b", "sporadic", _z2h(s, "the gluing map trivializes mu_H, so pi_1(Y - H') reduces to "
                                                "pi_1(B^ - H'), which is trivial")
    return None


# ---------------------------------------------------------------------------
# odd m


def _half(s: R.Built, cert_name: Optional[str] = "half_surgery", anchor: str = A_ODD_C) -> R.Built:
    if cert_name:
        fl = [R.cert(cert_name, "pi1", "1/1 surgery on T1 and 1/2 surgery on T2 give order two")]
    else:
        fl = [R.flag("pi1", "Z2", anchor)]
    return R.luttinger(s, count=1, coeff="1/2", torus="T2", curve="b2", flags=fl)


def _plan_odd(m: int, n: int) -> Optional[tuple[str, str, R.Built]]:
    chi = (m + 1) // 2
    c = 5 * m + 4 - n
    if c == 0:
        if m >= 3:
            return "z2-en2", "main", R.z2(1, R.block("E2", k=chi))
        return None
    if c % 2 == 0:
        d = decompose(c // 2, chi)
        z = telescoping(d)
        if d.k == 0:
            return "half-telescoping", "main", _half(R.luttinger(z, count=1, torus="T1", curve="a1"))
        s = R.fiber_sum(1, [z, R.block("E", k=d.k)], note="T1 = fiber of E(k)")
        return "half-telescoping-ek", "main", _half(s, None, A_HALF_EK)
    for extra, lo, hi in (("S11", 1, 8 * chi - 17), ("X312", 7, 8 * chi - 11), ("P58", 21, 8 * chi - 5)):
        if lo < c <= hi:
            dc, dchi = _ODD_EXTRA[extra]
            d = decompose((c - dc) // 2, chi - dchi)
            z = telescoping(d)
            if d.k == 0:
                s = R.fiber_sum(1, [z, R.block(extra)], note=extra + " along T1")
                return f"half-{extra.lower()}", "main", _half(s, None, A_ODD_C)
            s = R.fiber_sum(1, [R.block(extra), z, R.block("E22", k=d.k)], note=extra + " along T2, E(k)_{2,2} along T1",
                            flags=[R.flag("pi1", "Z2", A_E22)])
            return f"{extra.lower()}-e22", "main", s
    if c in (1, 7) and chi >= 3:
        extra = "S11" if c == 1 else "X312"
        s = R.fiber_sum(1, [R.block(extra), R.block("E22", k=chi - 2)], flags=[
            R.flag("pi1", "Z2", "replace E(k)_{2,3} with E(k)_{2,2}: order two fundamental group by "
                                "Seifert-Van Kampen")])
        return f"{extra.lower()}-e22", "main", s
    if c == 8 * chi - 3 and m >= 5:
        k = (m - 1) // 2
        s = R.luttinger(R.block("Pk", k=k), count=1, coeff="1/2", torus="T_k", curve="lambda",
                        flags=[R.cert("pk_half_surgery", "pi1", "1/2 Luttinger surgery on T_k along lambda")])
        return "pk-half", "main", s
    return _sporadic_odd(m, n)


def _sporadic_odd(m: int, n: int) -> Optional[tuple[str, str, R.Built]]:
    if (m, n) in ((3, 16), (3, 18)):
        return "y-g2k", "sporadic", y_g2k(3, 3 if n == 16 else 1)
    if (m, n) in ((3, 6), (3, 8), (3, 10)):
        x = {6: "B", 8: "C", 10: "D"}[n]
        s = R.fiber_sum(2, [R.block(x), R.block("Zprime")], note="H = Sigma_bar")
        return "half-zprime", "sporadic", _half(R.luttinger(s, count=1, torus="T1", curve="a1"))
    if (m, n) in ((5, 10), (5, 12), (5, 14)):
        x = {10: "B", 12: "C", 14: "D"}[n]
        left = R.blow_up(R.block(x), 1, flags=[R.flag("relmin", True, A_RELMIN_B)])
        right = R.blow_up(R.block("Prod", g1=1, g2=2), 2, flags=[R.flag("relmin", True, A_RELMIN)])
        s = R.fiber_sum(3, [left, right], note="resolved genus three surfaces")
        return "half-genus3", "sporadic", _half(R.luttinger(s, count=1, torus="T1", curve="a1"))
    return None


# ---------------------------------------------------------------------------
# final stage


def _final(m: int, n: int) -> Optional[tuple[str, R.Built]]:
    if (m, n) == (1, 4):
        s = R.fiber_sum(2, [R.block("M11", r=1, q=2), R.block("Zpp", q=1, r=1)], flags=[
            R.cert("r14_amalgam", "pi1", "M(1,1/2) glued to Z''(1,1)")])
        return "m11-zpp", s
    if (m, n) == (1, 6):
        s = R.fiber_sum(2, [R.block("W1"), R.block("Zpp", q=2, r=1)], flags=[
            R.cert("r16_amalgam", "pi1", "W_1 glued to Z''(1/2,1)")])
        return "w1-zpp", s
    if (m, n) == (2, 5):
        s = R.fiber_sum(2, [R.block("M11", r=1, q=1), R.block("Zpp", q=1, r=1)], flags=[
            R.cert("r25_complement", "complement", "M(1,1) glued to Z''(1,1) minus a parallel surface")])
        return "z2-m11-zpp", R.z2(2, s)
    if (m, n) == (2, 7):
        s = R.fiber_sum(2, [R.block("W1"), R.block("Zpp", q=1, r=1)], flags=[
            R.cert("r27_complement", "complement", "W_1 glued to Z''(1,1) minus a parallel surface")])
        return "z2-w1-zpp", R.z2(2, s)
    if (m, n) in ((1, 8), (1, 9), (3, 12), (3, 14)):
        name = {(1, 8): "LF8z", (1, 9): "LF9z", (3, 12): "LF12z", (3, 14): "LF14z"}[(m, n)]
        return "lf-" + name.lower(), R.block(name)
    if (m, n) in ((2, 9), (2, 10), (4, 13), (4, 15)):
        name = {(2, 9): "LF8", (2, 10): "LF9", (4, 13): "LF12", (4, 15): "LF14"}[(m, n)]
        fl = [R.flag("parity", "Odd", "its double cover is a Lefschetz fibration containing a separating "
                                      "vanishing cycle, hence is odd")] if (m, n) == (2, 10) else []
        return "z2-" + name.lower(), R.z2(2, R.block(name), flags=fl)
    return None


FINAL_POINTS = ((1, 4), (1, 6), (1, 8), (1, 9), (2, 5), (2, 7), (2, 9), (2, 10), (3, 12), (3, 14), (4, 13),
                (4, 15))


# ---------------------------------------------------------------------------


def _plan_nonpositive(m: int, n: int) -> Optional[tuple[str, str, R.Built]]:
    """sigma <= -2: final-stage points first, then the main and sporadic rules."""
    f = _final(m, n)
    if f is not None:
        return f[0], "final", f[1]
    return _plan_even(m, n) if m % 2 == 0 else _plan_odd(m, n)


def plan(p) -> PlanResult:
    p = point(p)
    if not in_region(p):
        raise OutOfRegion(f"{p} is outside 4 + 5m >= n, 4 + 5n >= m, m, n > 0")
    m, n = p
    if m == n and m <= 7:
        return Open(p, "signature zero point not covered by any construction")
    if abs(m - n) <= 1:
        return ExternalReference(p, CITATION, "signature in {-1, 0, 1}")
    mirrored = m > n
    q = p.mirror() if mirrored else p
    hit = _plan_nonpositive(*q)
    if hit is None:
        raise NoSolution(f"planner has no rule for {q}")
    rule, stage, built = hit
    rid = f"{stage}/{rule}/{q.m}_{q.n}"
    if mirrored:
        built = R.reverse(built)
        rid = f"{stage}/mirror-{rule}/{m}_{n}"
    return Realized(p, R.recipe(rid, m, n, stage, built), rule, stage)


def recipe_for(p) -> Node:
    r = plan(p)
    if not isinstance(r, Realized):
        raise NoSolution(f"{point(p)} has no recipe ({r.status})")
    return r.recipe
