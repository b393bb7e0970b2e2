"""Curated building-block table.

Each entry records the block's characteristic numbers, topological metadata
and a derivation note. Sub-blocks built from products and blow-ups (W1, W2, M,
Z_g and the T^4 blow-ups) carry no curated numbers: their (e, sigma) come from
folding the derivation tree. Curated blocks with a derivation are checked
against it by the validator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from ..dsl import Ident, Node


def _leaf(name: str, **params) -> Node:
    return Node("Block", (Ident(name),), tuple(params.items()))


def _op(kind: str, child: Node, **kw) -> Node:
    return Node(kind, (), tuple(kw.items()) + (("child", child),))


def _sum(genus: int, *parts: Node) -> Node:
    return Node("FiberSum", (), (("genus", genus), ("parts", list(parts))))


def prod(g1: int, g2: int) -> Node:
    return _leaf("Prod", g1=g1, g2=g2)


@dataclass(frozen=True)
class BlockSpec:
    name: str
    params: tuple = ()
    chars: Optional[Callable[..., tuple[int, int]]] = None  # curated (e, sigma)
    derivation: Optional[Callable[..., Node]] = None
    b1: Optional[Callable[..., Optional[int]]] = None
    pi1: str = "Unknown"  # Trivial, Z2, Z, Z^2, Unknown
    symplectic: bool = True
    minimal: Callable[..., Optional[bool]] = lambda **_: None
    relmin: bool = True  # no (-1)-sphere disjoint from the gluing surface
    odd_surface: bool = False  # odd-square class disjoint from surfaces and tori
    complement: bool = False  # complement of the named surface is simply connected
    telescoping: bool = False
    tori: tuple = ()
    surfaces: tuple = ()  # (id, genus)
    domain: Callable[..., bool] = lambda **_: True
    note: str = ""
    anchor: str = ""


def _const(v):
    return lambda **_: v


TABLE: dict[str, BlockSpec] = {}


def _add(spec: BlockSpec):
    TABLE[spec.name] = spec


# base leaves, computed directly by the validator
_add(BlockSpec("CP2", chars=_const((3, 1)), b1=_const(0), pi1="Trivial", minimal=_const(True),
               note="complex projective plane", anchor="CP^2"))
_add(BlockSpec("Prod", ("g1", "g2"), b1=lambda g1, g2: 2 * g1 + 2 * g2, pi1="Unknown",
               minimal=_const(True), domain=lambda g1, g2: g1 >= 0 and g2 >= 0,
               note="product of closed surfaces, e = (2-2g1)(2-2g2), sigma = 0",
               anchor="product of surfaces"))

# sub-blocks: numbers recomputed from the derivation
_add(BlockSpec("M", derivation=lambda: prod(1, 2), b1=_const(6), minimal=_const(True),
               tori=("T1", "T2", "T3", "T4"), surfaces=(("Sigma_h'", 2),),
               note="M = T^2 x Sigma_2", anchor="M = T^2 x Sigma_2"))
_add(BlockSpec("W1", derivation=lambda: _op("BlowUp", prod(1, 0), count=4), b1=_const(2), pi1="Z^2",
               minimal=_const(False), surfaces=(("F1", 2),),
               note="W1 = T^2 x S^2 # 4 CPbar^2; blow-ups make the resolved genus-2 surface square zero",
               anchor="W_1 = T^2 x S^2 # 4 CPbar^2"))
_add(BlockSpec("W2", derivation=lambda: _op("BlowUp", prod(1, 1), count=2), b1=_const(4),
               minimal=_const(False), tori=("T1'", "T2'"), surfaces=(("F2", 2),),
               note="W2 = T^4 # 2 CPbar^2", anchor="W_2 = T^2 x T^2 # 2 CPbar^2"))
_add(BlockSpec("Zg", ("g",), derivation=lambda g: _op("Luttinger", prod(2, g), count=2 * g),
               minimal=_const(True), domain=lambda g: g >= 1, surfaces=(("Sigma_2 x pt", 2),),
               note="Z_g = Sigma_2 x Sigma_g after 2g Luttinger surgeries",
               anchor="Z_g = (Sigma_2 x Sigma_g) with 2g Luttinger surgeries"))

# telescoping triples
_TEL = dict(b1=_const(2), pi1="Z^2", minimal=_const(True), odd_surface=True, telescoping=True,
            tori=("T1", "T2"), surfaces=(("H", 2),))
_add(BlockSpec("B", chars=_const((6, -2)),
               derivation=lambda: _op("Luttinger", _sum(2, _leaf("W2"), _leaf("M")), count=4), **_TEL,
               note="B = (W2 #_{F2 = Sigma_h'} M) with 4 Luttinger surgeries",
               anchor="B = (W_2 #_{F_2=Sigma_{h'}} M)_{4 L.S.}"))
_add(BlockSpec("C", chars=_const((8, -4)),
               derivation=lambda: _op("Luttinger", _sum(2, _leaf("W1"), _leaf("M")), count=2), **_TEL,
               note="C = (W1 #_{F1 = Sigma_h'} M) with 2 Luttinger surgeries",
               anchor="C = (W_1 #_{F_1=Sigma_{h'}} M)_{2 L.S.}"))
_add(BlockSpec("D", chars=_const((10, -6)),
               derivation=lambda: _sum(2, _leaf("W1"), _leaf("W2")), **_TEL,
               note="D = W1 #_{F1 = F2} W2", anchor="D = W_1 #_{F_1=F_2} W_2"))
_add(BlockSpec("Bg", ("g",), chars=lambda g: (4 * g + 6, -2),
               derivation=lambda g: _sum(2, _leaf("B"), _leaf("Zg", g=g)),
               domain=lambda g: g >= 1, **_TEL,
               note="B_g = B #_{F_B = Sigma_2 x pt} Z_g",
               anchor="B_g = (B #_{F_B = Sigma_2 x {pt}} Z_g)"))

# elliptic surfaces
_add(BlockSpec("E1", chars=_const((12, -8)),
               derivation=lambda: _op("BlowUp", _leaf("CP2"), count=9), b1=_const(0), pi1="Trivial",
               minimal=_const(False), complement=True,
               note="E(1) = CP^2 # 9 CPbar^2", anchor="E(1) = CP^2 # 9 CPbar^2"))
_add(BlockSpec("E", ("k",), chars=lambda k: (12 * k, -8 * k),
               derivation=lambda k: _leaf("E1") if k == 1 else _sum(1, *[_leaf("E1")] * k),
               b1=_const(0), pi1="Trivial", minimal=lambda k: k >= 2, complement=True,
               domain=lambda k: k >= 1, tori=("F",),
               note="elliptic surface E(k), fiber sum of k copies of E(1)",
               anchor="E(k) elliptic surface with 12k Lefschetz singularities"))
_add(BlockSpec("E2", ("k",), chars=lambda k: (12 * k, -8 * k),
               derivation=lambda k: _op("TorusSurgery", _leaf("E", k=k), p=2, q=1, count=1),
               b1=_const(0), pi1="Trivial", minimal=_const(True), odd_surface=True, complement=True,
               domain=lambda k: k >= 2, tori=("F", "Lambda"),
               note="E(k)_2: one 2/1 torus surgery on a regular fiber; odd class lives in the nucleus",
               anchor="2-torus surgery on a regular fiber of E(n) results in an irreducible "
                      "simply-connected manifold with odd intersection form"))
_add(BlockSpec("E22", ("k",), chars=lambda k: (12 * k, -8 * k),
               derivation=lambda k: _op("TorusSurgery", _leaf("E", k=k), p=2, q=1, count=2),
               b1=_const(0), pi1="Z2", minimal=lambda k: k >= 2, domain=lambda k: k >= 1, tori=("F",),
               note="E(k)_{2,2}: two 2/1 torus surgeries on regular fibers",
               anchor="E(n)_{2,2} is a symplectic manifold with order two fundamental group"))

# simply connected and cyclic external blocks
_add(BlockSpec("S11", chars=_const((23, -15)), b1=_const(0), pi1="Trivial", minimal=_const(True),
               complement=True, tori=("F1",), surfaces=(("F2", 2),),
               note="Gompf's S_{1,1}: c1^2 = 1, chi_h = 2",
               anchor="S_{1,1} is simply-connected and has a square zero torus with a trivial meridian"))
_add(BlockSpec("X312", chars=_const((17, -9)), b1=_const(0), pi1="Trivial", minimal=_const(True),
               complement=True, tori=("T",), surfaces=(("F2", 2),),
               note="X_{3,12}: c1^2 = 7, chi_h = 2",
               anchor="X_{3,12} is simply-connected with algebraic invariants c_1^2=7 and chi_h=2"))
_add(BlockSpec("P58", chars=_const((15, -3)), b1=_const(1), pi1="Z", minimal=_const(True), tori=("T",),
               note="P_{5,8}: c1^2 = 21, chi_h = 3, pi_1 = Z",
               anchor="P_{5,8} has invariants c_1^2=21 and chi_h=3, pi_1 = Z"))
_add(BlockSpec("Pk", ("k",), chars=lambda k: (7 + 4 * k, -3), b1=_const(1), pi1="Z",
               minimal=_const(True), domain=lambda k: k >= 2, tori=("T_k",),
               note="P_k: minimal symplectic, b2 numbers (1+2k, 4+2k) after the cyclic surgery",
               anchor="P_k minimal and symplectic with (b_2^+,b_2^-)=(1+2k,4+2k), pi_1(P_k) = Z"))
_add(BlockSpec("R21", chars=_const((21, -13)), b1=_const(0), pi1="Trivial", minimal=_const(True),
               complement=True, surfaces=(("F", 2),),
               note="R_{2,1} = P_2 #_{Sigma_2} Q_1, irreducible CP^2 # ... with 3 and 16",
               anchor="R_{2,1} irreducible copy of 3CP^2 # 16 CPbar^2, pi_1(R_{2,1} - F) = 1"))

# T^4 blow-ups with Luttinger surgeries
_T4 = dict(minimal=_const(False), relmin=True)
_add(BlockSpec("Zprime", derivation=lambda: _op("Luttinger", _op("BlowUp", prod(1, 1), count=1), count=1),
               b1=_const(3), pi1="Unknown", surfaces=(("Sigma_bar", 2),), **_T4,
               note="Z' = one Luttinger surgery on T^4 # CPbar^2",
               anchor="Z' obtained through one Luttinger surgery on T^4 # CPbar^2"))
_add(BlockSpec("Zpp", ("q", "r"),
               derivation=lambda q, r: _op("Luttinger", _op("BlowUp", prod(1, 1), count=1), count=2),
               b1=_const(None), pi1="Unknown", surfaces=(("Sigma_bar", 2),), **_T4,
               note="Z''(1/q, 1/r) = two Luttinger surgeries on T^4 # CPbar^2",
               anchor="Z''(1/q,1/r) obtained through two Luttinger surgeries on T^4 # CPbar^2"))
_add(BlockSpec("M11", ("r", "q"),
               derivation=lambda r, q: _op("Luttinger", _op("BlowUp", prod(1, 1), count=2), count=2),
               b1=_const(None), pi1="Unknown", surfaces=(("Sigma_hat", 2),), **_T4,
               note="M(1/r, 1/q) = two Luttinger surgeries on T^4 # 2 CPbar^2",
               anchor="M(1/r,1/q) obtained through two Luttinger surgeries on T^4 # 2 CPbar^2"))

# Lefschetz fibrations
_add(BlockSpec("XgLF", ("g",), chars=lambda g: (4 * g + 8, -4 * g - 4),
               derivation=lambda g: _op("BlowUp", _leaf("CP2"), count=4 * g + 5),
               b1=_const(0), pi1="Trivial", minimal=_const(False), relmin=True, complement=True,
               domain=lambda g: g >= 2, surfaces=(("F", None),),
               note="genus-g hyperelliptic fibration on CP^2 # (4g+5) CPbar^2; the pair with a fiber is "
                    "relatively minimal since the untwisted double is E(g+1)",
               anchor="untwisted fiber sum with itself along F is E(g+1), so (CP^2 # (4g+5) CPbar^2, F) "
                      "is irreducible; 2-handles make the fiber complement simply-connected"))
_add(BlockSpec("N0", derivation=lambda: _op("BlowUp", prod(0, 1), count=3), b1=_const(2),
               minimal=_const(False), relmin=True, surfaces=(("F", 2),),
               note="genus-2 fibration on S^2 x T^2 # 3 CPbar^2; chars only, no monodromy word",
               anchor="genus-2 Lefschetz fibration with total space S^2 x T^2 # 3 CPbar^2"))
_add(BlockSpec("Nk", ("k",), chars=lambda k: (3 + 4 * k, -3),
               derivation=lambda k: _sum(2, _leaf("N0"), prod(2, k)),
               minimal=_const(True), domain=lambda k: k >= 1, surfaces=(("F", 2),),
               note="N_k = N0 fiber summed with Sigma_2 x Sigma_k",
               anchor="e(N_k)=3+4k and sigma(N_k)=-3; N_k is relatively minimal over a positive genus base"))
_LF = dict(b1=_const(0), pi1="Trivial", minimal=_const(True), complement=True, surfaces=(("F", 2),))
_add(BlockSpec("LF4", chars=_const((7, -3)), **_LF,
               note="minimal symplectic CP^2 # 4 CPbar^2 with a genus-2 surface of simply connected complement",
               anchor="minimal symplectic copy of CP^2 # 4 CPbar^2 with a square zero genus two surface"))
_add(BlockSpec("LF8", chars=_const((11, -7)), **_LF,
               note="minimal genus-2 fibration on an exotic CP^2 # 8 CPbar^2 with a section",
               anchor="minimal genus two Lefschetz fibration on exotic CP^2 # 8 CPbar^2, admits a section"))
_add(BlockSpec("LF9", chars=_const((12, -8)), **_LF,
               note="minimal genus-2 fibration on an exotic CP^2 # 9 CPbar^2 with a section",
               anchor="minimal genus two Lefschetz fibration on exotic CP^2 # 9 CPbar^2, admits a section"))
_add(BlockSpec("LF12", chars=_const((17, -9)), **_LF,
               note="minimal genus-2 fibration on an exotic 3CP^2 # 12 CPbar^2 with a section",
               anchor="minimal genus two Lefschetz fibration on exotic 3CP^2 # 12 CPbar^2, admits a section"))
_add(BlockSpec("LF14", chars=_const((19, -11)), **_LF,
               note="minimal genus-2 fibration on an exotic 3CP^2 # 14 CPbar^2 with a section",
               anchor="minimal genus two Lefschetz fibration on exotic 3CP^2 # 14 CPbar^2, admits a section"))
_LFZ = dict(b1=_const(0), pi1="Z2", minimal=_const(True), surfaces=(("F", 2),))
_add(BlockSpec("LF8z", chars=_const((11, -7)), odd_surface=True, **_LFZ,
               note="order-two variant of LF8 with a separating vanishing cycle",
               anchor="minimal Lefschetz fibrations on manifolds homeomorphic to R_{1,8}; separating "
                      "vanishing cycles give odd intersection forms"))
_add(BlockSpec("LF9z", chars=_const((12, -8)), odd_surface=True, **_LFZ,
               note="order-two variant of LF9 with a separating vanishing cycle",
               anchor="minimal Lefschetz fibrations on manifolds homeomorphic to R_{1,9}; separating "
                      "vanishing cycles give odd intersection forms"))
_add(BlockSpec("LF12z", chars=_const((17, -9)), **_LFZ,
               note="W1^{phi'} W1 W1 with phi' = t_{c1}^{-2} t_{c4}",
               anchor="the Lefschetz fibration with positive factorization W_1^{phi'} W_1 W_1 has pi_1 = Z_2"))
_add(BlockSpec("LF14z", chars=_const((19, -11)), **_LFZ,
               note="W2^{phi'} W2 W1, fundamental group squeezed between two order-two presentations",
               anchor="W_2^{phi'} W_2 W_1: pi_1 squeezed between presentations <b_2 | 2b_2>"))


def spec(name: str) -> BlockSpec:
    if name not in TABLE:
        raise KeyError(f"unknown block {name!r}")
    return TABLE[name]


def table_rows() -> list[dict]:
    """Flat view of the table for reports."""
    rows = []
    for s in TABLE.values():
        rows.append({"name": s.name, "params": list(s.params), "pi1": s.pi1,
                     "telescoping": s.telescoping, "tori": list(s.tori),
                     "surfaces": [list(x) for x in s.surfaces], "odd_surface": s.odd_surface,
                     "curated": s.chars is not None, "derived": s.derivation is not None,
                     "note": s.note, "anchor": s.anchor})
    return rows
