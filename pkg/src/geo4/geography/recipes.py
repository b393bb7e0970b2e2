"""Recipe builders.

Builders track (c1^2, chi_h) with the block constants below and stamp every
node with the expected (e, sigma) = (12 chi - c, c - 8 chi). The validator
recomputes (e, sigma) from the block table and the operation rules, so the
two bookkeepings check each other.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..dsl import Ident, Node

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

# (c1^2, chi_h) of the blocks, as functions of their parameters
CONSTS = {
    "CP2": lambda: (9, 1),
    "Prod": lambda g1, g2: (8 * (1 - g1) * (1 - g2), (1 - g1) * (1 - g2)),
    "M": lambda: (0, 0),
    "W1": lambda: (-4, 0),
    "W2": lambda: (-2, 0),
    "Zg": lambda g: (8 * (1 - g) * -1, (1 - g) * -1),
    "B": lambda: (6, 1),
    "C": lambda: (4, 1),
    "D": lambda: (2, 1),
    "Bg": lambda g: (8 * g + 6, g + 1),
    "E1": lambda: (0, 1),
    "E": lambda k: (0, k),
    "E2": lambda k: (0, k),
    "E22": lambda k: (0, k),
    "S11": lambda: (1, 2),
    "X312": lambda: (7, 2),
    "P58": lambda: (21, 3),
    "Pk": lambda k: (8 * k + 5, k + 1),
    "R21": lambda: (3, 2),
    "Zprime": lambda: (-1, 0),
    "Zpp": lambda q, r: (-1, 0),
    "M11": lambda r, q: (-2, 0),
    "XgLF": lambda g: (4 - 4 * g, 1),
    "N0": lambda: (-3, 0),
    "Nk": lambda k: (8 * k - 3, k),
    "LF4": lambda: (5, 1),
    "LF8": lambda: (1, 1),
    "LF9": lambda: (0, 1),
    "LF12": lambda: (7, 2),
    "LF14": lambda: (5, 2),
    "LF8z": lambda: (1, 1),
    "LF9z": lambda: (0, 1),
    "LF12z": lambda: (7, 2),
    "LF14z": lambda: (5, 2),
}


@dataclass(frozen=True)
class Built:
    node: Node
    c: int
    chi: Fraction

    @property
    def e(self) -> int:
        return _int(12 * self.chi - self.c)

    @property
    def sigma(self) -> int:
        return _int(self.c - 8 * self.chi)


def _int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ValueError(f"non-integral characteristic number {x}")
    return int(x)


def _stamp(kind: str, args: tuple, kw: list, c, chi, flags=()) -> Built:
    chi = Fraction(chi)
    b = Built(Node(kind), c, chi)
    kw = list(kw)
    nested = [x for x in kw if isinstance(x[1], (Node, list))]
    kw = [x for x in kw if x not in nested] + [("e", b.e), ("sigma", b.sigma)]
    if flags:
        kw.append(("flags", list(flags)))
    kw += nested
    return Built(Node(kind, args, tuple(kw)), c, chi)


def flag(prop: str, value, anchor: str) -> Node:
    v = value if isinstance(value, bool) else Ident(str(value))
    return Node("Flag", (Ident(prop), v), (("anchor", anchor),))


def cert(name: str, gives: str, anchor: str) -> Node:
    return Node("Cert", (Ident(name),), (("gives", Ident(gives)), ("anchor", anchor)))


def with_flags(b: Built, flags) -> Built:
    """Attach certificate or attested flags to an already built node."""
    old = list(b.node.get("flags", []) or [])
    return Built(b.node.replace_kw("flags", old + list(flags)), b.c, b.chi)


def block(name: str, flags=(), **params) -> Built:
    c, chi = CONSTS[name](**params)
    return _stamp("Block", (Ident(name),), params.items(), c, chi, flags)


def fiber_sum(genus: int, parts: list[Built], flags=(), note: Optional[str] = None) -> Built:
    if len(parts) == 1:
        return parts[0]
    n = len(parts) - 1
    c = sum(p.c for p in parts) + 8 * (genus - 1) * n
    chi = sum(p.chi for p in parts) + (genus - 1) * n
    kw = [("genus", genus), ("parts", [p.node for p in parts])]
    if note:
        kw.append(("note", note))
    return _stamp("FiberSum", (), kw, c, chi, flags)


def luttinger(child: Built, count: int = 1, coeff=1, torus: Optional[str] = None,
              curve: Optional[str] = None, flags=()) -> Built:
    kw = [("count", count), ("coeff", Fraction(coeff))]
    for name in (torus, curve):
        if name and not _IDENT.fullmatch(name):
            raise ValueError(f"{name!r} is not a DSL identifier")
    if torus:
        kw.append(("torus", Ident(torus)))
    if curve:
        kw.append(("curve", Ident(curve)))
    kw.append(("child", child.node))
    return _stamp("Luttinger", (), kw, child.c, child.chi, flags)


def blow_up(child: Built, count: int, flags=()) -> Built:
    return _stamp("BlowUp", (), [("count", count), ("child", child.node)], child.c - count, child.chi, flags)


def z2(g: int, child: Built, flags=()) -> Built:
    return _stamp("Z2", (), [("g", g), ("child", child.node)], child.c + 4 * g - 4,
                  child.chi + Fraction(g - 1, 2), flags)


def double(g: int, child: Built, flags=()) -> Built:
    return _stamp("FiberReversingDouble", (), [("g", g), ("child", child.node)], 2 * child.c + 8 * g - 8,
                  2 * child.chi + g - 1, flags)


def lantern(child: Built, count: int, flags=()) -> Built:
    return _stamp("LanternSub", (), [("count", count), ("child", child.node)], child.c + count, child.chi,
                  flags)


def quotient(g: int, child: Built, flags=()) -> Built:
    return _stamp("Quotient", (), [("g", g), ("child", child.node)], Fraction(child.c, 2), child.chi / 2,
                  flags)


def reverse(child: Built, flags=()) -> Built:
    e, s = child.e, -child.sigma
    return _stamp("OrientationReversal", (), [("child", child.node)], 2 * e + 3 * s, Fraction(e + s, 4), flags)


def recipe(rid: str, m: int, n: int, stage: str, root: Built) -> Node:
    return Node("Recipe", (), (("id", rid), ("m", m), ("n", n), ("stage", Ident(stage)), ("root", root.node)))
