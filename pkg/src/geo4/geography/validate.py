"""Fold a recipe tree into a ManifoldDescriptor.

Every construction node carries its expected (e, sigma) as keyword arguments;
the folded value must match or InvariantMismatch is raised. pi_1, parity,
minimality and irreducibility are propagated by fixed rules, by the block
table, by certificates from geo4.certificates, or by attested flags. Every
flag and certificate reference must name an anchor.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .. import certificates
from ..dsl import Ident, Node
from ..errors import InvariantMismatch, MissingAnchor, RuleNotApplicable
from ..invariants import (
    CharNumbers,
    FiberSumMeta,
    ManifoldDescriptor,
    Parity,
    Pi1Class,
    StandardModel,
    TRIVIAL,
    UNKNOWN_PI1,
    Verdict,
    Z2,
    Z2Kind,
    blow_up_chars,
    chars_from,
    classify,
    fiber_sum_chars,
    hk_irreducible,
    infer_parity,
    lantern_chars,
    product_chars,
    usher_minimality,
    with_b1,
    z2_table_chars,
)
from . import blocks

_PI1 = {"Trivial": TRIVIAL, "Z2": Z2, "Z": Pi1Class("FreeAbelian", 1), "Z^2": Pi1Class("FreeAbelian", 2),
        "Unknown": UNKNOWN_PI1}
FLAG_PROPS = ("pi1", "complement", "odd_surface", "parity", "minimal", "relmin", "irreducible",
              "symplectic")


@dataclass(frozen=True)
class State:
    chars: CharNumbers
    pi1: Pi1Class = UNKNOWN_PI1
    symplectic: bool = False
    minimal: Verdict = field(default_factory=Verdict)
    relmin: bool = False
    complement: bool = False
    odd_surface: bool = False
    parity: Parity = Parity.Unknown
    irreducible: Verdict = field(default_factory=Verdict)
    chain: tuple = ()  # (rule, anchor) pairs


@dataclass(frozen=True)
class Validation:
    descriptor: ManifoldDescriptor
    model: StandardModel
    chain: tuple
    nodes: int


# ---------------------------------------------------------------------------
# helpers


def _ident(v) -> str:
    return v.text if isinstance(v, Ident) else str(v)


def _params(node: Node) -> dict:
    return {k: v for k, v in node.kwargs if k not in ("e", "sigma", "flags", "note")}


def _check_expected(node: Node, chars: CharNumbers, strict: bool):
    e, s = node.get("e"), node.get("sigma")
    if e is None or s is None:
        if strict:
            raise InvariantMismatch(f"{node.kind} node carries no expected (e, sigma)")
        return
    if (int(e), int(s)) != (chars.e, chars.sigma):
        raise InvariantMismatch(
            f"{node.kind}{'(' + node.name + ')' if node.name else ''}: expected (e, sigma)=({e}, {s}), "
            f"folded ({chars.e}, {chars.sigma})")


def _anchor(flag: Node) -> str:
    a = flag.get("anchor")
    if not isinstance(a, str) or not a.strip():
        raise MissingAnchor(f"{flag.kind}({', '.join(_ident(x) for x in flag.args)}) has no anchor")
    return a


def _cert_value(name: str, prop: str):
    cert = certificates.run(name)
    if not cert.passed:
        raise InvariantMismatch(f"certificate {name} failed: {cert.claim}")
    claim = cert.claim
    if prop == "pi1" and claim in ("order 1", "order 2"):
        return TRIVIAL if claim == "order 1" else Z2
    if prop == "complement" and claim == "order 1":
        return True
    if prop == "h1" and claim.startswith("H1"):
        return claim
    raise InvariantMismatch(f"certificate {name} ({claim}) cannot certify {prop}")


def _apply_flags(st: State, node: Node) -> State:
    for fl in node.get("flags", []) or []:
        if not isinstance(fl, Node) or fl.kind not in ("Flag", "Cert"):
            raise InvariantMismatch(f"unexpected flag entry {fl!r}")
        anchor = _anchor(fl)
        if fl.kind == "Cert":
            name = _ident(fl.args[0])
            prop = _ident(fl.get("gives", Ident("pi1")))
            value = _cert_value(name, prop)
            why = f"certificate {name}"
        else:
            prop = _ident(fl.args[0])
            raw = fl.args[1] if len(fl.args) > 1 else True
            value = raw if isinstance(raw, bool) else _ident(raw)
            why = "attested"
        if prop == "h1":
            st = replace(st, chain=st.chain + ((f"{value} ({why})", anchor),))
            continue
        if prop not in FLAG_PROPS:
            raise InvariantMismatch(f"unknown flag property {prop!r}")
        if prop == "pi1":
            pi = value if isinstance(value, Pi1Class) else _PI1[value]
            if st.pi1.kind != "Unknown" and st.pi1 != pi:
                raise InvariantMismatch(f"pi_1 flag {pi} contradicts derived {st.pi1}")
            st = replace(st, pi1=pi)
        elif prop == "parity":
            par = Parity(value)
            if st.parity is not Parity.Unknown and st.parity is not par:
                raise InvariantMismatch(f"parity flag {par} contradicts derived {st.parity}")
            st = replace(st, parity=par)
        elif prop in ("minimal", "irreducible"):
            st = replace(st, **{prop: Verdict("Yes", f"{why}: {anchor}")})
        else:
            st = replace(st, **{prop: bool(value)})
        st = replace(st, chain=st.chain + ((f"{prop} ({why})", anchor),))
    return st


def _hk(st: State) -> State:
    if st.irreducible.yes:
        return st
    d = ManifoldDescriptor(chars=st.chars, pi1=st.pi1, minimal=st.minimal, symplectic=st.symplectic)
    try:
        d = hk_irreducible(d)
    except RuleNotApplicable:
        return st
    return replace(st, irreducible=d.irreducible,
                   chain=st.chain + (("irreducible (Hamilton-Kotschick)",
                                      "minimal symplectic with residually finite pi_1"),))


def _usher(parts: list[State], genus: int) -> Verdict:
    acc = parts[0]
    for nxt in parts[1:]:
        res = usher_minimality(FiberSumMeta(
            genus=genus,
            left_minus1_sphere=not acc.relmin, right_minus1_sphere=not nxt.relmin,
            left_s2_bundle_section=False, right_s2_bundle_section=False,
            left_minimal=acc.minimal.yes, right_minimal=nxt.minimal.yes))
        if res != "Minimal":
            return Verdict("No" if res == "NotMinimal" else "Unknown", f"Usher: {res}")
        acc = replace(acc, relmin=True, minimal=Verdict("Yes"))
    return Verdict("Yes", "Usher: symplectic sum of relatively minimal pairs")


# ---------------------------------------------------------------------------
# folding


def _fold_block(node: Node, strict: bool) -> State:
    name = node.name
    if name is None:
        raise InvariantMismatch("Block node without a name")
    try:
        sp = blocks.spec(name)
    except KeyError as exc:
        raise InvariantMismatch(str(exc)) from exc
    params = {k: v for k, v in _params(node).items() if k in sp.params}
    missing = [p for p in sp.params if p not in params]
    if missing:
        raise InvariantMismatch(f"block {name} missing parameters {missing}")
    if not sp.domain(**params):
        raise InvariantMismatch(f"block {name} outside its domain: {params}")
    b1 = sp.b1(**params) if sp.b1 else None
    if name == "Prod":
        chars = product_chars(params["g1"], params["g2"])
    elif sp.derivation is not None:
        derived = _fold(sp.derivation(**params), strict=False).chars
        if sp.chars is not None and sp.chars(**params) != derived.es:
            raise InvariantMismatch(f"block {name}: curated {sp.chars(**params)} != derived {derived.es}")
        chars = chars_from(derived.e, derived.sigma, b1)
    else:
        chars = chars_from(*sp.chars(**params), b1)
    minimal = sp.minimal(**params)
    st = State(chars=chars, pi1=_PI1[sp.pi1], symplectic=sp.symplectic,
               minimal=Verdict({True: "Yes", False: "No", None: "Unknown"}[minimal], sp.note),
               relmin=sp.relmin, complement=sp.complement, odd_surface=sp.odd_surface,
               chain=((f"block {name}", sp.anchor),))
    return st


def _child(node: Node) -> Node:
    c = node.get("child")
    if not isinstance(c, Node):
        raise InvariantMismatch(f"{node.kind} node without child")
    return c


def _fold(node: Node, strict: bool = True) -> State:
    k = node.kind
    if k == "Recipe":
        return _fold(node.get("root"), strict)
    if k == "Block":
        st = _fold_block(node, strict)
    elif k == "FiberSum":
        g = int(node.get("genus"))
        parts = [_fold(p, strict) for p in node.get("parts", [])]
        if len(parts) < 2:
            raise InvariantMismatch("FiberSum needs at least two parts")
        chars = parts[0].chars
        for p in parts[1:]:
            chars = fiber_sum_chars(chars, p.chars, g)
        mn = _usher(parts, g) if all(p.symplectic for p in parts) else Verdict()
        st = State(chars=chars, symplectic=all(p.symplectic for p in parts), minimal=mn,
                   relmin=mn.yes, odd_surface=any(p.odd_surface for p in parts),
                   chain=sum((p.chain for p in parts), ()) + ((f"fiber sum along genus {g}",
                                                               mn.reason or "Usher"),))
    elif k == "Luttinger":
        c = _fold(_child(node), strict)
        keep = c.minimal.yes and c.symplectic
        st = replace(c, pi1=UNKNOWN_PI1, complement=False, irreducible=Verdict(),
                     minimal=Verdict("Yes", "Luttinger surgery preserves minimality") if keep else Verdict(),
                     chars=with_b1(c.chars, None),
                     chain=c.chain + (("Luttinger surgery", "Luttinger surgery preserves minimality"),))
    elif k == "TorusSurgery":
        c = _fold(_child(node), strict)
        st = replace(c, pi1=UNKNOWN_PI1, complement=False, symplectic=False, minimal=Verdict(),
                     irreducible=Verdict(), chars=with_b1(c.chars, None))
    elif k == "BlowUp":
        c = _fold(_child(node), strict)
        n = int(node.get("count", 1))
        st = replace(c, chars=blow_up_chars(c.chars, n),
                     minimal=Verdict("No", "blow-up") if n else c.minimal,
                     relmin=c.relmin if n == 0 else False, complement=False, irreducible=Verdict(),
                     parity=Parity.Odd if n else c.parity)
    elif k == "Z2":
        g = int(node.get("g"))
        c = _fold(_child(node), strict)
        chars = z2_table_chars(c.chars, g, Z2Kind.Z2Construction)
        pi = Z2 if c.complement else UNKNOWN_PI1
        chain = c.chain
        if c.complement:
            chain += (("pi1 = Z2 (Z2-construction)", "meridian trivial in a simply connected complement "
                       "gives order two fundamental group"),)
        par = Parity.Unknown
        if c.odd_surface:
            par = Parity.Odd
            chain += (("odd form", "an odd surface disjoint from the gluing surface lifts to the double"),)
        irr, mn = Verdict(), Verdict()
        if (c.minimal.yes or c.relmin) and c.symplectic and c.complement and g >= 1:
            double = ManifoldDescriptor(chars=z2_table_chars(c.chars, g, Z2Kind.Double), pi1=TRIVIAL,
                                        minimal=Verdict("Yes", "Usher"), symplectic=True)
            if hk_irreducible(double).irreducible.yes:
                irr = Verdict("Yes", "double cover irreducible, so the Z2-construction is irreducible")
                mn = Verdict("Yes", "irreducible")
                chain += (("irreducible (double-cover rule)",
                           "the Z2-construction of M along Sigma_g is irreducible"),)
        st = State(chars=chars, pi1=pi, symplectic=False, minimal=mn, relmin=False, parity=par,
                   irreducible=irr, chain=chain)
    elif k == "FiberReversingDouble":
        g = int(node.get("g"))
        c = _fold(_child(node), strict)
        chars = z2_table_chars(c.chars, g, Z2Kind.Double)
        mn = _usher([c, c], g) if c.symplectic else Verdict()
        st = State(chars=chars, pi1=TRIVIAL if c.complement else UNKNOWN_PI1, symplectic=c.symplectic,
                   minimal=mn, relmin=mn.yes,
                   chain=c.chain + (("fiber-reversing double", "W(W^{-1})^r positive factorization"),))
    elif k == "LanternSub":
        c = _fold(_child(node), strict)
        n = int(node.get("count", 1))
        st = replace(c, chars=lantern_chars(with_b1(c.chars, None), n), pi1=UNKNOWN_PI1,
                     minimal=Verdict("Yes", "lantern substitution is a symplectic rational blow-down")
                     if c.minimal.yes else Verdict(),
                     irreducible=Verdict(),
                     chain=c.chain + (("lantern substitution", "lantern substitution amounts to a "
                                       "symplectic blowdown"),))
    elif k == "Quotient":
        g = int(node.get("g"))
        c = _hk(_fold(_child(node), strict))
        chars = z2_table_chars(with_b1(c.chars, 0) if c.pi1.kind == "Trivial" else c.chars, g,
                               Z2Kind.Quotient)
        chain = c.chain
        pi = UNKNOWN_PI1
        if c.pi1.kind == "Trivial":
            pi = Z2
            chain += (("pi1 = Z2 (free quotient)", "quotient of a simply connected manifold by a free "
                       "involution"),)
        irr = Verdict()
        if c.irreducible.yes:
            irr = Verdict("Yes", "double cover irreducible")
            chain += (("irreducible (double-cover rule)", "the quotient of an irreducible double by a free "
                       "involution is irreducible"),)
        st = State(chars=chars, pi1=pi, minimal=Verdict("Yes") if irr.yes else Verdict(), irreducible=irr,
                   chain=chain)
    elif k == "OrientationReversal":
        c = _hk(_fold(_child(node), strict))
        chars = chars_from(c.chars.e, -c.chars.sigma, c.chars.b1)
        st = replace(c, chars=chars, symplectic=False,
                     chain=c.chain + (("orientation reversal", "R_{a,b} reversed is R_{b,a}"),))
    else:
        raise InvariantMismatch(f"unknown recipe node {k}")
    st = _apply_flags(st, node)
    _check_expected(node, st.chars, strict)
    return st


def count_nodes(node: Node) -> int:
    n = 0 if node.kind in ("Flag", "Cert") else 1
    for k, v in node.kwargs:
        if k == "flags":
            continue
        if isinstance(v, Node):
            n += count_nodes(v)
        elif isinstance(v, list):
            n += sum(count_nodes(x) for x in v if isinstance(x, Node))
    return n


def validate(recipe: Node) -> ManifoldDescriptor:
    return validate_full(recipe).descriptor


def validate_full(recipe: Node) -> Validation:
    st = _hk(_fold(recipe, strict=True))
    chars = st.chars
    if chars.b1 is None and st.pi1.b1 is not None:
        chars = with_b1(chars, st.pi1.b1)
    chain = st.chain
    given = st.parity
    if given is Parity.Unknown and st.odd_surface:
        given = Parity.Odd
        chain += (("parity Odd", "surface of odd self-intersection"),)
    parity, why = infer_parity(chars, st.pi1, given)
    if given is Parity.Unknown and parity is not Parity.Unknown:
        chain += ((f"parity {parity.value}", why),)
    d = ManifoldDescriptor(chars=chars, pi1=st.pi1, parity=parity, minimal=st.minimal,
                           irreducible=st.irreducible, symplectic=st.symplectic)
    try:
        model = classify(d)
    except Exception as exc:  # insufficient certificates
        model = StandardModel("Unclassified", reason=str(exc))
    if recipe.kind == "Recipe":
        m, n = recipe.get("m"), recipe.get("n")
        if m is not None and (model.kind, model.a, model.b) != ("Rab", m, n):
            raise InvariantMismatch(f"recipe {recipe.get('id')} classifies as {model}, expected Rab({m},{n})")
    return Validation(d, model, chain, count_nodes(recipe))
