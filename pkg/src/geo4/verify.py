"""Verification suites behind `geo4 verify`: relations, words, groups and recipes.

Every check carries an anchor naming the claim it backs. Word and relation
checks are homological (necessary conditions only).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import fixtures, mcg
from . import grouppres as gp
from . import lefschetz as L
from .dsl import parse_word
from .errors import Geo4Error

SUITES = ("relations", "words", "groups", "recipes")


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{mark} {self.name} [{self.anchor}]{extra}"

    def to_json(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "passed": self.passed, "detail": self.detail,
                "seconds": round(self.seconds, 4)}


def _run(name: str, anchor: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Geo4Error as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(name, anchor, bool(ok), detail, time.perf_counter() - t)


def _is(M: mcg.SymplecticMatrix, sign: int) -> bool:
    n = M.entries.shape[0]
    return np.array_equal(M.entries, sign * np.eye(n, dtype=M.entries.dtype))


# ---------------------------------------------------------------------------
# relations


def relation_checks() -> list[Check]:
    out = []
    for g in (2, 3, 4, 5):
        s = mcg.standard_surface(g, lantern=False)
        w = mcg.chain_word(g)
        out.append(_run(f"chain_g{g}_is_minus_I", "hyperelliptic involution acts as -I",
                        lambda s=s, w=w: (_is(mcg.evaluate(s, w), -1), "")))
        out.append(_run(f"chain_g{g}_squared_is_I", "square of the hyperelliptic involution",
                        lambda s=s, w=w: (_is(mcg.evaluate(s, w * 2), 1), "")))
    for g in (2, 3):
        s = mcg.standard_surface(g)
        out.append(_run(f"V{g}_is_I", "V_g is a positive factorization of the identity",
                        lambda s=s, g=g: (_is(mcg.evaluate(s, L.v_word(g)), 1), "")))
        out.append(_run(f"W{g}_matches_chain_square", "W_g = A_g t1^(2g+2) t3^(2g+2)",
                        lambda s=s, g=g: (np.array_equal(mcg.evaluate(s, L.w_word(g)).entries,
                                                         mcg.evaluate(s, mcg.chain_word(g) * 2).entries), "")))

        def lantern(s=s, g=g):
            w = L.v_word(g)
            at = mcg.find_lantern(w)
            w2 = mcg.lantern_substitute(w, at)
            same = np.array_equal(mcg.evaluate(s, w).entries, mcg.evaluate(s, w2).entries)
            return same and len(w2) == len(w) - 1, f"at letter {at}"
        out.append(_run(f"lantern_g{g}_preserves_evaluation", "t_a t_b t_c t_d = t_x t_y t_z", lantern))
    s2 = mcg.standard_surface(2)

    def ty_z():
        lhs = mcg.twist_image(s2, mcg.word("y"), "z")
        rhs = s2.reflection.entries @ s2.curve("z").vector
        return np.array_equal(lhs, rhs), f"{lhs.tolist()} vs {rhs.tolist()}"
    out.append(_run("ty_z_equals_r_z", "t_y(z) ~ r(z)", ty_z))

    def mu():
        lhs = L.a_word(2) + mcg.word("a", "b") * 4 + mcg.word("x", "y", "z")
        rhs = mcg.t("b", -1) + mcg.t("d")
        return np.array_equal(mcg.evaluate(s2, lhs).entries, mcg.evaluate(s2, rhs).entries), ""
    out.append(_run("mu_g2_reduction", "reduces to t_b^-1 t_d", mu))
    return out


# ---------------------------------------------------------------------------
# fixtures


def _surface(kind: str, g: int) -> mcg.SurfaceModel:
    if kind == "torus":
        return mcg.torus_surface()
    return mcg.standard_surface(g, lantern=(kind == "standard"))


def word_checks(root: Optional[Path] = None) -> list[Check]:
    out = []
    for e in fixtures.load_words(root):
        def fn(e=e):
            s = _surface(e["surface"], e["genus"])
            w = parse_word(e["word"])
            ok = _is(mcg.evaluate(s, w), -1 if e["expect"] == "-I" else 1)
            detail = f"{len(w)} letters"
            if ok and e.get("chars"):
                pf = L.PositiveFactorization(s, w, 0, True, e.get("hyperelliptic", False), name=e["name"])
                c = L.total_space_chars(pf)
                ok = [c.e, c.sigma] == e["chars"]
                detail += f", (e, sigma) = ({c.e}, {c.sigma})"
            return ok, detail
        out.append(_run(f"word {e['name']}", e["anchor"], fn))
    return out


def group_checks(root: Optional[Path] = None, max_cosets: int = gp.DEFAULT_MAX_COSETS) -> list[Check]:
    out = []
    for e in fixtures.load_groups(root):
        def fn(e=e):
            G = e["group"]
            ab = gp.abelianization(G)
            ok = ab.invariant_factors == e["divisors"]
            detail = f"divisors {ab.invariant_factors}"
            if e.get("order") is not None:
                cos = gp.coset_enumeration(G, (), max_cosets)
                ok = ok and cos.finite and cos.index == e["order"]
                detail += f", {cos}"
            return ok, detail
        out.append(_run(f"group {e['name']}", e["anchor"], fn))
    return out


def recipe_checks(root: Optional[Path] = None) -> list[Check]:
    from .geography.validate import validate_full
    out = []
    for path in fixtures.recipe_paths(root):
        def fn(path=path):
            from .dsl import parse_recipe
            r = parse_recipe(path.read_text())
            v = validate_full(r)
            m, n = r.get("m"), r.get("n")
            ok = (v.model.kind, v.model.a, v.model.b) == ("Rab", m, n) and v.descriptor.irreducible.yes
            return ok, f"{v.model}, irreducible={v.descriptor.irreducible.status}, {v.nodes} nodes"
        out.append(_run(f"recipe {path.stem}", "classifies as R_(m,n), irreducible", fn))
    return out


def run_suite(name: str, root: Optional[Path] = None) -> list[Check]:
    if name == "relations":
        return relation_checks()
    if name == "words":
        return word_checks(root)
    if name == "groups":
        return group_checks(root)
    if name == "recipes":
        return recipe_checks(root)
    raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
