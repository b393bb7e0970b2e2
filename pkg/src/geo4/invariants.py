"""Characteristic numbers of closed 4-manifolds and the rule engine built on them.

Conventions: e is the Euler characteristic, sigma the signature, b1 the first
Betti number (None when not determined), c1sq = 2e + 3 sigma and
chih = (e + sigma)/4 kept as an exact Fraction.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .errors import (
    DescriptorRejected,
    IndivisibleQuotient,
    InsufficientCertificates,
    NegativeBetti,
    ParityMismatch,
    RuleNotApplicable,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CharNumbers:
    e: int
    sigma: int
    b1: Optional[int]
    b2plus: Optional[int]
    b2minus: Optional[int]
    c1sq: int
    chih: Fraction

    def to_json(self) -> dict:
        f = self.chih
        return {
            "e": self.e,
            "sigma": self.sigma,
            "b1": self.b1,
            "b2plus": self.b2plus,
            "b2minus": self.b2minus,
            "c1sq": self.c1sq,
            "chih": f"{f.numerator}/{f.denominator}",
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CharNumbers":
        return chars_from(obj["e"], obj["sigma"], obj["b1"])

    @property
    def es(self) -> tuple[int, int]:
        return (self.e, self.sigma)


def chars_from(e: int, sigma: int, b1: Optional[int] = 0) -> CharNumbers:
    """Build consistent characteristic numbers from (e, sigma, b1).

    With b1=None the Betti numbers b2+/b2- stay undetermined.
    """
    e, sigma = int(e), int(sigma)
    c1sq = 2 * e + 3 * sigma
    chih = Fraction(e + sigma, 4)
    if b1 is None:
        return CharNumbers(e, sigma, None, None, None, c1sq, chih)
    if b1 < 0:
        raise NegativeBetti(f"b1={b1}")
    tot = e - 2 + 2 * b1
    if (tot + sigma) % 2:
        raise ParityMismatch(f"e - 2 + 2*b1 + sigma is odd for e={e}, sigma={sigma}, b1={b1}")
    bp, bm = (tot + sigma) // 2, (tot - sigma) // 2
    if bp < 0 or bm < 0:
        raise NegativeBetti(f"b2+={bp}, b2-={bm} for e={e}, sigma={sigma}, b1={b1}")
    return CharNumbers(e, sigma, int(b1), bp, bm, c1sq, chih)


def chars_from_betti(b2plus: int, b2minus: int) -> CharNumbers:
    """Numbers of a manifold with b1=0 and the given b2+/b2-."""
    return chars_from(2 + b2plus + b2minus, b2plus - b2minus, 0)


def chars_from_c1sq_chih(c1sq: int, chih) -> CharNumbers:
    chih = Fraction(chih)
    e = 12 * chih - c1sq
    sigma = c1sq - 8 * chih
    if e.denominator != 1 or sigma.denominator != 1:
        raise ParityMismatch(f"c1sq={c1sq}, chih={chih} give non-integral (e, sigma)")
    return chars_from(int(e), int(sigma), 0)


def with_b1(a: CharNumbers, b1: Optional[int]) -> CharNumbers:
    return chars_from(a.e, a.sigma, b1)


_WARNED_GENERA: set[int] = set()


def fiber_sum_chars(a: CharNumbers, b: CharNumbers, g: int, b1: Optional[int] = None) -> CharNumbers:
    """Numbers of the fiber sum along a square-zero genus-g surface.

    e = e1 + e2 + 4g - 4, sigma additive. b1 is left undetermined unless given.
    """
    if g < 0:
        raise ValueError("genus must be non-negative")
    if g != 1 and g not in _WARNED_GENERA:
        _WARNED_GENERA.add(g)
        log.warning("fiber sum along genus %d uses e = e1 + e2 + 4g - 4", g)
    return chars_from(a.e + b.e + 4 * g - 4, a.sigma + b.sigma, b1)


def blow_up_chars(a: CharNumbers, n: int) -> CharNumbers:
    if n < 0:
        raise ValueError("blow-up count must be non-negative")
    return chars_from(a.e + n, a.sigma - n, a.b1)


def surgery_chars(a: CharNumbers) -> CharNumbers:
    return a


def lantern_chars(a: CharNumbers, count: int = 1) -> CharNumbers:
    return chars_from(a.e - count, a.sigma + count, a.b1)


def product_chars(g1: int, g2: int) -> CharNumbers:
    """Sigma_{g1} x Sigma_{g2}."""
    return chars_from((2 - 2 * g1) * (2 - 2 * g2), 0, 2 * g1 + 2 * g2)


class Z2Kind(enum.Enum):
    Double = "Double"
    Quotient = "Quotient"
    Z2Construction = "Z2Construction"


def z2_table_chars(a: CharNumbers, g: int, kind) -> CharNumbers:
    """Transformation table for the double, quotient and Z2-construction along a genus-g surface.

    The b2 columns of the table assume b1 = 0 before and after; the b1 of the
    output is 0 when the input has b1 = 0 and undetermined otherwise.
    """
    kind = Z2Kind(kind) if not isinstance(kind, Z2Kind) else kind
    b1 = 0 if a.b1 == 0 else None
    if kind is Z2Kind.Double:
        out = chars_from(2 * a.e + 4 * g - 4, 2 * a.sigma, b1)
        table = (2 * a.c1sq + 8 * g - 8, 2 * a.chih + g - 1)
        bpm = None if b1 is None else (2 * a.b2plus + 2 * g - 1, 2 * a.b2minus + 2 * g - 1)
    elif kind is Z2Kind.Quotient:
        bad = a.e % 2 or a.sigma % 2
        if b1 is not None and (a.b2plus % 2 == 0 or a.b2minus % 2 == 0):
            bad = True
        if bad:
            raise IndivisibleQuotient(f"cannot halve (e, sigma)=({a.e}, {a.sigma})")
        try:
            out = chars_from(a.e // 2, a.sigma // 2, b1)
        except ParityMismatch as exc:
            raise IndivisibleQuotient(str(exc)) from exc
        table = (Fraction(a.c1sq, 2), a.chih / 2)
        bpm = None if b1 is None else ((a.b2plus - 1) // 2, (a.b2minus - 1) // 2)
    else:
        out = chars_from(a.e + 2 * g - 2, a.sigma, b1)
        table = (a.c1sq + 4 * g - 4, a.chih + Fraction(g - 1, 2))
        bpm = None if b1 is None else (a.b2plus + g - 1, a.b2minus + g - 1)
    # the table columns are redundant with (e, sigma); keep them honest
    assert (out.c1sq, out.chih) == table, (kind, a, out, table)
    if bpm is not None:
        assert (out.b2plus, out.b2minus) == bpm, (kind, a, out, bpm)
    return out


# ---------------------------------------------------------------------------
# descriptors


class Parity(enum.Enum):
    Odd = "Odd"
    Even = "Even"
    Unknown = "Unknown"


class W2Type(enum.Enum):
    TypeI = "TypeI"
    TypeII = "TypeII"
    TypeIII = "TypeIII"
    Unknown = "Unknown"


class Orientation(enum.Enum):
    Standard = "Standard"
    Reversed = "Reversed"


@dataclass(frozen=True)
class Pi1Class:
    kind: str  # Trivial, Z2, Zn, FreeAbelian, Presented, Unknown
    n: Optional[int] = None
    ref: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("Trivial", "Z2", "Zn", "FreeAbelian", "Presented", "Unknown"):
            raise ValueError(f"unknown pi1 class {self.kind}")

    @property
    def finite(self) -> bool:
        return self.kind in ("Trivial", "Z2", "Zn")

    @property
    def b1(self) -> Optional[int]:
        if self.finite:
            return 0
        if self.kind == "FreeAbelian":
            return self.n
        return None

    def __str__(self):
        if self.kind in ("Zn", "FreeAbelian"):
            return f"{self.kind}({self.n})"
        return self.kind


TRIVIAL = Pi1Class("Trivial")
Z2 = Pi1Class("Z2")
UNKNOWN_PI1 = Pi1Class("Unknown")


@dataclass(frozen=True)
class Verdict:
    status: str = "Unknown"  # Yes, No, Unknown
    reason: str = ""

    @property
    def yes(self) -> bool:
        return self.status == "Yes"


@dataclass(frozen=True)
class ManifoldDescriptor:
    chars: CharNumbers
    pi1: Pi1Class = UNKNOWN_PI1
    parity: Parity = Parity.Unknown
    w2type: W2Type = W2Type.Unknown
    minimal: Verdict = field(default_factory=Verdict)
    irreducible: Verdict = field(default_factory=Verdict)
    symplectic: bool = False
    orientation: Orientation = Orientation.Standard

    def __post_init__(self):
        if self.parity is Parity.Odd and self.pi1.kind == "Z2":
            if self.w2type not in (W2Type.Unknown, W2Type.TypeI):
                raise DescriptorRejected("odd form with pi1 = Z2 forces w2-type (i)")
            object.__setattr__(self, "w2type", W2Type.TypeI)
        if (self.pi1.kind == "Trivial" and self.parity is Parity.Even
                and self.chars.sigma % 16 != 0):
            raise DescriptorRejected(
                f"simply connected even form with sigma={self.chars.sigma} not divisible by 16")
        if self.minimal.status == "No" and self.irreducible.status == "Yes":
            raise DescriptorRejected("irreducible but not minimal")

    def evolve(self, **kw) -> "ManifoldDescriptor":
        return replace(self, **kw)


def infer_parity(chars: CharNumbers, pi1: Pi1Class, current: Parity = Parity.Unknown) -> tuple[Parity, str]:
    """One-directional parity rules. Returns (parity, reason)."""
    if current is not Parity.Unknown:
        return current, "given"
    if chars.sigma % 8:
        return Parity.Odd, "signature not divisible by 8"
    if pi1.kind == "Trivial" and chars.sigma % 16:
        return Parity.Odd, "Rokhlin: signature not divisible by 16"
    return Parity.Unknown, "no rule fired"


@dataclass(frozen=True)
class StandardModel:
    kind: str  # Rab, CPsum, OtherSpin, Unclassified
    a: int = 0
    b: int = 0
    reason: str = ""

    def __str__(self):
        if self.kind in ("Rab", "CPsum"):
            return f"{self.kind}({self.a},{self.b})"
        return f"{self.kind}[{self.reason}]"


def classify(d: ManifoldDescriptor) -> StandardModel:
    c = d.chars
    if c.b1 is None and d.pi1.b1 == 0:
        c = with_b1(c, 0)
    if c.b1 != 0:
        return StandardModel("Unclassified", reason=f"b1={c.b1}")
    if d.parity is Parity.Unknown or d.pi1.kind == "Unknown":
        raise InsufficientCertificates(f"parity={d.parity.value}, pi1={d.pi1}")
    if d.parity is Parity.Odd and d.pi1.kind == "Z2":
        return StandardModel("Rab", c.b2plus, c.b2minus)
    if d.parity is Parity.Odd and d.pi1.kind == "Trivial":
        return StandardModel("CPsum", c.b2plus, c.b2minus)
    if d.parity is Parity.Even and d.pi1.kind == "Trivial":
        return StandardModel("OtherSpin", c.b2plus, c.b2minus, reason="even simply connected")
    return StandardModel("Unclassified", reason=f"pi1={d.pi1}, parity={d.parity.value}")


@dataclass(frozen=True)
class FiberSumMeta:
    """Inputs to the minimality rule for a symplectic sum along a genus-g surface.

    Flags are None when not supplied.
    """
    genus: int
    left_minus1_sphere: Optional[bool] = None
    right_minus1_sphere: Optional[bool] = None
    left_s2_bundle_section: Optional[bool] = None
    right_s2_bundle_section: Optional[bool] = None
    left_minimal: Optional[bool] = None
    right_minimal: Optional[bool] = None


def usher_minimality(m: FiberSumMeta) -> str:
    if m.genus <= 0:
        return "Unknown"
    if m.left_minus1_sphere or m.right_minus1_sphere:
        return "NotMinimal"
    if m.left_minus1_sphere is None or m.right_minus1_sphere is None:
        return "Unknown"
    if m.left_s2_bundle_section is None or m.right_s2_bundle_section is None:
        return "Unknown"
    if m.left_s2_bundle_section or m.right_s2_bundle_section:
        other = m.right_minimal if m.left_s2_bundle_section else m.left_minimal
        if m.left_s2_bundle_section and m.right_s2_bundle_section:
            # both sides are bundles: each is minimal, so the sum is
            other = True
        if other is None:
            return "Unknown"
        return "Minimal" if other else "NotMinimal"
    return "Minimal"


_RF_KINDS = ("Trivial", "Z2", "Zn", "FreeAbelian")


def hk_irreducible(d: ManifoldDescriptor) -> ManifoldDescriptor:
    if not d.minimal.yes:
        raise RuleNotApplicable("not known to be minimal")
    if not d.symplectic:
        raise RuleNotApplicable("not symplectic")
    if d.pi1.kind not in _RF_KINDS:
        raise RuleNotApplicable(f"pi1 {d.pi1} not known residually finite")
    return d.evolve(irreducible=Verdict(
        "Yes", "minimal symplectic with residually finite pi1 (Hamilton-Kotschick)"))
