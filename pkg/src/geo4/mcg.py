"""Dehn-twist words on a closed surface and their integral symplectic images.

Homology basis a_1..a_g, b_1..b_g with <a_i, b_i> = 1, so the form matrix is
J = [[0, I], [-I, 0]] and <u, v> = u^T J v. A twist of power p about a class
c acts by v -> v + p <v, c> c. A word evaluates to the product of its letter
matrices in word order. Only this homological shadow is computed: every
identity verified here is a necessary condition for the mapping-class
identity, not a proof of it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import (
    InconsistentAssignment,
    IndexOutOfRange,
    NonPositiveInput,
    NoReflectionRegistered,
    PatternMismatch,
    UnknownCurve,
)


def form_matrix(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=np.int64)
    J[:g, g:] = np.eye(g, dtype=np.int64)
    J[g:, :g] = -np.eye(g, dtype=np.int64)
    return J


def pairing(J: np.ndarray, u, v) -> int:
    return int(np.asarray(u) @ J @ np.asarray(v))


@dataclass(frozen=True)
class CurveData:
    homology: tuple[int, ...]
    separating_type: int = 0

    def __post_init__(self):
        v = np.asarray(self.homology, dtype=np.int64)
        if self.separating_type > 0:
            if v.any():
                raise ValueError("separating curve must be null-homologous")
        else:
            if not v.any():
                raise ValueError("nonseparating curve needs a nonzero class")
            if np.gcd.reduce(np.abs(v)) != 1:
                raise ValueError(f"class {self.homology} is not primitive")

    @property
    def vector(self) -> np.ndarray:
        return np.asarray(self.homology, dtype=np.int64)


@dataclass(frozen=True)
class SymplecticMatrix:
    entries: np.ndarray
    character: str = "Symplectic"  # or AntiSymplectic

    def __eq__(self, other):
        return (isinstance(other, SymplecticMatrix) and self.character == other.character
                and np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash((self.character, self.entries.tobytes()))

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        ch = "Symplectic" if self.character == other.character else "AntiSymplectic"
        return SymplecticMatrix(self.entries @ other.entries, ch)

    @property
    def genus(self) -> int:
        return self.entries.shape[0] // 2

    def inverse(self) -> "SymplecticMatrix":
        # M^T J M = s J  =>  M^{-1} = s J^{-1} M^T J = -s J M^T J
        J = form_matrix(self.genus)
        s = 1 if self.character == "Symplectic" else -1
        return SymplecticMatrix(-s * (J @ self.entries.T @ J), self.character)

    def check(self) -> bool:
        J = form_matrix(self.genus)
        s = 1 if self.character == "Symplectic" else -1
        return bool(np.array_equal(self.entries.T @ J @ self.entries, s * J))

    def is_identity(self) -> bool:
        return self.character == "Symplectic" and np.array_equal(
            self.entries, np.eye(len(self.entries), dtype=np.int64))

    def is_minus_identity(self) -> bool:
        return self.character == "Symplectic" and np.array_equal(
            self.entries, -np.eye(len(self.entries), dtype=np.int64))


def identity(g: int) -> SymplecticMatrix:
    return SymplecticMatrix(np.eye(2 * g, dtype=np.int64))


@dataclass
class SurfaceModel:
    genus: int
    curves: dict[str, CurveData] = field(default_factory=dict)
    reflection: Optional[SymplecticMatrix] = None

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be positive")
        for name, c in self.curves.items():
            if len(c.homology) != 2 * self.genus:
                raise ValueError(f"curve {name} has wrong dimension")

    @property
    def J(self) -> np.ndarray:
        return form_matrix(self.genus)

    def curve(self, name: str) -> CurveData:
        try:
            return self.curves[name]
        except KeyError:
            raise UnknownCurve(name) from None

    def add_curve(self, name: str, homology: Sequence[int], separating_type: int = 0) -> None:
        if len(homology) != 2 * self.genus:
            raise ValueError(f"curve {name} has wrong dimension")
        self.curves[name] = CurveData(tuple(int(x) for x in homology), separating_type)


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class Letter:
    curve: str
    power: int = 1
    conjugator: Optional["MappingClassWord"] = None
    reflected: bool = False

    def __post_init__(self):
        if self.power == 0:
            raise ValueError("letter power must be nonzero")

    def inverse(self) -> "Letter":
        return Letter(self.curve, -self.power, self.conjugator, self.reflected)


@dataclass(frozen=True)
class MappingClassWord:
    letters: tuple[Letter, ...] = ()

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return MappingClassWord(self.letters[i])
        return self.letters[i]

    def __add__(self, other: "MappingClassWord") -> "MappingClassWord":
        return MappingClassWord(self.letters + other.letters)

    def __mul__(self, n: int) -> "MappingClassWord":
        return MappingClassWord(self.letters * n)

    def inverse(self) -> "MappingClassWord":
        return MappingClassWord(tuple(l.inverse() for l in reversed(self.letters)))

    def is_positive(self) -> bool:
        return all(l.power == 1 for l in self.letters)

    def expand_powers(self) -> "MappingClassWord":
        """Split t^p into |p| letters of power sign(p)."""
        out = []
        for l in self.letters:
            s = 1 if l.power > 0 else -1
            out.extend([Letter(l.curve, s, l.conjugator, l.reflected)] * abs(l.power))
        return MappingClassWord(tuple(out))

    def conjugate(self, by: "MappingClassWord") -> "MappingClassWord":
        """Letterwise conjugation: each letter t becomes by t by^-1."""
        return MappingClassWord(tuple(_conj_letter(l, by) for l in self.letters))

    def mirrored(self) -> "MappingClassWord":
        """A word evaluating to r W r^-1: each letter inverted and its reflected flag toggled."""
        return MappingClassWord(tuple(
            Letter(l.curve, -l.power, l.conjugator, not l.reflected) for l in self.letters))

    def __str__(self):
        from .dsl import format_word
        return format_word(self)


def t(curve: str, power: int = 1, by: Optional[MappingClassWord] = None,
      reflected: bool = False) -> MappingClassWord:
    return MappingClassWord((Letter(curve, power, by, reflected),))


def word(*parts) -> MappingClassWord:
    """Concatenate words, letters and curve names (plain names are single twists)."""
    letters: list[Letter] = []
    for p in parts:
        if isinstance(p, str):
            letters.append(Letter(p))
        elif isinstance(p, Letter):
            letters.append(p)
        else:
            letters.extend(p.letters)
    return MappingClassWord(tuple(letters))


def power_word(curve: str, n: int) -> MappingClassWord:
    return MappingClassWord((Letter(curve),) * n)


# ---------------------------------------------------------------------------
# evaluation


def transvection_matrix(J: np.ndarray, c: np.ndarray, power: int) -> np.ndarray:
    n = len(c)
    # v -> v + p <v, c> c, and <v, c> = v^T J c = -(J c)^T v
    return np.eye(n, dtype=np.int64) - power * np.outer(c, J @ c)


def transvection(s: SurfaceModel, curve: str, power: int = 1) -> SymplecticMatrix:
    cd = s.curve(curve)
    if cd.separating_type > 0:
        return identity(s.genus)
    return SymplecticMatrix(transvection_matrix(s.J, cd.vector, power))


def _reflection(s: SurfaceModel) -> SymplecticMatrix:
    if s.reflection is None:
        raise NoReflectionRegistered("surface has no registered reflection")
    return s.reflection


def letter_matrix(s: SurfaceModel, l: Letter) -> SymplecticMatrix:
    # a conjugated letter is phi t_c^p phi^-1; a reflected letter is r (phi t_c^-p phi^-1) r^-1,
    # the twist about r(phi(c)), so the reflection applies to the conjugator as well
    power = -l.power if l.reflected else l.power
    m = transvection(s, l.curve, power)
    if l.conjugator is not None:
        phi = evaluate(s, l.conjugator)
        m = phi @ m @ phi.inverse()
    if l.reflected:
        r = _reflection(s)
        m = r @ m @ r.inverse()
    return m


def evaluate(s: SurfaceModel, w: MappingClassWord) -> SymplecticMatrix:
    m = identity(s.genus)
    for l in w.letters:
        m = m @ letter_matrix(s, l)
    return m


def vanishing_class(s: SurfaceModel, l: Letter) -> np.ndarray:
    """Homology class (up to sign) of the curve a letter twists about."""
    if s.curve(l.curve).separating_type > 0:
        return np.zeros(2 * s.genus, dtype=np.int64)
    v = s.curve(l.curve).vector.copy()
    if l.conjugator is not None:
        v = evaluate(s, l.conjugator).entries @ v
    if l.reflected:
        v = _reflection(s).entries @ v
    return v


def twist_image(s: SurfaceModel, w: MappingClassWord, curve: str) -> np.ndarray:
    return evaluate(s, w).entries @ s.curve(curve).vector


# ---------------------------------------------------------------------------
# reflection


def _sign_patterns(n: int) -> Iterable[tuple[int, ...]]:
    return itertools.product((1, -1), repeat=n)


def reflection_matrix(s: SurfaceModel, assignment: Sequence[tuple[str, str]]) -> SymplecticMatrix:
    """Anti-symplectic involution R with R[src] = +-[dst] for every assigned pair.

    Unoriented curves only determine classes up to sign, so every sign pattern is
    tried in a fixed order; the least-squares candidate for each pattern is rounded
    and then verified exactly.
    """
    if not assignment:
        raise InconsistentAssignment("empty assignment leaves the reflection undetermined")
    g = s.genus
    n = 2 * g
    J = s.J
    pairs = []
    for a, b in assignment:
        ca, cb = s.curve(a), s.curve(b)
        if (ca.separating_type > 0) != (cb.separating_type > 0):
            raise InconsistentAssignment(f"{a} and {b} differ in separating type")
        if ca.separating_type == 0:
            pairs.append((ca.vector, cb.vector))
    if not pairs:
        raise InconsistentAssignment("only separating curves assigned")
    src = np.array([p[0] for p in pairs], dtype=float)
    if np.linalg.matrix_rank(src) < g:
        raise InconsistentAssignment("assigned classes span too little to determine R")
    # unknown R as a vector of n*n entries (row major); R v = w is rows of kron
    eye = np.eye(n)
    anti = []  # R^T J R = -J together with R^2 = I  <=>  R = J R^T J
    for i in range(n):
        for j in range(n):
            row = np.zeros(n * n)
            row[i * n + j] += 1
            # (J R^T J)_{ij} = sum_{k,l} J_ik R_lk J_lj
            for k in range(n):
                for l in range(n):
                    row[l * n + k] -= J[i, k] * J[l, j]
            anti.append(row)
    anti = np.array(anti)
    for signs in _sign_patterns(len(pairs)):
        rows, rhs = [anti], [np.zeros(n * n)]
        for (v, w), sg in zip(pairs, signs):
            rows.append(np.kron(eye, v[None, :]))
            rhs.append(sg * w.astype(float))
        A = np.vstack(rows)
        bvec = np.concatenate(rhs)
        x, *_ = np.linalg.lstsq(A, bvec, rcond=None)
        R = np.rint(x.reshape(n, n)).astype(np.int64)
        if not np.array_equal(R @ R, np.eye(n, dtype=np.int64)):
            continue
        if not np.array_equal(R.T @ J @ R, -J):
            continue
        if all(np.array_equal(R @ v, sg * w) for (v, w), sg in zip(pairs, signs)):
            return SymplecticMatrix(R, "AntiSymplectic")
    raise InconsistentAssignment("no anti-symplectic involution realizes the assignment")


# ---------------------------------------------------------------------------
# word operations


def reversed_double_word(w1: MappingClassWord, w2: MappingClassWord) -> MappingClassWord:
    """W1 followed by the letters of W2 in reverse order, each reflected."""
    if not (w1.is_positive() and w2.is_positive()):
        raise NonPositiveInput("both factorizations must be positive")
    tail = tuple(Letter(l.curve, 1, l.conjugator, not l.reflected) for l in reversed(w2.letters))
    return MappingClassWord(w1.letters + tail)


def _single(l: Letter) -> MappingClassWord:
    return MappingClassWord((l,))


def hurwitz_move(w: MappingClassWord, i: int, direction: str = "Right") -> MappingClassWord:
    """Hurwitz move on letters i, i+1 (1-based i).

    Right: (A, B) -> (A B A^-1, A);  Left: (A, B) -> (B, B^-1 A B).
    """
    if not 1 <= i < len(w):
        raise IndexOutOfRange(f"index {i} for word of length {len(w)}")
    A, B = w.letters[i - 1], w.letters[i]
    if direction == "Right":
        new = (_conj_letter(B, _single(A)), A)
    elif direction == "Left":
        new = (B, _conj_letter(A, _single(B).inverse()))
    else:
        raise ValueError(direction)
    return MappingClassWord(w.letters[: i - 1] + new + w.letters[i + 1:])


def _conj_letter(l: Letter, by: MappingClassWord) -> Letter:
    # a reflected letter keeps its conjugator inside the reflection, so conjugating
    # it by A stores r A r^-1 there
    if l.reflected:
        by = by.mirrored()
    inner = l.conjugator
    new = by if inner is None else by + inner
    return Letter(l.curve, l.power, _simplify_conj(new), l.reflected)


def _simplify_conj(w: MappingClassWord) -> Optional[MappingClassWord]:
    """Free reduction of a conjugator word (adjacent inverse letters cancel)."""
    out: list[Letter] = []
    for l in w.letters:
        if out and out[-1] == l.inverse():
            out.pop()
        else:
            out.append(l)
    return MappingClassWord(tuple(out)) if out else None


LANTERN_IN = ("a", "b", "c", "d")
LANTERN_OUT = ("x", "y", "z")


def lantern_substitute(w: MappingClassWord, at: int) -> MappingClassWord:
    """Replace t_a t_b t_c t_d starting at 0-based position `at` with t_x t_y t_z."""
    seg = w.letters[at: at + 4]
    want = tuple(Letter(c) for c in LANTERN_IN)
    if at < 0 or seg != want:
        raise PatternMismatch(f"no t_a t_b t_c t_d block at position {at}")
    return MappingClassWord(w.letters[:at] + tuple(Letter(c) for c in LANTERN_OUT) + w.letters[at + 4:])


def find_lantern(w: MappingClassWord, start: int = 0) -> int:
    want = tuple(Letter(c) for c in LANTERN_IN)
    for i in range(start, len(w) - 3):
        if w.letters[i: i + 4] == want:
            return i
    return -1


# ---------------------------------------------------------------------------
# standard alphabets


def chain_class(g: int, i: int) -> np.ndarray:
    """Class of the chain curve c_i, 1 <= i <= 2g+1.

    c_1 = a_1, c_{2j} = b_j, c_{2j+1} = a_{j+1} - a_j, c_{2g+1} = -a_g,
    so consecutive chain curves meet once and c_1 + c_3 + ... + c_{2g+1} = 0.
    """
    v = np.zeros(2 * g, dtype=np.int64)
    if i == 1:
        v[0] = 1
    elif i % 2 == 0:
        v[g + i // 2 - 1] = 1
    elif i == 2 * g + 1:
        v[g - 1] = -1
    else:
        j = (i - 1) // 2
        v[j] = 1
        v[j - 1] = -1
    return v


def standard_surface(g: int, lantern: bool = True) -> SurfaceModel:
    """Chain alphabet c1..c_{2g+1}; for g >= 2 also the lantern curves a, b, c, d, x, y, z.

    a and c are both isotopic to c1, b and d to c3; x and y carry the classes
    c1 + c3 and c1 - c3, and z bounds a genus-one subsurface. The reflection r
    fixes the a-classes and negates the b-classes.
    """
    s = SurfaceModel(g)
    for i in range(1, 2 * g + 2):
        s.add_curve(f"c{i}", chain_class(g, i))
    if lantern and g >= 2:
        al, be = chain_class(g, 1), chain_class(g, 3)
        s.add_curve("a", al)
        s.add_curve("b", be)
        s.add_curve("c", al)
        s.add_curve("d", be)
        s.add_curve("x", al + be)
        s.add_curve("y", al - be)
        s.add_curve("z", np.zeros(2 * g, dtype=np.int64), separating_type=1)
        R = np.diag([1] * g + [-1] * g).astype(np.int64)
        s.reflection = SymplecticMatrix(R, "AntiSymplectic")
    return s


def torus_surface() -> SurfaceModel:
    s = SurfaceModel(1)
    s.add_curve("a", (1, 0))
    s.add_curve("b", (0, 1))
    return s


def chain_word(g: int) -> MappingClassWord:
    """t_1 ... t_{2g} t_{2g+1}^2 t_{2g} ... t_1 (hyperelliptic involution)."""
    up = [f"c{i}" for i in range(1, 2 * g + 1)]
    return word(*up, f"c{2 * g + 1}", f"c{2 * g + 1}", *reversed(up))
