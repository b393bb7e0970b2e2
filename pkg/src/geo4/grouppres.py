"""Finitely presented groups and the certificates built on them.

Words are tuples of nonzero integers: +i / -i stands for generator i-1 and its
inverse. Commutators follow [u, v] = u v u^-1 v^-1.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import InvalidWord, NoApplicableEdge

Word = tuple[int, ...]


# ---------------------------------------------------------------------------
# word algebra


def inv(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def free_reduce(w: Sequence[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = list(free_reduce(w))
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def comm(u: Sequence[int], v: Sequence[int]) -> Word:
    return free_reduce(tuple(u) + tuple(v) + inv(u) + inv(v))


def wpow(w: Sequence[int], n: int) -> Word:
    if n >= 0:
        return free_reduce(tuple(w) * n)
    return free_reduce(inv(w) * (-n))


def mul(*ws: Sequence[int]) -> Word:
    out: tuple[int, ...] = ()
    for w in ws:
        out += tuple(w)
    return free_reduce(out)


def exponent_vector(w: Sequence[int], ngens: int) -> list[int]:
    v = [0] * ngens
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v


def _canonical_cyclic(w: Word) -> Word:
    """Least rotation of w and of its inverse; identifies conjugate relators."""
    w = cyclic_reduce(w)
    if not w:
        return w
    cands = []
    for u in (w, inv(w)):
        for i in range(len(u)):
            cands.append(u[i:] + u[:i])
    return min(cands, key=lambda t: (len(t), t))


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FpGroup:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        n = len(self.generators)
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > n:
                    raise InvalidWord(f"letter {x} outside {n} generators")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index_of(self, name: str) -> int:
        try:
            return self.generators.index(name) + 1
        except ValueError:
            raise InvalidWord(f"unknown generator {name}") from None

    def word(self, text) -> Word:
        """Parse a word given as text (see dsl.parse_group_word) or pass a tuple through."""
        if isinstance(text, str):
            from .dsl import parse_group_word
            return parse_group_word(text, self.generators)
        w = tuple(text)
        for x in w:
            if x == 0 or abs(x) > self.ngens:
                raise InvalidWord(f"letter {x} outside {self.ngens} generators")
        return w

    def add_relators(self, *rels) -> "FpGroup":
        return FpGroup(self.generators, self.relators + tuple(self.word(r) for r in rels))

    def word_str(self, w: Sequence[int]) -> str:
        if not w:
            return "1"
        parts = []
        i = 0
        w = list(w)
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.generators[abs(w[i]) - 1]
            e = (j - i) * (1 if w[i] > 0 else -1)
            parts.append(name if e == 1 else f"{name}^{e}")
            i = j
        return "*".join(parts)

    def __str__(self):
        from .dsl import format_group
        return format_group(self)

    @classmethod
    def parse(cls, text: str) -> "FpGroup":
        from .dsl import parse_group
        return parse_group(text)

    @classmethod
    def from_strings(cls, gens: Sequence[str], rels: Sequence[str]) -> "FpGroup":
        from .dsl import parse_group_word
        gens = tuple(gens)
        return cls(gens, tuple(parse_group_word(r, gens) for r in rels))


def free_group(names: Sequence[str]) -> FpGroup:
    return FpGroup(tuple(names))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    divisors: list[int]
    U: list[list[int]]
    V: list[list[int]]
    D: list[list[int]]

    def certificate(self) -> dict:
        return {"divisors": self.divisors, "U": self.U, "V": self.V}


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M) -> SNFResult:
    """Smith normal form over the integers with unimodular certificate U M V = D."""
    arr = np.asarray(M, dtype=object)
    if arr.ndim != 2:
        arr = arr.reshape(0, 0) if arr.size == 0 else arr.reshape(1, -1)
    m, n = arr.shape
    A = [[int(x) for x in row] for row in arr.tolist()]
    U = _eye(m)
    V = _eye(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero magnitude in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        done = False
            if done:
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % A[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # move the smallest remainder in row/column t to the pivot
            best = (t, t)
            for i in range(t, m):
                if A[i][t] and abs(A[i][t]) < abs(A[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, n):
                if A[t][j] and abs(A[t][j]) < abs(A[best[0]][best[1]]):
                    best = (t, j)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    divisors = [A[i][i] if i < m and i < n else 0 for i in range(min(m, n))]
    return SNFResult(divisors, U, V, A)


def check_snf(M, res: SNFResult) -> bool:
    A = [[int(x) for x in row] for row in np.asarray(M, dtype=object).tolist()]
    m, n = len(A), len(res.V)
    if m == 0 or n == 0:
        return True
    if _matmul(_matmul(res.U, A), res.V) != res.D:
        return False
    for i in range(m):
        for j in range(n):
            if i != j and res.D[i][j]:
                return False
    d = res.divisors
    for a, b in zip(d, d[1:]):
        if a == 0 and b != 0:
            return False
        if a and b % a:
            return False
    import sympy
    return abs(sympy.Matrix(res.U).det()) == 1 and abs(sympy.Matrix(res.V).det()) == 1


# ---------------------------------------------------------------------------
# abelianization


@dataclass(frozen=True)
class Abelianization:
    divisors: tuple[int, ...]  # one per generator; 0 means a free Z summand

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.divisors if d > 1]

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.divisors if d == 0)

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        out = 1
        for d in self.divisors:
            out *= d
        return out

    @property
    def trivial(self) -> bool:
        return all(d == 1 for d in self.divisors)

    @property
    def invariant_factors(self) -> list[int]:
        """Divisors other than 1, with [1] standing for the trivial group."""
        out = [d for d in self.divisors if d != 1]
        return out or [1]

    def to_json(self) -> dict:
        return {"divisors": list(self.divisors), "torsion": self.torsion, "free_rank": self.free_rank}


def relator_matrix(G: FpGroup) -> list[list[int]]:
    return [exponent_vector(r, G.ngens) for r in G.relators]


def abelianization(G: FpGroup) -> Abelianization:
    n = G.ngens
    if n == 0:
        return Abelianization(())
    rows = relator_matrix(G)
    if not rows:
        return Abelianization((0,) * n)
    res = smith_normal_form(rows)
    diag = list(res.divisors) + [0] * (n - len(res.divisors))
    return Abelianization(tuple(abs(d) for d in diag[:n]))


# ---------------------------------------------------------------------------
# coset enumeration


@dataclass(frozen=True)
class CosetResult:
    status: str  # Finite or Exceeded
    index: Optional[int]
    transcript: str  # sha256 of the final table
    table: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    @property
    def finite(self) -> bool:
        return self.status == "Finite"

    def to_json(self) -> dict:
        return {"status": self.status, "index": self.index, "transcript": self.transcript}

    def __str__(self):
        return f"Finite({self.index})" if self.finite else "Exceeded"


def _col(x: int) -> int:
    return 2 * (abs(x) - 1) + (0 if x > 0 else 1)


def _flatten(words: Iterable[Word]) -> tuple[list[int], list[int]]:
    flat, off = [], [0]
    for w in words:
        flat.extend(_col(x) for x in w)
        off.append(len(flat))
    return flat, off


DEFAULT_MAX_COSETS = 100_000


def coset_enumeration(G: FpGroup, subgroup: Sequence = (), max_cosets: int = DEFAULT_MAX_COSETS) -> CosetResult:
    """Index of the subgroup generated by `subgroup` (HLT with lookahead, hard cap)."""
    if G.ngens == 0:
        return CosetResult("Finite", 1, hashlib.sha256(b"").hexdigest())
    rels = [cyclic_reduce(r) for r in G.relators]
    rels = [r for r in rels if r]
    rels.sort(key=lambda r: (len(r), r))
    subs = [free_reduce(G.word(h)) for h in subgroup]
    subs = [h for h in subs if h]
    rel, roff = _flatten(rels)
    sub, soff = _flatten(subs)
    status, index, table = _kernels.enumerate_cosets(2 * G.ngens, rel, roff, sub, soff, max_cosets)
    if status == _kernels.EXCEEDED:
        return CosetResult("Exceeded", None, "")
    table = table[:index].copy()
    digest = hashlib.sha256(table.astype(np.int64).tobytes()).hexdigest()
    return CosetResult("Finite", int(index), digest, table)


def group_order(G: FpGroup, max_cosets: int = DEFAULT_MAX_COSETS) -> Optional[int]:
    r = coset_enumeration(G, (), max_cosets)
    return r.index if r.finite else None


def word_is_trivial(G: FpGroup, w, max_cosets: int = DEFAULT_MAX_COSETS) -> Optional[bool]:
    """Decide triviality of w when G enumerates to a finite group; None otherwise."""
    w = free_reduce(G.word(w))
    if not w:
        return True
    r = coset_enumeration(G, (), max_cosets)
    if not r.finite:
        return None
    c = 0
    for x in w:
        c = int(r.table[c, _col(x)])
    return c == 0


# ---------------------------------------------------------------------------
# Tietze transformations


def _substitute(w: Word, gen: int, image: Word) -> Word:
    out: list[int] = []
    for x in w:
        if abs(x) == gen:
            out.extend(image if x > 0 else inv(image))
        else:
            out.append(x)
    return free_reduce(out)


def _drop_generator(G: FpGroup, gen: int, rels: list[Word]) -> tuple[tuple[str, ...], list[Word]]:
    gens = G.generators[: gen - 1] + G.generators[gen:]

    def shift(x):
        a = abs(x)
        a = a - 1 if a > gen else a
        return a if x > 0 else -a

    return gens, [tuple(shift(x) for x in r) for r in rels]


def _dedupe(rels: Iterable[Word]) -> list[Word]:
    seen, out = set(), []
    for r in rels:
        c = _canonical_cyclic(r)
        if c and c not in seen:
            seen.add(c)
            out.append(cyclic_reduce(r))
    return out


def tietze_simplify(G: FpGroup, budget: int = 200) -> FpGroup:
    """Simplify by free/cyclic reduction, duplicate removal and generator elimination.

    A generator occurring exactly once in some relator is solved for and
    substituted, provided the total relator length stays within `budget` extra
    letters. Every move is an isomorphism.
    """
    cur = FpGroup(G.generators, tuple(_dedupe(G.relators)))
    start_len = sum(len(r) for r in cur.relators)
    changed = True
    while changed:
        changed = False
        rels = list(cur.relators)
        best = None
        for ri, r in enumerate(rels):
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            for gi, c in counts.items():
                if c != 1:
                    continue
                key = (len(r), ri, gi)
                if best is None or key < best[0]:
                    best = (key, ri, gi)
        if best is None:
            break
        _, ri, gi = best
        r = rels[ri]
        pos = next(i for i, x in enumerate(r) if abs(x) == gi)
        # r = u x^e v = 1  =>  x^e = u^-1 v^-1
        u, v = r[:pos], r[pos + 1:]
        img = free_reduce(inv(u) + inv(v))
        if r[pos] < 0:
            img = inv(img)
        others = [_substitute(s, gi, img) for j, s in enumerate(rels) if j != ri]
        if sum(len(s) for s in others) > start_len + budget:
            break
        gens, shifted = _drop_generator(cur, gi, others)
        cur = FpGroup(gens, tuple(_dedupe(shifted)))
        changed = True
    return cur


# ---------------------------------------------------------------------------
# surgery and amalgams


def surgery_quotient(G: FpGroup, mu, lam, p: int = 1, q: int = 1) -> FpGroup:
    """Add the relator mu^p lam^q (torus surgery with coefficient p/q)."""
    mu_w = G.word(mu)
    lam_w = G.word(lam)
    return FpGroup(G.generators, G.relators + (mul(wpow(mu_w, p), wpow(lam_w, q)),))


@dataclass(frozen=True)
class BoundaryData:
    """Per-torus (meridian, first push-off, second push-off) words."""
    tori: dict

    def __getitem__(self, name):
        return self.tori[name]

    def names(self):
        return list(self.tori)


@dataclass(frozen=True)
class Edge:
    name: str
    phi1: Word
    phi2: Word


@dataclass(frozen=True)
class AmalgamDescription:
    G1: FpGroup
    G2: FpGroup
    edges: tuple[Edge, ...] = ()
    used: frozenset = frozenset()

    @classmethod
    def build(cls, G1: FpGroup, G2: FpGroup, edges: Sequence[tuple]) -> "AmalgamDescription":
        es = tuple(Edge(name, G1.word(a), G2.word(b)) for name, a, b in edges)
        return cls(G1, G2, es)


def evaluate_amalgam(A: AmalgamDescription) -> FpGroup:
    clash = set(A.G1.generators) & set(A.G2.generators)
    g1 = tuple(f"L.{x}" if x in clash else x for x in A.G1.generators)
    g2 = tuple(f"R.{x}" if x in clash else x for x in A.G2.generators)
    off = A.G1.ngens

    def lift(w):
        return tuple(x + off if x > 0 else x - off for x in w)

    rels = list(A.G1.relators) + [lift(r) for r in A.G2.relators]
    for e in A.edges:
        rels.append(free_reduce(e.phi1 + inv(lift(e.phi2))))
    return FpGroup(g1 + g2, tuple(r for r in rels if r))


def amalgam_simplify(A: AmalgamDescription, max_cosets: int = DEFAULT_MAX_COSETS) -> AmalgamDescription:
    """If an edge maps to the identity in G1, kill its image in G2; repeat to a fixpoint."""
    cur = A
    applied = False
    while True:
        step = None
        for e in cur.edges:
            if e.name in cur.used or not e.phi2:
                continue
            if word_is_trivial(cur.G1, e.phi1, max_cosets):
                step = e
                break
        if step is None:
            break
        G2 = FpGroup(cur.G2.generators, cur.G2.relators + (step.phi2,))
        cur = AmalgamDescription(cur.G1, G2, cur.edges, cur.used | {step.name})
        applied = True
    if not applied:
        raise NoApplicableEdge("no edge generator is trivial in G1")
    return cur


# ---------------------------------------------------------------------------
# complements of Lagrangian tori in products


def product_complement_presentation(k: int, closed_second_factor: bool = True) -> tuple[FpGroup, BoundaryData]:
    """Normal generators and boundary words for Sigma_k x (punctured torus or Sigma_2) minus tori.

    Punctured case: tori T_i, L_i with generators x_i, y_i, a, b.
    Closed case: additionally J_1, J_2 with generators a1, b1, a2, b2 and the
    relators [b2, y_i].
    """
    if k < 1:
        raise ValueError("k must be positive")
    xs = [f"x{i}" for i in range(1, k + 1)]
    ys = [f"y{i}" for i in range(1, k + 1)]
    if closed_second_factor:
        gens = tuple(xs + ys + ["a1", "b1", "a2", "b2"])
    else:
        gens = tuple(xs + ys + ["a", "b"])
    G = FpGroup(gens)
    W = G.word
    tori = {}
    a, b = ("a1", "b1") if closed_second_factor else ("a", "b")
    for i in range(1, k + 1):
        tori[f"T{i}"] = (W(f"[{b}^-1, y{i}^-1]"), W(f"x{i}"), W(a))
        tori[f"L{i}"] = (W(f"[x{i}^-1, {b}]"), W(f"y{i}"), W(f"{b}*{a}*{b}^-1"))
    rels = ()
    if closed_second_factor:
        tori["J1"] = (W("[x1^-1, b2^-1]"), W("a2"), W("y1"))
        tori["J2"] = (W("[a2^-1, x1]"), W("b2"), W("x1*y1*x1^-1"))
        rels = tuple(W(f"[b2, y{i}]") for i in range(1, k + 1))
    return FpGroup(gens, rels), BoundaryData(tori)


def certificate_json(G: FpGroup, ab: Abelianization, cos: Optional[CosetResult] = None) -> str:
    obj = {"group": str(G), "abelianization": ab.to_json()}
    if cos is not None:
        obj["cosets"] = cos.to_json()
    return json.dumps(obj, sort_keys=True)
