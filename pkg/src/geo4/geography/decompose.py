"""Split (c1^2/2, chi_h) into building-block counts.

A solution (b, c, d, g, k) satisfies
    halfc = 3b + 2c + d + 4g,   chi = b + c + d + g + k,
with all entries non-negative and b > 0 whenever g > 0. B contributes (3, 1),
C (2, 1), D (1, 1), B_g together with one B (4g + 3, g + 1) and E(k) (0, k).
"""
from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

from ..errors import NoSolution


class Decomposition(NamedTuple):
    b: int
    c: int
    d: int
    g: int
    k: int

    def key(self) -> tuple:
        return (self.g, self.b, self.c, self.d, self.k)


def _valid(t: Decomposition, halfc: int, chi: int) -> bool:
    b, c, d, g, k = t
    return (min(t) >= 0 and (g == 0 or b > 0)
            and 3 * b + 2 * c + d + 4 * g == halfc and b + c + d + g + k == chi)


def decompose(halfc: int, chi: int) -> Decomposition:
    """Lexicographically smallest (g, b, c, d, k) solution."""
    if halfc < 0 or chi < 0:
        raise NoSolution(f"negative input ({halfc}, {chi})")
    for g in range(halfc // 4 + 1):
        for b in range(1 if g else 0, (halfc - 4 * g) // 3 + 1):
            for c in range((halfc - 4 * g - 3 * b) // 2 + 1):
                d = halfc - 4 * g - 3 * b - 2 * c
                k = chi - b - c - d - g
                if k >= 0:
                    return Decomposition(b, c, d, g, k)
    raise NoSolution(f"no block decomposition of (halfc, chi) = ({halfc}, {chi})")


def brute_force_table(chi: int) -> dict[int, Decomposition]:
    """Exhaustive oracle for one chi: every (b, c, d, g) with b + c + d + g <= chi.

    Returns the smallest-key solution for each reachable halfc.
    """
    r = np.arange(chi + 1)
    b, c, d, g = (a.ravel() for a in np.meshgrid(r, r, r, r, indexing="ij"))
    k = chi - (b + c + d + g)
    ok = (k >= 0) & ((g == 0) | (b > 0))
    b, c, d, g, k = b[ok], c[ok], d[ok], g[ok], k[ok]
    halfc = 3 * b + 2 * c + d + 4 * g
    base = chi + 1
    key = (((g * base + b) * base + c) * base + d) * base + k
    order = np.lexsort((key, halfc))
    halfc, key = halfc[order], key[order]
    first = np.ones(len(halfc), bool)
    first[1:] = halfc[1:] != halfc[:-1]
    out = {}
    for h, kk in zip(halfc[first].tolist(), key[first].tolist()):
        digits = []
        for _ in range(5):
            kk, rem = divmod(kk, base)
            digits.append(rem)
        k_, d_, c_, b_, g_ = digits
        out[h] = Decomposition(b_, c_, d_, g_, k_)
    return out


def brute_force(halfc: int, chi: int) -> Optional[Decomposition]:
    return brute_force_table(chi).get(halfc)


def covered(halfc: int, chi: int) -> bool:
    """Domain of the even-c path, plus the pure elliptic case halfc = 0."""
    return chi >= 1 and (halfc == 0 or 0 < 2 * halfc <= 8 * chi - 2)
