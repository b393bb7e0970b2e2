"""Lattice points of the (b2+, b2-) plane and the region the planner covers."""
from __future__ import annotations

from typing import NamedTuple


class LatticePoint(NamedTuple):
    m: int  # b2+
    n: int  # b2-

    @property
    def sigma(self) -> int:
        return self.m - self.n

    @property
    def e(self) -> int:
        """Euler characteristic of a manifold with b1 = 0 at this point."""
        return 2 + self.m + self.n

    @property
    def c1sq(self) -> int:
        return 4 + 5 * self.m - self.n

    def mirror(self) -> "LatticePoint":
        return LatticePoint(self.n, self.m)

    def __str__(self):
        return f"({self.m},{self.n})"


def point(p) -> LatticePoint:
    if isinstance(p, LatticePoint):
        return p
    m, n = p
    return LatticePoint(int(m), int(n))


def in_region(p) -> bool:
    """m, n > 0 with 4 + 5m >= n and 4 + 5n >= m."""
    m, n = point(p)
    return m > 0 and n > 0 and 4 + 5 * m >= n and 4 + 5 * n >= m
