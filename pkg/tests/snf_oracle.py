"""Independent Smith normal form oracles used by the tests.

`elimination_divisors` clears rows and columns with plain subtraction when
the pivot divides, and Bezout 2x2 unimodular steps otherwise (each of which
strictly shrinks the pivot), then repairs the divisibility chain with gcd/lcm swaps on the diagonal.
`minor_divisors` uses determinantal divisors and is only practical for small
matrices.
"""
from itertools import combinations
from math import gcd

import sympy


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def elimination_divisors(M) -> list[int]:
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    for t in range(min(m, n)):
        piv = next(((i, j) for i in range(t, m) for j in range(t, n) if A[i][j]), None)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            for i in range(t + 1, m):
                if A[i][t]:
                    a, b = A[t][t], A[i][t]
                    if b % a == 0:
                        A[i] = [v - (b // a) * u for u, v in zip(A[t], A[i])]
                        continue
                    g, x, y = _xgcd(a, b)
                    rt, ri = A[t], A[i]
                    A[t] = [x * u + y * v for u, v in zip(rt, ri)]
                    A[i] = [(-b // g) * u + (a // g) * v for u, v in zip(rt, ri)]
            for j in range(t + 1, n):
                if A[t][j]:
                    a, b = A[t][t], A[t][j]
                    if b % a == 0:
                        for r in A:
                            r[j] -= (b // a) * r[t]
                        continue
                    g, x, y = _xgcd(a, b)
                    for r in A:
                        u, v = r[t], r[j]
                        r[t], r[j] = x * u + y * v, (-b // g) * u + (a // g) * v
            if all(A[i][t] == 0 for i in range(t + 1, m)):
                break
        diag.append(abs(A[t][t]))
    diag += [0] * (min(m, n) - len(diag))
    # divisibility chain: replace (d_i, d_j) by (gcd, lcm)
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            diag[i], diag[j] = g, (a * b // g if g else 0)
    nz = sorted(d for d in diag if d)
    return nz + [0] * (len(diag) - len(nz))


def minor_divisors(M) -> list[int]:
    A = sympy.Matrix(M)
    m, n = A.shape
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, int(A.extract(list(rows), list(cols)).det()))
        if g == 0:
            out += [0] * (min(m, n) - k + 1)
            break
        out.append(g // prev)
        prev = g
    return out
