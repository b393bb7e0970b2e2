"""Coset enumeration: numba kernel against the pure-Python fallback.

    python3 benchmarks/bench_cosets.py [--repeat N]

Both backends run on the same flattened tables and must agree on the index and
the final table. The first numba call includes compilation (or cache load) and
is reported separately.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from geo4 import _kernels
from geo4 import grouppres as gp
from geo4.grouppres import FpGroup


def cases() -> list[tuple[str, FpGroup]]:
    return [
        ("S5 <a,b | a^2, b^5, (ab)^4, (ab^-1ab)^3>",
         FpGroup.from_strings(["a", "b"], ["a^2", "b^5", "(a*b)^4", "(a*b^-1*a*b)^3"])),
        ("PSL(2,7) <a,b | a^2, b^3, (ab)^7, [a,b]^4>",
         FpGroup.from_strings(["a", "b"], ["a^2", "b^3", "(a*b)^7", "[a,b]^4"])),
        ("Coxeter H3 <a,b,c | a^2,b^2,c^2,(ab)^3,(bc)^5,(ac)^2>",
         FpGroup.from_strings(["a", "b", "c"], ["a^2", "b^2", "c^2", "(a*b)^3", "(b*c)^5", "(a*c)^2"])),
        ("S7 as Coxeter A6", _coxeter_a(6)),
        ("Z/2 x Z/2 x Z/1000", FpGroup.from_strings(["x", "y", "z"], ["x^2", "y^2", "z^1000", "[x,y]", "[x,z]",
                                                                         "[y,z]"])),
        ("infinite triangle (2,5,4), hits the cap", FpGroup.from_strings(["a", "b"], ["a^2", "b^5", "(a*b)^4"])),
    ]


def _coxeter_a(n: int) -> FpGroup:
    gens = [f"s{i}" for i in range(1, n + 1)]
    rels = [f"{g}^2" for g in gens]
    for i in range(n):
        for j in range(i + 1, n):
            rels.append(f"({gens[i]}*{gens[j]})^{3 if j == i + 1 else 2}")
    return FpGroup.from_strings(gens, rels)


def _tables(G: FpGroup):
    rels = sorted((r for r in (gp.cyclic_reduce(r) for r in G.relators) if r), key=lambda r: (len(r), r))
    rel, roff = gp._flatten(rels)
    sub, soff = gp._flatten([])
    return 2 * G.ngens, rel, roff, sub, soff


def bench(fn, args, repeat: int) -> tuple[float, tuple]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-cosets", type=int, default=gp.DEFAULT_MAX_COSETS)
    args = ap.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        print("numba not importable; only the fallback can run")
        return 1
    t = time.perf_counter()
    _kernels.enumerate_cosets(*_tables(cases()[0][1]), args.max_cosets, jit=True)
    print(f"numba warm-up (compile or cache load): {time.perf_counter() - t:.2f} s")
    print(f"{'group':58s} {'index':>7s} {'python s':>10s} {'numba s':>10s} {'speedup':>8s}")
    ok = True
    for name, G in cases():
        tabs = _tables(G)
        tp, rp = bench(lambda: _kernels.enumerate_cosets(*tabs, args.max_cosets, jit=False), (), 1)
        tn, rn = bench(lambda: _kernels.enumerate_cosets(*tabs, args.max_cosets, jit=True), (), args.repeat)
        same = rp[0] == rn[0] and rp[1] == rn[1] and np.array_equal(rp[2][:rp[1]], rn[2][:rn[1]])
        ok &= same
        idx = str(rn[1]) if rn[0] == _kernels.CLOSED else "cap"
        print(f"{name:58s} {idx:>7s} {tp:10.4f} {tn:10.4f} {tp / tn:7.1f}x" + ("" if same else "  MISMATCH"))
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
