"""Acceptance criteria 1-9. Each test records one PASS/FAIL line, printed inline
and again in the terminal summary."""
import time
from fractions import Fraction

import numpy as np
import pytest

from geo4 import certificates as C
from geo4 import fixtures
from geo4 import grouppres as gp
from geo4 import lefschetz as L
from geo4.errors import ParamOutOfRange
from geo4.geography import validate, validate_full
from geo4.geography import recipes as R
from geo4.geography.decompose import brute_force_table, covered, decompose
from geo4.geography.plan import y_g2k
from geo4.geography.scan import Bounds, scan
from geo4.invariants import Z2Kind, chars_from, chars_from_betti, lantern_chars, z2_table_chars
from geo4.verify import relation_checks

from conftest import ACCEPTANCE
from snf_oracle import elimination_divisors


@pytest.fixture
def record(capsys):
    def _record(n: int, ok: bool, detail: str):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
        ACCEPTANCE[n] = line
        with capsys.disabled():
            print(f"\n{line}")
        assert ok, line
    return _record


def test_1_conversion_table(record):
    rng = np.random.default_rng(1)
    bp = rng.integers(0, 500, 10_000)
    bm = rng.integers(0, 500, 10_000)
    bad = 0
    t = time.perf_counter()
    for p, m in zip(bp.tolist(), bm.tolist()):
        e, s = 2 + p + m, p - m
        c = chars_from(e, s)
        chi = Fraction(e + s, 4)
        ok = (c.b2plus == p and c.b2minus == m and c.c1sq == 2 * e + 3 * s and c.chih == chi
              and 12 * c.chih - c.c1sq == e and c.c1sq - 8 * c.chih == s)
        bad += not ok
    dt = time.perf_counter() - t
    record(1, bad == 0 and dt < 1.0, f"10000 (e, sigma) pairs, {bad} violations, {dt:.3f} s, limit 1 s")


def test_2_z2_table(record):
    bad = checked = 0
    for g in range(6):
        for p in range(0 if g else 1, 25):
            for m in range(0 if g else 1, 25):
                a = chars_from_betti(p, m)
                z = z2_table_chars(a, g, Z2Kind.Z2Construction)
                dq = z2_table_chars(z2_table_chars(a, g, Z2Kind.Double), g, Z2Kind.Quotient)
                cols = lambda c: (c.e, c.sigma, c.b1, c.b2plus, c.b2minus, c.c1sq, c.chih)
                bad += cols(z) != cols(dq)
                checked += 1
    a = chars_from_betti(3, 10)
    z = z2_table_chars(a, 2, Z2Kind.Z2Construction)
    spec_ok = (z.c1sq, z.chih) == (a.c1sq + 4, a.chih + Fraction(1, 2))
    record(2, bad == 0 and spec_ok, f"{checked} inputs over g in [0,5], {bad} column mismatches, "
                                    f"g=2 shift (c+4, chi+1/2) {'holds' if spec_ok else 'fails'}")


def test_3_word_identities(record):
    t = time.perf_counter()
    checks = relation_checks()
    dt = time.perf_counter() - t
    failed = [c.name for c in checks if not c.passed]
    names = {c.name for c in checks}
    need = ({f"chain_g{g}_is_minus_I" for g in (2, 3, 4, 5)} | {f"chain_g{g}_squared_is_I" for g in (2, 3, 4, 5)}
            | {"V2_is_I", "V3_is_I", "lantern_g2_preserves_evaluation", "ty_z_equals_r_z"})
    ok = not failed and need <= names and dt < 5.0
    record(3, ok, f"{len(checks)} homological identities, failed {failed or 'none'}, {dt:.2f} s, limit 5 s")


def test_4_y_table(record):
    bad = []
    for g in range(2, 11):
        for k in range(5):
            want = (6 * g + 6 - k, -4 - 4 * g + k, g, 5 * g + 4 - k)
            # recipe fold
            c = validate(R.recipe("y", 0, 0, "main", y_g2k(g, k)).replace_kw("m", None)).chars
            # plain calculus
            x = L.total_space_chars(L.build_family("XgLF", g=g))
            d = lantern_chars(z2_table_chars(x, g, Z2Kind.Double), 2 * k)
            q = z2_table_chars(d, g, Z2Kind.Quotient)
            for tag, got in (("fold", c), ("calculus", q)):
                if (got.e, got.sigma, got.b2plus, got.b2minus) != want:
                    bad.append((tag, g, k))
    endo = 0
    for k in range(4):
        q = z2_table_chars(L.total_space_chars(L.build_family("Vg2k", g=2, k=k)), 2, Z2Kind.Quotient)
        if (q.e, q.sigma, q.b2plus, q.b2minus) != (18 - k, -12 + k, 2, 14 - k):
            bad.append(("endo", 2, k))
        endo += 1
    try:
        L.build_family("Vg2k", g=2, k=4)
        bad.append(("endo domain", 2, 4))
    except ParamOutOfRange:
        pass
    record(4, not bad, f"45 (g, k) cells on two calculus paths, {endo} genus-2 cells on the Endo path "
                       f"(k=4 exceeds k <= g+1 and is rejected), mismatches {bad or 'none'}")


def test_5_certificates(record):
    names = (["half_surgery", "dx26_h1", "r14_amalgam"] + [f"cyclic_1_over_{n}" for n in range(7)]
             + [f"sigma_minus3_k{k}" for k in (1, 2, 3)])
    slow, failed = [], []
    C.run.cache_clear()
    C.run("pk_half_surgery")  # warm the compiled kernel so timings measure the certificates
    for n in names:
        t = time.perf_counter()
        cert = C.REGISTRY[n]()
        dt = time.perf_counter() - t
        if not cert.passed:
            failed.append(n)
        if dt >= 1.0:
            slow.append(f"{n} {dt:.2f}s")
    half = C.cyclic_surgery_group(2)
    prop = gp.coset_enumeration(half, max_cosets=100_000).index == 2 and \
        gp.abelianization(half).invariant_factors == [2]
    r14 = gp.coset_enumeration(C.r14_group(), max_cosets=100_000).index == 2
    ok = not failed and not slow and prop and r14
    record(5, ok, f"{len(names)} certificates with coset cap 1e5, failed {failed or 'none'}, "
                  f"over 1 s {slow or 'none'}")


def test_6_decompose_oracle(record):
    disagree = total = 0
    for chi in range(1, 41):
        table = brute_force_table(chi)
        for h in range(0, 4 * chi + 1):
            if not covered(h, chi):
                continue
            total += 1
            try:
                got = decompose(h, chi)
            except Exception:
                got = None
            disagree += got != table.get(h)
    record(6, disagree == 0, f"{total} covered (halfc, chi) with chi <= 40, {disagree} disagreements")


def test_7_coverage(record):
    t = time.perf_counter()
    small = scan(Bounds.parse("1:15"))
    big = scan(Bounds.parse("1:60"))
    dt = time.perf_counter() - t
    marks = set(small.markers)
    listed = {(2, 5), (2, 7), (2, 9), (4, 13), (4, 15), (1, 4), (1, 6), (1, 8), (1, 9)}
    listed |= {(n, m) for m, n in listed} | {(m, m) for m in range(1, 8)}
    open_big = sorted(tuple(p) for p in big.open)
    ok = (len(marks) == 31 and listed <= marks and open_big == [(m, m) for m in range(1, 8)] and dt < 60)
    record(7, ok, f"[1,15]^2 has {len(marks)} markers, listed points {'present' if listed <= marks else 'missing'}; "
                  f"[1,60]^2 open {open_big}; {dt:.1f} s, limit 60 s")


def test_8_end_to_end(record):
    t = time.perf_counter()
    bad = []
    recipes = fixtures.load_recipes()
    for name, r in recipes:
        try:
            v = validate_full(r)
            ok = ((v.model.kind, v.model.a, v.model.b) == ("Rab", r.get("m"), r.get("n"))
                  and v.descriptor.irreducible.yes and v.chain)
        except Exception as exc:  # InvariantMismatch counts as a failure here
            ok = False
            name = f"{name}: {type(exc).__name__}"
        if not ok:
            bad.append(name)
    dt = time.perf_counter() - t
    record(8, not bad and len(recipes) > 0 and dt < 30,
           f"{len(recipes)} shipped recipes, {len(bad)} failures, {dt:.2f} s, limit 30 s")


def test_9_snf_oracle(record):
    rng = np.random.default_rng(9)
    bad = 0
    for _ in range(1000):
        m, n = rng.integers(1, 9, size=2)
        M = rng.integers(-9, 10, size=(m, n)).tolist()
        res = gp.smith_normal_form(M)
        if [abs(d) for d in res.divisors] != elimination_divisors(M) or not gp.check_snf(M, res):
            bad += 1
    record(9, bad == 0, f"1000 random matrices up to 8x8 with entries in [-9, 9], {bad} mismatches")
