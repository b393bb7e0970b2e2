"""Coset enumeration kernel source.

Loaded twice by _kernels: once with _USE_JIT set (numba.njit, cached) and once
as plain Python over numpy arrays.
"""
import numpy as np

UNDEF = -1
CLOSED = 0
EXCEEDED = 1

if globals().get("_USE_JIT", False):
    import numba

    _jit = numba.njit(cache=True)
else:
    def _jit(fn):
        return fn

@_jit
def rep(p, k):
    r = k
    while p[r] != r:
        r = p[r]
    while p[k] != r:
        nxt = p[k]
        p[k] = r
        k = nxt
    return r

@_jit
def merge(p, q, qn, k, l):
    k1 = rep(p, k)
    l1 = rep(p, l)
    if k1 == l1:
        return qn
    if k1 > l1:
        k1, l1 = l1, k1
    p[l1] = k1
    q[qn] = l1
    return qn + 1

@_jit
def coincidence(table, p, q, a, b):
    ncols = table.shape[1]
    qn = merge(p, q, 0, a, b)
    i = 0
    while i < qn:
        e = q[i]
        i += 1
        for x in range(ncols):
            f = table[e, x]
            if f >= 0:
                xi = x ^ 1
                table[f, xi] = UNDEF
                e1 = rep(p, e)
                f1 = rep(p, f)
                if table[e1, x] >= 0:
                    qn = merge(p, q, qn, f1, table[e1, x])
                elif table[f1, xi] >= 0:
                    qn = merge(p, q, qn, e1, table[f1, xi])
                else:
                    table[e1, x] = f1
                    table[f1, xi] = e1

@_jit
def scan(table, p, q, a, w, lo, hi, n, fill):
    """Scan coset a under w[lo:hi]. Returns the new n, or -(n + 1) when out of space.

    Cosets defined before running out of space stay in the table, so the caller
    must keep the updated n in both cases.
    """
    maxc = table.shape[0]
    f = a
    i = lo
    b = a
    j = hi - 1
    while True:
        while i <= j and table[f, w[i]] >= 0:
            f = table[f, w[i]]
            i += 1
        if i > j:
            if f != b:
                coincidence(table, p, q, f, b)
            return n
        while j >= i and table[b, w[j] ^ 1] >= 0:
            b = table[b, w[j] ^ 1]
            j -= 1
        if j < i:
            coincidence(table, p, q, f, b)
            return n
        if i == j:
            table[f, w[i]] = b
            table[b, w[i] ^ 1] = f
            return n
        if not fill:
            return n
        if n >= maxc:
            return -(n + 1)
        table[f, w[i]] = n
        table[n, w[i] ^ 1] = f
        p[n] = n
        n += 1

@_jit
def compact(table, p, n):
    newidx = np.full(n, -1, np.int64)
    cnt = 0
    for k in range(n):
        if p[k] == k:
            newidx[k] = cnt
            cnt += 1
    ncols = table.shape[1]
    for k in range(n):
        if p[k] == k:
            nk = newidx[k]
            for x in range(ncols):
                f = table[k, x]
                table[nk, x] = UNDEF if f < 0 else newidx[rep(p, f)]
    for k in range(cnt, n):
        for x in range(ncols):
            table[k, x] = UNDEF
    for k in range(table.shape[0]):
        p[k] = k
    return cnt, newidx

@_jit
def lookahead(table, p, q, n, rel, roff):
    for b in range(n):
        if p[b] != b:
            continue
        for r in range(len(roff) - 1):
            if p[b] != b:
                break
            scan(table, p, q, b, rel, roff[r], roff[r + 1], n, False)

@_jit
def enumerate_cosets(ncols, rel, roff, sub, soff, maxc):
    table = np.full((maxc, ncols), UNDEF, np.int64)
    p = np.arange(maxc)
    q = np.empty(maxc, np.int64)
    n = 1
    a = 0
    stage = 0  # 0: subgroup generators at coset 0, 1: main HLT loop
    sidx = 0
    while True:
        overflow = False
        if stage == 0:
            while sidx < len(soff) - 1:
                m = scan(table, p, q, 0, sub, soff[sidx], soff[sidx + 1], n, True)
                if m < 0:
                    n = -m - 1
                    overflow = True
                    break
                n = m
                sidx += 1
            if not overflow:
                stage = 1
        if stage == 1 and not overflow:
            while a < n:
                if p[a] == a:
                    for r in range(len(roff) - 1):
                        if p[a] != a:
                            break
                        m = scan(table, p, q, a, rel, roff[r], roff[r + 1], n, True)
                        if m < 0:
                            n = -m - 1
                            overflow = True
                            break
                        n = m
                    if overflow:
                        break
                    if p[a] == a:
                        for x in range(ncols):
                            if table[a, x] < 0:
                                if n >= maxc:
                                    overflow = True
                                    break
                                table[a, x] = n
                                table[n, x ^ 1] = a
                                p[n] = n
                                n += 1
                        if overflow:
                            break
                a += 1
            if not overflow:
                break
        # out of space: deduce without defining, then compact
        lookahead(table, p, q, n, rel, roff)
        for s in range(len(soff) - 1):
            scan(table, p, q, 0, sub, soff[s], soff[s + 1], n, False)
        live = 0
        for k in range(n):
            if p[k] == k:
                live += 1
        if live >= maxc:
            return EXCEEDED, live, table
        newa = 0
        for k in range(min(a, n)):
            if p[k] == k:
                newa += 1
        n, _ = compact(table, p, n)
        a = newa
    cnt, _ = compact(table, p, n)
    return CLOSED, cnt, table
