"""Pure-Python fallback for the hot kernels.

Mirrors ``_kernel.pyx`` function for function. All integers handled here
are residues modulo a single modulus ``n``; product rings are split into
components by the callers.
"""
from __future__ import annotations

import itertools

import numpy as np


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b)``, ``g >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def poly_mul(a: list[int], b: list[int], n: int) -> list[int]:
    """Convolution of two coefficient lists modulo ``n`` (untrimmed)."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return [c % n for c in out]


def solve_mod(rows: list[list[int]], rhs: list[int], ncols: int, n: int) -> list[int] | None:
    """Solve ``rows @ x == rhs (mod n)``; return one solution or None.

    Diagonalizes the matrix with unimodular integer row and column
    operations (Smith-style, divisibility chain not enforced) and then
    solves the decoupled congruences ``d_i y_i == c_i``. Complete: None is
    returned only when the system has no solution.
    """
    m = len(rows)
    if len(rhs) != m or any(len(r) != ncols for r in rows):
        raise ValueError("dimension mismatch")
    if n == 1:
        return [0] * ncols
    M = [[v % n for v in r] for r in rows]
    c = [v % n for v in rhs]
    # columns of V: x = V y
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    rank = 0
    for t in range(min(m, ncols)):
        piv = None
        best = n
        for i in range(t, m):
            Mi = M[i]
            for j in range(t, ncols):
                v = Mi[j]
                if v and v < best:
                    best, piv = v, (i, j)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            M[t], M[pi] = M[pi], M[t]
            c[t], c[pi] = c[pi], c[t]
        if pj != t:
            for r in M:
                r[t], r[pj] = r[pj], r[t]
            for r in V:
                r[t], r[pj] = r[pj], r[t]
        while True:
            for i in range(t + 1, m):
                b = M[i][t]
                if not b:
                    continue
                a = M[t][t]
                rt, ri = M[t], M[i]
                if b % a == 0:
                    q = b // a
                    M[i] = [(y - q * x) % n for x, y in zip(rt, ri)]
                    c[i] = (c[i] - q * c[t]) % n
                else:
                    g, s, u = xgcd(a, b)
                    ag, bg = a // g, b // g
                    M[t] = [(s * x + u * y) % n for x, y in zip(rt, ri)]
                    M[i] = [(ag * y - bg * x) % n for x, y in zip(rt, ri)]
                    c[t], c[i] = (s * c[t] + u * c[i]) % n, (ag * c[i] - bg * c[t]) % n
            dirty = False
            for j in range(t + 1, ncols):
                b = M[t][j]
                if not b:
                    continue
                a = M[t][t]
                if b % a == 0:
                    q = b // a
                    for r in M:
                        r[j] = (r[j] - q * r[t]) % n
                    for r in V:
                        r[j] = (r[j] - q * r[t]) % n
                else:
                    g, s, u = xgcd(a, b)
                    ag, bg = a // g, b // g
                    for r in itertools.chain(M, V):
                        x, y = r[t], r[j]
                        r[t], r[j] = (s * x + u * y) % n, (ag * y - bg * x) % n
                    dirty = True
            if not dirty:
                break
        rank = t + 1
    y = [0] * ncols
    for i in range(rank):
        d = M[i][i]
        g = xgcd(d, n)[0]
        if c[i] % g:
            return None
        ng = n // g
        y[i] = (c[i] // g) * pow(d // g, -1, ng) % ng if ng > 1 else 0
    for i in range(rank, m):
        if c[i]:
            return None
    return [sum(Vr[j] * y[j] for j in range(rank)) % n for Vr in V]


def regular_scan(n: int, sdeg: int, hdeg: int, require_unit: bool = True) -> tuple[list[int], list[int]] | None:
    """Search for ``s`` with unit constant term and ``h != 0`` with ``s*h == 0 (mod n)``.

    Exhaustive over deg(s) <= sdeg, deg(h) <= hdeg. Returns the first
    pair found or None. With ``require_unit=False`` any nonzero constant
    term is allowed (a positive control for the scan itself).
    """
    units = [u for u in range(1, n) if not require_unit or xgcd(u, n)[0] == 1]
    hs = np.array(list(itertools.product(range(n), repeat=hdeg + 1)), dtype=np.int64)[1:]
    width = sdeg + hdeg + 1
    for tail in itertools.product(range(n), repeat=sdeg):
        for u in units:
            s = (u,) + tail
            T = np.zeros((hdeg + 1, width), dtype=np.int64)
            for i in range(hdeg + 1):
                T[i, i:i + sdeg + 1] = s
            prod = (hs @ T) % n
            hit = np.flatnonzero(~prod.any(axis=1))
            if hit.size:
                return list(s), [int(v) for v in hs[hit[0]]]
    return None


def vnr_scan(n: int) -> int:
    """Return the first ``a`` in Z_n with no ``b`` such that ``a*a*b == a``, else -1."""
    a = np.arange(n, dtype=np.int64)
    sq = (a * a) % n
    ok = ((sq[:, None] * a[None, :]) % n == a[:, None]).any(axis=1)
    bad = np.flatnonzero(~ok)
    return int(bad[0]) if bad.size else -1
