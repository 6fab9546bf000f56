# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Semantics match ``_kernel_py`` exactly."""
from libc.stdlib cimport malloc, calloc, free


cdef inline long long _mod(long long x, long long n) nogil:
    x %= n
    return x + n if x < 0 else x


cdef long long _xgcd(long long a, long long b, long long *s, long long *t) nogil:
    cdef long long s0 = 1, s1 = 0, t0 = 0, t1 = 1, q, r, tmp
    while b != 0:
        q = a // b
        r = a - q * b
        a = b
        b = r
        tmp = s0 - q * s1
        s0 = s1
        s1 = tmp
        tmp = t0 - q * t1
        t0 = t1
        t1 = tmp
    if a < 0:
        s[0] = -s0
        t[0] = -t0
        return -a
    s[0] = s0
    t[0] = t0
    return a


def xgcd(long long a, long long b):
    cdef long long s, t, g
    g = _xgcd(a, b, &s, &t)
    return g, s, t


def poly_mul(a, b, long long n):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    if la == 0 or lb == 0:
        return []
    cdef long long *ca = <long long *> malloc(la * sizeof(long long))
    cdef long long *cb = <long long *> malloc(lb * sizeof(long long))
    cdef long long *out = <long long *> calloc(la + lb - 1, sizeof(long long))
    cdef long long ai
    try:
        for i in range(la):
            ca[i] = a[i]
        for j in range(lb):
            cb[j] = b[j]
        with nogil:
            for i in range(la):
                ai = ca[i]
                if ai == 0:
                    continue
                for j in range(lb):
                    out[i + j] = (out[i + j] + ai * cb[j]) % n
        return [_mod(out[i], n) for i in range(la + lb - 1)]
    finally:
        free(ca)
        free(cb)
        free(out)


def solve_mod(rows, rhs, Py_ssize_t ncols, long long n):
    cdef Py_ssize_t m = len(rows)
    if len(rhs) != m or any(len(r) != ncols for r in rows):
        raise ValueError("dimension mismatch")
    if n == 1:
        return [0] * ncols
    cdef long long *M = <long long *> calloc(m * ncols + 1, sizeof(long long))
    cdef long long *c = <long long *> calloc(m + 1, sizeof(long long))
    cdef long long *V = <long long *> calloc(ncols * ncols + 1, sizeof(long long))
    cdef long long *y = <long long *> calloc(ncols + 1, sizeof(long long))
    cdef Py_ssize_t i, j, t, r, pi, pj, rank = 0
    cdef long long a, b, q, g, s, u, ag, bg, x, z, best, d, ng, inv, acc
    cdef bint dirty, solvable = True
    try:
        for i in range(m):
            row = rows[i]
            for j in range(ncols):
                M[i * ncols + j] = _mod(row[j], n)
            c[i] = _mod(rhs[i], n)
        for i in range(ncols):
            V[i * ncols + i] = 1
        with nogil:
            for t in range(min(m, ncols)):
                pi = -1
                pj = -1
                best = n
                for i in range(t, m):
                    for j in range(t, ncols):
                        x = M[i * ncols + j]
                        if x != 0 and x < best:
                            best = x
                            pi = i
                            pj = j
                if pi < 0:
                    break
                if pi != t:
                    for j in range(ncols):
                        x = M[t * ncols + j]
                        M[t * ncols + j] = M[pi * ncols + j]
                        M[pi * ncols + j] = x
                    x = c[t]
                    c[t] = c[pi]
                    c[pi] = x
                if pj != t:
                    for r in range(m):
                        x = M[r * ncols + t]
                        M[r * ncols + t] = M[r * ncols + pj]
                        M[r * ncols + pj] = x
                    for r in range(ncols):
                        x = V[r * ncols + t]
                        V[r * ncols + t] = V[r * ncols + pj]
                        V[r * ncols + pj] = x
                while True:
                    for i in range(t + 1, m):
                        b = M[i * ncols + t]
                        if b == 0:
                            continue
                        a = M[t * ncols + t]
                        if b % a == 0:
                            q = b // a
                            for j in range(ncols):
                                M[i * ncols + j] = _mod(M[i * ncols + j] - q * M[t * ncols + j], n)
                            c[i] = _mod(c[i] - q * c[t], n)
                        else:
                            g = _xgcd(a, b, &s, &u)
                            ag = a // g
                            bg = b // g
                            for j in range(ncols):
                                x = M[t * ncols + j]
                                z = M[i * ncols + j]
                                M[t * ncols + j] = _mod(s * x + u * z, n)
                                M[i * ncols + j] = _mod(ag * z - bg * x, n)
                            x = c[t]
                            z = c[i]
                            c[t] = _mod(s * x + u * z, n)
                            c[i] = _mod(ag * z - bg * x, n)
                    dirty = False
                    for j in range(t + 1, ncols):
                        b = M[t * ncols + j]
                        if b == 0:
                            continue
                        a = M[t * ncols + t]
                        if b % a == 0:
                            q = b // a
                            for r in range(m):
                                M[r * ncols + j] = _mod(M[r * ncols + j] - q * M[r * ncols + t], n)
                            for r in range(ncols):
                                V[r * ncols + j] = _mod(V[r * ncols + j] - q * V[r * ncols + t], n)
                        else:
                            g = _xgcd(a, b, &s, &u)
                            ag = a // g
                            bg = b // g
                            for r in range(m):
                                x = M[r * ncols + t]
                                z = M[r * ncols + j]
                                M[r * ncols + t] = _mod(s * x + u * z, n)
                                M[r * ncols + j] = _mod(ag * z - bg * x, n)
                            for r in range(ncols):
                                x = V[r * ncols + t]
                                z = V[r * ncols + j]
                                V[r * ncols + t] = _mod(s * x + u * z, n)
                                V[r * ncols + j] = _mod(ag * z - bg * x, n)
                            dirty = True
                    if not dirty:
                        break
                rank = t + 1
            for i in range(rank):
                d = M[i * ncols + i]
                g = _xgcd(d, n, &s, &u)
                if c[i] % g != 0:
                    solvable = False
                    break
                ng = n // g
                if ng > 1:
                    _xgcd(d // g, ng, &inv, &u)
                    y[i] = _mod((c[i] // g) * _mod(inv, ng), ng)
            if solvable:
                for i in range(rank, m):
                    if c[i] != 0:
                        solvable = False
                        break
        if not solvable:
            return None
        out = []
        for i in range(ncols):
            acc = 0
            for j in range(rank):
                acc = (acc + V[i * ncols + j] * y[j]) % n
            out.append(acc)
        return out
    finally:
        free(M)
        free(c)
        free(V)
        free(y)


cdef bint _is_unit(long long u, long long n) nogil:
    cdef long long s, t
    return _xgcd(u, n, &s, &t) == 1


def regular_scan(long long n, int sdeg, int hdeg, bint require_unit=True):
    cdef int slen = sdeg + 1, hlen = hdeg + 1, width = sdeg + hdeg + 1
    cdef long long *s = <long long *> calloc(slen, sizeof(long long))
    cdef long long *h = <long long *> calloc(hlen, sizeof(long long))
    cdef long long *units = <long long *> calloc(n + 1, sizeof(long long))
    cdef int nunits = 0, k, i, e, ui
    cdef long long acc
    cdef bint zero, found = False, more_tail, more_h
    try:
        with nogil:
            for k in range(1, n):
                if not require_unit or _is_unit(k, n):
                    units[nunits] = k
                    nunits += 1
            for i in range(1, slen):
                s[i] = 0
            more_tail = True
            while more_tail and not found:
                for ui in range(nunits):
                    s[0] = units[ui]
                    for i in range(hlen):
                        h[i] = 0
                    more_h = True
                    while True:
                        # advance h lexicographically (last index fastest), skipping zero
                        i = hlen - 1
                        while i >= 0:
                            h[i] += 1
                            if h[i] < n:
                                break
                            h[i] = 0
                            i -= 1
                        if i < 0:
                            break
                        zero = True
                        for e in range(width):
                            acc = 0
                            for k in range(hlen):
                                if 0 <= e - k <= sdeg:
                                    acc += h[k] * s[e - k]
                            if acc % n != 0:
                                zero = False
                                break
                        if zero:
                            found = True
                            break
                    if found:
                        break
                if found:
                    break
                i = slen - 1
                while i >= 1:
                    s[i] += 1
                    if s[i] < n:
                        break
                    s[i] = 0
                    i -= 1
                if i < 1:
                    more_tail = False
        if found:
            return [s[i] for i in range(slen)], [h[i] for i in range(hlen)]
        return None
    finally:
        free(s)
        free(h)
        free(units)


def vnr_scan(long long n):
    cdef long long a, b, sq, bad = -1
    cdef bint ok
    with nogil:
        for a in range(n):
            sq = a * a % n
            ok = False
            for b in range(n):
                if sq * b % n == a:
                    ok = True
                    break
            if not ok:
                bad = a
                break
    return bad
