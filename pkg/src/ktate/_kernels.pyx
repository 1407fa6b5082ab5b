# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels; same contracts as ``_kernels_py``.

Coefficients stay Python ints so results are exact at any size.
``poly_mul`` drops to int64 arithmetic when a coefficient bound proves
no intermediate can overflow; the other kernels avoid Python-level
dispatch but keep Python ints.
"""
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

from ._kernels_py import poly_gcd, poly_divexact, unit_pass  # noqa: F401

BACKEND = "cython"

cdef object _LIMIT = 1 << 62


cdef object _maxabs(list a):
    cdef object m = 0
    cdef object v
    for v in a:
        if v < 0:
            v = -v
        if v > m:
            m = v
    return m


def poly_mul(list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    if na == 0 or nb == 0:
        return []
    cdef Py_ssize_t n = na + nb - 1
    cdef int64_t *ca
    cdef int64_t *cb
    cdef int64_t *co
    cdef int64_t x
    cdef list out
    cdef object acc, ai
    cdef object ma = _maxabs(a), mb = _maxabs(b)
    if ma < _LIMIT and mb < _LIMIT and ma * mb * min(na, nb) < _LIMIT:
        ca = <int64_t *> malloc(na * sizeof(int64_t))
        cb = <int64_t *> malloc(nb * sizeof(int64_t))
        co = <int64_t *> malloc(n * sizeof(int64_t))
        try:
            for i in range(na):
                ca[i] = a[i]
            for j in range(nb):
                cb[j] = b[j]
            for i in range(n):
                co[i] = 0
            for i in range(na):
                x = ca[i]
                if x != 0:
                    for j in range(nb):
                        co[i + j] += x * cb[j]
            return [co[i] for i in range(n)]
        finally:
            free(ca)
            free(cb)
            free(co)
    out = [0] * n
    for i in range(na):
        ai = a[i]
        if ai:
            for j in range(nb):
                out[i + j] += ai * b[j]
    return out


def series_div(list num, list den, Py_ssize_t count):
    cdef Py_ssize_t nd = len(den), nn = len(num), k, j, top
    cdef bint pos = den[0] == 1
    cdef list out = [0] * count
    cdef object acc, dj
    for k in range(count):
        acc = num[k] if k < nn else 0
        top = nd if nd < k + 1 else k + 1
        for j in range(1, top):
            dj = den[j]
            if dj:
                acc -= dj * out[k - j]
        out[k] = acc if pos else -acc
    return out


def snf_diagonal(list rows, Py_ssize_t nrows, Py_ssize_t ncols):
    units, residual = unit_pass(rows, ncols)
    return [1] * units + _snf_dense(residual)


cdef list _snf_dense(list A):
    cdef Py_ssize_t nrows = len(A)
    cdef Py_ssize_t ncols = len(A[0]) if nrows else 0
    cdef list diag = []
    cdef Py_ssize_t t = 0, i, j, pi, pj, bi, bj, bad
    cdef list Ai, At, Ab, row
    cdef object v, q, piv, bestv
    cdef bint found, done
    while t < nrows and t < ncols:
        found = False
        bestv = 0
        pi = pj = t
        for i in range(t, nrows):
            Ai = A[i]
            for j in range(t, ncols):
                v = Ai[j]
                if v:
                    if v < 0:
                        v = -v
                    if not found or v < bestv:
                        found = True
                        bestv = v
                        pi = i
                        pj = j
                        if v == 1:
                            break
            if found and bestv == 1:
                break
        if not found:
            break
        A[t], A[pi] = A[pi], A[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        while True:
            piv = A[t][t]
            done = True
            At = A[t]
            for i in range(t + 1, nrows):
                Ai = A[i]
                v = Ai[t]
                if v:
                    q = v // piv
                    if q:
                        for j in range(t, ncols):
                            Ai[j] -= q * At[j]
                    if Ai[t]:
                        done = False
            for j in range(t + 1, ncols):
                v = At[j]
                if v:
                    q = v // piv
                    if q:
                        for i in range(t, nrows):
                            Ai = A[i]
                            Ai[j] -= q * Ai[t]
                    if At[j]:
                        done = False
            if done:
                bad = -1
                for i in range(t + 1, nrows):
                    Ai = A[i]
                    for j in range(t + 1, ncols):
                        if Ai[j] % piv:
                            bad = i
                            break
                    if bad >= 0:
                        break
                if bad < 0:
                    break
                Ab = A[bad]
                for j in range(t, ncols):
                    At[j] += Ab[j]
                continue
            bestv = piv if piv > 0 else -piv
            bi = bj = t
            for i in range(t + 1, nrows):
                v = A[i][t]
                if v:
                    if v < 0:
                        v = -v
                    if v < bestv:
                        bestv = v
                        bi = i
                        bj = t
            for j in range(t + 1, ncols):
                v = At[j]
                if v:
                    if v < 0:
                        v = -v
                    if v < bestv:
                        bestv = v
                        bi = t
                        bj = j
            if bi != t:
                A[t], A[bi] = A[bi], A[t]
            if bj != t:
                for row in A:
                    row[t], row[bj] = row[bj], row[t]
        v = A[t][t]
        diag.append(v if v > 0 else -v)
        t += 1
    return diag
