"""Pure-Python versions of the integer kernels.

Every polynomial is a dense list of Python ints, lowest degree first.
Matrices are lists of row lists. Nothing here knows about Laurent
shifts; callers strip those before calling in.
"""
from __future__ import annotations

from math import gcd

BACKEND = "python"


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def series_div(num, den, count):
    """First ``count`` power-series coefficients of num/den.

    ``den[0]`` must be +1 or -1.
    """
    d0 = den[0]
    nd = len(den)
    out = [0] * count
    for k in range(count):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(nd, k + 1)):
            dj = den[j]
            if dj:
                acc -= dj * out[k - j]
        out[k] = acc if d0 == 1 else -acc
    return out


def _content(a):
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            break
    return g


def _strip_high(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _prem(a, b):
    # pseudo-remainder of lc(b)^(deg a - deg b + 1) * a by b
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        _strip_high(r)
    return r


def poly_gcd(a, b):
    """Gcd over Z with positive leading coefficient (primitive PRS)."""
    a = _strip_high(list(a))
    b = _strip_high(list(b))
    if not a:
        return _normalize_sign(b)
    if not b:
        return _normalize_sign(a)
    ca, cb = _content(a), _content(b)
    c = gcd(ca, cb)
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            break
        cr = _content(r)
        a, b = b, [x // cr for x in r]
    if len(b) == 1:
        return [c]
    return _normalize_sign([c * x for x in b])


def _normalize_sign(a):
    if a and a[-1] < 0:
        return [-x for x in a]
    return a


def poly_divexact(a, b):
    """Quotient a/b over Z; ``None`` when b does not divide a exactly."""
    r = _strip_high(list(a))
    b = _strip_high(list(b))
    if not r:
        return []
    db = len(b) - 1
    lb = b[-1]
    if len(r) - 1 < db:
        return None
    q = [0] * (len(r) - db)
    while r and len(r) - 1 >= db:
        lr = r[-1]
        if lr % lb:
            return None
        c = lr // lb
        shift = len(r) - 1 - db
        q[shift] = c
        for j in range(db + 1):
            r[shift + j] -= c * b[j]
        _strip_high(r)
    if r:
        return None
    return q


def unit_pass(rows, ncols):
    """Peel off every +-1 pivot reachable by sparse row elimination.

    Returns the number of unit pivots removed and the residual matrix
    (dense rows over the surviving columns).  The invariant factors of
    the input are ``[1] * units`` followed by those of the residual.
    """
    R = [{j: v for j, v in enumerate(r) if v} for r in rows]
    cols = {}
    for i, r in enumerate(R):
        for j in r:
            cols.setdefault(j, set()).add(i)
    alive_rows = set(range(len(R)))
    alive_cols = set(range(ncols))
    units = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(alive_rows):
            r = R[i]
            pj = None
            for j, v in r.items():
                if v == 1 or v == -1:
                    if pj is None or len(cols[j]) < len(cols[pj]):
                        pj = j
            if pj is None:
                continue
            pv = r[pj]
            for k in list(cols[pj]):
                if k == i:
                    continue
                rk = R[k]
                f = rk[pj] * pv
                for j, v in r.items():
                    nv = rk.get(j, 0) - f * v
                    if nv:
                        if j not in rk:
                            cols[j].add(k)
                        rk[j] = nv
                    elif j in rk:
                        del rk[j]
                        cols[j].discard(k)
            for j in r:
                cols[j].discard(i)
            alive_rows.discard(i)
            alive_cols.discard(pj)
            R[i] = {}
            units += 1
            progress = True
    keep_cols = sorted(j for j in alive_cols if cols.get(j))
    index = {j: n for n, j in enumerate(keep_cols)}
    residual = []
    for i in sorted(alive_rows):
        r = R[i]
        if r:
            row = [0] * len(keep_cols)
            for j, v in r.items():
                row[index[j]] = v
            residual.append(row)
    return units, residual


def snf_diagonal(rows, nrows, ncols):
    """Nonzero invariant factors of an integer matrix (positive, each dividing the next)."""
    units, A = unit_pass(rows, ncols)
    return [1] * units + _snf_dense(A)


def _snf_dense(A):
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    diag = []
    t = 0
    while t < nrows and t < ncols:
        # pivot: smallest nonzero magnitude in the remaining block
        best = None
        for i in range(t, nrows):
            Ai = A[i]
            for j in range(t, ncols):
                v = Ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        A[t], A[pi] = A[pi], A[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        while True:
            piv = A[t][t]
            done = True
            for i in range(t + 1, nrows):
                v = A[i][t]
                if v:
                    q = v // piv
                    if q:
                        Ai, At = A[i], A[t]
                        for j in range(t, ncols):
                            Ai[j] -= q * At[j]
                    if A[i][t]:
                        done = False
            At = A[t]
            for j in range(t + 1, ncols):
                v = At[j]
                if v:
                    q = v // piv
                    if q:
                        for i in range(t, nrows):
                            A[i][j] -= q * A[i][t]
                    if At[j]:
                        done = False
            if done:
                # pivot must divide the rest of the block
                bad = None
                for i in range(t + 1, nrows):
                    for j in range(t + 1, ncols):
                        if A[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                Ab, At = A[bad], A[t]
                for j in range(t, ncols):
                    At[j] += Ab[j]
                continue
            # move the smallest remaining entry of row/column t into the pivot
            best = (abs(piv), t, t)
            for i in range(t + 1, nrows):
                v = A[i][t]
                if v and abs(v) < best[0]:
                    best = (abs(v), i, t)
            for j in range(t + 1, ncols):
                v = A[t][j]
                if v and abs(v) < best[0]:
                    best = (abs(v), t, j)
            _, bi, bj = best
            if bi != t:
                A[t], A[bi] = A[bi], A[t]
            if bj != t:
                for row in A:
                    row[t], row[bj] = row[bj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag
