"""Exact linear algebra kits used across the package.

Three small toolboxes:
  * quaternion-entried matrices over the rational quaternions QQ
    (noncommutative Gaussian elimination; scalars act on column vectors
    from the right, matrices from the left),
  * Fraction matrices (inverse, nullspace, determinant, signature),
  * integer matrices (saturated kernels via unimodular row reduction),
plus an exact Fincke-Pohst shell enumerator for positive definite
integer Grams.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

from .hquat import HQ, QQ


# --- quaternion matrices -------------------------------------------------

def qmat(rows):
    return tuple(tuple(e if isinstance(e, (HQ, QQ)) else HQ.of(e) for e in row)
                 for row in rows)


def qmat_identity(n):
    from .hquat import ONE, ZERO
    return tuple(tuple(ONE if s == t else ZERO for t in range(n))
                 for s in range(n))


def qmat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    assert len(A[0]) == k
    out = []
    for s in range(n):
        Arow = A[s]
        row = []
        for t in range(m):
            # zero entries dominate the structured matrices; skip them
            acc = None
            for u in range(k):
                a = Arow[u]
                if a.is_zero():
                    continue
                term = a * B[u][t]
                acc = term if acc is None else acc + term
            row.append(Arow[0] * B[0][t] if acc is None else acc)
        out.append(tuple(row))
    return tuple(out)


def qmat_vec(A, v):
    out = []
    for row in A:
        acc = None
        for u in range(len(v)):
            e = row[u]
            if e.is_zero():
                continue
            term = e * v[u]
            acc = term if acc is None else acc + term
        out.append(row[0] * v[0] if acc is None else acc)
    return tuple(out)


def qmat_conj_t(A):
    return tuple(tuple(A[s][t].conj() for s in range(len(A)))
                 for t in range(len(A[0])))


def qmat_sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def qmat_eq(A, B):
    if len(A) != len(B) or len(A[0]) != len(B[0]):
        return False
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def qmat_is_zero(A):
    return all(_qq(e).is_zero() for row in A for e in row)


def _qq(e):
    return e.to_qq() if isinstance(e, HQ) else e


def qmat_to_hq(A):
    """All-HQ version of A, or None if some entry is not Hurwitz."""
    out = []
    for row in A:
        r = []
        for e in row:
            h = e if isinstance(e, HQ) else e.to_hq()
            if h is None:
                return None
            r.append(h)
        out.append(tuple(r))
    return tuple(out)


def qmat_inverse(A):
    """Two-sided inverse over the rational quaternions.

    Raises ValueError when singular.  Row operations multiply from the
    left, which is the correct side for the column-vector convention.
    """
    n = len(A)
    assert all(len(row) == n for row in A)
    work = [[_qq(e) for e in row] for row in A]
    aug = [[QQ(1) if s == t else QQ(0) for t in range(n)] for s in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not work[r][col].is_zero():
                piv = r
                break
        if piv is None:
            raise ValueError("singular quaternion matrix")
        work[col], work[piv] = work[piv], work[col]
        aug[col], aug[piv] = aug[piv], aug[col]
        pinv = work[col][col].inverse()
        work[col] = [pinv * e for e in work[col]]
        aug[col] = [pinv * e for e in aug[col]]
        for r in range(n):
            if r == col or work[r][col].is_zero():
                continue
            f = work[r][col]
            work[r] = [e - f * p for e, p in zip(work[r], work[col])]
            aug[r] = [e - f * p for e, p in zip(aug[r], aug[col])]
    return tuple(tuple(row) for row in aug)


def qmat_solve_right_module(A, rhs):
    """Solve A q = rhs for the coordinate column q (scalars on the right)."""
    inv = qmat_inverse(A)
    return qmat_vec(inv, rhs)


# --- Fraction matrices ---------------------------------------------------

def fmat_inverse(A):
    n = len(A)
    work = [[Fraction(e) for e in row] for row in A]
    aug = [[Fraction(int(s == t)) for t in range(n)] for s in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            raise ValueError("singular matrix")
        work[col], work[piv] = work[piv], work[col]
        aug[col], aug[piv] = aug[piv], aug[col]
        d = work[col][col]
        work[col] = [e / d for e in work[col]]
        aug[col] = [e / d for e in aug[col]]
        for r in range(n):
            if r == col or not work[r][col]:
                continue
            f = work[r][col]
            work[r] = [e - f * p for e, p in zip(work[r], work[col])]
            aug[r] = [e - f * p for e, p in zip(aug[r], aug[col])]
    return [list(row) for row in aug]


def fmat_det(A):
    n = len(A)
    work = [[Fraction(e) for e in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        det *= work[col][col]
        d = work[col][col]
        for r in range(col + 1, n):
            if work[r][col]:
                f = work[r][col] / d
                work[r] = [e - f * p for e, p in zip(work[r], work[col])]
    return det


def fmat_nullspace(A):
    """Basis of {x : A x = 0} over the rationals."""
    if not A:
        return []
    rows = [[Fraction(e) for e in row] for row in A]
    n = len(rows[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for k in range(r, len(rows)):
            if rows[k][c]:
                piv = k
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        d = rows[r][c]
        rows[r] = [e / d for e in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [e - f * p for e, p in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for idx, pc in enumerate(pivots):
            v[pc] = -rows[idx][fc]
        basis.append(v)
    return basis


def sym_signature(A):
    """(positive, negative) inertia of a nondegenerate symmetric matrix."""
    n = len(A)
    work = [[Fraction(e) for e in row] for row in A]
    pos = neg = 0
    idx = list(range(n))
    size = n
    while size:
        # ensure a nonzero corner entry
        if work[0][0] == 0:
            k = next((t for t in range(1, size) if work[t][t] != 0), None)
            if k is not None:
                for t in range(size):
                    work[0][t], work[k][t] = work[k][t], work[0][t]
                for t in range(size):
                    work[t][0], work[t][k] = work[t][k], work[t][0]
            else:
                k = next((t for t in range(1, size) if work[0][t] != 0), None)
                if k is None:
                    raise ValueError("degenerate form")
                for t in range(size):
                    work[0][t] += work[k][t]
                for t in range(size):
                    work[t][0] += work[t][k]
        d = work[0][0]
        if d > 0:
            pos += 1
        else:
            neg += 1
        nxt = []
        for s in range(1, size):
            row = []
            for t in range(1, size):
                row.append(work[s][t] - work[s][0] * work[0][t] / d)
            nxt.append(row)
        work = nxt
        size -= 1
    return pos, neg


# --- integer matrices ----------------------------------------------------

def int_kernel(A):
    """Saturated Z-basis of {z : A z = 0} for an integer matrix A.

    Row-reduces [A^T | I] with unimodular operations; the image rows that
    vanish correspond to kernel vectors.
    """
    k = len(A)
    n = len(A[0]) if k else 0
    B = [[A[r][s] for r in range(k)] for s in range(n)]   # A^T, n x k
    U = [[int(s == t) for t in range(n)] for s in range(n)]
    row = 0
    for col in range(k):
        while True:
            live = [r for r in range(row, n) if B[r][col]]
            if not live:
                break
            if len(live) == 1:
                r = live[0]
                B[row], B[r] = B[r], B[row]
                U[row], U[r] = U[r], U[row]
                row += 1
                break
            r0 = min(live, key=lambda r: abs(B[r][col]))
            for r in live:
                if r == r0:
                    continue
                q = B[r][col] // B[r0][col]
                if q:
                    B[r] = [a - q * b for a, b in zip(B[r], B[r0])]
                    U[r] = [a - q * b for a, b in zip(U[r], U[r0])]
    out = []
    for r in range(row, n):
        assert all(v == 0 for v in B[r])
        out.append(list(U[r]))
    return out


def int_row_hnf(rows):
    """Echelon basis (over Z) of the row span of an integer matrix.

    Unimodular row operations only, so the returned rows generate exactly
    the same Z-module.  Number of rows returned is the rank.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    n = len(work[0])
    row = 0
    for col in range(n):
        while True:
            live = [r for r in range(row, len(work)) if work[r][col]]
            if not live:
                break
            if len(live) == 1:
                r = live[0]
                work[row], work[r] = work[r], work[row]
                row += 1
                break
            r0 = min(live, key=lambda r: abs(work[r][col]))
            for r in live:
                if r == r0:
                    continue
                q = work[r][col] // work[r0][col]
                if q:
                    work[r] = [a - q * b for a, b in zip(work[r], work[r0])]
    return work[:row]


def int_span_index(rows, n):
    """Index of the row span inside Z^n, or None when the rank is below n.

    Index 1 means the rows generate all of Z^n.
    """
    basis = int_row_hnf(rows)
    if len(basis) < n:
        return None
    index = 1
    for brow in basis:
        pivot = next(v for v in brow if v)
        index *= abs(pivot)
    return index


# --- exact shell enumeration ---------------------------------------------

def _ldl(gram):
    n = len(gram)
    A = [[Fraction(e) for e in row] for row in gram]
    L = [[Fraction(0)] * n for _ in range(n)]
    d = [Fraction(0)] * n
    for s in range(n):
        acc = A[s][s]
        for t in range(s):
            acc -= L[s][t] * L[s][t] * d[t]
        d[s] = acc
        if acc <= 0:
            raise ValueError("gram not positive definite")
        L[s][s] = Fraction(1)
        for v in range(s + 1, n):
            acc = A[v][s]
            for t in range(s):
                acc -= L[v][t] * L[s][t] * d[t]
            L[v][s] = acc / d[s]
    return L, d


def fincke_pohst(gram, target):
    """All x in Z^n with x^T gram x == target, one representative per {x,-x}.

    Exact integer pruning throughout: Q(x) = sum_s d_s (x_s + c_s)^2 from
    the LDL factorization, with every budget comparison done on a common
    integer scale.  Yields nonzero integer tuples; the canonical sign is
    the one whose highest-index nonzero coordinate is positive.
    """
    n = len(gram)
    L, d = _ldl(gram)
    q = [1] * n                    # common denominator of row s of L^T
    m = [[0] * n for _ in range(n)]
    for s in range(n):
        dens = [L[t][s].denominator for t in range(s + 1, n)]
        q[s] = lcm(*dens) if dens else 1
        for t in range(s + 1, n):
            ent = L[t][s] * q[s]
            assert ent.denominator == 1
            m[s][t] = int(ent)
    DEN = 1
    for s in range(n):
        DEN = lcm(DEN, d[s].denominator * q[s] * q[s])
    scale = [0] * n                # d_s/(q_s^2) on the DEN scale
    for s in range(n):
        scale[s] = d[s].numerator * (DEN // (d[s].denominator * q[s] * q[s]))

    x = [0] * n
    R = [0] * (n + 1)              # remaining budget entering level s
    N = [0] * n
    lo = [0] * n
    hi = [0] * n
    R[n] = target * DEN
    s = n - 1
    # N_s = q_s * sum_{t>s} L[t][s] x_t; level bound from scale[s]*(q_s x + N)^2 <= R
    while True:
        Ns = 0
        ms = m[s]
        for t in range(s + 1, n):
            xt = x[t]
            if xt:
                Ns += ms[t] * xt
        N[s] = Ns
        B = isqrt(R[s + 1] // scale[s])
        qs = q[s]
        # integer ceil of (-B-N)/q and floor of (B-N)/q
        lo_s = -((B + Ns) // qs)
        hi_s = (B - Ns) // qs
        allz = all(x[t] == 0 for t in range(s + 1, n))
        if allz and lo_s < 0:
            lo_s = 0
        lo[s], hi[s] = lo_s, hi_s
        x[s] = lo_s - 1
        # descend/advance loop
        while True:
            x[s] += 1
            if x[s] > hi[s]:
                # backtrack
                s += 1
                if s == n:
                    return
                continue
            y = q[s] * x[s] + N[s]
            rem = R[s + 1] - scale[s] * y * y
            if rem < 0:
                continue
            if s == 0:
                if rem == 0:
                    out = tuple(x)
                    if any(out):
                        yield out
                continue
            R[s] = rem
            s -= 1
            break
