"""Small exact linear algebra over Fraction; matrices are lists of rows."""

from fractions import Fraction


def zeros(m, n):
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n):
    A = zeros(n, n)
    for i in range(n):
        A[i][i] = Fraction(1)
    return A


def matmul(A, B):
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        r = [Fraction(0)] * n
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        r[j] += a * b
        out.append(r)
    return out


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def rref(A):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    R = [list(map(Fraction, row)) for row in A]
    m = len(R)
    n = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = None
        for i in range(r, m):
            if R[i][c]:
                p = i
                break
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                Ri, Rr = R[i], R[r]
                R[i] = [a - f * b for a, b in zip(Ri, Rr)]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A):
    return len(rref(A)[1])


def nullspace(A, ncols):
    """Basis of {x : A x = 0}, one vector per free column."""
    if not A:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(A)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -R[i][f]
        out.append(x)
    return out


def inverse(A):
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    R, piv = rref(M)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def det(A):
    n = len(A)
    M = [list(map(Fraction, row)) for row in A]
    d = Fraction(1)
    for c in range(n):
        p = None
        for i in range(c, n):
            if M[i][c]:
                p = i
                break
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def solve(A, b):
    """One solution of A x = b, or None if inconsistent."""
    n = len(A[0]) if A else 0
    M = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(M)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x
