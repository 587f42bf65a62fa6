"""Dense exact linear algebra over Q(i).

Matrices are lists of rows of :class:`GaussianRational`. Sizes here are
small (a few dozen), so plain Gauss-Jordan elimination is adequate.
"""

from __future__ import annotations

from fractions import Fraction

from ..exactalg.numbers import GaussianRational

__all__ = [
    "gr", "zeros", "identity", "matmul", "matvec", "transpose", "conj_transpose",
    "rref", "rank", "nullspace", "solve", "inverse", "charpoly", "ldl_psd", "is_hermitian",
    "is_scalar_multiple_of_identity",
]

ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def gr(x) -> GaussianRational:
    return GaussianRational.coerce(x)


def zeros(r, c):
    return [[ZERO] * c for _ in range(r)]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    m, k, n = len(A), len(B), len(B[0]) if B else 0
    out = zeros(m, n)
    for i in range(m):
        row = A[i]
        acc = [ZERO] * n
        for l in range(k):
            a = row[l]
            if a:
                Bl = B[l]
                for j in range(n):
                    if Bl[j]:
                        acc[j] = acc[j] + a * Bl[j]
        out[i] = acc
    return out


def matvec(A, v):
    return [sum((a * x for a, x in zip(row, v) if a and x), ZERO) for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def conj_transpose(A):
    return [[x.conjugate() for x in r] for r in zip(*A)] if A else []


def rref(A):
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A) -> int:
    return len(rref(A)[1]) if A else 0


def nullspace(A, ncols=None):
    """Basis (list of column vectors) of {x : A x = 0}."""
    if not A:
        n = ncols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    M, piv = rref(A)
    n = len(A[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, c in enumerate(piv):
            v[c] = -M[r][f]
        basis.append(v)
    return basis


def solve(A, b):
    """One solution of A x = b, or None when inconsistent."""
    n = len(A[0])
    M, piv = rref([list(r) + [bi] for r, bi in zip(A, b)])
    if n in piv:
        return None
    x = [ZERO] * n
    for r, c in enumerate(piv):
        x[c] = M[r][n]
    return x


def inverse(A):
    n = len(A)
    M, piv = rref([list(r) + e for r, e in zip(A, identity(n))])
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in M]


def charpoly(A):
    """Coefficients c_0..c_n (low to high) of det(x I - A), by Faddeev-LeVerrier."""
    n = len(A)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    M = zeros(n, n)
    I = identity(n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k)/k
        M = matmul(A, M) if k > 1 else zeros(n, n)
        c_prev = coeffs[n - k + 1]
        M = [[M[i][j] + (c_prev if i == j else ZERO) for j in range(n)] for i in range(n)]
        AM = matmul(A, M)
        tr = sum((AM[i][i] for i in range(n)), ZERO)
        coeffs[n - k] = -tr * GaussianRational(Fraction(1, k))
    return coeffs


def is_hermitian(A) -> bool:
    n = len(A)
    return all(A[i][j] == A[j][i].conjugate() for i in range(n) for j in range(n))


def ldl_psd(A):
    """Exact test of positive semidefiniteness of a Hermitian matrix.

    Symmetric elimination with diagonal pivoting: a zero pivot must come with a
    zero row, otherwise the form is indefinite. Returns (is_psd, diagonal).
    """
    if not is_hermitian(A):
        return False, []
    M = [list(r) for r in A]
    n = len(M)
    diag = []
    active = list(range(n))
    while active:
        # largest-index-free choice: any nonzero diagonal works over Q
        p = next((i for i in active if M[i][i]), None)
        if p is None:
            if any(M[i][j] for i in active for j in active):
                return False, diag
            diag.extend([ZERO] * len(active))
            break
        d = M[p][p]
        if d.im != 0 or d.re < 0:
            return False, diag + [d]
        diag.append(d)
        active.remove(p)
        inv = d.inverse()
        for i in active:
            if M[i][p]:
                f = M[i][p] * inv
                for j in active:
                    if M[p][j]:
                        M[i][j] = M[i][j] - f * M[p][j]
    return True, diag


def is_scalar_multiple_of_identity(A):
    """Return the scalar c if A == c I, else None."""
    n = len(A)
    if n == 0:
        return ZERO
    c = A[0][0]
    for i in range(n):
        for j in range(n):
            if A[i][j] != (c if i == j else ZERO):
                return None
    return c
