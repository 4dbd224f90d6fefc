"""Dense exact linear algebra over the Scalar field.

Matrices are plain lists of lists of Scalar.  Everything here is
fraction-free in spirit but implemented directly with field arithmetic,
which is fine at the sizes we use (at most 16x16).
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, Scalar

Matrix = List[List[Scalar]]


def zeros(n: int, m: int) -> Matrix:
    return [[ZERO for _ in range(m)] for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product; entries may be Scalar or any compatible ring element."""
    n, k, m = len(a), len(b), len(b[0])
    out = [[None] * m for _ in range(n)]
    zero_like = a[0][0] * b[0][0] * 0
    for i in range(n):
        for l in range(k):
            ail = a[i][l]
            if ail.is_zero():
                continue
            row = b[l]
            for j in range(m):
                if not row[j].is_zero():
                    p = ail * row[j]
                    out[i][j] = p if out[i][j] is None else out[i][j] + p
    return [[x if x is not None else zero_like for x in row] for row in out]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c: Scalar) -> Matrix:
    return [[x * c for x in row] for row in a]


def rref(a: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns (R, pivot column list)."""
    m = [list(row) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: List[int] = []
    r = 0
    for j in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not m[i][j].is_zero():
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = ONE / m[r][j]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][j].is_zero():
                f = m[i][j]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(j)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + list(idr) for row, idr in zip(a, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def solve(a: Matrix, b: Sequence[Scalar]) -> Optional[List[Scalar]]:
    """One solution of a x = b, or None if inconsistent."""
    n = len(a)
    ncols = len(a[0]) if n else 0
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for r, j in enumerate(pivots):
        x[j] = red[r][ncols]
    return x


def kernel_basis(a: Matrix) -> List[List[Scalar]]:
    red, pivots = rref(a)
    ncols = len(a[0]) if a else 0
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, j in enumerate(pivots):
            v[j] = -red[r][f]
        basis.append(v)
    return basis


def same_row_span(a: Matrix, b: Matrix) -> bool:
    """Exact comparison of the row spans of two matrices over Scalar."""
    ra, pa = rref(a)
    rb, pb = rref(b)
    ra = [row for row in ra if any(not x.is_zero() for x in row)]
    rb = [row for row in rb if any(not x.is_zero() for x in row)]
    return pa == pb and ra == rb
