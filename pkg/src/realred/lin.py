"""Exact integer and rational linear algebra for lattice computations.

Matrices are immutable tuples of int tuples (row-major); vectors are int
tuples.  Everything here is exact: no floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def freeze(rows) -> Matrix:
    """Converts any iterable of int rows to an immutable Matrix."""
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_vector(n: int) -> Vector:
    return (0,) * n


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vec_neg(v: Vector) -> Vector:
    return tuple(-x for x in v)


def vec_scale(v: Vector, k: int) -> Vector:
    return tuple(k * x for x in v)


def vec_dot(u: Vector, v: Vector) -> int:
    return sum(x * y for x, y in zip(u, v))


def vec_mod(v: Vector, m: int) -> Vector:
    return tuple(x % m for x in v)


def is_zero(v: Vector) -> bool:
    return all(x == 0 for x in v)


@dataclass(frozen=True)
class SmithForm:
    """Smith normal form a == u @ diag @ v with unimodular u, v.

    Attributes:
        u: m x m unimodular matrix.
        uinv: inverse of u.
        v: n x n unimodular matrix.
        vinv: inverse of v.
        diag: the min(m, n) diagonal entries; nonnegative, each dividing
            the next, zeros trailing.
    """

    u: Matrix
    uinv: Matrix
    v: Matrix
    vinv: Matrix
    diag: Vector

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)


def smith_form(a: Matrix, ncols: int | None = None) -> SmithForm:
    """Computes the Smith normal form with transform matrices.

    Deterministic: pivot choice is the nonzero entry minimizing
    (absolute value, row, column).

    Args:
        a: integer matrix, possibly with zero rows.
        ncols: column count, required when a has no rows.
    """
    m = len(a)
    n = len(a[0]) if a else (ncols if ncols is not None else 0)
    mm = [list(row) for row in a]
    p = [list(row) for row in identity(m)]
    pi = [list(row) for row in identity(m)]
    q = [list(row) for row in identity(n)]
    qi = [list(row) for row in identity(n)]

    def row_add(i: int, j: int, c: int) -> None:
        # row_i += c * row_j; mirrored on p, inverted on pi columns.
        mi, mj = mm[i], mm[j]
        for k in range(n):
            mi[k] += c * mj[k]
        pj, pii = p[j], p[i]
        for k in range(m):
            pii[k] += c * pj[k]
        for r in range(m):
            pi[r][j] -= c * pi[r][i]

    def col_add(j: int, i: int, c: int) -> None:
        # col_j += c * col_i; mirrored on q, inverted on qi rows.
        for r in range(m):
            mm[r][j] += c * mm[r][i]
        for r in range(n):
            q[r][j] += c * q[r][i]
        qii, qij = qi[i], qi[j]
        for k in range(n):
            qii[k] -= c * qij[k]

    def row_swap(i: int, j: int) -> None:
        mm[i], mm[j] = mm[j], mm[i]
        p[i], p[j] = p[j], p[i]
        for r in range(m):
            pi[r][i], pi[r][j] = pi[r][j], pi[r][i]

    def col_swap(i: int, j: int) -> None:
        for r in range(m):
            mm[r][i], mm[r][j] = mm[r][j], mm[r][i]
        for r in range(n):
            q[r][i], q[r][j] = q[r][j], q[r][i]
        qi[i], qi[j] = qi[j], qi[i]

    def row_negate(i: int) -> None:
        mm[i] = [-x for x in mm[i]]
        p[i] = [-x for x in p[i]]
        for r in range(m):
            pi[r][i] = -pi[r][i]

    t = 0
    limit = min(m, n)
    while t < limit:
        best = None
        for i in range(t, m):
            row = mm[i]
            for j in range(t, n):
                x = row[j]
                if x:
                    key = (abs(x), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        if mm[t][t] < 0:
            row_negate(t)
        piv = mm[t][t]
        dirty = False
        for i in range(t + 1, m):
            if mm[i][t]:
                c = mm[i][t] // piv
                if c:
                    row_add(i, t, -c)
                if mm[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if mm[t][j]:
                c = mm[t][j] // piv
                if c:
                    col_add(j, t, -c)
                if mm[t][j]:
                    dirty = True
        if dirty:
            continue
        bad = None
        for i in range(t + 1, m):
            row = mm[i]
            if any(row[j] % piv for j in range(t + 1, n)):
                bad = i
                break
        if bad is not None:
            # Fold the offending row into row t so the next pivot shrinks.
            row_add(t, bad, 1)
            continue
        t += 1

    diag = tuple(mm[i][i] for i in range(limit))
    return SmithForm(
        u=freeze(pi), uinv=freeze(p), v=freeze(qi), vinv=freeze(q), diag=diag
    )


def kernel_basis(a: Matrix, ncols: int) -> tuple[Vector, ...]:
    """Basis of the saturated integer kernel {x in Z^ncols : a @ x == 0}."""
    if not a:
        return tuple(tuple(row) for row in identity(ncols))
    sf = smith_form(a)
    cols = transpose(sf.vinv)
    return tuple(cols[j] for j in range(sf.rank, ncols))


def solve_int(a: Matrix, b: Vector, ncols: int | None = None) -> Vector | None:
    """One integer solution x of a @ x == b, or None if unsolvable."""
    return solve_int_presolved(smith_form(a, ncols=ncols), b)


def solve_int_presolved(sf: SmithForm, b: Vector) -> Vector | None:
    """solve_int against a matrix whose Smith form is already known."""
    n = len(sf.v)
    c = mat_vec(sf.uinv, b)
    y = [0] * n
    for i, ci in enumerate(c):
        d = sf.diag[i] if i < len(sf.diag) else 0
        if d == 0:
            if ci != 0:
                return None
        else:
            if ci % d:
                return None
            y[i] = ci // d
    return mat_vec(sf.vinv, tuple(y))


def solve_mod(a: Matrix, b: Vector, mod: int, ncols: int | None = None) -> Vector | None:
    """One integer solution x of a @ x == b (mod mod), or None."""
    return solve_mod_presolved(smith_form(a, ncols=ncols), b, mod)


def solve_mod_presolved(sf: SmithForm, b: Vector, mod: int) -> Vector | None:
    """solve_mod against a matrix whose Smith form is already known."""
    n = len(sf.v)
    c = mat_vec(sf.uinv, b)
    y = [0] * n
    for i, ci in enumerate(c):
        d = sf.diag[i] if i < len(sf.diag) else 0
        g = gcd(d, mod)
        ci %= mod
        if ci % g:
            return None
        if d:
            step = mod // g
            y[i] = (ci // g) * pow(d // g, -1, step) % step if step > 1 else 0
    x = mat_vec(sf.vinv, tuple(y))
    return vec_mod(x, mod)


def row_hnf(a: Matrix) -> Matrix:
    """Canonical row Hermite normal form; zero rows are dropped.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot).  Two row sets span the same lattice iff their forms match.
    """
    rows = [list(r) for r in a]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    top = 0
    for col in range(n):
        while True:
            nz = sorted(
                (i for i in range(top, m) if rows[i][col]),
                key=lambda i: (abs(rows[i][col]), i),
            )
            if len(nz) <= 1:
                break
            i0, i1 = nz[0], nz[1]
            c = rows[i1][col] // rows[i0][col]
            rows[i1] = [x - c * y for x, y in zip(rows[i1], rows[i0])]
        nz = [i for i in range(top, m) if rows[i][col]]
        if not nz:
            continue
        rows[top], rows[nz[0]] = rows[nz[0]], rows[top]
        if rows[top][col] < 0:
            rows[top] = [-x for x in rows[top]]
        piv = rows[top][col]
        for i in range(top):
            c = rows[i][col] // piv
            if c:
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[top])]
        top += 1
    return freeze(rows[:top])


def f2_rank(a: Matrix) -> int:
    """Rank of the matrix reduced mod 2."""
    masks = []
    for row in a:
        bits = 0
        for j, x in enumerate(row):
            if x & 1:
                bits |= 1 << j
        if bits:
            masks.append(bits)
    rank = 0
    while masks:
        piv = min(masks, key=lambda b: b & -b)
        low = piv & -piv
        masks = [b ^ piv if b & low else b for b in masks if b != piv]
        masks = [b for b in masks if b]
        rank += 1
    return rank


def det(a: Matrix) -> int:
    """Determinant of a square integer matrix (exact)."""
    n = len(a)
    rows = [[Fraction(x) for x in row] for row in a]
    sign = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        for i in range(col + 1, n):
            if rows[i][col]:
                f = rows[i][col] / rows[col][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    out = Fraction(sign)
    for i in range(n):
        out *= rows[i][i]
    assert out.denominator == 1
    return int(out)


def mat_inverse_rational(a: Matrix) -> tuple[Matrix, int]:
    """Inverse of a square integer matrix as (numerator matrix, denominator).

    Raises ValueError if the matrix is singular.
    """
    n = len(a)
    rows = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        f = rows[col][col]
        rows[col] = [x / f for x in rows[col]]
        for i in range(n):
            if i != col and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    inv = [row[n:] for row in rows]
    den = lcm(*(x.denominator for row in inv for x in row)) if n else 1
    num = freeze([[x * den for x in row] for row in inv])
    return num, den
