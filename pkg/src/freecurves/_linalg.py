"""Exact integer/rational linear algebra on small dense matrices.

Matrices are lists of rows of Python ints.  Everything here is exact; the
matrices this package handles have at most a dozen columns, so the simple
cubic algorithms are fine.
"""
from fractions import Fraction
from math import gcd


def primitive(v):
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def transpose(rows, ncols=None):
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*rows)]


def matvec(m, v):
    return tuple(dot(row, v) for row in m)


def matmul(a, b):
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _rref(rows, ncols):
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols=None):
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    return len(_rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Rational basis of {x : rows . x = 0}, scaled to primitive integer vectors."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    red, pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        den = 1
        for q in x:
            den = den * q.denominator // gcd(den, q.denominator)
        basis.append(primitive([int(q * den) for q in x]))
    return basis


def det(m):
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(m):
    """Exact inverse as a matrix of Fractions; raises ZeroDivisionError if singular."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    red, pivots = _rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


def solve(cols, v):
    """Coefficients x with sum x_i cols[i] == v, or None if v is not in the span.

    ``cols`` must be linearly independent.
    """
    n = len(cols)
    d = len(v)
    aug = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(d)]
    red, pivots = _rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return x


def integer_kernel(rows, ncols):
    """A Z-basis of the saturated lattice {x in Z^n : rows . x = 0}.

    Column-style extended Euclid: reduce ``rows`` to lower echelon form by
    unimodular column operations tracked in U; the columns of U past the
    rank span the kernel over Z.
    """
    a = [list(r) for r in rows]
    m = len(a)
    u = identity(ncols)
    piv = 0
    for i in range(m):
        if piv >= ncols:
            break
        while True:
            nz = [j for j in range(piv, ncols) if a[i][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(a[i][j]))
            _swap_cols(a, u, piv, j0)
            done = True
            for j in range(piv + 1, ncols):
                if a[i][j] != 0:
                    q = a[i][j] // a[i][piv]
                    _addmul_col(a, u, j, piv, -q)
                    if a[i][j] != 0:
                        done = False
            if done:
                break
        if any(a[i][j] != 0 for j in range(piv, ncols)):
            piv += 1
    return [primitive([u[r][c] for r in range(ncols)]) for c in range(piv, ncols)]


def _swap_cols(a, u, i, j):
    if i == j:
        return
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in u:
        row[i], row[j] = row[j], row[i]


def _addmul_col(a, u, dst, src, q):
    for row in a:
        row[dst] += q * row[src]
    for row in u:
        row[dst] += q * row[src]
