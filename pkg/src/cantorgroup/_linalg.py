"""Small exact linear algebra over ZZ and QQ (lists of ints / Fractions)."""

from fractions import Fraction
from math import gcd, lcm


def common_denominator(values):
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def integer_row_basis(rows):
    """Echelon basis of the ZZ-lattice spanned by integer row vectors.

    Returns ``(basis, pivots)`` where ``basis[i]`` has its first nonzero entry
    in column ``pivots[i]`` and pivots strictly increase.  Rows are reduced by
    repeated Euclidean steps, so the basis spans exactly the same lattice.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    basis, pivots = [], []
    for col in range(ncols):
        while True:
            nz = [r for r in rows if r[col] != 0]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda r: abs(r[col]))
            for r in nz:
                if r is p:
                    continue
                q = r[col] // p[col]
                for k in range(col, ncols):
                    r[k] -= q * p[k]
            rows = [r for r in rows if any(r)]
        if nz:
            pivot = nz[0]
            if pivot[col] < 0:
                pivot[:] = [-x for x in pivot]
            basis.append(pivot)
            pivots.append(col)
            rows = [r for r in rows if r is not pivot]
    return basis, pivots


def echelon_coordinates(basis, pivots, vec):
    """Rational coefficients of ``vec`` in an echelon basis, or None if ``vec``
    is outside the QQ-span."""
    residual = [Fraction(x) for x in vec]
    coeffs = []
    for row, col in zip(basis, pivots):
        c = residual[col] / row[col]
        coeffs.append(c)
        if c:
            for k in range(col, len(residual)):
                residual[k] -= c * row[k]
    if any(residual):
        return None
    return coeffs


def rank(matrix):
    """Rank of a rational matrix by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in matrix]
    if not m:
        return 0
    r = 0
    ncols = len(m[0])
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col] / m[r][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def strip_factors(n, m):
    """Remove from ``n`` every prime factor it shares with ``m``."""
    n = abs(n)
    g = gcd(n, m)
    while g > 1:
        while n % g == 0:
            n //= g
        g = gcd(n, m)
    return n


def solve(matrix, rhs):
    """One rational solution of ``matrix @ x == rhs`` (free variables set to 0),
    or None when the system is inconsistent."""
    rows = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    ncols = len(matrix[0]) if matrix else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = rows[i][-1]
    return x
