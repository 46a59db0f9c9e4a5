"""Exact linear algebra over the integers and rationals.

Matrices are tuples of tuples of Python ints, so all arithmetic is
arbitrary precision.  Nothing in this package touches floating point:
determinant signs and inertia counts are certificates and must be exact.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def matvec(a: Matrix, v) -> Vector:
    return tuple(sum(r * x for r, x in zip(row, v)) for row in a)


def vecmat(v, a: Matrix) -> Vector:
    """Row vector times matrix."""
    if not a:
        return ()
    cols = len(a[0])
    return tuple(sum(v[i] * a[i][j] for i in range(len(a))) for j in range(cols))


def dot(u, v) -> int:
    return sum(x * y for x, y in zip(u, v))


def is_symmetric(a: Matrix) -> bool:
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def det(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss: the division is exact
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[-1][-1]


def direct_sum(mats) -> Matrix:
    n = sum(len(m) for m in mats)
    rows = []
    offset = 0
    for m in mats:
        k = len(m)
        for r in range(k):
            rows.append((0,) * offset + tuple(m[r]) + (0,) * (n - offset - k))
        offset += k
    return tuple(rows)


def inverse_unimodular(a: Matrix) -> Matrix:
    """Exact integer inverse of a matrix with determinant +-1."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = None
        for i in range(k, n):
            if m[i][k]:
                piv = i
                break
        if piv is None:
            raise ValueError("matrix is singular")
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            inv[k], inv[piv] = inv[piv], inv[k]
        d = m[k][k]
        m[k] = [x / d for x in m[k]]
        inv[k] = [x / d for x in inv[k]]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[k])]
    out = []
    for row in inv:
        for x in row:
            if x.denominator != 1:
                raise ValueError("inverse is not integral")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def signature(a: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric integer matrix.

    Computed by congruence diagonalization over the rationals; a zero
    diagonal with a non-zero off-diagonal entry is repaired with the
    standard x_i -> x_i + x_j substitution.
    """
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    pos = neg = zero = 0
    for k in range(n):
        piv = None
        for i in range(k, n):
            if m[i][i] != 0:
                piv = i
                break
        if piv is None:
            found = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if m[i][j] != 0:
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                zero += n - k
                break
            i, j = found
            # all trailing diagonal entries vanish, so this makes
            # m[i][i] = 2*m[i][j] != 0
            for t in range(n):
                m[i][t] += m[j][t]
            for t in range(n):
                m[t][i] += m[t][j]
            piv = i
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            for row in m:
                row[k], row[piv] = row[piv], row[k]
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = m[i][k] / d
            if f:
                for j in range(k + 1, n):
                    m[i][j] -= f * m[k][j]
        for i in range(k + 1, n):
            m[i][k] = Fraction(0)
            m[k][i] = Fraction(0)
    return pos, neg, zero
