from __future__ import annotations
from typing import List, Sequence

Matrix = Sequence[Sequence[int]]


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def is_tridiagonal(m: Matrix) -> bool:
    n = len(m)
    return all(m[i][j] == 0 for i in range(n) for j in range(n) if abs(i - j) > 1)


def tridiagonal_determinant(m: Matrix) -> int:
    """
    Determinant of a symmetric tridiagonal matrix by the continuant recursion.

    :param m: Square tridiagonal integer matrix
    :type m: Matrix
    :return: Exact determinant
    :rtype: int
    """
    prev, cur = 1, 1
    for i in range(len(m)):
        off = m[i][i - 1] * m[i - 1][i] if i else 0
        prev, cur = cur, m[i][i] * cur - off * prev
    return cur


def bareiss_determinant(m: Matrix) -> int:
    """
    Exact determinant by fraction-free (Bareiss) elimination.

    :param m: Square integer matrix
    :type m: Matrix
    :return: Exact determinant
    :rtype: int
    """
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def integer_kernel(a: Matrix, n_cols: int) -> List[List[int]]:
    """
    Z-basis of {x in Z^n_cols : a x = 0}.

    Row-reduces [a^T | I] with unimodular integer row operations (Euclid on
    each pivot column); rows whose left block vanishes carry a kernel basis in
    their right block.

    :param a: Integer matrix with n_cols columns
    :type a: Matrix
    :param n_cols: Number of columns of ``a`` (ambient dimension)
    :type n_cols: int
    :return: Basis vectors of the integer kernel
    :rtype: List[List[int]]
    """
    r = len(a)
    work = [[a[i][c] for i in range(r)] + [1 if j == c else 0 for j in range(n_cols)] for c in range(n_cols)]
    pivot_row = 0
    for col in range(r):
        while True:
            nz = [i for i in range(pivot_row, n_cols) if work[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(work[i][col]))
            work[pivot_row], work[best] = work[best], work[pivot_row]
            piv = work[pivot_row][col]
            done = True
            for i in range(pivot_row + 1, n_cols):
                if work[i][col]:
                    q = work[i][col] // piv
                    work[i] = [x - q * y for x, y in zip(work[i], work[pivot_row])]
                    if work[i][col]:
                        done = False
            if done:
                pivot_row += 1
                break
    return [row[r:] for row in work[pivot_row:]]
