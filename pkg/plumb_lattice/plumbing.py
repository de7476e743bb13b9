from __future__ import annotations
from typing import List, Sequence, Tuple
from .contfrac import cf_expand, riemenschneider_dual
from .schema import Fraction, GramMatrix, NegCF, Plumbing
from .utils import bareiss_determinant, is_tridiagonal, tridiagonal_determinant


def from_lens_sum(summands: Sequence[Fraction]) -> Plumbing:
    """
    Canonical plumbing of a connected sum of lens spaces.

    :param summands: One fraction p_i/q_i per summand L(p_i, q_i)
    :type summands: Sequence[Fraction]
    :return: One chain per summand, weights from the continued fraction of p_i/q_i
    :rtype: Plumbing
    """
    return Plumbing(chains=tuple(cf_expand(f).coeffs for f in summands))


def dual(plumbing: Plumbing) -> Plumbing:
    """
    Dual plumbing: every chain replaced by its Riemenschneider dual.

    :param plumbing: Plumbing of the boundary connected sum of X(p_i, q_i)
    :type plumbing: Plumbing
    :return: Plumbing of the sum of X(p_i, p_i - q_i)
    :rtype: Plumbing
    """
    return Plumbing(chains=tuple(riemenschneider_dual(NegCF(coeffs=c)).coeffs for c in plumbing.chains))


def gram(plumbing: Plumbing) -> GramMatrix:
    """
    Gram matrix of the plumbing lattice in the positive-definite convention.

    :param plumbing: The plumbing
    :type plumbing: Plumbing
    :return: w(v) on the diagonal, -1 between adjacent vertices, 0 elsewhere
    :rtype: GramMatrix
    """
    weights = plumbing.weights
    n = len(weights)
    m = [[0] * n for _ in range(n)]
    for i, w in enumerate(weights):
        m[i][i] = w
    for u, v in plumbing.edges():
        m[u][v] = m[v][u] = -1
    return GramMatrix(entries=tuple(tuple(r) for r in m))


def determinant(g: GramMatrix) -> int:
    """
    Exact determinant; plumbing Gram matrices are tridiagonal, so the continuant
    recursion is used, with Bareiss elimination for anything else.

    :param g: Gram matrix
    :type g: GramMatrix
    :return: Exact integer determinant
    :rtype: int
    """
    if is_tridiagonal(g.entries):
        return tridiagonal_determinant(g.entries)
    return bareiss_determinant(g.entries)


def adjusted_weights(plumbing: Plumbing) -> Tuple[Tuple[int, ...], ...]:
    """
    Adjusted weights w'(v) = w(v) - deg(v), shaped like ``plumbing.chains``.

    :param plumbing: The plumbing
    :type plumbing: Plumbing
    :return: Per chain, the adjusted weight of each vertex
    :rtype: Tuple[Tuple[int, ...], ...]
    """
    out: List[Tuple[int, ...]] = []
    for c in plumbing.chains:
        n = len(c)
        out.append(tuple(w - (0 if n == 1 else 1 if j in (0, n - 1) else 2) for j, w in enumerate(c)))
    return tuple(out)


def reverse_chain(plumbing: Plumbing, index: int) -> Plumbing:
    chains = list(plumbing.chains)
    chains[index] = tuple(reversed(chains[index]))
    return Plumbing(chains=tuple(chains))


def quadratic_form(g: GramMatrix, x: Sequence[int]) -> int:
    return sum(x[i] * g.entries[i][j] * x[j] for i in range(len(x)) for j in range(len(x)) if g.entries[i][j])
