"""Orthogonal complements of embedded plumbing lattices."""
from __future__ import annotations
from typing import List, Optional, Sequence
from ..constants import DEFAULT_NODE_BUDGET
from ..contfrac import cf_expand, riemenschneider_dual
from ..errors import BudgetExceeded
from ..plumbing import determinant, gram
from ..schema import ComplementReport, Embedding, Fraction, GramMatrix, Plumbing, Row
from ..utils import dot, integer_kernel
from .search import SearchBudget, iter_embeddings, standard_embedding


def complement_basis(rows: Sequence[Sequence[int]], n_cols: int) -> List[Row]:
    """Integer basis of the vectors of Z^n_cols orthogonal to every row."""
    return [tuple(v) for v in integer_kernel(rows, n_cols)]


def complement_gram(rows: Sequence[Sequence[int]], n_cols: int) -> GramMatrix:
    """
    Gram matrix of an integer basis of the orthogonal complement.

    :param rows: Image of an embedding in Z^n_cols
    :type rows: Sequence[Sequence[int]]
    :param n_cols: Ambient dimension
    :type n_cols: int
    :return: Gram matrix of the complement in the basis found by the kernel computation
    :rtype: GramMatrix
    """
    basis = complement_basis(rows, n_cols)
    return GramMatrix(entries=tuple(tuple(dot(u, v) for v in basis) for u in basis))


def complement_realization(f: Fraction, budget: int = DEFAULT_NODE_BUDGET) -> Optional[Embedding]:
    """
    Vectors orthogonal to the standard embedding of the dual chain of p/q
    that realize the lattice of the canonical chain of p/q.

    :param f: The fraction p/q
    :type f: Fraction
    :param budget: Node budget
    :type budget: int
    :return: The vectors, or None if the complement contains no such configuration
    :rtype: Optional[Embedding]
    :raises BudgetExceeded: When the node budget runs out
    """
    canonical = Plumbing(chains=(cf_expand(f).coeffs,))
    anchors = standard_embedding(Plumbing(chains=(riemenschneider_dual(cf_expand(f)).coeffs,)))
    return next(iter_embeddings(canonical, anchors.n_cols, SearchBudget(budget),
                                anchors=anchors.rows, new_columns=False), None)


def orthogonal_complement_check(f: Fraction, budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """
    Check that the orthogonal complement of the standard embedding of the dual
    chain is congruent to the lattice of the canonical chain of p/q.

    The complement has the expected rank and determinant p, and contains
    vectors realizing the canonical Gram matrix; a full-rank sublattice with
    the same determinant is the whole lattice, so those vectors are a basis.

    :param f: The fraction p/q
    :type f: Fraction
    :param budget: Node budget for the realization search
    :type budget: int
    :return: True iff the two lattices are congruent
    :rtype: bool
    :raises BudgetExceeded: When the node budget runs out
    """
    canonical = Plumbing(chains=(cf_expand(f).coeffs,))
    emb = standard_embedding(Plumbing(chains=(riemenschneider_dual(cf_expand(f)).coeffs,)))
    comp = complement_gram(emb.rows, emb.n_cols)
    if comp.size != canonical.num_vertices:
        return False
    if determinant(comp) != f.p or determinant(gram(canonical)) != f.p:
        return False
    return complement_realization(f, budget) is not None


def complement_report(f: Fraction, budget: int = DEFAULT_NODE_BUDGET) -> ComplementReport:
    """
    :func:`orthogonal_complement_check` with the complement Gram matrix and
    the realizing basis, reporting budget exhaustion instead of raising.

    :param f: The fraction p/q
    :type f: Fraction
    :param budget: Node budget for the realization search
    :type budget: int
    :return: ``congruent`` is None when the search ran out of nodes
    :rtype: ComplementReport
    """
    canonical = Plumbing(chains=(cf_expand(f).coeffs,))
    anchors = standard_embedding(Plumbing(chains=(riemenschneider_dual(cf_expand(f)).coeffs,)))
    comp = complement_gram(anchors.rows, anchors.n_cols)
    report = ComplementReport(fraction=str(f), ambient_dimension=anchors.n_cols, complement_gram=comp)
    if comp.size != canonical.num_vertices or determinant(comp) != f.p or determinant(gram(canonical)) != f.p:
        report.congruent = False
        return report
    shared = SearchBudget(budget)
    try:
        report.basis = next(iter_embeddings(canonical, anchors.n_cols, shared, anchors=anchors.rows, new_columns=False), None)
        report.congruent = report.basis is not None
    except BudgetExceeded:
        report.budget_exceeded = True
    report.nodes = shared.spent
    return report
