"""
The lens spaces L_{m,n} with p/q = [[9]^n, [3,2,2,2,2]^m]^- and the lower bounds
on the second Betti number of their negative-definite fillings.
"""
from __future__ import annotations
from typing import Optional, Tuple
from .constants import DEFAULT_NODE_BUDGET, DESK_MAX_M, NORM_FLOOR, NORM_FLOOR_ENTRY_BOUND
from .contfrac import cf_eval, riemenschneider_dual
from .errors import BudgetExceeded, CertificateError, DeskScaleExceeded
from .forbidden import check_working_conditions
from .lattice.rigidity import is_rigid
from .lattice.search import SearchBudget, iter_embeddings, minimal_dimension, standard_embedding
from .schema import BoundReport, Fraction, GramMatrix, LmnSpec, NegCF, NormFloorReport, Plumbing

CANONICAL_BLOCK = (3, 2, 2, 2, 2)
DUAL_BLOCK = (2, 2, 2, 2, 2, 2, 3)


def lmn_expansion(s: LmnSpec) -> NegCF:
    return NegCF(coeffs=(9,) * s.n + CANONICAL_BLOCK * s.m)


def expected_dual(s: LmnSpec) -> NegCF:
    return NegCF(coeffs=(2,) + DUAL_BLOCK * s.n + (7,) * (s.m - 1) + (6,))


def build_Lmn(s: LmnSpec) -> Tuple[Fraction, NegCF, NegCF]:
    """
    Build L_{m,n}.

    :param s: The pair (m, n)
    :type s: LmnSpec
    :return: p/q, its continued fraction and the dual continued fraction
    :rtype: Tuple[Fraction, NegCF, NegCF]
    :raises CertificateError: If the computed dual differs from
        [2, [2,2,2,2,2,2,3]^n, [7]^{m-1}, 6]
    """
    cf = lmn_expansion(s)
    dual_cf = riemenschneider_dual(cf)
    if dual_cf != expected_dual(s):
        raise CertificateError(f"dual of {cf} is {dual_cf}, expected {expected_dual(s)}")
    return cf_eval(cf), cf, dual_cf


def balanced_family(k: int) -> LmnSpec:
    """The instance m = 2k, n = k + 1, where both bounds equal k."""
    return LmnSpec(m=2 * k, n=k + 1)


def lower_bounds(s: LmnSpec) -> BoundReport:
    """
    Betti-number arithmetic and the two filling bounds for L_{m,n}.

    :param s: The pair (m, n)
    :type s: LmnSpec
    :return: p, q, b2 of both canonical fillings, the bound m - n + 1 for
        fillings of -L_{m,n}, the bound n - 1 for fillings of L_{m,n}, and k when
        m = 2k and n = k + 1
    :rtype: BoundReport
    """
    f, cf, dual_cf = build_Lmn(s)
    k = s.m // 2 if s.m % 2 == 0 and s.n == s.m // 2 + 1 else None
    return BoundReport(
        m=s.m,
        n=s.n,
        p=f.p,
        q=f.q,
        b2_canonical=len(cf),
        b2_dual=len(dual_cf),
        bound_reversed=s.m - s.n + 1,
        bound_same=s.n - 1,
        balanced_k=k,
    )


def rigid_subchain_certificate(s: LmnSpec, budget: int = DEFAULT_NODE_BUDGET, max_m: int = DESK_MAX_M) -> Optional[int]:
    """
    Certify that the subchain [3,2,2,2,2]^m is rigid and return the smallest
    dimension it embeds in.

    :param s: The pair (m, n); only m matters
    :type s: LmnSpec
    :param budget: Node budget for each of the two searches
    :type budget: int
    :param max_m: Largest m accepted
    :type max_m: int
    :return: Minimal N, which is 6m + 1 for a rigid subchain, or None when a
        search runs out of budget
    :rtype: Optional[int]
    :raises DeskScaleExceeded: If m > max_m
    :raises CertificateError: If the subchain fails the Working Conditions or is not rigid
    """
    if s.m > max_m:
        raise DeskScaleExceeded("m", s.m, max_m)
    sub = Plumbing(chains=(CANONICAL_BLOCK * s.m,))
    wc = check_working_conditions(sub)
    if not wc.passed:
        raise CertificateError(f"{sub} fails Working Conditions {', '.join(wc.rules)}")
    verdict = is_rigid(sub, budget)
    if verdict.status == "budget_exceeded":
        return None
    if verdict.status != "rigid":
        raise CertificateError(f"{sub} admits a non-standard embedding")
    try:
        return minimal_dimension(sub, budget)
    except BudgetExceeded:
        return None


def certified_bounds(s: LmnSpec, budget: int = DEFAULT_NODE_BUDGET, max_m: int = DESK_MAX_M) -> BoundReport:
    """
    :func:`lower_bounds` together with the rigid-subchain certificate.

    :param s: The pair (m, n)
    :type s: LmnSpec
    :param budget: Node budget for each certificate search
    :type budget: int
    :param max_m: Largest m accepted
    :type max_m: int
    :return: The bounds with ``certified_dimension`` set, or with
        ``budget_exceeded`` set when the certificate ran out of nodes
    :rtype: BoundReport
    :raises DeskScaleExceeded: If m > max_m
    :raises CertificateError: If the subchain is not rigid
    """
    report = lower_bounds(s)
    dimension = rigid_subchain_certificate(s, budget, max_m)
    return report.model_copy(update={"certified_dimension": dimension, "budget_exceeded": dimension is None})


def norm_floor_chain(n: int) -> Plumbing:
    """The first 7n vertices of the dual chain of L_{m,n}."""
    return Plumbing(chains=((2,) + DUAL_BLOCK * (n - 1) + (2,) * 6,))


def norm_floor_check(n: int, entry_bound: int = NORM_FLOOR_ENTRY_BOUND, budget: int = DEFAULT_NODE_BUDGET) -> NormFloorReport:
    """
    Look for short vectors orthogonal to the standard embedding of the first
    7n dual vertices in Z^{8n}.

    Every norm below the floor is searched exhaustively, smallest first.

    :param n: The parameter n of L_{m,n}
    :type n: int
    :param entry_bound: Largest absolute entry allowed in a reported vector
    :type entry_bound: int
    :param budget: Node budget for the whole search
    :type budget: int
    :return: Smallest norm found up to the floor, and whether the floor holds;
        ``holds`` is None and ``budget_exceeded`` set if the search ran out of nodes first
    :rtype: NormFloorReport
    """
    anchors = standard_embedding(norm_floor_chain(n))
    shared = SearchBudget(budget)
    shortest: Optional[int] = None
    exceeded = False
    try:
        for norm in range(1, NORM_FLOOR + 1):
            target = GramMatrix(entries=((norm,),))
            for emb in iter_embeddings(target, anchors.n_cols, shared, anchors=anchors.rows, new_columns=False):
                if max(abs(x) for x in emb.rows[0]) <= entry_bound:
                    shortest = norm
                    break
            if shortest is not None:
                break
    except BudgetExceeded:
        exceeded = True
    return NormFloorReport(
        n=n,
        entry_bound=entry_bound,
        ambient_dimension=anchors.n_cols,
        shortest_norm=shortest,
        holds=None if exceeded else shortest is None or shortest >= NORM_FLOOR,
        nodes=shared.spent,
        budget_exceeded=exceeded,
    )


def spin_embedding_bound(b2: int) -> int:
    """Bound n <= 9*b2 + 1 on odd n for which L(n, n-1) embeds in a closed spin 4-manifold with this b2."""
    return 9 * b2 + 1
