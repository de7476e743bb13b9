"""Normal forms of embeddings under the signed column permutations of Z^N."""
from __future__ import annotations
from typing import List, Sequence, Set, Tuple
from ..schema import CanonicalForm, Embedding, Plumbing


def support(row: Sequence[int]) -> Set[int]:
    return {i for i, x in enumerate(row) if x}


def canonical_form(embedding: Embedding | Sequence[Sequence[int]]) -> CanonicalForm:
    """
    Normalize an embedding so that two embeddings related by a signed
    permutation of coordinates get the same form.

    Zero columns are dropped, each column is negated if needed so its first
    nonzero entry is positive, and the columns are sorted in ascending
    lexicographic order. The order is part of the output format: witnesses,
    enumeration results and golden files all list columns this way.

    :param embedding: Embedding or raw rows
    :type embedding: Embedding | Sequence[Sequence[int]]
    :return: The normalized rows (fewer columns if some were unused)
    :rtype: CanonicalForm
    """
    rows = embedding.rows if isinstance(embedding, Embedding) else embedding
    cols: List[Tuple[int, ...]] = []
    for c in zip(*rows):
        if not any(c):
            continue
        lead = next(x for x in c if x)
        cols.append(tuple(c) if lead > 0 else tuple(-x for x in c))
    cols.sort()
    if not cols:
        return CanonicalForm(rows=tuple(() for _ in rows))
    return CanonicalForm(rows=tuple(zip(*cols)))


def is_standard(plumbing: Plumbing, embedding: Embedding, vertices: Sequence[int] | None = None) -> bool:
    """
    Check the support pattern of a standard embedding.

    For vertices u != v the supports must meet in exactly one coordinate if u
    and v are adjacent and be disjoint otherwise; each row must have exactly
    w(v) entries equal to +-1 and nothing else.

    :param plumbing: Plumbing the embedding realizes
    :type plumbing: Plumbing
    :param embedding: Embedding to test
    :type embedding: Embedding
    :param vertices: Restrict the check to these flattened indices (all by default)
    :type vertices: Sequence[int] | None
    :return: True iff the restriction is standard
    :rtype: bool
    """
    idx = list(range(plumbing.num_vertices)) if vertices is None else list(vertices)
    weights = plumbing.weights
    supports = {}
    for v in idx:
        row = embedding.rows[v]
        if any(abs(x) > 1 for x in row):
            return False
        supports[v] = support(row)
        if len(supports[v]) != weights[v]:
            return False
    for a, u in enumerate(idx):
        for v in idx[a + 1:]:
            meet = len(supports[u] & supports[v])
            if meet != (1 if plumbing.adjacent(u, v) else 0):
                return False
    return True
