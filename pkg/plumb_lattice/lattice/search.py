"""
Depth-first enumeration of embeddings of a Gram lattice into Z^N.

Rows are placed one vertex at a time in plumbing order. At every stage the
columns touched so far form a prefix [0, t) of the N coordinates; a new row
first chooses its entries on that prefix (subject to the pairings with the rows
already placed) and then spends its remaining norm on untouched columns, which
by symmetry can be taken positive and non-increasing.
"""
from __future__ import annotations
import threading
from concurrent.futures import ThreadPoolExecutor
from math import isqrt
from typing import Callable, Iterator, List, Optional, Sequence, Set, Tuple
from ..constants import BUDGET_CHUNK, DEFAULT_NODE_BUDGET
from ..errors import BudgetExceeded, EmbeddingMismatch
from ..plumbing import gram
from ..schema import CanonicalForm, Embedding, EnumerationResult, GramMatrix, Plumbing, Row
from ..utils import dot
from .canonical import canonical_form

State = Tuple[Tuple[Row, ...], int]


class SearchBudget:
    """Node budget shared by every worker of one search."""

    def __init__(self, limit: int = DEFAULT_NODE_BUDGET):
        self.limit = limit
        self._spent = 0
        self._lock = threading.Lock()

    @property
    def spent(self) -> int:
        return self._spent

    @property
    def exhausted(self) -> bool:
        return self._spent > self.limit

    def charge(self, nodes: int) -> None:
        """
        Record ``nodes`` search nodes.

        :param nodes: Nodes visited since the last charge
        :type nodes: int
        :raises BudgetExceeded: If the total now exceeds the limit
        """
        with self._lock:
            self._spent += nodes
            spent = self._spent
        if spent > self.limit:
            raise BudgetExceeded(self.limit, spent)


def _square_partitions(rem: int, cap: int, slots: int) -> Iterator[List[int]]:
    """Non-increasing positive x_1 >= x_2 >= ... with x_1 <= cap, sum of squares rem, at most ``slots`` parts."""
    if rem == 0:
        yield []
        return
    if slots == 0:
        return
    for x in range(min(isqrt(rem), cap), 0, -1):
        if rem > slots * x * x:
            break
        for rest in _square_partitions(rem - x * x, x, slots - 1):
            yield [x] + rest


class _Search:
    def __init__(self, g: GramMatrix, n_cols: int, budget: SearchBudget, *,
                 n_anchors: int = 0, new_columns: bool = True):
        self.g = g.entries
        self.n = g.size
        self.n_cols = n_cols
        self.budget = budget
        self.n_anchors = n_anchors
        self.new_columns = new_columns
        self._pending = 0
        self._chunk = min(BUDGET_CHUNK, budget.limit + 1)

    def _tick(self) -> None:
        self._pending += 1
        if self._pending >= self._chunk:
            self.flush()

    def flush(self, strict: bool = True) -> None:
        if self._pending:
            n, self._pending = self._pending, 0
            try:
                self.budget.charge(n)
            except BudgetExceeded:
                if strict:
                    raise

    def _targets(self, i: int) -> List[int]:
        return [0] * self.n_anchors + [self.g[i][j] for j in range(i)]

    def _rows(self, placed: Sequence[Row], t: int, target: Sequence[int], norm: int) -> Iterator[Tuple[Row, int]]:
        """Every admissible next row, with the new length of the touched prefix."""
        k = len(placed)
        suffix = [[0] * (t + 1) for _ in range(k)]
        for j, r in enumerate(placed):
            for c in range(t - 1, -1, -1):
                suffix[j][c] = suffix[j][c + 1] + r[c] * r[c]
        # columns that agree on every placed row are interchangeable
        twin = [-1] * t
        seen = {}
        for c in range(t):
            key = tuple(r[c] for r in placed)
            twin[c] = seen.get(key, -1)
            seen[key] = c
        entries = [0] * self.n_cols
        partial = [0] * k

        def fill(rem: int) -> Iterator[Tuple[Row, int]]:
            if not self.new_columns:
                if rem == 0:
                    yield tuple(entries), t
                return
            for parts in _square_partitions(rem, rem, self.n_cols - t):
                row = list(entries)
                row[t:t + len(parts)] = parts
                yield tuple(row), t + len(parts)

        def dfs(c: int, rem: int) -> Iterator[Tuple[Row, int]]:
            self._tick()
            for j in range(k):
                d = target[j] - partial[j]
                if d * d > rem * suffix[j][c]:
                    return
            if c == t:
                yield from fill(rem)
                return
            bound = isqrt(rem)
            hi = bound if twin[c] < 0 else min(bound, entries[twin[c]])
            col = [r[c] for r in placed]
            for x in range(hi, -bound - 1, -1):
                entries[c] = x
                for j in range(k):
                    partial[j] += x * col[j]
                yield from dfs(c + 1, rem - x * x)
                for j in range(k):
                    partial[j] -= x * col[j]
            entries[c] = 0

        yield from dfs(0, norm)

    def extend(self, placed: List[Row], t: int, depth: Optional[int] = None) -> Iterator[State]:
        """Complete ``placed`` vertex by vertex; stop early at ``depth`` placed vertices if given."""
        i = len(placed) - self.n_anchors
        if i == self.n or (depth is not None and i == depth):
            yield tuple(placed), t
            return
        for row, nt in self._rows(placed, t, self._targets(i), self.g[i][i]):
            placed.append(row)
            yield from self.extend(placed, nt, depth)
            placed.pop()


def _as_gram(target: Plumbing | GramMatrix) -> GramMatrix:
    return gram(target) if isinstance(target, Plumbing) else target


def _prepare_anchors(anchors: Sequence[Sequence[int]], n_cols: int) -> Tuple[List[Row], List[int], int]:
    """Move every column touched by an anchor to the front; return permuted anchors, permutation, prefix length."""
    used = [c for c in range(n_cols) if any(a[c] for a in anchors)]
    perm = used + [c for c in range(n_cols) if c not in set(used)]
    return [tuple(a[c] for c in perm) for a in anchors], perm, len(used)


def iter_embeddings(target: Plumbing | GramMatrix, n_cols: int, budget: Optional[SearchBudget] = None, *,
                    anchors: Sequence[Sequence[int]] = (), new_columns: bool = True) -> Iterator[Embedding]:
    """
    Lazily enumerate embeddings into Z^n_cols.

    Every automorphism class of embeddings is produced at least once; some
    classes can be produced more than once, so use :func:`enumerate_embeddings`
    when a duplicate-free list is needed.

    :param target: Plumbing or Gram matrix to embed
    :type target: Plumbing | GramMatrix
    :param n_cols: Ambient dimension N
    :type n_cols: int
    :param budget: Shared node budget (a fresh default budget if omitted)
    :type budget: Optional[SearchBudget]
    :param anchors: Fixed vectors of Z^N that every new row must be orthogonal to
    :type anchors: Sequence[Sequence[int]]
    :param new_columns: If False, only columns touched by the anchors may be used
    :type new_columns: bool
    :return: Iterator over embeddings (rows in vertex order, N columns)
    :rtype: Iterator[Embedding]
    :raises BudgetExceeded: When the node budget runs out
    """
    g = _as_gram(target)
    budget = budget or SearchBudget()
    fixed, perm, t0 = _prepare_anchors(anchors, n_cols)
    search = _Search(g, n_cols, budget, n_anchors=len(fixed), new_columns=new_columns)
    try:
        for rows, _ in search.extend(list(fixed), t0):
            out = []
            for r in rows[len(fixed):]:
                back = [0] * n_cols
                for c, x in zip(perm, r):
                    back[c] = x
                out.append(tuple(back))
            yield Embedding(rows=tuple(out))
    finally:
        search.flush(strict=False)


def _frontier(g: GramMatrix, n_cols: int, budget: SearchBudget, target_size: int) -> List[State]:
    frontier: List[State] = [((), 0)]
    depth = 0
    while len(frontier) < target_size and depth < g.size:
        depth += 1
        search = _Search(g, n_cols, budget)
        frontier = [s for rows, t in frontier for s in search.extend(list(rows), t, depth)]
        search.flush()
    return frontier


def _collect(g: GramMatrix, n_cols: int, budget: SearchBudget, state: State) -> Set[CanonicalForm]:
    search = _Search(g, n_cols, budget)
    found: Set[CanonicalForm] = set()
    try:
        for rows, _ in search.extend(list(state[0]), state[1]):
            found.add(canonical_form(rows))
    finally:
        search.flush()
    return found


def enumerate_embeddings(target: Plumbing | GramMatrix, n_cols: int, *, budget: int = DEFAULT_NODE_BUDGET,
                         workers: int = 1, progress: Optional[Callable[[str], None]] = None) -> EnumerationResult:
    """
    All embeddings into Z^n_cols up to signed column permutation.

    With ``workers > 1`` the search tree is cut at a shallow depth and the
    subtrees are explored in a thread pool; the result is sorted, so it does not
    depend on the number of workers.

    :param target: Plumbing or Gram matrix to embed
    :type target: Plumbing | GramMatrix
    :param n_cols: Ambient dimension N (at least 1)
    :type n_cols: int
    :param budget: Node budget for the whole search
    :type budget: int
    :param workers: Number of worker threads
    :type workers: int
    :param progress: Optional callable receiving progress lines
    :type progress: Optional[Callable[[str], None]]
    :return: Sorted canonical forms, node count, and whether the budget ran out
        (in which case the list is only what was found before stopping)
    :rtype: EnumerationResult
    """
    if n_cols < 1:
        raise ValueError(f"ambient dimension must be positive, got {n_cols}")
    g = _as_gram(target)
    shared = SearchBudget(budget)
    found: Set[CanonicalForm] = set()
    exceeded = False
    try:
        if workers <= 1:
            found = _collect(g, n_cols, shared, ((), 0))
        else:
            frontier = _frontier(g, n_cols, shared, 4 * workers)
            if progress:
                progress(f"Searching {len(frontier)} subtrees with {workers} workers")
            with ThreadPoolExecutor(max_workers=workers) as ex:
                for part in ex.map(lambda s: _collect(g, n_cols, shared, s), frontier):
                    found |= part
    except BudgetExceeded as e:
        exceeded = True
        if progress:
            progress(str(e))
    return EnumerationResult(
        n_cols=n_cols,
        embeddings=sorted(found, key=lambda f: f.rows),
        nodes=shared.spent,
        budget_exceeded=exceeded,
    )


def standard_embedding(plumbing: Plumbing) -> Embedding:
    """
    The standard embedding in exactly sum(w) - #edges columns.

    Along each chain the first vertex takes w fresh +1 columns; every later
    vertex takes -1 on the last column of its predecessor and w - 1 fresh +1
    columns.

    :param plumbing: Plumbing to embed
    :type plumbing: Plumbing
    :return: A standard embedding
    :rtype: Embedding
    """
    n_cols = plumbing.weight_sum - plumbing.num_edges
    rows: List[Row] = []
    col = 0
    for chain in plumbing.chains:
        last = -1
        for j, w in enumerate(chain):
            row = [0] * n_cols
            fresh = w if j == 0 else w - 1
            if j:
                row[last] = -1
            for c in range(col, col + fresh):
                row[c] = 1
            col += fresh
            last = col - 1
            rows.append(tuple(row))
    return Embedding(rows=tuple(rows))


def verify_embedding(target: Plumbing | GramMatrix, embedding: Embedding | Sequence[Sequence[int]]) -> None:
    """
    Check that the rows realize the Gram pairing.

    :raises EmbeddingMismatch: On the first pair of rows whose product is wrong
    """
    g = _as_gram(target).entries
    rows = embedding.rows if isinstance(embedding, Embedding) else embedding
    if len(rows) != len(g):
        raise EmbeddingMismatch(len(rows), len(g), len(g), len(rows))
    for u in range(len(g)):
        for v in range(u, len(g)):
            got = dot(rows[u], rows[v])
            if got != g[u][v]:
                raise EmbeddingMismatch(u, v, g[u][v], got)


def minimal_dimension(plumbing: Plumbing, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """
    Smallest N such that the plumbing lattice embeds in Z^N.

    :param plumbing: Plumbing to embed
    :type plumbing: Plumbing
    :param budget: Node budget shared by all tried dimensions
    :type budget: int
    :return: The minimal dimension (never more than sum(w) - #edges)
    :rtype: int
    :raises BudgetExceeded: When the node budget runs out
    """
    shared = SearchBudget(budget)
    upper = plumbing.weight_sum - plumbing.num_edges
    for n_cols in range(1, upper):
        if next(iter_embeddings(plumbing, n_cols, shared), None) is not None:
            return n_cols
    return upper
