from __future__ import annotations
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple
from ..constants import DEFAULT_NODE_BUDGET, DEFAULT_SWEEP_MAX_VERTICES, DEFAULT_SWEEP_MAX_WEIGHT
from ..errors import BudgetExceeded
from ..forbidden import check_working_conditions
from ..schema import Plumbing, RigidityVerdict, RigiditySweepReport, VertexRef
from .canonical import canonical_form, is_standard
from .search import SearchBudget, iter_embeddings


def _first_failure(plumbing: Plumbing, vertices: Optional[Sequence[int]], budget: int) -> RigidityVerdict:
    n_max = plumbing.weight_sum
    shared = SearchBudget(budget)
    checked = 0
    try:
        for emb in iter_embeddings(plumbing, n_max, shared):
            checked += 1
            if not is_standard(plumbing, emb, vertices):
                return RigidityVerdict(status="not_rigid", n_max=n_max, witness=canonical_form(emb),
                                       embeddings_checked=checked, nodes=shared.spent)
    except BudgetExceeded:
        return RigidityVerdict(status="budget_exceeded", n_max=n_max, embeddings_checked=checked, nodes=shared.spent)
    return RigidityVerdict(status="rigid", n_max=n_max, embeddings_checked=checked, nodes=shared.spent)


def is_rigid(plumbing: Plumbing, budget: int = DEFAULT_NODE_BUDGET) -> RigidityVerdict:
    """
    Decide whether every embedding of the plumbing lattice is standard.

    Embeddings are searched in Z^N with N = sum of the weights: no embedding
    touches more columns than that, and extra untouched columns do not create
    new automorphism classes.

    :param plumbing: Plumbing to certify
    :type plumbing: Plumbing
    :param budget: Node budget
    :type budget: int
    :return: ``rigid``; ``not_rigid`` with a non-standard embedding as witness;
        or ``budget_exceeded``
    :rtype: RigidityVerdict
    """
    return _first_failure(plumbing, None, budget)


def is_subgraph_rigid(plumbing: Plumbing, marked: Sequence[VertexRef], budget: int = DEFAULT_NODE_BUDGET) -> RigidityVerdict:
    """
    Decide whether every embedding of the whole plumbing restricts to a
    standard embedding of the marked vertices.

    :param plumbing: Ambient plumbing
    :type plumbing: Plumbing
    :param marked: Vertices of the subgraph
    :type marked: Sequence[VertexRef]
    :param budget: Node budget
    :type budget: int
    :return: Verdict as for :func:`is_rigid`, with the witness being an
        embedding of the whole plumbing
    :rtype: RigidityVerdict
    :raises IndexError: If a marked vertex is not in the plumbing
    """
    idx = sorted({plumbing.index_of(r) for r in marked})
    return _first_failure(plumbing, idx, budget)


def _compositions(total_max: int, parts_max: int) -> Iterator[Tuple[int, ...]]:
    """All tuples of integers >= 2 with at most ``parts_max`` entries and sum at most ``total_max``."""
    def grow(prefix: Tuple[int, ...], room: int) -> Iterator[Tuple[int, ...]]:
        if prefix:
            yield prefix
        if len(prefix) == parts_max:
            return
        for w in range(2, room + 1):
            yield from grow(prefix + (w,), room - w)
    yield from grow((), total_max)


def chain_unions(max_vertices: int, max_weight_sum: int,
                 keep: Optional[Callable[[Plumbing], bool]] = None) -> Iterator[Plumbing]:
    """
    Disjoint unions of chains with weights >= 2 within the bounds, each chain
    up to reversal and each union up to reordering of its chains.

    ``keep`` prunes the generation: a union it rejects is neither yielded nor
    extended, so it must only reject unions all of whose supersets also fail.

    :param max_vertices: Largest total number of vertices
    :type max_vertices: int
    :param max_weight_sum: Largest total weight
    :type max_weight_sum: int
    :param keep: Optional filter, closed under removing chains
    :type keep: Optional[Callable[[Plumbing], bool]]
    :return: Iterator over the unions, chains ordered by length, weight sum and weights
    :rtype: Iterator[Plumbing]
    """
    by_length: Dict[int, List[Tuple[int, ...]]] = {}
    for d in _compositions(max_weight_sum, max_vertices):
        if d <= d[::-1] and (keep is None or keep(Plumbing(chains=(d,)))):
            by_length.setdefault(len(d), []).append(d)
    for chains in by_length.values():
        chains.sort(key=lambda d: (sum(d), d))
    sums = {k: [sum(d) for d in chains] for k, chains in by_length.items()}

    def grow(prefix: List[Tuple[int, ...]], length: int, start: int, vertices: int, weight: int) -> Iterator[Plumbing]:
        for k in range(length, max_vertices - vertices + 1):
            chains = by_length.get(k, [])
            stop = bisect_right(sums.get(k, []), max_weight_sum - weight)
            for i in range(start if k == length else 0, stop):
                union = prefix + [chains[i]]
                plumbing = Plumbing(chains=tuple(union))
                if len(union) > 1 and keep is not None and not keep(plumbing):
                    continue
                yield plumbing
                yield from grow(union, k, i, vertices + k, weight + sums[k][i])
    yield from grow([], 1, 0, 0, 0)


def working_condition_candidates(max_vertices: int, max_weight_sum: int) -> List[Plumbing]:
    """Chain unions within the bounds that satisfy Working Conditions I-VI."""
    return list(chain_unions(max_vertices, max_weight_sum, lambda p: check_working_conditions(p).passed))


def rigidity_sweep(max_vertices: int = DEFAULT_SWEEP_MAX_VERTICES, max_weight_sum: int = DEFAULT_SWEEP_MAX_WEIGHT,
                   budget: int = DEFAULT_NODE_BUDGET, workers: int = 1,
                   progress: Optional[Callable[[str], None]] = None) -> RigiditySweepReport:
    """
    Certify rigidity of every chain union in the desk-scale range that
    satisfies the Working Conditions.

    :param max_vertices: Largest number of vertices
    :type max_vertices: int
    :param max_weight_sum: Largest weight sum
    :type max_weight_sum: int
    :param budget: Node budget per plumbing
    :type budget: int
    :param workers: Worker threads
    :type workers: int
    :param progress: Optional callable receiving progress lines
    :type progress: Optional[Callable[[str], None]]
    :return: Counts plus the plumbings that were not rigid or ran out of budget
    :rtype: RigiditySweepReport
    """
    candidates = working_condition_candidates(max_vertices, max_weight_sum)
    if progress:
        progress(f"Certifying {len(candidates)} plumbings (<= {max_vertices} vertices, weight sum <= {max_weight_sum})")
    with ThreadPoolExecutor(max_workers=max(1, workers)) as ex:
        verdicts = list(ex.map(lambda p: is_rigid(p, budget), candidates))
    report = RigiditySweepReport(max_vertices=max_vertices, max_weight_sum=max_weight_sum, checked=len(candidates))
    for plumbing, verdict in zip(candidates, verdicts):
        if verdict.status == "rigid":
            report.rigid += 1
        elif verdict.status == "not_rigid":
            report.not_rigid.append(plumbing)
            if progress:
                progress(f"  not rigid: {plumbing}")
        else:
            report.budget_exceeded.append(plumbing)
            if progress:
                progress(f"  budget exceeded: {plumbing}")
    return report
