from __future__ import annotations
import random
from concurrent.futures import ThreadPoolExecutor
from math import gcd
from typing import Callable, Iterator, List, Optional, Tuple
from .constants import DEFAULT_PAIR_PRODUCT_MAX, DEFAULT_PMAX
from .forbidden import converse_bridge_test, duality_bridge_test
from .schema import Fraction, SweepReport

Summands = Tuple[Fraction, ...]


def reduced_fractions(pmax: int) -> Iterator[Fraction]:
    """Every p/q with 2 <= p <= pmax, 0 < q < p and gcd(p, q) = 1, ordered by (p, q)."""
    for p in range(2, pmax + 1):
        for q in range(1, p):
            if gcd(p, q) == 1:
                yield Fraction(p=p, q=q)


def sweep_instances(pmax: int, pair_product_max: int) -> List[Summands]:
    """
    Single summands with p <= pmax and unordered pairs with p_1 * p_2 <= pair_product_max.

    :param pmax: Bound on p for single lens spaces
    :type pmax: int
    :param pair_product_max: Bound on p_1 * p_2 for two-summand sums
    :type pair_product_max: int
    :return: Work list in a fixed order
    :rtype: List[Summands]
    """
    singles = list(reduced_fractions(pmax))
    work: List[Summands] = [(f,) for f in singles]
    small = list(reduced_fractions(pair_product_max // 2))
    for i, a in enumerate(small):
        for b in small[i:]:
            if a.p * b.p > pair_product_max:
                break
            work.append((a, b))
    return work


def _label(summands: Summands) -> str:
    return " # ".join(f"L({f.p},{f.q})" for f in summands)


def bridge_sweep(pmax: int = DEFAULT_PMAX, pair_product_max: int = DEFAULT_PAIR_PRODUCT_MAX, *, workers: int = 1,
                 converse: bool = False, seed: Optional[int] = None,
                 progress: Optional[Callable[[str], None]] = None) -> SweepReport:
    """
    Run the duality bridge test over a bounded family of connected sums.

    :param pmax: Bound on p for single lens spaces
    :type pmax: int
    :param pair_product_max: Bound on p_1 * p_2 for pairs
    :type pair_product_max: int
    :param workers: Worker threads
    :type workers: int
    :param converse: Also evaluate the opposite implication; its failures are
        reported but do not make the sweep fail
    :type converse: bool
    :param seed: Shuffle the work list with this seed
    :type seed: Optional[int]
    :param progress: Optional callable receiving progress lines
    :type progress: Optional[Callable[[str], None]]
    :return: Counts and failing instances, sorted
    :rtype: SweepReport
    """
    work = sweep_instances(pmax, pair_product_max)
    if seed is not None:
        random.Random(seed).shuffle(work)
        if progress:
            progress(f"Shuffled work list with seed {seed}")
    if progress:
        progress(f"Checking {len(work)} connected sums (p <= {pmax}, p1*p2 <= {pair_product_max})")

    def run(summands: Summands) -> Tuple[bool, Optional[bool]]:
        return duality_bridge_test(summands), converse_bridge_test(summands) if converse else None

    with ThreadPoolExecutor(max_workers=max(1, workers)) as ex:
        outcomes = list(ex.map(run, work))

    report = SweepReport(checked=len(work), seed=seed)
    for summands, (ok, conv) in zip(work, outcomes):
        if not ok:
            report.failures.append(_label(summands))
        if conv is not None:
            report.converse_checked += 1
            if not conv:
                report.converse_failures.append(_label(summands))
    report.failures.sort()
    report.converse_failures.sort()
    if progress:
        for label in report.converse_failures:
            progress(f"  converse fails: {label}")
        progress(f"{len(report.failures)} bridge failures, {len(report.converse_failures)} converse failures")
    return report
