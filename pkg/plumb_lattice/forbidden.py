"""
Forbidden-configuration search on canonical plumbings and the Working Conditions
on their duals.

All graphs here are disjoint unions of paths, so an induced connected subgraph
is exactly a consecutive run of some chain; every pattern is one run or two
mutually non-adjacent runs.
"""
from __future__ import annotations
from typing import Dict, Iterator, List, Sequence, Set, Tuple, FrozenSet
from pydantic import BaseModel, ConfigDict
from .plumbing import adjusted_weights, dual, from_lens_sum
from .schema import ConditionReport, Fraction, Plumbing, Violation

Run = Tuple[int, ...]


class ForbiddenConfig(BaseModel):
    """A weighted pattern: runs are paths, distinct runs must be non-adjacent."""
    model_config = ConfigDict(frozen=True)

    identifier: str
    runs: Tuple[Run, ...]

    @property
    def label(self) -> str:
        return "  ".join("-".join(f"-{w}" for w in r) for r in self.runs)


CONFIGURATIONS: Tuple[ForbiddenConfig, ...] = (
    ForbiddenConfig(identifier="(a)", runs=((4,),)),
    ForbiddenConfig(identifier="(b)", runs=((5, 2),)),
    ForbiddenConfig(identifier="(c)", runs=((6, 2, 2),)),
    ForbiddenConfig(identifier="(d)", runs=((2,), (2,))),
    ForbiddenConfig(identifier="(e)", runs=((3,), (2, 2))),
    ForbiddenConfig(identifier="(f)", runs=((3, 3),)),
    ForbiddenConfig(identifier="(g)", runs=((3, 2, 3),)),
    ForbiddenConfig(identifier="(h)", runs=((3, 2, 2, 3),)),
    ForbiddenConfig(identifier="(i)", runs=((3, 5, 3, 2),)),
    ForbiddenConfig(identifier="(j)", runs=((2, 2, 3, 5),)),
)

# Condition VI, in adjusted weights
ADJUSTED_PATTERNS: Tuple[Run, ...] = ((1, 1, 0, 0, 1, 2), (3, 1, 0, 0, 1))


def _runs_in(values: Sequence[Sequence[int]], run: Run) -> Iterator[Tuple[int, int]]:
    """Yield (chain, start) for every consecutive occurrence of ``run`` read in either direction."""
    rev = tuple(reversed(run))
    size = len(run)
    for ci, chain in enumerate(values):
        for s in range(len(chain) - size + 1):
            seg = tuple(chain[s:s + size])
            if seg == run or seg == rev:
                yield ci, s


def _occurrences(plumbing: Plumbing, run: Run) -> List[Tuple[int, ...]]:
    offsets = plumbing.offsets()
    return [tuple(range(offsets[ci] + s, offsets[ci] + s + len(run))) for ci, s in _runs_in(plumbing.chains, run)]


def _separated(plumbing: Plumbing, a: Sequence[int], b: Sequence[int]) -> bool:
    if set(a) & set(b):
        return False
    return not any(plumbing.adjacent(x, y) for x in a for y in b)


def find_configuration(plumbing: Plumbing, config: ForbiddenConfig) -> Tuple[int, ...] | None:
    """
    First induced occurrence of ``config`` in ``plumbing``.

    :param plumbing: Plumbing to search
    :type plumbing: Plumbing
    :param config: Pattern to look for
    :type config: ForbiddenConfig
    :return: Flattened vertex indices of the match, or None
    :rtype: Tuple[int, ...] | None
    """
    if len(config.runs) == 1:
        occ = _occurrences(plumbing, config.runs[0])
        return occ[0] if occ else None
    first, second = (_occurrences(plumbing, r) for r in config.runs)
    for a in first:
        for b in second:
            if _separated(plumbing, a, b):
                return a + b
    return None


def check_configurations(plumbing: Plumbing) -> ConditionReport:
    """
    Decide whether the plumbing avoids all ten forbidden configurations.

    :param plumbing: Canonical plumbing of a sum of lens spaces (positive weights)
    :type plumbing: Plumbing
    :return: ``pass`` iff no configuration occurs as an induced weighted subgraph;
        each violation names the configuration and one matching set of vertices
    :rtype: ConditionReport
    """
    violations: List[Violation] = []
    for config in CONFIGURATIONS:
        hit = find_configuration(plumbing, config)
        if hit is not None:
            violations.append(Violation(
                rule=config.identifier,
                witness=[plumbing.ref_of(i) for i in hit],
                detail=config.label,
            ))
    return ConditionReport.from_violations(violations)


def configuration_plumbing(config: ForbiddenConfig) -> Plumbing:
    return Plumbing(chains=config.runs)


class _Collector:
    def __init__(self, plumbing: Plumbing):
        self.plumbing = plumbing
        self.offsets = plumbing.offsets()
        self.violations: List[Violation] = []
        self._seen: Set[Tuple[str, FrozenSet[int]]] = set()

    def add(self, rule: str, chain: int, positions: Sequence[int], detail: str) -> None:
        self.add_flat(rule, [self.offsets[chain] + p for p in positions], detail)

    def add_flat(self, rule: str, indices: Sequence[int], detail: str) -> None:
        key = (rule, frozenset(indices))
        if key in self._seen:
            return
        self._seen.add(key)
        self.violations.append(Violation(rule=rule, witness=[self.plumbing.ref_of(i) for i in sorted(indices)], detail=detail))


def _long_chain_violations(adj: Sequence[int]) -> Iterator[Tuple[List[int], int, int]]:
    """Condition V along one reading direction: yield (positions, k, w'(v_0)) for each failure."""
    n = len(adj)
    for i in range(n):
        if adj[i] < 1:
            continue
        j = i + 1
        while j < n and adj[j] == 0:
            j += 1
        k = j - i - 1
        if j < n and k >= 1 and adj[j] == 1 and k < adj[i] + 1:
            yield list(range(i, j + 1)), k, adj[i]


def check_working_conditions(plumbing: Plumbing) -> ConditionReport:
    """
    Check Working Conditions I-VI.

    :param plumbing: A disjoint union of chains, typically a dual plumbing
    :type plumbing: Plumbing
    :return: ``pass`` iff all six conditions hold; violations carry the
        condition number and witness vertices
    :rtype: ConditionReport
    """
    out = _Collector(plumbing)
    adjusted = adjusted_weights(plumbing)
    flat_adj = [a for c in adjusted for a in c]

    # I
    for i, w in enumerate(plumbing.weights):
        if w < 2:
            out.add_flat("I", [i], f"w={w} < 2")

    # II
    for i, a in enumerate(flat_adj):
        if a > 3:
            out.add_flat("II", [i], f"w'={a} > 3")
    large = [i for i, a in enumerate(flat_adj) if a > 1]
    if len(large) > 1:
        out.add_flat("II", large, f"{len(large)} vertices with w' > 1")

    # III
    for ci, adj in enumerate(adjusted):
        for s in range(len(adj) - 2):
            if all(a > 0 for a in adj[s:s + 3]):
                out.add("III", ci, [s, s + 1, s + 2], "three adjacent vertices with w' > 0")

    # IV
    threes = [i for i, a in enumerate(flat_adj) if a == 3]
    for ci, s in _runs_in(adjusted, (1, 1)):
        pair = [out.offsets[ci] + s, out.offsets[ci] + s + 1]
        for t in threes:
            out.add_flat("IV", [t] + pair, "adjacent w'=1,1 alongside a vertex with w'=3")

    # V
    for ci, adj in enumerate(adjusted):
        n = len(adj)
        for positions, k, head in _long_chain_violations(adj):
            out.add("V", ci, positions, f"k={k} < w'(v_0)+1={head + 1}")
        for positions, k, head in _long_chain_violations(adj[::-1]):
            out.add("V", ci, [n - 1 - p for p in positions], f"k={k} < w'(v_0)+1={head + 1}")

    # VI
    for pattern in ADJUSTED_PATTERNS:
        for ci, s in _runs_in(adjusted, pattern):
            out.add("VI", ci, list(range(s, s + len(pattern))), "adjusted pattern " + ",".join(map(str, pattern)))

    return ConditionReport.from_violations(out.violations)


def duality_bridge_test(summands: Sequence[Fraction]) -> bool:
    """
    One instance of "no forbidden configuration implies the dual satisfies the
    Working Conditions".

    :param summands: Summands of the connected sum
    :type summands: Sequence[Fraction]
    :return: False only when the configurations pass but the dual fails a Working Condition
    :rtype: bool
    """
    plumbing = from_lens_sum(summands)
    if not check_configurations(plumbing).passed:
        return True
    return check_working_conditions(dual(plumbing)).passed


def converse_bridge_test(summands: Sequence[Fraction]) -> bool:
    """Opposite implication: dual passes the Working Conditions implies no configuration. Only reported, never enforced."""
    plumbing = from_lens_sum(summands)
    if not check_working_conditions(dual(plumbing)).passed:
        return True
    return check_configurations(plumbing).passed


def redundancy_table() -> Dict[str, List[str]]:
    """For each configuration, the identifiers of all configurations found inside it."""
    return {c.identifier: check_configurations(configuration_plumbing(c)).rules for c in CONFIGURATIONS}
