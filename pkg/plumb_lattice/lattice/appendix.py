"""
The five plumbings whose 3-2-2-3 subchain is checked for relative rigidity by
computer, with the number of embeddings each admits in its standard dimension.
"""
from __future__ import annotations
import os
from typing import Callable, List, Optional, Tuple
from pydantic import BaseModel, ConfigDict
from ..constants import DEFAULT_NODE_BUDGET
from ..schema import AppendixResult, Plumbing
from ..serialize import read_embeddings
from .canonical import canonical_form, is_standard
from .search import enumerate_embeddings


class AppendixCase(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    chain: Tuple[int, ...]
    marked: Tuple[int, ...]
    expected: int

    @property
    def plumbing(self) -> Plumbing:
        return Plumbing(chains=(self.chain,))

    @property
    def n_cols(self) -> int:
        return sum(self.chain) - (len(self.chain) - 1)


def appendix_cases() -> List[AppendixCase]:
    return [
        AppendixCase(name="graph1", chain=(2, 3, 2, 2, 3, 2), marked=(1, 2, 3, 4), expected=1),
        AppendixCase(name="graph2", chain=(2, 3, 2, 2, 3, 3, 2), marked=(1, 2, 3, 4), expected=2),
        AppendixCase(name="graph3", chain=(2, 2, 3, 2, 2, 3, 3), marked=(2, 3, 4, 5), expected=2),
        AppendixCase(name="graph4", chain=(2, 2, 3, 2, 2, 3, 4, 2), marked=(2, 3, 4, 5), expected=4),
        AppendixCase(name="graph5", chain=(2, 3, 3, 2, 2, 3, 3, 2), marked=(2, 3, 4, 5), expected=5),
    ]


def run_case(case: AppendixCase, golden_dir: Optional[str] = None, *, budget: int = DEFAULT_NODE_BUDGET,
             workers: int = 1) -> AppendixResult:
    """
    Enumerate one case and compare it with the expected count and, optionally,
    with golden matrices.

    :param case: The case to run
    :type case: AppendixCase
    :param golden_dir: Directory holding ``<name>.json`` golden files, or None
    :type golden_dir: Optional[str]
    :param budget: Node budget
    :type budget: int
    :param workers: Worker threads for the enumeration
    :type workers: int
    :return: Counts, restriction check and golden comparison
    :rtype: AppendixResult
    """
    plumbing = case.plumbing
    res = enumerate_embeddings(plumbing, case.n_cols, budget=budget, workers=workers)
    golden_match = None
    if golden_dir is not None:
        golden = {canonical_form(e) for e in read_embeddings(os.path.join(golden_dir, f"{case.name}.json"))}
        golden_match = golden == set(res.embeddings)
    return AppendixResult(
        name=case.name,
        chain=list(case.chain),
        marked=list(case.marked),
        expected=case.expected,
        found=len(res.embeddings),
        restricts_standardly=not res.budget_exceeded and all(is_standard(plumbing, e, case.marked) for e in res.embeddings),
        golden_match=golden_match,
        embeddings=res.embeddings,
    )


def run_appendix(golden_dir: Optional[str] = None, *, budget: int = DEFAULT_NODE_BUDGET, workers: int = 1,
                 progress: Optional[Callable[[str], None]] = None) -> List[AppendixResult]:
    out = []
    for case in appendix_cases():
        if progress:
            progress(f"Enumerating {case.name} {case.chain} in Z^{case.n_cols}")
        out.append(run_case(case, golden_dir, budget=budget, workers=workers))
    return out
