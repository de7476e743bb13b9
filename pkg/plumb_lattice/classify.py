from __future__ import annotations
from typing import Sequence
from .constants import DEFAULT_NODE_BUDGET
from .forbidden import check_configurations, check_working_conditions
from .lattice.rigidity import is_rigid
from .plumbing import dual, from_lens_sum
from .schema import ClassifyReport, Fraction


def classify(summands: Sequence[Fraction], *, budget: int = DEFAULT_NODE_BUDGET, certify: bool = True) -> ClassifyReport:
    """
    Full minimality report for a connected sum of lens spaces.

    :param summands: Summands p_i/q_i
    :type summands: Sequence[Fraction]
    :param budget: Node budget for the rigidity search
    :type budget: int
    :param certify: Run the rigidity search on the dual plumbing
    :type certify: bool
    :return: Expansions, dual plumbing, configuration check, Working
        Conditions on the dual and, when requested, the rigidity verdict
    :rtype: ClassifyReport
    """
    plumbing = from_lens_sum(summands)
    dual_plumbing = dual(plumbing)
    rigidity = is_rigid(dual_plumbing, budget) if certify else None
    return ClassifyReport(
        summands=[str(f) for f in summands],
        expansions=[list(c) for c in plumbing.chains],
        plumbing=plumbing,
        dual=dual_plumbing,
        configurations=check_configurations(plumbing),
        working_conditions=check_working_conditions(dual_plumbing),
        rigidity=rigidity,
        budget_exceeded=rigidity is not None and rigidity.status == "budget_exceeded",
    )
