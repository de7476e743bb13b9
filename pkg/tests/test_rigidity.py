"""Test rigidity certificates and non-rigidity witnesses."""
from itertools import permutations
import pytest
from plumb_lattice.forbidden import check_configurations, check_working_conditions
from plumb_lattice.lattice.canonical import is_standard
from plumb_lattice.lattice.rigidity import (
    chain_unions, is_rigid, is_subgraph_rigid, rigidity_sweep, working_condition_candidates,
)
from plumb_lattice.lattice.search import verify_embedding
from plumb_lattice.plumbing import dual, from_lens_sum, reverse_chain
from plumb_lattice.schema import Fraction, Plumbing, VertexRef
from plumb_lattice.sweeps import sweep_instances


def chain(*weights):
    return Plumbing(chains=(weights,))


@pytest.mark.parametrize("weights", [(2,), (3,), (2, 2), (2, 3), (2, 4)])
def test_base_cases_are_rigid(weights):
    """Small chains have only standard embeddings."""
    verdict = is_rigid(chain(*weights))
    assert verdict.status == "rigid"
    assert verdict.n_max == sum(weights)
    assert verdict.witness is None


@pytest.mark.parametrize("length", [1, 2, 4, 5, 6])
def test_chains_of_twos_are_rigid(length):
    """Chains of twos are rigid except for length three."""
    assert is_rigid(chain(*([2] * length))).status == "rigid"


def test_chain_of_three_twos_is_not_rigid():
    """(2,2,2) embeds in Z^3, which is not standard."""
    verdict = is_rigid(chain(2, 2, 2))
    assert verdict.status == "not_rigid"
    p = chain(2, 2, 2)
    verify_embedding(p, verdict.witness)
    assert not is_standard(p, verdict.witness)


@pytest.mark.parametrize("token", ["4/1", "9/2", "16/3"])
def test_non_minimal_lens_spaces_have_non_standard_dual_embeddings(token):
    """Lens spaces with a forbidden configuration have a non-rigid dual lattice."""
    d = dual(from_lens_sum([Fraction.parse(token)]))
    verdict = is_rigid(d)
    assert verdict.status == "not_rigid", f"{token}: dual {d} reported {verdict.status}"
    verify_embedding(d, verdict.witness)
    assert not is_standard(d, verdict.witness)


@pytest.mark.parametrize("token", ["5/1", "7/1", "5/3", "3/2"])
def test_minimal_lens_spaces_have_rigid_duals(token):
    """Duals of lens spaces passing the configuration check are rigid."""
    d = dual(from_lens_sum([Fraction.parse(token)]))
    assert is_rigid(d).status == "rigid", f"{token}: dual {d}"


def test_rigid_sum():
    """A two-chain dual plumbing is certified as a whole."""
    d = dual(from_lens_sum([Fraction.parse("5/1"), Fraction.parse("7/1")]))
    assert d.chains == ((2, 2, 2, 2), (2, 2, 2, 2, 2, 2))
    assert is_rigid(d).status == "rigid"


def test_budget_exceeded_is_distinct():
    """A tiny budget gives its own verdict."""
    verdict = is_rigid(chain(2, 2, 2, 2, 2, 2), budget=10)
    assert verdict.status == "budget_exceeded"
    assert verdict.witness is None


def test_subgraph_rigidity_of_three_twos():
    """The marked 3-2-2-3 run of the first appendix plumbing is rigid."""
    p = chain(2, 3, 2, 2, 3, 2)
    marked = [VertexRef(chain=0, position=i) for i in (1, 2, 3, 4)]
    assert is_subgraph_rigid(p, marked).status == "rigid"


def test_subgraph_rigidity_detects_failure():
    """The outer twos of (2,2,2) do not always embed standardly."""
    p = chain(2, 2, 2)
    marked = [VertexRef(chain=0, position=0), VertexRef(chain=0, position=2)]
    assert is_subgraph_rigid(p, marked).status == "not_rigid"


def test_subgraph_rigidity_rejects_unknown_vertex():
    with pytest.raises(IndexError):
        is_subgraph_rigid(chain(2, 2), [VertexRef(chain=1, position=0)])


def test_chain_unions_small():
    """Each union appears once, up to chain reversal and reordering."""
    unions = [p.chains for p in chain_unions(3, 6)]
    assert len(unions) == len(set(unions)) == 16
    assert ((2,), (2,), (2,)) in unions
    assert ((2,), (2, 2)) in unions
    assert ((3, 2),) not in unions and ((2, 3),) in unions
    assert ((3,), (2,)) not in unions and ((2,), (3,)) in unions
    for chains in unions:
        assert sum(map(len, chains)) <= 3 and sum(map(sum, chains)) <= 6, chains


def test_working_condition_candidates():
    """Candidates pass every Working Condition and include multi-chain plumbings."""
    candidates = working_condition_candidates(4, 10)
    assert chain(2, 2, 2, 2) in candidates
    assert chain(2, 2, 2) not in candidates
    assert Plumbing(chains=((2, 2), (2, 2))) in candidates
    assert Plumbing(chains=((2,), (2,))) not in candidates
    for p in candidates:
        assert check_working_conditions(p).passed, str(p)


def test_candidates_contain_duals_of_passing_sums():
    """Dual plumbings of sums without forbidden configurations are all swept."""
    def key(p):
        return tuple(sorted(min(c, c[::-1]) for c in p.chains))
    swept = {key(p) for p in working_condition_candidates(5, 12)}
    seen = 0
    for summands in sweep_instances(16, 40):
        d = dual(from_lens_sum(summands))
        if d.num_vertices > 5 or d.weight_sum > 12 or not check_configurations(from_lens_sum(summands)).passed:
            continue
        seen += 1
        assert key(d) in swept, str(d)
    assert seen > 0


def test_rigidity_sweep_small():
    """Desk-scale rigidity on a reduced range."""
    report = rigidity_sweep(5, 12, workers=2)
    assert report.checked > 0
    assert report.not_rigid == [], [str(p) for p in report.not_rigid]
    assert report.budget_exceeded == []
    assert report.rigid == report.checked


@pytest.mark.parametrize("chains", [
    ((2, 3),),
    ((2, 2, 2),),
    ((3, 2, 2, 2, 2),),
    ((2, 2), (3,)),
    ((2,), (2, 2, 3)),
    ((2, 2, 2), (2, 3)),
    ((2, 2), (2, 2), (4,)),
])
def test_rigidity_ignores_orientation_and_order(chains):
    """Reversing a chain or reordering the chains never changes the verdict."""
    p = Plumbing(chains=chains)
    expected = is_rigid(p).status
    assert expected in ("rigid", "not_rigid")
    for i in range(len(chains)):
        assert is_rigid(reverse_chain(p, i)).status == expected, f"{p} with chain {i} reversed"
    for order in permutations(chains):
        assert is_rigid(Plumbing(chains=order)).status == expected, f"{order}"


@pytest.mark.slow
def test_rigidity_sweep_desk_scale():
    """Every plumbing with <= 8 vertices and weight sum <= 24 satisfying the Working Conditions is rigid."""
    report = rigidity_sweep(8, 24, workers=4)
    assert report.checked > 0
    assert report.not_rigid == [], [str(p) for p in report.not_rigid]
    assert report.budget_exceeded == []
