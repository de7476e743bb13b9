"""Test the forbidden configurations, the Working Conditions and the bridge between them."""
import pytest
from plumb_lattice.forbidden import (
    CONFIGURATIONS, check_configurations, check_working_conditions, configuration_plumbing,
    converse_bridge_test, duality_bridge_test, redundancy_table,
)
from plumb_lattice.plumbing import from_lens_sum, reverse_chain
from plumb_lattice.schema import Fraction, Plumbing, VertexRef
from plumb_lattice.sweeps import bridge_sweep, reduced_fractions, sweep_instances


def lens(*tokens):
    return from_lens_sum([Fraction.parse(t) for t in tokens])


@pytest.mark.parametrize("tokens,rules", [
    (("4/1",), ["(a)"]),
    (("9/2",), ["(b)"]),
    (("16/3",), ["(c)"]),
    (("2/1", "2/1"), ["(d)"]),
    (("3/1", "3/2"), ["(e)"]),
    (("8/3",), ["(f)"]),
    (("64/23",), ["(i)"]),
])
def test_configuration_examples(tokens, rules):
    """Test that each example fails exactly the expected configurations."""
    report = check_configurations(lens(*tokens))
    assert report.verdict == "fail"
    assert report.rules == rules, f"{tokens}: got {report.rules}"


@pytest.mark.parametrize("tokens", [("5/1",), ("7/1",), ("2/1",), ("3/2",), ("5/3",), ("9/1",)])
def test_configuration_passes(tokens):
    """Test sums with no forbidden configuration."""
    report = check_configurations(lens(*tokens))
    assert report.passed
    assert report.violations == []


def test_configuration_witness():
    """The witness of (i) is the whole chain of 64/23."""
    report = check_configurations(lens("64/23"))
    assert report.violations[0].witness == [VertexRef(chain=0, position=i) for i in range(4)]


def test_two_run_configuration_needs_separation():
    """Two 2s in one chain only count for (d) when they are not adjacent."""
    assert check_configurations(Plumbing(chains=((2, 2),))).passed
    assert check_configurations(Plumbing(chains=((2, 6, 2),))).rules == ["(d)"]
    assert check_configurations(Plumbing(chains=((3, 2, 2),))).passed


def test_configurations_are_not_redundant():
    """Each configuration, read as a plumbing, contains no configuration but itself."""
    table = redundancy_table()
    for config in CONFIGURATIONS:
        assert table[config.identifier] == [config.identifier], f"{config.identifier}: {table[config.identifier]}"


def test_configuration_check_ignores_orientation():
    """Reversing a chain never changes the verdict."""
    for f in reduced_fractions(80):
        p = from_lens_sum([f])
        assert check_configurations(reverse_chain(p, 0)).rules == check_configurations(p).rules, str(f)


@pytest.mark.parametrize("chains,rules", [
    (((2, 2, 2),), ["V"]),
    (((2, 3, 2),), ["III"]),
    (((3,), (2, 2)), ["IV"]),
    (((3,), (3,)), ["II"]),
    (((5,),), ["II"]),
    (((2, 3, 2, 2, 3, 3),), ["VI"]),
    (((4, 3, 2, 2, 2),), ["VI"]),
])
def test_working_condition_examples(chains, rules):
    """Test graphs that fail exactly one Working Condition."""
    report = check_working_conditions(Plumbing(chains=chains))
    assert report.rules == rules, f"{chains}: got {report.rules}"


def test_working_condition_witnesses_are_deduplicated():
    """Condition V read in both directions reports a symmetric failure once."""
    report = check_working_conditions(Plumbing(chains=((2, 2, 2),)))
    assert len(report.violations) == 1
    assert [w.position for w in report.violations[0].witness] == [0, 1, 2]


def test_condition_four_cites_every_three():
    """Each vertex with w'=3 is reported against the 1,1 run."""
    report = check_working_conditions(Plumbing(chains=((3,), (3,), (2, 2))))
    four = [[(w.chain, w.position) for w in v.witness] for v in report.violations if v.rule == "IV"]
    assert four == [[(0, 0), (2, 0), (2, 1)], [(1, 0), (2, 0), (2, 1)]]
    assert report.rules == ["II", "IV"]


@pytest.mark.parametrize("chains", [((2, 2, 2, 2),), ((2,) * 8,), ((3, 2, 2, 2, 2),), ((2, 3),)])
def test_working_conditions_pass(chains):
    """Test dual chains that satisfy every condition."""
    assert check_working_conditions(Plumbing(chains=chains)).passed


def test_bridge_examples():
    """Test single instances of the bridge implication."""
    for tokens in [("5/1",), ("64/23",), ("2/1", "5/1"), ("7/1", "11/1")]:
        assert duality_bridge_test([Fraction.parse(t) for t in tokens]), tokens
    assert converse_bridge_test([Fraction.parse("4/1")])


def test_sweep_instances():
    """Test the work list for tiny bounds."""
    work = sweep_instances(3, 6)
    labels = [tuple(str(f) for f in s) for s in work]
    assert labels == [("2/1",), ("3/1",), ("3/2",), ("2/1", "2/1"), ("2/1", "3/1"), ("2/1", "3/2")]


def test_bridge_sweep_small():
    """Bridge implication on a reduced sweep, shuffled and threaded."""
    report = bridge_sweep(60, 100, workers=4, converse=True, seed=7)
    assert report.passed, report.failures
    assert report.seed == 7
    assert report.converse_checked == report.checked


@pytest.mark.slow
def test_bridge_sweep_full():
    """Bridge implication for p <= 200 and pairs with p1*p2 <= 400."""
    report = bridge_sweep(200, 400, workers=4)
    assert report.passed, report.failures[:10]


def test_configuration_plumbing():
    """Two-run configurations become two chains."""
    by_id = {c.identifier: c for c in CONFIGURATIONS}
    assert configuration_plumbing(by_id["(d)"]).chains == ((2,), (2,))
    assert configuration_plumbing(by_id["(j)"]).chains == ((2, 2, 3, 5),)
