"""Test the command-line interface end to end."""
import json
import pytest
from click.testing import CliRunner
from plumb_lattice.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, args, stdin=None):
    return runner.invoke(main, args, input=stdin)


def test_cf_expand(runner):
    result = run(runner, ["cf", "expand", "64/23"])
    assert result.exit_code == 0, result.output
    assert result.stdout.strip() == "[3,5,3,2]"


def test_cf_expand_json(runner):
    result = run(runner, ["--json", "cf", "expand", "9/7"])
    assert json.loads(result.stdout) == {"coeffs": [2, 2, 2, 3]}


def test_cf_eval_and_dual(runner):
    assert run(runner, ["cf", "eval", "3,5,3,2"]).stdout.strip() == "64/23"
    assert run(runner, ["cf", "dual", "6,2,2"]).stdout.strip() == "[2,2,2,2,4]"


def test_bad_fraction_is_usage_error(runner):
    """Unreduced fractions are rejected by the argument type."""
    result = run(runner, ["cf", "expand", "4/2"])
    assert result.exit_code == 2
    assert "Cannot parse fraction" in result.output


def test_bad_coefficients(runner):
    result = run(runner, ["cf", "eval", "3,1"])
    assert result.exit_code == 1


def test_plumbing_pipeline(runner):
    """Graph JSON from one command feeds the next."""
    built = run(runner, ["plumb", "from-lens", "64/23", "5/1"])
    assert json.loads(built.stdout) == {"chains": [[3, 5, 3, 2], [5]]}
    dualized = run(runner, ["plumb", "dual"], stdin=built.stdout)
    assert json.loads(dualized.stdout) == {"chains": [[2, 3, 2, 2, 3, 3], [2, 2, 2, 2]]}
    det = run(runner, ["--json", "plumb", "det"], stdin=built.stdout)
    assert json.loads(det.stdout) == {"determinant": 320}


def test_plumb_adjusted(runner):
    result = run(runner, ["--json", "plumb", "adjusted"], stdin='{"chains": [[5, 2], [2]]}')
    assert json.loads(result.stdout) == {"adjusted": [[4, 1], [2]]}


def test_malformed_graph(runner):
    """Invalid graph JSON exits with a diagnostic instead of a traceback."""
    for text in ["not json", '{"edges": []}', '{"chains": [[1]]}']:
        result = run(runner, ["plumb", "dual"], stdin=text)
        assert result.exit_code == 1, text
        assert "Invalid graph JSON" in result.output


def test_check_configs_json(runner):
    report = json.loads(run(runner, ["--json", "check", "configs", "64/23"]).stdout)
    assert report["verdict"] == "fail"
    assert [v["rule"] for v in report["violations"]] == ["(i)"]


def test_check_working_on_dual(runner):
    result = run(runner, ["check", "working", "5/1"])
    assert result.exit_code == 0
    assert "pass" in result.stdout


def test_check_bridge_small(runner):
    result = run(runner, ["--json", "--pmax", "12", "--workers", "2", "check", "bridge", "--pair-product-max", "20"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["failures"] == []


def test_check_bridge_own_pmax(runner):
    """--pmax on the subcommand overrides the root option."""
    local = run(runner, ["--json", "check", "bridge", "--pmax", "6", "--pair-product-max", "10"])
    assert local.exit_code == 0, local.output
    root = run(runner, ["--json", "--pmax", "6", "check", "bridge", "--pair-product-max", "10"])
    assert json.loads(local.stdout) == json.loads(root.stdout)
    assert json.loads(local.stdout)["checked"] > 0


def test_embed_enumerate(runner):
    result = run(runner, ["--json", "embed", "enumerate", "--n", "2"], stdin='{"chains": [[2]]}')
    payload = json.loads(result.stdout)
    assert payload["n_cols"] == 2
    assert payload["embeddings"] == [{"rows": [[1, 1]]}]
    assert payload["budget_exceeded"] is False


def test_embed_rigid(runner):
    verdict = json.loads(run(runner, ["--json", "embed", "rigid"], stdin='{"chains": [[2, 2, 2]]}').stdout)
    assert verdict["status"] == "not_rigid"
    assert verdict["witness"] is not None


def test_embed_subrigid(runner):
    graph = '{"chains": [[2, 3, 2, 2, 3, 2]]}'
    result = run(runner, ["--json", "embed", "subrigid", "--marked", "0:1,0:2,0:3,0:4"], stdin=graph)
    assert json.loads(result.stdout)["status"] == "rigid"
    bad = run(runner, ["embed", "subrigid", "--marked", "3:0"], stdin=graph)
    assert bad.exit_code == 2


def test_embed_complement(runner):
    payload = json.loads(run(runner, ["--json", "embed", "complement", "9/2"]).stdout)
    assert payload["ambient_dimension"] == 6
    assert payload["congruent"] is True
    assert len(payload["basis"]["rows"]) == 2
    assert payload["complement_gram"]["entries"] and payload["budget_exceeded"] is False


def test_bounds_lmn(runner):
    report = json.loads(run(runner, ["--json", "bounds", "lmn", "--m", "2", "--n", "2"]).stdout)
    assert report["balanced_k"] == 1
    assert report["bound_reversed"] == 1 and report["bound_same"] == 1
    assert report["certified_dimension"] is None
    assert report["budget_exceeded"] is False


def test_bounds_lmn_budget_exhaustion_is_a_verdict(runner):
    """A certificate that runs out of nodes exits 0 and says so in the report."""
    result = run(runner, ["--json", "--budget", "10000", "bounds", "lmn", "--m", "8", "--n", "1",
                          "--certify", "--max-m", "8"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["budget_exceeded"] is True
    assert report["certified_dimension"] is None
    assert report["bound_reversed"] == 8


def test_bounds_lmn_certificate(runner):
    report = json.loads(run(runner, ["--json", "bounds", "lmn", "--m", "1", "--n", "1", "--certify"]).stdout)
    assert report["certified_dimension"] == 7
    assert report["budget_exceeded"] is False


def test_bounds_norm_floor(runner):
    result = run(runner, ["--json", "bounds", "norm-floor", "--n", "1"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["shortest_norm"] == 8
    assert report["holds"] is True
    assert report["budget_exceeded"] is False


def test_bounds_lmn_refuses_large_certificate(runner):
    result = run(runner, ["bounds", "lmn", "--m", "3", "--n", "1", "--certify"])
    assert result.exit_code == 1
    assert "desk-scale cap" in result.output


def test_bounds_spin(runner):
    assert run(runner, ["bounds", "spin", "2"]).stdout.strip() == "19"


def test_classify(runner):
    report = json.loads(run(runner, ["--json", "classify", "5/1"]).stdout)
    assert report["configurations"]["verdict"] == "pass"
    assert report["dual"] == {"chains": [[2, 2, 2, 2]]}
    assert report["rigidity"]["status"] == "rigid"


def test_classify_without_certificate(runner):
    report = json.loads(run(runner, ["--json", "classify", "--no-certify", "4/1"]).stdout)
    assert report["configurations"]["verdict"] == "fail"
    assert report["rigidity"] is None


def test_budget_below_floor_is_rejected(runner):
    result = run(runner, ["--budget", "5", "cf", "expand", "5/1"])
    assert result.exit_code == 2


def test_classify_reports_configuration_witness(runner):
    """64/23 is the -3 -5 -3 -2 chain of configuration (i)."""
    report = json.loads(run(runner, ["--json", "classify", "--no-certify", "64/23"]).stdout)
    assert [v["rule"] for v in report["configurations"]["violations"]] == ["(i)"]


def test_classify_sum_of_two(runner):
    result = run(runner, ["--json", "classify", "--no-certify", "2/1", "2/1"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["configurations"]["violations"][0]["rule"] == "(d)"


def test_verdicts_do_not_change_exit_status(runner):
    """A budget that runs out is reported in the output, not through the exit code."""
    result = run(runner, ["--json", "--budget", "10000", "embed", "rigid"], stdin='{"chains": [[2, 2, 2, 2, 2, 2, 2, 2, 2, 2]]}')
    assert result.exit_code == 0
    assert json.loads(result.stdout)["status"] in ("budget_exceeded", "rigid")
