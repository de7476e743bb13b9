from __future__ import annotations
import json
import sys
from functools import wraps
from typing import Callable, List, Optional, Sequence
import click
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table
from .bounds import certified_bounds, lower_bounds, norm_floor_check, spin_embedding_bound
from .classify import classify as classify_sum
from .constants import (
    DEFAULT_NODE_BUDGET, DEFAULT_PAIR_PRODUCT_MAX, DEFAULT_PMAX, DEFAULT_SWEEP_MAX_VERTICES,
    DEFAULT_SWEEP_MAX_WEIGHT, DEFAULT_WORKERS, DESK_MAX_M, NORM_FLOOR_ENTRY_BOUND,
)
from .contfrac import cf_eval, cf_expand, parse_cf, riemenschneider_dual
from .errors import CertificateError, DeskScaleExceeded, EmbeddingMismatch, FractionParseError
from .forbidden import check_configurations, check_working_conditions
from .lattice.appendix import run_appendix
from .lattice.canonical import is_standard
from .lattice.complement import complement_report
from .lattice.rigidity import is_rigid, is_subgraph_rigid, rigidity_sweep
from .lattice.search import enumerate_embeddings, standard_embedding
from .plumbing import adjusted_weights, determinant, dual, from_lens_sum, gram
from .schema import (
    ConditionReport, Fraction, LmnSpec, Plumbing, RigidityVerdict, RunConfig, VertexRef,
)
from .serialize import read_plumbing, to_json

console = Console()


def _progress(message: str) -> None:
    click.echo(message, err=True)


class FractionType(click.ParamType):
    name = "p/q"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction.parse(value)
        except FractionParseError as e:
            self.fail(str(e), param, ctx)


FRACTION = FractionType()


def _config(ctx: click.Context) -> RunConfig:
    return ctx.find_object(RunConfig)


def _emit(ctx: click.Context, model: BaseModel | List[BaseModel], render: Callable[[], None]) -> None:
    if _config(ctx).json_output:
        click.echo(to_json(model))
    else:
        render()


def _load_graph(stream) -> Plumbing:
    try:
        return read_plumbing(stream)
    except (ValueError, ValidationError) as e:
        raise click.ClickException(f"Invalid graph JSON: {e}")


def _rows_table(rows: Sequence[Sequence[int]], title: Optional[str] = None) -> Table:
    table = Table(title=title, show_header=False, box=None)
    for _ in range(len(rows[0]) if rows and rows[0] else 1):
        table.add_column(justify="right")
    for r in rows:
        table.add_row(*[str(x) for x in r] or [""])
    return table


def _render_report(title: str, report: ConditionReport) -> None:
    console.print(f"{title}: [bold]{report.verdict}[/bold]")
    for v in report.violations:
        where = ", ".join(f"{w.chain}:{w.position}" for w in v.witness)
        console.print(escape(f"  {v.rule}  [{where}]  {v.detail or ''}"))


def _render_verdict(verdict: RigidityVerdict) -> None:
    console.print(f"{verdict.status} (N={verdict.n_max}, {verdict.embeddings_checked} embeddings checked, {verdict.nodes} nodes)")
    if verdict.witness is not None:
        console.print(_rows_table(verdict.witness.rows, title="non-standard embedding"))


# input errors only; BudgetExceeded is reported in each command's output
_INPUT_ERRORS = (FractionParseError, CertificateError, DeskScaleExceeded, EmbeddingMismatch, ValidationError, ValueError)


def _guard(fn):
    """Turn library errors on user input into click diagnostics."""
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _INPUT_ERRORS as e:
            raise click.ClickException(str(e))
    return wrapper


graph_option = click.option("--graph", "graph", type=click.File("r"), default="-", show_default=True,
                            help="Graph JSON {\"chains\": [[w, ...], ...]}, '-' for stdin")


@click.group()
@click.option("--json", "json_output", is_flag=True, default=False, help="Emit JSON on stdout")
@click.option("--budget", default=DEFAULT_NODE_BUDGET, show_default=True, help="Node budget for embedding searches")
@click.option("--workers", default=DEFAULT_WORKERS, show_default=True, help="Worker threads for searches and sweeps")
@click.option("--pmax", default=DEFAULT_PMAX, show_default=True, help="Bound on p for single lens spaces in sweeps")
@click.option("--seed", type=int, default=None, help="Shuffle sweep work lists with this seed")
@click.version_option(package_name="plumb-lattice")
@click.pass_context
def main(ctx, json_output, budget, workers, pmax, seed):
    """
    Minimality of canonical negative-definite fillings of sums of lens spaces.

    Global options are collected into a RunConfig shared by every subcommand.
    Progress goes to stderr, so --json output can be piped.
    """
    try:
        ctx.obj = RunConfig(json_output=json_output, budget=budget, workers=workers, pmax=pmax, seed=seed)
    except ValidationError as e:
        raise click.BadParameter(str(e))


# --- continued fractions ----------------------------------------------------

@main.group()
def cf():
    """Negative continued fractions."""


@cf.command("expand")
@click.argument("fraction", type=FRACTION)
@click.pass_context
def cf_expand_cmd(ctx, fraction):
    """Expand p/q as [a_1, ..., a_n]^-."""
    result = cf_expand(fraction)
    _emit(ctx, result, lambda: click.echo(str(result)))


@cf.command("eval")
@click.argument("coeffs")
@click.pass_context
@_guard
def cf_eval_cmd(ctx, coeffs):
    """Evaluate a comma-separated continued fraction, e.g. 3,5,3,2."""
    result = cf_eval(parse_cf(coeffs))
    _emit(ctx, result, lambda: click.echo(str(result)))


@cf.command("dual")
@click.argument("coeffs")
@click.pass_context
@_guard
def cf_dual_cmd(ctx, coeffs):
    """Riemenschneider dual of a comma-separated continued fraction."""
    result = riemenschneider_dual(parse_cf(coeffs))
    _emit(ctx, result, lambda: click.echo(str(result)))


# --- plumbings --------------------------------------------------------------

@main.group()
def plumb():
    """Linear plumbings. Commands producing a plumbing always print graph JSON."""


@plumb.command("from-lens")
@click.argument("fractions", type=FRACTION, nargs=-1, required=True)
def plumb_from_lens(fractions):
    """Canonical plumbing of L(p_1,q_1) # ... # L(p_k,q_k)."""
    click.echo(to_json(from_lens_sum(fractions)))


@plumb.command("dual")
@graph_option
def plumb_dual(graph):
    """Replace every chain by its dual."""
    click.echo(to_json(dual(_load_graph(graph))))


@plumb.command("gram")
@graph_option
@click.pass_context
def plumb_gram(ctx, graph):
    """Gram matrix (positive-definite convention)."""
    g = gram(_load_graph(graph))
    _emit(ctx, g, lambda: console.print(_rows_table(g.entries)))


@plumb.command("adjusted")
@graph_option
@click.pass_context
def plumb_adjusted(ctx, graph):
    """Adjusted weights w - deg, per chain."""
    plumbing = _load_graph(graph)
    adj = adjusted_weights(plumbing)
    if _config(ctx).json_output:
        click.echo(json.dumps({"adjusted": [list(c) for c in adj]}, indent=2))
    else:
        for chain in adj:
            click.echo("(" + ",".join(str(a) for a in chain) + ")")


@plumb.command("det")
@graph_option
@click.pass_context
def plumb_det(ctx, graph):
    """Determinant of the Gram matrix."""
    d = determinant(gram(_load_graph(graph)))
    click.echo(json.dumps({"determinant": d}) if _config(ctx).json_output else str(d))


# --- combinatorial checks ---------------------------------------------------

def _plumbing_from(fractions, graph) -> Plumbing:
    return from_lens_sum(fractions) if fractions else _load_graph(graph)


@main.group()
def check():
    """Forbidden configurations, Working Conditions and the sweep linking them."""


@check.command("configs")
@click.argument("fractions", type=FRACTION, nargs=-1)
@graph_option
@click.pass_context
def check_configs(ctx, fractions, graph):
    """Search the canonical plumbing for configurations (a)-(j)."""
    report = check_configurations(_plumbing_from(fractions, graph))
    _emit(ctx, report, lambda: _render_report("configurations", report))


@check.command("working")
@click.argument("fractions", type=FRACTION, nargs=-1)
@graph_option
@click.pass_context
def check_working(ctx, fractions, graph):
    """
    Check Working Conditions I-VI.

    Given fractions, the dual plumbing of their sum is checked; otherwise the graph as given.
    """
    plumbing = dual(from_lens_sum(fractions)) if fractions else _load_graph(graph)
    report = check_working_conditions(plumbing)
    _emit(ctx, report, lambda: _render_report("working conditions", report))


@check.command("bridge")
@click.option("--pmax", type=click.IntRange(min=2), default=None, help="Bound on p for single lens spaces (defaults to the root --pmax)")
@click.option("--pair-product-max", default=DEFAULT_PAIR_PRODUCT_MAX, show_default=True, help="Bound on p1*p2 for pairs")
@click.option("--converse", is_flag=True, default=False, help="Also evaluate the opposite implication (reported, never fatal)")
@click.pass_context
def check_bridge(ctx, pmax, pair_product_max, converse):
    """Configurations absent implies Working Conditions on the dual, over a sweep."""
    from .sweeps import bridge_sweep
    cfg = _config(ctx)
    pmax = cfg.pmax if pmax is None else pmax
    report = bridge_sweep(pmax, pair_product_max, workers=cfg.workers, converse=converse, seed=cfg.seed,
                          progress=_progress)

    def render():
        console.print(f"checked {report.checked}, failures {len(report.failures)}")
        for label in report.failures:
            console.print(f"  {label}")
        if converse:
            console.print(f"converse checked {report.converse_checked}, failures {len(report.converse_failures)}")
    _emit(ctx, report, render)


# --- embeddings -------------------------------------------------------------

@main.group()
def embed():
    """Embeddings of plumbing lattices into Z^N."""


@embed.command("enumerate")
@graph_option
@click.option("--n", "n_cols", type=click.IntRange(min=1), required=True, help="Ambient dimension N")
@click.pass_context
def embed_enumerate(ctx, graph, n_cols):
    """All embeddings into Z^N up to signed column permutation."""
    cfg = _config(ctx)
    plumbing = _load_graph(graph)
    result = enumerate_embeddings(plumbing, n_cols, budget=cfg.budget, workers=cfg.workers, progress=_progress)

    def render():
        console.print(f"{len(result.embeddings)} embedding(s) in Z^{n_cols}, {result.nodes} nodes"
                      + (" [bold red]budget exceeded[/bold red]" if result.budget_exceeded else ""))
        for i, e in enumerate(result.embeddings, 1):
            std = "standard" if is_standard(plumbing, e) else "non-standard"
            console.print(_rows_table(e.rows, title=f"#{i} ({std})"))
    _emit(ctx, result, render)


@embed.command("rigid")
@graph_option
@click.pass_context
def embed_rigid(ctx, graph):
    """Decide whether every embedding is standard."""
    verdict = is_rigid(_load_graph(graph), _config(ctx).budget)
    _emit(ctx, verdict, lambda: _render_verdict(verdict))


@embed.command("subrigid")
@graph_option
@click.option("--marked", required=True, help="Marked vertices as chain:position pairs, e.g. 0:1,0:2,0:3,0:4")
@click.pass_context
@_guard
def embed_subrigid(ctx, graph, marked):
    """Decide whether every embedding restricts standardly to the marked vertices."""
    refs = []
    for token in marked.split(","):
        chain, _, position = token.strip().partition(":")
        refs.append(VertexRef(chain=int(chain), position=int(position)))
    try:
        verdict = is_subgraph_rigid(_load_graph(graph), refs, _config(ctx).budget)
    except IndexError as e:
        raise click.BadParameter(str(e), param_hint="--marked")
    _emit(ctx, verdict, lambda: _render_verdict(verdict))


@embed.command("standard")
@graph_option
@click.pass_context
def embed_standard(ctx, graph):
    """The standard embedding in sum(w) - #edges dimensions."""
    emb = standard_embedding(_load_graph(graph))
    _emit(ctx, emb, lambda: console.print(_rows_table(emb.rows)))


@embed.command("complement")
@click.argument("fraction", type=FRACTION)
@click.pass_context
@_guard
def embed_complement(ctx, fraction):
    """
    Compare the orthogonal complement of the standard embedding of the dual
    chain with the canonical lattice of p/q.
    """
    report = complement_report(fraction, _config(ctx).budget)

    def render():
        if report.budget_exceeded:
            verdict = "[bold red]budget exceeded[/bold red]"
        else:
            verdict = "is congruent" if report.congruent else "is not congruent"
        console.print(f"Z^{report.ambient_dimension}: complement {verdict} to gram({cf_expand(fraction)})")
        console.print(_rows_table(report.complement_gram.entries, title="complement Gram (kernel basis)"))
        if report.basis:
            console.print(_rows_table(report.basis.rows, title="basis realizing the canonical Gram matrix"))
    _emit(ctx, report, render)


@embed.command("appendix")
@click.option("--golden", type=click.Path(file_okay=False, exists=True), default=None,
              help="Directory of golden graph<i>.json files to compare against")
@click.pass_context
def embed_appendix(ctx, golden):
    """Enumerate the five relative-rigidity cases."""
    cfg = _config(ctx)
    results = run_appendix(golden, budget=cfg.budget, workers=cfg.workers, progress=_progress)

    def render():
        table = Table("case", "chain", "expected", "found", "restricts", "golden")
        for r in results:
            table.add_row(r.name, str(tuple(r.chain)), str(r.expected), str(r.found),
                          str(r.restricts_standardly), "-" if r.golden_match is None else str(r.golden_match))
        console.print(table)
    _emit(ctx, results, render)


@embed.command("sweep")
@click.option("--max-vertices", default=DEFAULT_SWEEP_MAX_VERTICES, show_default=True)
@click.option("--max-weight", default=DEFAULT_SWEEP_MAX_WEIGHT, show_default=True, help="Bound on the weight sum")
@click.pass_context
def embed_sweep(ctx, max_vertices, max_weight):
    """Certify rigidity of every chain union satisfying the Working Conditions."""
    cfg = _config(ctx)
    report = rigidity_sweep(max_vertices, max_weight, cfg.budget, cfg.workers, progress=_progress)

    def render():
        console.print(f"checked {report.checked}, rigid {report.rigid}, "
                      f"not rigid {len(report.not_rigid)}, budget exceeded {len(report.budget_exceeded)}")
        for p in report.not_rigid:
            console.print(f"  not rigid: {p}")
        for p in report.budget_exceeded:
            console.print(f"  budget exceeded: {p}")
    _emit(ctx, report, render)


# --- bounds -----------------------------------------------------------------

@main.group()
def bounds():
    """The family L_{m,n} and filling bounds."""


@bounds.command("lmn")
@click.option("--m", "m", type=click.IntRange(min=1), required=True)
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--certify", is_flag=True, default=False, help="Certify the rigid subchain [3,2,2,2,2]^m")
@click.option("--max-m", default=DESK_MAX_M, show_default=True, help="Largest m accepted by --certify")
@click.pass_context
@_guard
def bounds_lmn(ctx, m, n, certify, max_m):
    """Betti numbers and lower bounds for fillings of +-L_{m,n}."""
    spec = LmnSpec(m=m, n=n)
    report = certified_bounds(spec, _config(ctx).budget, max_m) if certify else lower_bounds(spec)

    def render():
        table = Table(show_header=False, box=None)
        for key, value in report.model_dump().items():
            if value is not None and value is not False:
                table.add_row(key, str(value))
        console.print(table)
    _emit(ctx, report, render)


@bounds.command("norm-floor")
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--entry-bound", default=NORM_FLOOR_ENTRY_BOUND, show_default=True)
@click.pass_context
@_guard
def bounds_norm_floor(ctx, n, entry_bound):
    """Shortest vector orthogonal to the first 7n dual vertices."""
    report = norm_floor_check(n, entry_bound, _config(ctx).budget)
    floor = {True: "holds", False: "fails", None: "undecided (budget exceeded)"}[report.holds]
    _emit(ctx, report, lambda: console.print(
        f"Z^{report.ambient_dimension}: shortest norm {report.shortest_norm or '>= floor'}; floor {floor}"))


@bounds.command("spin")
@click.argument("b2", type=click.IntRange(min=0))
def bounds_spin(b2):
    """Bound 9*b2 + 1 for L(n, n-1) in a closed spin 4-manifold."""
    click.echo(str(spin_embedding_bound(b2)))


# --- classify ---------------------------------------------------------------

@main.command()
@click.argument("fractions", type=FRACTION, nargs=-1, required=True)
@click.option("--no-certify", is_flag=True, default=False, help="Skip the rigidity search on the dual")
@click.pass_context
def classify(ctx, fractions, no_certify):
    """Full minimality report for L(p_1,q_1) # ... # L(p_k,q_k)."""
    report = classify_sum(fractions, budget=_config(ctx).budget, certify=not no_certify)

    def render():
        console.print(f"summands: {' # '.join(report.summands)}")
        console.print(f"plumbing: {report.plumbing}")
        console.print(f"dual:     {report.dual}")
        _render_report("configurations", report.configurations)
        _render_report("working conditions (dual)", report.working_conditions)
        if report.rigidity is not None:
            console.print("rigidity (dual): ", end="")
            _render_verdict(report.rigidity)
        console.print(f"[bold]{'minimal' if report.minimal else 'not minimal'}[/bold]")
    _emit(ctx, report, render)


if __name__ == "__main__":
    main(sys.argv[1:])
