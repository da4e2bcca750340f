"""Command-line front end.

Subcommands: eval, classify, subsumes, contains, equiv, reduce, witness,
tile, pipeline. Global flags (before the subcommand): --json for machine
output, --out for the artifact directory, --seed reserved for randomized
tooling (every shipped command is deterministic).

Exit codes: 0 success / property holds / nothing found within budget,
1 violated or failed verification, 2 parse/IO/usage errors, 3 no periodic
tiling found within bounds (witness, pipeline).
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import sys

import click

from . import analysis, reduction, tiling
from .core import Graph, Mapping, parse_graph, serialize_graph
from .evaluation import evaluate
from .pattern import (
    Pattern,
    is_weakly_well_designed,
    is_well_designed,
    opt_occurrences,
    parse_pattern,
    pattern_vars,
    serialize_pattern,
)


def _fail(message: str, code: int = 2) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        _fail(str(exc))
        raise AssertionError  # unreachable


def _load_graph(path: str) -> Graph:
    try:
        return parse_graph(_read_text(path))
    except ValueError as exc:
        _fail(f"{path}: {exc}")
        raise AssertionError


def _load_pattern(path: str) -> Pattern:
    try:
        return parse_pattern(_read_text(path))
    except ValueError as exc:
        _fail(f"{path}: {exc}")
        raise AssertionError


def _load_instance(path: str) -> tiling.TilingInstance:
    try:
        return tiling.parse_instance(_read_text(path))
    except ValueError as exc:
        _fail(f"{path}: {exc}")
        raise AssertionError


def _write_file(out_dir: str, name: str, data: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(data)
    return path


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _sha256(data: str) -> str:
    return hashlib.sha256(data.encode("utf-8")).hexdigest()


@click.group()
@click.option("--json", "as_json", is_flag=True, help="Emit machine-readable JSON on stdout.")
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False),
    default=".",
    show_default=True,
    help="Directory for written artifacts.",
)
@click.option("--seed", type=int, default=None, help="Seed for randomized tooling.")
@click.pass_context
def main(ctx: click.Context, as_json: bool, out_dir: str, seed: int | None) -> None:
    """Workbench for the OPT fragment of SPARQL."""
    if seed is not None:
        random.seed(seed)
    ctx.obj = {"json": as_json, "out": out_dir}


@main.command("eval")
@click.argument("graph_path", type=click.Path(exists=False))
@click.argument("pattern_path", type=click.Path(exists=False))
@click.pass_context
def cmd_eval(ctx: click.Context, graph_path: str, pattern_path: str) -> None:
    """Evaluate a pattern file over a graph file; one solution per row."""
    g = _load_graph(graph_path)
    p = _load_pattern(pattern_path)
    rows = evaluate(p, g).to_jsonable()
    if ctx.obj["json"]:
        click.echo(json.dumps(rows, indent=2, sort_keys=True))
    else:
        for row in rows:
            click.echo(json.dumps(row, sort_keys=True))


@main.command("classify")
@click.argument("pattern_path", type=click.Path(exists=False))
@click.pass_context
def cmd_classify(ctx: click.Context, pattern_path: str) -> None:
    """Report the well-designedness class of a pattern file."""
    p = _load_pattern(pattern_path)
    report = {
        "well_designed": is_well_designed(p),
        "weakly_well_designed": is_weakly_well_designed(p),
    }
    if ctx.obj["json"]:
        click.echo(json.dumps(report, indent=2, sort_keys=True))
    else:
        click.echo(f"well_designed: {str(report['well_designed']).lower()}")
        click.echo(f"weakly_well_designed: {str(report['weakly_well_designed']).lower()}")


def _budget_options(fn):
    fn = click.option("--max-triples", type=int, default=3, show_default=True)(fn)
    fn = click.option(
        "--max-fresh",
        type=int,
        default=None,
        help="Fresh IRIs for the search [default: one per pattern variable].",
    )(fn)
    fn = click.option("--max-candidates", type=int, default=100_000, show_default=True)(fn)
    return fn


def _run_relation_command(
    ctx: click.Context,
    p_path: str,
    p2_path: str,
    on_graph: str | None,
    max_triples: int,
    max_fresh: int | None,
    max_candidates: int,
    check,
    find,
) -> None:
    p = _load_pattern(p_path)
    p2 = _load_pattern(p2_path)
    if on_graph is not None:
        verdict = check(p, p2, _load_graph(on_graph))
    else:
        fresh = max_fresh if max_fresh is not None else len(pattern_vars(p) | pattern_vars(p2))
        try:
            budget = analysis.SearchBudget(max_triples, fresh, max_candidates)
        except ValueError as exc:
            _fail(str(exc))
            raise AssertionError
        verdict = find(p, p2, budget)

    written: dict[str, str] = {}
    if verdict.status is analysis.Status.VIOLATED:
        graph, mapping = verdict.witness
        written["counterexample.nt"] = _write_file(
            ctx.obj["out"], "counterexample.nt", serialize_graph(graph)
        )
        written["counterexample_mapping.json"] = _write_file(
            ctx.obj["out"], "counterexample_mapping.json", _dumps(mapping.to_jsonable())
        )

    if ctx.obj["json"]:
        click.echo(json.dumps(verdict.to_jsonable(), indent=2, sort_keys=True))
        for path in written.values():
            click.echo(f"wrote {path}", err=True)
    else:
        click.echo(f"status: {verdict.status.value}")
        if verdict.candidates_examined is not None:
            click.echo(f"candidates_examined: {verdict.candidates_examined}")
        if verdict.status is analysis.Status.VIOLATED:
            _, mapping = verdict.witness
            click.echo(f"witness_mapping: {json.dumps(mapping.to_jsonable(), sort_keys=True)}")
        for path in written.values():
            click.echo(f"wrote {path}")
    sys.exit(1 if verdict.status is analysis.Status.VIOLATED else 0)


def _relation_command(name: str, help_text: str, check, find):
    @main.command(name, help=help_text)
    @click.argument("p_path", type=click.Path(exists=False))
    @click.argument("p2_path", type=click.Path(exists=False))
    @click.option(
        "--on-graph",
        type=click.Path(exists=False),
        default=None,
        help="Check on this single graph instead of searching.",
    )
    @_budget_options
    @click.pass_context
    def command(ctx, p_path, p2_path, on_graph, max_triples, max_fresh, max_candidates):
        _run_relation_command(
            ctx, p_path, p2_path, on_graph, max_triples, max_fresh, max_candidates, check, find
        )

    return command


_relation_command(
    "subsumes",
    "Search for a graph where some solution of P has no extension among P2's.",
    analysis.check_subsumed_on,
    analysis.find_subsumption_counterexample,
)
_relation_command(
    "contains",
    "Search for a graph where P has a solution that P2 lacks.",
    analysis.check_contained_on,
    analysis.find_containment_counterexample,
)
_relation_command(
    "equiv",
    "Search for a graph where P and P2 have different solution sets.",
    analysis.check_equivalent_on,
    analysis.find_equivalence_counterexample,
)


def _reduction_manifest(inst: tiling.TilingInstance, files: dict[str, str]) -> dict:
    chain = reduction.build_p_prime(inst)
    return {
        "instance": tiling.instance_to_jsonable(inst),
        "tile_iris": {t: iri.name for t, iri in reduction.tile_iri_map(inst).items()},
        "counts": {
            "tiles": len(inst.tiles),
            "h_incompatible": len(inst.h_incompatible()),
            "v_incompatible": len(inst.v_incompatible()),
            "opt_nodes": len(opt_occurrences(chain)),
        },
        "files": {name: {"sha256": _sha256(data)} for name, data in files.items()},
    }


def _emit_reduction(inst: tiling.TilingInstance) -> dict[str, str]:
    return {
        "P.sp": serialize_pattern(reduction.build_p(inst), pretty=True),
        "Pprime.sp": serialize_pattern(reduction.build_p_prime(inst), pretty=True),
    }


@main.command("reduce")
@click.argument("instance_path", type=click.Path(exists=False))
@click.pass_context
def cmd_reduce(ctx: click.Context, instance_path: str) -> None:
    """Compile an instance to the pattern pair P.sp / Pprime.sp plus manifest."""
    inst = _load_instance(instance_path)
    files = _emit_reduction(inst)
    manifest = _reduction_manifest(inst, files)
    files["manifest.json"] = _dumps(manifest)
    paths = [_write_file(ctx.obj["out"], name, data) for name, data in files.items()]
    if ctx.obj["json"]:
        click.echo(json.dumps(manifest, indent=2, sort_keys=True))
        for path in paths:
            click.echo(f"wrote {path}", err=True)
    else:
        for path in paths:
            click.echo(f"wrote {path}")
        counts = manifest["counts"]
        click.echo(
            f"tiles: {counts['tiles']}  h_incompatible: {counts['h_incompatible']}  "
            f"v_incompatible: {counts['v_incompatible']}  opt_nodes: {counts['opt_nodes']}"
        )


def _obtain_tiling(
    inst: tiling.TilingInstance, tiling_path: str | None, max_period: int
) -> tiling.PeriodicTiling | None:
    if tiling_path is not None:
        try:
            pt = tiling.periodic_from_jsonable(json.loads(_read_text(tiling_path)))
            if not tiling.verify_periodic(inst, pt):
                _fail(f"{tiling_path}: tiling does not verify against the instance")
        except ValueError as exc:
            _fail(f"{tiling_path}: {exc}")
            raise AssertionError
        return pt
    return tiling.find_periodic(inst, max_period, max_period)


def _witness_files(
    inst: tiling.TilingInstance, pt: tiling.PeriodicTiling
) -> tuple[dict[str, str], tiling.PeriodicTiling, bool]:
    used = tiling.replicate_to(pt, 2, 2)
    pair = reduction.build_witness(inst, used)
    verified = reduction.verify_witness(
        reduction.build_p(inst), reduction.build_p_prime(inst), pair
    )
    files = {
        "G.nt": serialize_graph(pair.graph),
        "mu.json": _dumps(pair.mapping.to_jsonable()),
        "tiling.json": _dumps(tiling.periodic_to_jsonable(used)),
    }
    return files, used, verified


@main.command("witness")
@click.argument("instance_path", type=click.Path(exists=False))
@click.option("--tiling", "tiling_path", type=click.Path(exists=False), default=None,
              help="Use this periodic tiling JSON instead of searching.")
@click.option("--max-period", type=int, default=6, show_default=True)
@click.pass_context
def cmd_witness(ctx: click.Context, instance_path: str, tiling_path: str | None, max_period: int) -> None:
    """Build and verify the non-subsumption witness for an instance."""
    inst = _load_instance(instance_path)
    pt = _obtain_tiling(inst, tiling_path, max_period)
    if pt is None:
        click.echo(f"no periodic tiling with p <= {max_period}, q <= {max_period}", err=True)
        sys.exit(3)
    files, used, verified = _witness_files(inst, pt)
    paths = [_write_file(ctx.obj["out"], name, data) for name, data in files.items()]
    if ctx.obj["json"]:
        click.echo(
            json.dumps(
                {
                    "verified": verified,
                    "p": used.p,
                    "q": used.q,
                    "files": {name: {"sha256": _sha256(data)} for name, data in files.items()},
                },
                indent=2,
                sort_keys=True,
            )
        )
        for path in paths:
            click.echo(f"wrote {path}", err=True)
    else:
        click.echo(f"periodic tiling: p={used.p} q={used.q}")
        for path in paths:
            click.echo(f"wrote {path}")
        click.echo(f"verified: {str(verified).lower()}")
    sys.exit(0 if verified else 1)


@main.command("tile")
@click.argument("instance_path", type=click.Path(exists=False))
@click.option("--find-periodic", "mode_periodic", is_flag=True)
@click.option("--certify-untileable", "mode_certify", is_flag=True)
@click.option("--max-period", type=int, default=6, show_default=True)
@click.option("--max-n", type=int, default=6, show_default=True)
@click.pass_context
def cmd_tile(
    ctx: click.Context,
    instance_path: str,
    mode_periodic: bool,
    mode_certify: bool,
    max_period: int,
    max_n: int,
) -> None:
    """Search for a periodic tiling, or certify untileability."""
    if mode_periodic == mode_certify:
        raise click.UsageError("pass exactly one of --find-periodic / --certify-untileable")
    inst = _load_instance(instance_path)
    if mode_periodic:
        pt = tiling.find_periodic(inst, max_period, max_period)
        if ctx.obj["json"]:
            click.echo(
                json.dumps(
                    {"periodic": tiling.periodic_to_jsonable(pt) if pt else None},
                    indent=2,
                    sort_keys=True,
                )
            )
        elif pt is None:
            click.echo(f"no periodic tiling with p <= {max_period}, q <= {max_period}")
        else:
            click.echo(f"periodic tiling found: p={pt.p} q={pt.q}")
            click.echo(f"grid: {json.dumps([list(row) for row in pt.rows])}")
    else:
        n = tiling.certify_untileable(inst, max_n)
        if ctx.obj["json"]:
            click.echo(json.dumps({"untileable_certificate": n}, indent=2, sort_keys=True))
        elif n is None:
            click.echo(f"no untileability certificate with n <= {max_n}")
        else:
            click.echo(f"untileable: no {n}x{n} rectangle tiling exists")


@main.command("pipeline")
@click.argument("instance_path", type=click.Path(exists=False))
@click.option("--max-period", type=int, default=6, show_default=True)
@click.option("--max-n", type=int, default=6, show_default=True)
@click.pass_context
def cmd_pipeline(ctx: click.Context, instance_path: str, max_period: int, max_n: int) -> None:
    """Chain reduce, tiling search, witness construction, and verification."""
    inst = _load_instance(instance_path)
    files = _emit_reduction(inst)
    pt = tiling.find_periodic(inst, max_period, max_period)
    verified: bool | None = None
    certificate: int | None = None
    used: tiling.PeriodicTiling | None = None
    if pt is not None:
        witness_files, used, verified = _witness_files(inst, pt)
        files.update(witness_files)
    else:
        certificate = tiling.certify_untileable(inst, max_n)

    manifest = _reduction_manifest(inst, files)
    manifest["periodic_tiling"] = tiling.periodic_to_jsonable(used) if used else None
    manifest["untileable_certificate"] = certificate
    manifest["verified"] = verified
    files["manifest.json"] = _dumps(manifest)
    paths = [_write_file(ctx.obj["out"], name, data) for name, data in files.items()]

    if ctx.obj["json"]:
        click.echo(json.dumps(manifest, indent=2, sort_keys=True))
        for path in paths:
            click.echo(f"wrote {path}", err=True)
    else:
        for path in paths:
            click.echo(f"wrote {path}")
        if pt is None:
            click.echo(f"no periodic tiling with p <= {max_period}, q <= {max_period}")
            if certificate is not None:
                click.echo(f"untileable: no {certificate}x{certificate} rectangle tiling exists")
        else:
            click.echo(f"periodic tiling: p={used.p} q={used.q}")
            click.echo(f"verified: {str(verified).lower()}")

    if pt is None:
        sys.exit(3)
    sys.exit(0 if verified else 1)


if __name__ == "__main__":
    main()
