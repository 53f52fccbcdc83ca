"""Command-line interface.

Verbs: validate | homology | relative | mv | kunneth | cohomology |
generate | check-pair.  Inputs are precubical JSON files; subset specs are
JSON files holding a list of cell ids.  Reports are deterministic: the same
input and flags produce byte-identical output.

Exit codes: 0 success; 1 negative mathematical verdict (validation failed,
pair rejected, cover not good, Kunneth mismatch); 2 input error (parse
failure, bad parameters, non-cover); 3 internal assertion (a theorem-backed
identity such as d.d = 0 or a guaranteed exactness failed, which signals a
bug rather than bad data).
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click

from . import precubical as pc
from .exactla import FieldError, field_from_name
from .cubechain import BoundaryCheckError, DirectedCycleError, build_complex
from .homology import ActionError, HomologyTable, cochain_dual
from .exactseq import (
    ExactnessError, SequenceError, check_relative_pair, les_relative,
    mayer_vietoris,
)
from .ez import (
    ComparisonError, TensorSetting, kunneth_report, tensor_comparison_report,
    zero_chain_count_report,
)

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

CONVENTION_NOTE = (
    "note: degree >= 1 dimensions follow the unshifted cube-chain grading; "
    "conventions that shift chain degrees by one report these one degree higher.")


def _fail_input(msg: str):
    click.echo(f"input error: {msg}", err=True)
    sys.exit(EXIT_INPUT)


def _fail_internal(msg: str):
    click.echo(f"internal check failed: {msg}", err=True)
    sys.exit(EXIT_INTERNAL)


def _load_set(path: str) -> pc.PrecubicalSet:
    try:
        return pc.load(path)
    except (pc.FormatError, OSError) as exc:
        _fail_input(str(exc))


def _load_subset(x: pc.PrecubicalSet, path: str, strict: bool) -> pc.SubsetSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            ids = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        _fail_input(f"subset spec {path}: {exc}")
    if not isinstance(ids, list) or not all(isinstance(i, str) for i in ids):
        _fail_input(f"subset spec {path} must be a JSON list of cell ids")
    try:
        spec = pc.SubsetSpec(x, frozenset(ids))
        if not spec.is_face_closed():
            if strict:
                _fail_input(f"subset spec {path} is not face-closed (--strict)")
            click.echo("warning: subset not face-closed; taking its closure", err=True)
            spec = pc.SubsetSpec(x, pc.face_closure(x, ids))
        return spec
    except pc.PrecubicalError as exc:
        _fail_input(str(exc))


def _field(name: str):
    try:
        return field_from_name(name)
    except FieldError as exc:
        _fail_input(str(exc))


def _emit(doc: dict, fmt: str, text_lines: list[str], csv_rows: list[list]):
    if fmt == "json":
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in csv_rows:
            writer.writerow(row)
        click.echo(buf.getvalue(), nl=False)
    else:
        for line in text_lines:
            click.echo(line)


def _parse_pair(pair: str | None) -> tuple[str, str] | None:
    if pair is None:
        return None
    parts = pair.split(",")
    if len(parts) != 2:
        _fail_input("--pair expects 'src,dst'")
    return parts[0], parts[1]


field_option = click.option("--field", "field_name", default="q",
                            show_default=True, help="coefficients: q or fp:<prime>")
degree_option = click.option("--max-degree", default=3, show_default=True,
                             help="highest homology degree reported")
format_option = click.option("--format", "fmt", default="text", show_default=True,
                             type=click.Choice(["text", "json", "csv"]))


@click.group()
def main():
    """Directed homology of finite acyclic precubical sets."""


@main.command()
@click.argument("path", type=click.Path(exists=True))
def validate(path):
    """Check the precubical identities and acyclicity of a JSON file."""
    x = _load_set(path)
    violations = x.validate()
    if not violations:
        click.echo(f"{x.name}: ok ({'/'.join(str(c) for c in x.cell_count())} cells)")
        sys.exit(EXIT_OK)
    for v in violations:
        click.echo(str(v))
    sys.exit(EXIT_VERDICT)


def _homology_rows(x, table, max_degree, pair_filter):
    rows = []
    pairs = sorted((s, e) for s in x.vertices for e in x.vertices)
    for (s, e) in pairs:
        if pair_filter and (s, e) != pair_filter:
            continue
        for i in range(max_degree + 1):
            d = table.dim(i, s, e)
            if d or (pair_filter and i <= max_degree):
                rows.append((i, s, e, d))
    return rows


@main.command()
@click.argument("path", type=click.Path(exists=True))
@field_option
@degree_option
@format_option
@click.option("--pair", default=None, help="restrict to one vertex pair 'src,dst'")
@click.option("--actions", is_flag=True, help="include edge action matrices")
def homology(path, field_name, max_degree, fmt, pair, actions):
    """Homology dimensions per (degree, source, target)."""
    x = _load_set(path)
    field = _field(field_name)
    pair_filter = _parse_pair(pair)
    if pair_filter:
        for v in pair_filter:
            if not (x.has_cell(v) and x.dim_of(v) == 0):
                _fail_input(f"unknown vertex {v!r}")
    try:
        cx = build_complex(x, None, field)
        table = HomologyTable(cx, x)
    except DirectedCycleError as exc:
        _fail_input(str(exc))
    except (BoundaryCheckError, ActionError) as exc:
        _fail_internal(str(exc))
    rows = _homology_rows(x, table, max_degree, pair_filter)
    text = [f"homology of {x.name} over {field_name}"]
    for (i, s, e, d) in rows:
        text.append(f"  H{i}({s},{e}) = {d}")
    text.append(CONVENTION_NOTE)
    doc = {"tool": "dirhom", "command": "homology", "input": x.name,
           "field": field_name, "max_degree": max_degree,
           "entries": [{"degree": i, "src": s, "dst": e, "dim": d}
                       for (i, s, e, d) in rows],
           "notes": [CONVENTION_NOTE]}
    csv_rows = [["degree", "src", "dst", "dim"]] + [list(r) for r in rows]
    if actions:
        act = []
        for a in x.edges:
            s = x.edge_target(a)
            for e in x.vertices:
                for i in range(max_degree + 1):
                    m = table.left_action(a, i, s, e)
                    if m.rows or m.cols:
                        act.append({"edge": a, "side": "left", "degree": i,
                                    "src": s, "dst": e,
                                    "matrix": [[str(v) for v in row] for row in m.data]})
        doc["actions"] = act
        text.append(f"({len(act)} left action matrices; use --format json to list)")
    _emit(doc, fmt, text, csv_rows)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("path", type=click.Path(exists=True))
@field_option
@degree_option
@format_option
@click.option("--pair", default=None, help="restrict to one vertex pair 'src,dst'")
def cohomology(path, field_name, max_degree, fmt, pair):
    """Cohomology dimensions (transposed differentials)."""
    x = _load_set(path)
    field = _field(field_name)
    pair_filter = _parse_pair(pair)
    try:
        cx = build_complex(x, None, field)
        dual = cochain_dual(cx)
    except DirectedCycleError as exc:
        _fail_input(str(exc))
    except (BoundaryCheckError, ActionError) as exc:
        _fail_internal(str(exc))
    rows = []
    for (s, e) in sorted((s, e) for s in x.vertices for e in x.vertices):
        if pair_filter and (s, e) != pair_filter:
            continue
        for i in range(max_degree + 1):
            d = dual.cohomology_dim(i, s, e)
            if d or pair_filter:
                rows.append((i, s, e, d))
    text = [f"cohomology of {x.name} over {field_name}"]
    for (i, s, e, d) in rows:
        text.append(f"  H^{i}({s},{e}) = {d}")
    text.append(CONVENTION_NOTE)
    doc = {"tool": "dirhom", "command": "cohomology", "input": x.name,
           "field": field_name, "max_degree": max_degree,
           "entries": [{"degree": i, "src": s, "dst": e, "dim": d}
                       for (i, s, e, d) in rows],
           "notes": [CONVENTION_NOTE]}
    csv_rows = [["degree", "src", "dst", "dim"]] + [list(r) for r in rows]
    _emit(doc, fmt, text, csv_rows)
    sys.exit(EXIT_OK)


@main.command("check-pair")
@click.argument("path", type=click.Path(exists=True))
@click.argument("subset", type=click.Path(exists=True))
@field_option
@format_option
@click.option("--strict", is_flag=True, help="reject subsets that are not face-closed")
def check_pair(path, subset, field_name, fmt, strict):
    """Relative-pair criteria: path contiguity and monic extension."""
    x = _load_set(path)
    field = _field(field_name)
    spec = _load_subset(x, subset, strict)
    try:
        rep = check_relative_pair(x, spec, field)
    except (DirectedCycleError, SequenceError) as exc:
        _fail_input(str(exc))
    doc = {"tool": "dirhom", "command": "check-pair", "input": x.name,
           "field": field_name,
           "enter_exit_once": rep.enter_exit_once,
           "offending_path": list(rep.offending_path or ()),
           "monic": rep.monic,
           "monic_failures": [list(f) for f in rep.monic_failures],
           "accepted": rep.accepted}
    csv_rows = [["check", "verdict"],
                ["enter_exit_once", rep.enter_exit_once],
                ["monic", rep.monic],
                ["accepted", rep.accepted]]
    _emit(doc, fmt, str(rep).splitlines(), csv_rows)
    sys.exit(EXIT_OK if rep.accepted else EXIT_VERDICT)


@main.command()
@click.argument("path", type=click.Path(exists=True))
@click.argument("subset", type=click.Path(exists=True))
@field_option
@degree_option
@format_option
@click.option("--force", is_flag=True,
              help="compute the quotient homology even for a rejected pair")
@click.option("--strict", is_flag=True, help="reject subsets that are not face-closed")
def relative(path, subset, field_name, max_degree, fmt, force, strict):
    """Relative homology and the verified long exact sequence."""
    x = _load_set(path)
    field = _field(field_name)
    spec = _load_subset(x, subset, strict)
    try:
        res = les_relative(x, spec, field, max_degree=max_degree, force=force)
    except (DirectedCycleError, SequenceError) as exc:
        _fail_input(str(exc))
    except (BoundaryCheckError, ExactnessError, ActionError) as exc:
        _fail_internal(str(exc))
    rep = res.pair_report
    text = str(rep).splitlines()
    if not rep.accepted and not force:
        _emit({"tool": "dirhom", "command": "relative", "accepted": False,
               "report": str(rep)}, fmt, text, [["accepted", False]])
        sys.exit(EXIT_VERDICT)

    def tbl(d):
        return [{"degree": i, "src": s, "dst": e, "dim": v}
                for ((i, (s, e)), v) in sorted(d.items()) if v]

    text.append("relative homology (nonzero entries):")
    for ((i, (s, e)), v) in sorted(res.rel_table.items()):
        if v:
            text.append(f"  relH{i}({s},{e}) = {v}")
    if res.sequence is not None:
        text.append(f"long exact sequence: "
                    f"{'exact at every node' if res.sequence.all_exact else 'INEXACT'}")
        text.append(f"extension commutes with homology: {res.extension_commutes}")
    else:
        text.append("long exact sequence: skipped (pair rejected; --force shown dims only)")
    text.append(CONVENTION_NOTE)
    doc = {"tool": "dirhom", "command": "relative", "input": x.name,
           "field": field_name, "max_degree": max_degree,
           "accepted": rep.accepted,
           "relative": tbl(res.rel_table), "whole": tbl(res.x_table),
           "extension": tbl(res.ext_table),
           "sequence_exact": None if res.sequence is None else res.sequence.all_exact,
           "extension_commutes": res.extension_commutes,
           "notes": [CONVENTION_NOTE]}
    csv_rows = [["table", "degree", "src", "dst", "dim"]]
    for label, d in (("relative", res.rel_table), ("whole", res.x_table),
                     ("extension", res.ext_table)):
        for ((i, (s, e)), v) in sorted(d.items()):
            if v:
                csv_rows.append([label, i, s, e, v])
    _emit(doc, fmt, text, csv_rows)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("path", type=click.Path(exists=True))
@click.argument("subset1", type=click.Path(exists=True))
@click.argument("subset2", type=click.Path(exists=True))
@field_option
@degree_option
@format_option
@click.option("--strict", is_flag=True, help="reject subsets that are not face-closed")
def mv(path, subset1, subset2, field_name, max_degree, fmt, strict):
    """Good-cover check and the verified Mayer-Vietoris sequence."""
    x = _load_set(path)
    field = _field(field_name)
    s1 = _load_subset(x, subset1, strict)
    s2 = _load_subset(x, subset2, strict)
    try:
        res = mayer_vietoris(x, s1, s2, field, max_degree=max_degree)
    except SequenceError as exc:
        _fail_input(str(exc))
    except (DirectedCycleError,) as exc:
        _fail_input(str(exc))
    except (BoundaryCheckError, ExactnessError, ActionError) as exc:
        _fail_internal(str(exc))
    text = str(res.cover).splitlines()
    if res.sequence is None:
        doc = {"tool": "dirhom", "command": "mv", "good_cover": False,
               "report": str(res.cover)}
        _emit(doc, fmt, text, [["good_cover", False]])
        sys.exit(EXIT_VERDICT)
    text.append(f"Mayer-Vietoris sequence: "
                f"{'exact at every node' if res.sequence.all_exact else 'INEXACT'}")
    for label in ("whole", "intersection"):
        text.append(f"{label} homology (nonzero):")
        for ((i, (s, e)), v) in sorted(res.tables[label].items()):
            if v:
                text.append(f"  H{i}({s},{e}) = {v}")
    text.append(CONVENTION_NOTE)
    doc = {"tool": "dirhom", "command": "mv", "input": x.name,
           "field": field_name, "good_cover": True,
           "sequence_exact": res.sequence.all_exact,
           "tables": {label: [{"degree": i, "src": s, "dst": e, "dim": v}
                              for ((i, (s, e)), v) in sorted(t.items()) if v]
                      for label, t in res.tables.items()},
           "notes": [CONVENTION_NOTE]}
    csv_rows = [["table", "degree", "src", "dst", "dim"]]
    for label, t in sorted(res.tables.items()):
        for ((i, (s, e)), v) in sorted(t.items()):
            if v:
                csv_rows.append([label, i, s, e, v])
    _emit(doc, fmt, text, csv_rows)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("path_x", type=click.Path(exists=True))
@click.argument("path_y", type=click.Path(exists=True))
@field_option
@degree_option
@format_option
@click.option("--prop63", "obstruction", is_flag=True,
              help="include the degree-0 generator count report")
def kunneth(path_x, path_y, field_name, max_degree, fmt, obstruction):
    """Tensor comparison verification plus the Kunneth dimension identity."""
    x = _load_set(path_x)
    y = _load_set(path_y)
    field = _field(field_name)
    try:
        setting = TensorSetting.build(x, y, field)
        comp = tensor_comparison_report(x, y, field, max_degree=max_degree,
                                        setting=setting)
        kun = kunneth_report(x, y, field, max_degree=max_degree, setting=setting)
    except DirectedCycleError as exc:
        _fail_input(str(exc))
    except (BoundaryCheckError, ComparisonError, ActionError) as exc:
        _fail_internal(str(exc))
    text = str(comp).splitlines() + str(kun).splitlines()
    doc = {"tool": "dirhom", "command": "kunneth",
           "inputs": [x.name, y.name], "field": field_name,
           "comparison_ok": comp.all_ok,
           "kunneth_identity": kun.identity_holds,
           "dims": [{"degree": n, "src": s, "dst": e, "dim": d}
                    for ((n, (s, e)), d) in sorted(kun.product_dims.items()) if d],
           "notes": [CONVENTION_NOTE]}
    csv_rows = [["degree", "src", "dst", "dim"]]
    for ((n, (s, e)), d) in sorted(kun.product_dims.items()):
        if d:
            csv_rows.append([n, s, e, d])
    if obstruction:
        zc = zero_chain_count_report(x, y, field)
        text += str(zc).splitlines()
        doc["obstruction"] = {
            "product_dim0": zc.product_chain_dim0,
            "tensor_dim0": zc.tensor_side_dim0,
            "product_dim1": zc.product_chain_dim1,
            "note": zc.note,
        }
    text.append(CONVENTION_NOTE)
    _emit(doc, fmt, text, csv_rows)
    if not (comp.all_ok and kun.identity_holds):
        _fail_internal("a theorem-backed comparison identity failed")
    sys.exit(EXIT_OK)


@main.command()
@click.argument("kind", type=click.Choice(
    ["cube", "disc", "sphere", "realization", "tensor", "interval"]))
@click.argument("params", nargs=-1)
@click.option("--out", "-o", required=True, type=click.Path(),
              help="output JSON path")
def generate(kind, params, out):
    """Write a standard construction as a precubical JSON file.

    cube N | disc N | sphere N | realization N1,N2,.. | interval |
    tensor FILE_X FILE_Y
    """
    try:
        if kind == "cube":
            x = pc.standard_cube(int(_one(params)))
        elif kind == "disc":
            x = pc.directed_disc(int(_one(params)))
        elif kind == "sphere":
            x = pc.directed_sphere(int(_one(params)))
        elif kind == "interval":
            x = pc.segment()
        elif kind == "realization":
            seq = [int(t) for t in _one(params).split(",") if t]
            x = pc.realization(seq)
        else:
            if len(params) != 2:
                _fail_input("tensor needs two input files")
            x = pc.tensor(_load_set(params[0]), _load_set(params[1]))
    except (ValueError, pc.PrecubicalError) as exc:
        _fail_input(str(exc))
    pc.save(x, out)
    click.echo(f"wrote {x.name} to {out} "
               f"({'/'.join(str(c) for c in x.cell_count())} cells)")
    sys.exit(EXIT_OK)


def _one(params) -> str:
    if len(params) != 1:
        _fail_input("expected exactly one parameter")
    return params[0]


if __name__ == "__main__":
    main()
