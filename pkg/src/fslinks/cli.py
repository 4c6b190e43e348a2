"""Command-line front end: generate links, compute TV series, export bundles.

Exit code is 0 on success; failures print a machine-readable error record
to stderr as JSON and exit 1.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from fslinks.braid import (
    BraidWord,
    format_braid,
    make_bk,
    make_Lnm,
    make_omega,
    named_constant_braids,
    parse_braid,
)
from fslinks.constants import V8
from fslinks.diagram import (LinkDiagram, braided_link, closure_diagram,
                              pd_export, pd_spherogram)
from fslinks.errors import FslinksError
from fslinks.fsl import (
    EXPECTED_NONMATCHING,
    FSL_FAMILY_IDENTIFICATION,
    SEVENTEEN_LINKS,
    TABLE_LINKS,
    augment_to_fsl,
    fsl_surgery_presentation,
    make_family,
)
from fslinks.tqft.tv import slope_series

SCHEMA_VERSION = 1


def _fail(exc: Exception) -> None:
    record = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    click.echo(json.dumps(record), err=True)
    sys.exit(1)


def _bundle(name: str, *, braid: str | None, diagram: LinkDiagram,
            framings: dict, complexity: int | None, predicted_volume: float | None,
            kind: str, extra: dict | None = None) -> dict:
    try:
        pd_kt = [list(t) for t in pd_spherogram(diagram)]
    except FslinksError:
        pd_kt = None
    out = {
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "braid": braid,
        "pd": pd_export(diagram),
        "pd_kt": pd_kt,
        "framings": framings,
        "complexity": complexity,
        "predicted_volume": predicted_volume,
        "kind": kind,
        "components": list(diagram.component_labels()),
    }
    if extra:
        out.update(extra)
    return out


def _write_bundle(out_dir: Path, name: str, bundle: dict) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{name}.json"
    path.write_text(json.dumps(bundle, indent=2) + "\n")
    return path


def _plain_framings(d: LinkDiagram) -> dict:
    return {lbl: "plain" for lbl in d.component_labels()}


@click.group()
def main():
    """Fundamental shadow links in S^3: generators, TV series, exports."""


# ---------------------------------------------------------------------------
# gen


@main.command("gen")
@click.argument("spec", nargs=-1, required=True)
@click.option("--augment", is_flag=True,
              help="augment a braid closure into a fixed-volume link")
@click.option("--out-dir", type=click.Path(path_type=Path), default=None,
              help="write braid text, PD code, and a JSON bundle here")
def cmd_gen(spec, augment, out_dir):
    """Generate a link: L/J/K k, bk K, omega M, Lnm N M, table-mon NAME,
    or braid "Bn: e1 e2 ..."."""
    try:
        kind = spec[0]
        name, braid, diagram, framings, k, vol = _generate(kind, spec[1:],
                                                           augment)
        summary = {
            "name": name,
            "crossings": diagram.crossing_count(),
            "components": diagram.component_count(),
            "complexity": k,
            "predicted_volume": vol,
        }
        if braid is not None:
            click.echo(braid)
        click.echo(json.dumps(summary))
        if out_dir is not None:
            bundle = _bundle(name, braid=braid, diagram=diagram,
                             framings=framings, complexity=k,
                             predicted_volume=vol,
                             kind="augmented" if augment else kind)
            (out_dir / f"{name}.braid.txt").parent.mkdir(parents=True,
                                                         exist_ok=True)
            if braid is not None:
                (out_dir / f"{name}.braid.txt").write_text(braid + "\n")
            (out_dir / f"{name}.pd.txt").write_text(pd_export(diagram) + "\n")
            _write_bundle(out_dir, name, bundle)
    except FslinksError as exc:
        _fail(exc)


def _generate(kind, args, augment):
    if kind in ("L", "J", "K"):
        k = int(args[0])
        fam = make_family(kind, k)
        return (f"{kind}{k}", None, fam.diagram,
                _plain_framings(fam.diagram), k, fam.predicted_volume)
    if kind == "bk":
        k = int(args[0])
        b = make_bk(k)
        if augment:
            return _augmented(f"bk{k}-augmented", b)
        d = braided_link(b)
        return (f"bk{k}", format_braid(b), d, _plain_framings(d), k, 2 * k * V8)
    if kind == "omega":
        m = int(args[0])
        b = make_omega(m)
        d = braided_link(b)
        return (f"omega{m}", format_braid(b), d, _plain_framings(d),
                None, None)
    if kind == "Lnm":
        n, m = int(args[0]), int(args[1])
        b = make_Lnm(n, m)
        d = closure_diagram(b)
        return (f"Lnm-{n}-{m}", format_braid(b), d, _plain_framings(d),
                None, None)
    if kind == "table-mon":
        name = args[0]
        b = named_constant_braids()[name]
        d = closure_diagram(b)
        return (f"table-mon-{name}", format_braid(b), d, _plain_framings(d),
                None, None)
    if kind == "braid":
        b = parse_braid(args[0])
        if augment:
            return _augmented("braid-augmented", b)
        d = closure_diagram(b)
        return ("braid", format_braid(b), d, _plain_framings(d), None, None)
    raise click.UsageError(f"unknown gen spec {kind!r}")


def _augmented(name, b):
    aug = augment_to_fsl(b)
    sp = fsl_surgery_presentation(b)
    return (name, format_braid(b), aug.diagram, dict(sp.framing),
            aug.complexity, aug.predicted_volume)


# ---------------------------------------------------------------------------
# tv


@main.command("tv")
@click.argument("spec", nargs=-1, required=True)
@click.option("--r-min", default=5, show_default=True)
@click.option("--r-max", default=15, show_default=True)
@click.option("--precision-bits", default=128, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["tsv", "json"]),
              default="tsv", show_default=True)
@click.option("--out-dir", type=click.Path(path_type=Path), default=None,
              help="write the series and a slope figure here")
def cmd_tv(spec, r_min, r_max, precision_bits, fmt, out_dir):
    """TV values and slopes of a braided-link complement over odd levels.

    SPEC is `bk K` or a braid text like "B3: -1 -1 2 2"."""
    from fslinks.report import render_slope_figure, series_json, series_tsv

    try:
        if spec[0] == "bk":
            b = make_bk(int(spec[1]))
            name = f"bk{spec[1]}"
        else:
            b = parse_braid(spec[0])
            name = "braid"
        if r_min % 2 == 0 or r_max % 2 == 0:
            raise click.UsageError("levels must be odd")
        rs = list(range(max(3, r_min), r_max + 1, 2))
        series = slope_series(b, rs, precision_bits=precision_bits)
        text = series_tsv(series) if fmt == "tsv" else series_json(series, name)
        click.echo(text, nl=False)
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)
            (out_dir / f"{name}-tv.{fmt}").write_text(text)
            render_slope_figure(series, out_dir / f"{name}-slopes.png",
                                f"TV slopes for {name}")
    except FslinksError as exc:
        _fail(exc)


# ---------------------------------------------------------------------------
# export


@main.group("export")
def cmd_export():
    """Write JSON bundles for the verification harness."""


@cmd_export.command("verify")
@click.option("--families", default=None,
              help="comma-separated subset of L,J,K")
@click.option("--k-max", default=3, show_default=True)
@click.option("--bk-max", default=0, show_default=True,
              help="also export braided links for k = 1..bk-max")
@click.option("--braid", "braid_text", default=None,
              help="augment this braid text and export the bundle")
@click.option("--table-links", is_flag=True,
              help="export the census catalog and candidate presentations")
@click.option("--out-dir", type=click.Path(path_type=Path),
              default=Path("verify-bundles"), show_default=True)
def cmd_export_verify(families, k_max, bk_max, braid_text, table_links,
                      out_dir):
    """Export verification bundles (one JSON file per link)."""
    try:
        written = []
        if families:
            for fam in families.split(","):
                fam = fam.strip()
                for k in range(1, k_max + 1):
                    fl = make_family(fam, k)
                    extra = {}
                    if k == 1:
                        row = next((r for r, f in
                                    FSL_FAMILY_IDENTIFICATION.items()
                                    if f == fam), None)
                        if row:
                            extra["isometry_candidates"] = list(
                                TABLE_LINKS[row])
                            extra["table_row"] = row
                    bundle = _bundle(
                        f"{fam}{k}", braid=None, diagram=fl.diagram,
                        framings=_plain_framings(fl.diagram), complexity=k,
                        predicted_volume=fl.predicted_volume, kind="family",
                        extra=extra)
                    written.append(_write_bundle(out_dir, f"family_{fam}_{k}",
                                                 bundle))
        for k in range(1, bk_max + 1):
            b = make_bk(k)
            d = braided_link(b)
            bundle = _bundle(
                f"bk{k}", braid=format_braid(b), diagram=d,
                framings=_plain_framings(d), complexity=k,
                predicted_volume=2 * k * V8, kind="braided-link")
            written.append(_write_bundle(out_dir, f"braided_bk_{k}", bundle))
        if braid_text:
            b = parse_braid(braid_text)
            aug = augment_to_fsl(b)
            sp = fsl_surgery_presentation(b)
            bundle = _bundle(
                "augmented", braid=format_braid(b), diagram=aug.diagram,
                framings=dict(sp.framing), complexity=aug.complexity,
                predicted_volume=aug.predicted_volume, kind="augmented")
            written.append(_write_bundle(out_dir, "augmented", bundle))
        if table_links:
            catalog = {
                "schema_version": SCHEMA_VERSION,
                "kind": "table-links",
                "rows": {row: list(names) for row, names in
                         TABLE_LINKS.items()},
                "seventeen_links": list(SEVENTEEN_LINKS),
                "family_identification": dict(FSL_FAMILY_IDENTIFICATION),
                "expected_nonmatching": list(EXPECTED_NONMATCHING),
                "candidate_complexity_two": ["L11n387", "L11n388"],
            }
            out_dir.mkdir(parents=True, exist_ok=True)
            path = out_dir / "table_links.json"
            path.write_text(json.dumps(catalog, indent=2) + "\n")
            written.append(path)
            for fam in "LJK":
                fl = make_family(fam, 1)
                row = next(r for r, f in FSL_FAMILY_IDENTIFICATION.items()
                           if f == fam)
                bundle = _bundle(
                    f"{fam}1", braid=None, diagram=fl.diagram,
                    framings=_plain_framings(fl.diagram), complexity=1,
                    predicted_volume=fl.predicted_volume, kind="family",
                    extra={"isometry_candidates": list(TABLE_LINKS[row]),
                           "table_row": row})
                written.append(_write_bundle(out_dir, f"row_{row}", bundle))
            # pool of complexity-one augmentations for the open rows
            for tag, word in [("pos", (1,)), ("neg", (-1,))]:
                b = BraidWord(2, word)
                aug = augment_to_fsl(b)
                bundle = _bundle(
                    f"pool-trace-{tag}", braid=format_braid(b),
                    diagram=aug.diagram,
                    framings=_plain_framings(aug.diagram), complexity=1,
                    predicted_volume=2 * V8, kind="augmented",
                    extra={"pool": True})
                written.append(_write_bundle(out_dir, f"pool_trace_{tag}",
                                             bundle))
        click.echo(json.dumps({"written": [str(p) for p in written]}))
    except FslinksError as exc:
        _fail(exc)


if __name__ == "__main__":
    main()
