"""Verification of exported link bundles.

The harness is a pure consumer of the JSON bundle schema: it never
mutates bundles and has no dependency on the package that produced them.
The reference octahedron volume is recomputed here from scratch.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

import mpmath

from fslverify.engine import VOLUME_TOL, EngineUnavailable, load_engine
from fslverify.report import LinkRecord, VerificationReport, bundle_hash


def octahedron_volume() -> float:
    """Volume of the regular ideal octahedron, 8*Lob(pi/4), computed locally."""
    with mpmath.workdps(30):
        return float(4 * mpmath.im(mpmath.polylog(2, mpmath.mpc(0, 1))))


V8 = octahedron_volume()


def _load_bundle(path: Path) -> tuple:
    raw = Path(path).read_bytes()
    data = json.loads(raw)
    if data.get("schema_version") != 1:
        raise ValueError(f"unsupported bundle schema in {path}")
    return data, bundle_hash(raw)


def _zero_filled_cusps(data: dict) -> list:
    """Cusp indices to 0-fill: components tagged "zero" in bundle order."""
    framings = data.get("framings") or {}
    comps = data.get("components") or []
    return [i for i, c in enumerate(comps) if framings.get(c) == "zero"]


def verify_one(data: dict, sha: str, engine, fill_zeros: bool = False) -> LinkRecord:
    """Check one bundle: hyperbolicity, volume, declared isometries."""
    rec = LinkRecord(name=data.get("name", "?"), bundle_sha256=sha)
    pd_kt = data.get("pd_kt")
    if not pd_kt:
        rec.status = "skipped"
        rec.note = "bundle carries no oriented PD code"
        return rec
    try:
        fillings = _zero_filled_cusps(data) if fill_zeros else None
        mfd = engine.complement_from_pd(pd_kt, fillings)
        vol, hyp = engine.volume_and_hyperbolicity(mfd)
        rec.is_hyperbolic = hyp
        rec.volume = vol
        expected = data.get("predicted_volume")
        if expected is not None:
            rec.expected = float(expected)
            rec.abs_error = abs(vol - rec.expected)
        for name in data.get("isometry_candidates") or []:
            try:
                other = engine.census_manifold(name)
                if engine.is_isometric(mfd, other):
                    rec.isometry_matches.append(name)
                else:
                    rec.isometry_nonmatches.append(name)
            except Exception as exc:
                rec.isometry_nonmatches.append(f"{name} ({exc})")
        ok = hyp
        if rec.abs_error is not None:
            ok = ok and rec.abs_error < VOLUME_TOL
        if data.get("isometry_candidates"):
            ok = ok and bool(rec.isometry_matches)
        rec.status = "ok" if ok else "failed"
    except Exception as exc:
        rec.status = "failed"
        rec.note = f"{type(exc).__name__}: {exc}"
    return rec


def verify_bundle(path, engine=None) -> VerificationReport:
    """Verify one bundle file or every ``*.json`` bundle in a directory.

    Per-link failures are recorded and the run continues; only a missing
    engine aborts (with a clear EngineUnavailable).
    """
    if engine is None:
        engine = load_engine()
    path = Path(path)
    files = sorted(path.glob("*.json")) if path.is_dir() else [path]
    report = VerificationReport(engine=engine.version)
    for f in files:
        data, sha = _load_bundle(f)
        if data.get("kind") == "table-links":
            continue
        report.records.append(verify_one(data, sha, engine))
    return report.finalize()


def reproduce_table_links(bundle_dir, engine=None) -> VerificationReport:
    """Check the census-identification table from an exported bundle set.

    For each table row with an exported presentation, the complement must
    be isometric to every listed census link complement.  The expected
    nonmatching link is tested against the row presentations and must
    match none of them.
    """
    if engine is None:
        engine = load_engine()
    bundle_dir = Path(bundle_dir)
    catalog_path = bundle_dir / "table_links.json"
    catalog = json.loads(catalog_path.read_text())
    report = VerificationReport(engine=engine.version)

    row_manifolds = {}
    for row in sorted(catalog["rows"]):
        path = bundle_dir / f"row_{row}.json"
        if not path.exists():
            rec = LinkRecord(name=row, bundle_sha256="")
            rec.status = "skipped"
            rec.note = "no presentation exported for this row"
            report.records.append(rec)
            continue
        data, sha = _load_bundle(path)
        rec = LinkRecord(name=row, bundle_sha256=sha)
        try:
            mfd = engine.complement_from_pd(data["pd_kt"])
            vol, hyp = engine.volume_and_hyperbolicity(mfd)
            rec.is_hyperbolic = hyp
            rec.volume = vol
            rec.expected = 2 * V8
            rec.abs_error = abs(vol - rec.expected)
            row_manifolds[row] = mfd
            for name in catalog["rows"][row]:
                other = engine.census_manifold(name)
                if engine.is_isometric(mfd, other):
                    rec.isometry_matches.append(name)
                else:
                    rec.isometry_nonmatches.append(name)
            rec.status = (
                "ok"
                if hyp and rec.abs_error < VOLUME_TOL
                and set(rec.isometry_matches) == set(catalog["rows"][row])
                else "failed"
            )
        except Exception as exc:
            rec.status = "failed"
            rec.note = f"{type(exc).__name__}: {exc}"
        report.records.append(rec)

    for name in catalog.get("expected_nonmatching", []):
        rec = LinkRecord(name=f"{name} (expected nonmatching)",
                         bundle_sha256="")
        try:
            target = engine.census_manifold(name)
            hits = [row for row, mfd in row_manifolds.items()
                    if engine.is_isometric(mfd, target)]
            rec.isometry_matches = hits
            rec.status = "ok" if not hits else "failed"
            rec.note = ("no row matches, as expected" if not hits
                        else "unexpected match")
        except Exception as exc:
            rec.status = "failed"
            rec.note = f"{type(exc).__name__}: {exc}"
        report.records.append(rec)
    return report.finalize()
