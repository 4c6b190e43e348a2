"""Geometric acceptance checks (engine required).

These implement the volume and isometry criteria for the exported
bundles: families L/J/K for k <= 3, braided links for k <= 4, and the
augmented three-crossing example at 6*v8; plus the census table rows.
They skip, with the EngineUnavailable reason, when SnapPy is missing.
"""

import json

import pytest

from conftest import needs_engine
from fslverify.engine import VOLUME_TOL
from fslverify.verify import V8, reproduce_table_links, verify_bundle


@needs_engine
class TestVolumes:
    def test_braided_links_and_augmentation(self, bundle_dir):
        report = verify_bundle(bundle_dir)
        by_name = {r.name: r for r in report.records}
        for k in range(1, 5):
            rec = by_name[f"bk{k}"]
            assert rec.status == "ok", rec
            assert rec.is_hyperbolic
            assert rec.abs_error < VOLUME_TOL
        rec = by_name["augmented"]
        assert rec.is_hyperbolic
        assert abs(rec.volume - 6 * V8) < VOLUME_TOL
        print(report.to_text())

    def test_family_volumes(self, bundle_dir):
        report = verify_bundle(bundle_dir)
        by_name = {r.name: r for r in report.records}
        for fam in "LJK":
            for k in range(1, 4):
                rec = by_name[f"{fam}{k}"]
                assert rec.is_hyperbolic, rec
                assert rec.abs_error < VOLUME_TOL, rec


@needs_engine
class TestTableLinks:
    def test_rows_and_expected_nonmatching(self, bundle_dir):
        report = reproduce_table_links(bundle_dir)
        by_name = {r.name: r for r in report.records}
        for row in ("FSL3", "FSL5", "FSL6"):
            assert by_name[row].status == "ok", by_name[row]
        assert by_name["L10n59 (expected nonmatching)"].status == "ok"
        print(report.to_text())
