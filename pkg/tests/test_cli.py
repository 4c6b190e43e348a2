import json

import pytest
from click.testing import CliRunner

from fslinks.braid import parse_braid
from fslinks.cli import main
from fslinks.constants import V8
from fslinks.diagram import pd_import


@pytest.fixture
def runner():
    return CliRunner()


class TestGen:
    def test_gen_bk1_prints_braid_text(self, runner):
        res = runner.invoke(main, ["gen", "bk", "1"])
        assert res.exit_code == 0
        assert res.output.splitlines()[0] == "B3: -1 -1 2 2"

    def test_gen_K1_summary(self, runner):
        res = runner.invoke(main, ["gen", "K", "1"])
        assert res.exit_code == 0
        summary = json.loads(res.output.splitlines()[-1])
        assert summary["crossings"] == 9
        assert summary["components"] == 4
        assert summary["predicted_volume"] == pytest.approx(2 * V8)

    def test_gen_augment(self, runner):
        res = runner.invoke(main, ["gen", "braid", "B2: 1 -1 -1",
                                   "--augment"])
        assert res.exit_code == 0
        summary = json.loads(res.output.splitlines()[-1])
        assert summary["complexity"] == 3
        assert summary["components"] == 6
        assert summary["predicted_volume"] == pytest.approx(6 * V8)

    def test_gen_writes_files(self, runner, tmp_path):
        res = runner.invoke(main, ["gen", "bk", "2", "--out-dir",
                                   str(tmp_path)])
        assert res.exit_code == 0
        braid_text = (tmp_path / "bk2.braid.txt").read_text().strip()
        assert parse_braid(braid_text).strands == 5
        bundle = json.loads((tmp_path / "bk2.json").read_text())
        assert bundle["schema_version"] == 1
        assert bundle["complexity"] == 2
        d = pd_import(bundle["pd"])
        assert d.component_count() == 6

    def test_gen_parse_error_is_machine_readable(self, runner):
        res = runner.invoke(main, ["gen", "braid", "B2: 9"])
        assert res.exit_code == 1
        err = json.loads(res.stderr.splitlines()[-1])
        assert err["error"]["type"] == "BraidParseError"

    def test_gen_domain_error_passthrough(self, runner):
        res = runner.invoke(main, ["gen", "Lnm", "3", "1"])
        assert res.exit_code == 1
        err = json.loads(res.stderr.splitlines()[-1])
        assert err["error"]["type"] == "DomainError"

    def test_gen_table_mon(self, runner):
        res = runner.invoke(main, ["gen", "table-mon", "L6a4"])
        assert res.exit_code == 0
        assert res.output.splitlines()[0] == "B3: 1 -2 1 -2 1 -2"


class TestTv:
    def test_tv_rows(self, runner):
        res = runner.invoke(main, ["tv", "bk", "1", "--r-min", "5",
                                   "--r-max", "9", "--precision-bits", "64"])
        assert res.exit_code == 0
        lines = res.output.strip().splitlines()
        assert lines[0].split("\t") == ["r", "tv", "slope", "tail_min",
                                        "target"]
        assert [ln.split("\t")[0] for ln in lines[1:]] == ["5", "7", "9"]

    def test_tv_identity_braid(self, runner):
        res = runner.invoke(main, ["tv", "B1:", "--r-min", "5",
                                   "--r-max", "7", "--precision-bits", "64"])
        assert res.exit_code == 0
        rows = res.output.strip().splitlines()[1:]
        assert float(rows[0].split("\t")[1]) == pytest.approx(2.0)

    def test_tv_json_and_figure(self, runner, tmp_path):
        res = runner.invoke(main, [
            "tv", "bk", "1", "--r-min", "5", "--r-max", "7",
            "--precision-bits", "64", "--format", "json",
            "--out-dir", str(tmp_path),
        ])
        assert res.exit_code == 0
        data = json.loads((tmp_path / "bk1-tv.json").read_text())
        assert data["target"] == pytest.approx(2 * V8)
        assert (tmp_path / "bk1-slopes.png").stat().st_size > 0

    def test_tv_rejects_even_levels(self, runner):
        res = runner.invoke(main, ["tv", "bk", "1", "--r-max", "8"])
        assert res.exit_code != 0


class TestExport:
    def test_family_bundles(self, runner, tmp_path):
        res = runner.invoke(main, ["export", "verify", "--families", "L,J,K",
                                   "--k-max", "3", "--out-dir",
                                   str(tmp_path)])
        assert res.exit_code == 0
        written = json.loads(res.output)["written"]
        assert len(written) == 9
        bundle = json.loads((tmp_path / "family_K_1.json").read_text())
        assert bundle["predicted_volume"] == pytest.approx(2 * V8)
        assert bundle["table_row"] == "FSL6"
        assert "L8n7" in bundle["isometry_candidates"]

    def test_bk_bundles(self, runner, tmp_path):
        res = runner.invoke(main, ["export", "verify", "--bk-max", "4",
                                   "--out-dir", str(tmp_path)])
        assert res.exit_code == 0
        assert len(json.loads(res.output)["written"]) == 4
        b3 = json.loads((tmp_path / "braided_bk_3.json").read_text())
        assert b3["complexity"] == 3
        assert parse_braid(b3["braid"]).strands == 6

    def test_table_links_catalog(self, runner, tmp_path):
        res = runner.invoke(main, ["export", "verify", "--table-links",
                                   "--out-dir", str(tmp_path)])
        assert res.exit_code == 0
        cat = json.loads((tmp_path / "table_links.json").read_text())
        assert cat["rows"]["FSL3"] == ["L6a4", "L9n25", "L11n287", "L11n378"]
        assert cat["expected_nonmatching"] == ["L10n59"]
        assert len(cat["seventeen_links"]) == 17

    def test_braid_bundle_round_trip(self, runner, tmp_path):
        res = runner.invoke(main, ["export", "verify", "--braid",
                                   "B2: 1 -1 -1", "--out-dir",
                                   str(tmp_path)])
        assert res.exit_code == 0
        bundle = json.loads((tmp_path / "augmented.json").read_text())
        assert bundle["complexity"] == 3
        assert sum(1 for v in bundle["framings"].values()
                   if v == "zero") == 4
        assert parse_braid(bundle["braid"]).letters == (1, -1, -1)
