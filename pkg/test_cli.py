"""
Tests for the isosym command line, run in-process through ``main(argv)``.
"""

import json
from pathlib import Path

import numpy as np
import pytest

from src.algorithms.generators import jordan_block
from src.algorithms.hypotheses import PROP1_COMBOS
from src.cli import CliConfig, Subcommand, build_parser, main
from src.models import CMatrix
from src.utils import write_matrix


@pytest.fixture
def matrices(tmp_path):
    """A few operators written as matrix JSON files."""
    paths = {}
    for name, M in {
        "jordan2": jordan_block(1, 2),
        "jordan3": jordan_block(1, 3),
        "identity": CMatrix.identity(2),
        "unitary": CMatrix(np.diag([1.0, 1j])),
        "twice_unitary": CMatrix(np.diag([2.0, 2j])),
    }.items():
        path = tmp_path / f"{name}.json"
        write_matrix(path, M)
        paths[name] = str(path)
    return paths


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCheck:
    """
    Test suite for ``isosym check``.
    """

    def test_jordan(self, capsys, matrices):
        code, out, _ = _run(capsys, ["check", matrices["jordan2"]])
        payload = json.loads(out)
        assert code == 0
        assert payload["source"] == matrices["jordan2"]
        assert payload["minimal_isometry_order"] == 3
        assert payload["minimal_symmetry_order"] == 3
        assert payload["pareto_frontier"] == [[1, 1]]

    def test_identity(self, capsys, matrices):
        code, out, _ = _run(capsys, ["check", matrices["identity"], "--mmax", "2", "--nmax", "2"])
        payload = json.loads(out)
        assert code == 0
        assert payload["minimal_isometry_order"] == 1
        assert payload["minimal_symmetry_order"] == 1
        assert all(r["verdict"] for r in payload["reports"])

    def test_several_inputs(self, capsys, matrices):
        code, out, _ = _run(capsys, ["check", matrices["jordan2"], matrices["identity"]])
        assert code == 0
        assert [p["source"] for p in json.loads(out)] == [matrices["jordan2"], matrices["identity"]]

    def test_text_format(self, capsys, matrices):
        code, out, _ = _run(capsys, ["--format", "text", "check", matrices["jordan2"]])
        assert code == 0
        assert "minimal isometry order: 3" in out
        assert "isosymmetry frontier: (1,1)" in out

    def test_output_file(self, capsys, matrices, tmp_path):
        target = tmp_path / "out" / "report.json"
        code, out, _ = _run(capsys, ["--output", str(target), "check", matrices["jordan2"]])
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["minimal_symmetry_order"] == 3

    def test_malformed_matrix(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"dim": 2, "data": [[1, 0]]}', encoding="utf-8")
        code, out, err = _run(capsys, ["check", str(bad)])
        assert code == 2
        assert out == ""
        assert "error:" in err

    def test_grid_bound(self, capsys, matrices):
        code, _, err = _run(capsys, ["check", matrices["jordan2"], "--mmax", "11"])
        assert code == 2
        assert "m_max" in err


class TestSearch:
    """
    Test suite for ``isosym search``.
    """

    def test_jordan3_symmetry(self, capsys, matrices):
        code, out, _ = _run(capsys, ["search", "--class", "symmetry", matrices["jordan3"]])
        payload = json.loads(out)
        assert code == 0
        assert payload["order"] == 5
        assert payload["class"] == "symmetry"
        assert payload["kind"] == "minimal-order"

    def test_unitary_isometry(self, capsys, matrices):
        code, out, _ = _run(capsys, ["--format", "text", "search", matrices["unitary"]])
        assert code == 0
        assert out.strip() == "1"

    def test_nothing_found(self, capsys, matrices):
        code, out, _ = _run(capsys, ["search", "--bound", "10", matrices["twice_unitary"]])
        payload = json.loads(out)
        assert code == 0
        assert payload["order"] is None
        assert payload["message"] == "none ≤ 10"

    def test_bound_limit(self, capsys, matrices):
        code, _, _ = _run(capsys, ["search", "--bound", "21", matrices["unitary"]])
        assert code == 2

    def test_unknown_kind(self, capsys, matrices):
        code, _, _ = _run(capsys, ["search", "--kind", "maximal", matrices["unitary"]])
        assert code == 2


class TestGen:
    """
    Test suite for ``isosym gen``.
    """

    def test_bundle_files(self, capsys, tmp_path):
        target = tmp_path / "bundle"
        code, out, _ = _run(
            capsys, ["--output", str(target), "gen", "--family", "mr", "--seed", "1", "--dim", "4", "--params", "n=2"]
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["directory"] == str(target)
        manifest = json.loads((target / "manifest.json").read_text())
        assert manifest["orders"]["expected_order"] == 3
        for name in manifest["matrices"].values():
            assert (target / name).exists()
        assert not (target / "drazin.json").exists()

    def test_byte_identical(self, capsys, tmp_path):
        argv = ["gen", "--family", "lemmas", "--seed", "7", "--dim", "4"]
        _run(capsys, ["--output", str(tmp_path / "a")] + argv)
        _run(capsys, ["--output", str(tmp_path / "b")] + argv)
        first = sorted(p.name for p in (tmp_path / "a").iterdir())
        assert first == sorted(p.name for p in (tmp_path / "b").iterdir())
        for name in first:
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_thm3_writes_decomposition(self, capsys, tmp_path):
        target = tmp_path / "thm3"
        code, _, _ = _run(capsys, ["--output", str(target), "gen", "--family", "thm3", "--dim", "4", "--params", "p=2"])
        assert code == 0
        drazin = json.loads((target / "drazin.json").read_text())
        assert drazin["p"] == 2

    def test_bad_param(self, capsys, tmp_path):
        code, _, _ = _run(capsys, ["--output", str(tmp_path / "x"), "gen", "--family", "mr", "--params", "n"])
        assert code == 2

    def test_unknown_family(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["gen", "--family", "circulant"])


class TestVerify:
    """
    Test suite for ``isosym verify``.
    """

    def test_sharpness(self, capsys):
        code, out, _ = _run(capsys, ["verify", "--suite", "sharpness", "--seeds", "1", "--dims", "2"])
        payload = json.loads(out)
        assert code == 0
        assert payload["summary"]["fail"] == 0
        assert payload["config"]["suites"] == ["sharpness"]

    def test_prop1(self, capsys):
        code, out, _ = _run(capsys, ["verify", "--suite", "prop1", "--seeds", "1", "--dims", "2"])
        payload = json.loads(out)
        assert code == 0
        assert {c["result_id"] for c in payload["cells"]} == {f"prop1-{combo}" for combo in PROP1_COMBOS}
        assert payload["summary"]["fail"] == 0

    def test_all_suites(self, capsys):
        code, out, _ = _run(capsys, ["verify", "--suite", "all", "--seeds", "1", "--dims", "2"])
        payload = json.loads(out)
        assert code == 0
        assert payload["summary"]["fail"] == 0
        assert all(c["verdict"] != "fail" for c in payload["cells"])
        result_ids = {c["result_id"] for c in payload["cells"]}
        assert {"lem1", "prop1-b", "thm1", "thm3", "exact", "sharp-iso3"} <= result_ids

    def test_order_guard(self, capsys):
        code, _, err = _run(capsys, ["verify", "--suite", "exact", "--orders", "63"])
        assert code == 2
        assert "order-too-large" in err

    def test_bad_dims(self, capsys):
        code, _, _ = _run(capsys, ["verify", "--dims", "2,x"])
        assert code == 2

    def test_timings(self, capsys):
        code, out, _ = _run(capsys, ["verify", "--suite", "exact", "--seeds", "1", "--dims", "2", "--timings"])
        assert code == 0
        assert "runtime_ms" in json.loads(out)["cells"][0]


SCHEMAS = Path(__file__).parent / "docs" / "schemas"


def _required(schema_name, *path):
    node = json.loads((SCHEMAS / schema_name).read_text(encoding="utf-8"))
    for key in path:
        node = node[key]
    return set(node["required"])


class TestSchemas:
    """
    Test suite for the shipped JSON schemas against actual CLI payloads.
    """

    def test_check_payload(self, capsys, matrices):
        _, out, _ = _run(capsys, ["check", matrices["jordan2"]])
        payload = json.loads(out)
        assert _required("classification.schema.json", "$defs", "classification") <= set(payload)
        report_keys = _required("classification.schema.json", "$defs", "classReport")
        assert all(set(r) == report_keys for r in payload["reports"])

    def test_search_payload(self, capsys, matrices):
        _, out, _ = _run(capsys, ["search", matrices["unitary"]])
        assert _required("search.schema.json") <= set(json.loads(out))

    def test_gen_files(self, capsys, tmp_path):
        target = tmp_path / "thm3"
        _run(capsys, ["--output", str(target), "gen", "--family", "thm3", "--dim", "3"])
        manifest = json.loads((target / "manifest.json").read_text())
        assert set(manifest) == _required("manifest.schema.json")
        assert set(manifest["spec"]) == _required("manifest.schema.json", "properties", "spec")
        assert set(json.loads((target / "drazin.json").read_text())) == _required("drazin.schema.json")
        matrix = json.loads((target / "A.json").read_text())
        assert set(matrix) == _required("matrix.schema.json")
        residual_keys = _required("residual.schema.json")
        assert all(set(h) == residual_keys for h in manifest["hypotheses"])

    def test_verify_payload(self, capsys):
        _, out, _ = _run(capsys, ["verify", "--suite", "exact", "--seeds", "1", "--dims", "2"])
        payload = json.loads(out)
        assert set(payload) == _required("suite_report.schema.json")
        assert _required("suite_report.schema.json", "properties", "config") <= set(payload["config"])
        assert set(payload["cells"][0]) == _required("suite_report.schema.json", "$defs", "cell")


class TestCliConfig:
    """
    Test suite for the validated CLI configuration.
    """

    def test_json_round_trip(self):
        args = build_parser().parse_args(["--atol", "1e-10", "verify", "--suite", "thm1", "--dims", "4,2"])
        config = CliConfig.from_namespace(args)
        assert config.subcommand is Subcommand.VERIFY
        assert config.dims == [4, 2]
        assert CliConfig.from_json(json.loads(json.dumps(config.to_json()))) == config

    def test_tolerance_override(self):
        config = CliConfig(subcommand="verify", atol=1e-10)
        assert config.tolerance().atol == 1e-10

    def test_check_needs_input(self):
        with pytest.raises(ValueError):
            CliConfig(subcommand="check")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
