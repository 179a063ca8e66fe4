"""The command-line interface: every subcommand, exit codes, file output."""

import json
import subprocess
import sys

import pytest

from lattes import theorem_report
from lattes.cli import DEFAULT_SAMPLES, DEFAULT_SEED, main

from conftest import build_datum
from portrait_corpus import INCONSISTENT_FIVE_CYCLE

DOUBLING_P2 = {"group": "p2", "L": [[2, 0], [0, 2]]}
QUARTER_TURN_P4 = {"group": "p4", "L": [[1, 1], [-1, 1]], "a": ["0", "0"]}
DOUBLING_P6 = {"group": "p6", "L": [[2, 0], [0, 2]]}

POWER_QUADRATIC = {
    "points": ["0", "inf"],
    "next": {"0": "0", "inf": "inf"},
    "deg": {"0": 2, "inf": 2},
}

FIVE_CYCLE_DEGREE_SIX = dict(INCONSISTENT_FIVE_CYCLE, degree=6)

VERIFICATION_CHECKS = [
    "datum-valid",
    "well-definedness",
    "degree-sum",
    "parabolic-orbifold",
    "no-periodic-critical",
    "signature-table",
    "theorem-conditions",
    "iterate-signature",
    "local-degree-multiplicativity",
    "constant-fiber-degree",
]


def write_json(path, payload):
    path.write_text(json.dumps(payload) + "\n")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestClassify:
    def test_report_matches_the_library(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", QUARTER_TURN_P4)
        code, out = run_cli(capsys, "classify", path)
        assert code == 0
        payload = json.loads(out)
        datum = build_datum("p4", ((1, 1), (-1, 1)))
        assert payload == theorem_report(datum).to_json()
        assert payload["signature"] == "(2,4,4)"
        assert payload["expanding"] is True

    def test_out_file_holds_the_stdout_payload(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", QUARTER_TURN_P4)
        code, out = run_cli(capsys, "classify", path)
        assert code == 0
        target = tmp_path / "report.json"
        code, quiet = run_cli(capsys, "classify", path, "--out", str(target))
        assert code == 0
        assert quiet == ""
        assert target.read_text() == out

    def test_invalid_datum_exits_one(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", {"group": "p2", "L": [[1, 0], [0, 1]]})
        code, out = run_cli(capsys, "classify", path)
        assert code == 1
        assert "invalid datum" in json.loads(out)["error"]

    def test_p1_is_rejected(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", {"group": "p1", "L": [[2, 0], [0, 2]]})
        code, out = run_cli(capsys, "classify", path)
        assert code == 1
        assert "p1" in json.loads(out)["error"]

    def test_missing_file_exits_one(self, tmp_path, capsys):
        code, out = run_cli(capsys, "classify", str(tmp_path / "absent.json"))
        assert code == 1
        assert "error" in json.loads(out)

    def test_malformed_json_exits_one(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{")
        code, out = run_cli(capsys, "classify", str(path))
        assert code == 1
        assert "error" in json.loads(out)

    def test_identical_runs_print_identical_bytes(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", DOUBLING_P6)
        _, first = run_cli(capsys, "classify", path)
        _, second = run_cli(capsys, "classify", path)
        assert first == second


class TestSignature:
    def test_hex_signature(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", DOUBLING_P6)
        code, out = run_cli(capsys, "signature", path)
        assert code == 0
        assert json.loads(out) == {"group": "p6", "degree": 4, "signature": "(2,3,6)"}


class TestFiber:
    def test_origin_fiber_of_the_doubling_datum(self, tmp_path, capsys):
        path = write_json(tmp_path / "q.json", dict(DOUBLING_P2, p=["0", "0"]))
        code, out = run_cli(capsys, "fiber", path)
        assert code == 0
        payload = json.loads(out)
        assert payload["point"] == ["0", "0"]
        assert payload["degree_sum"] == 4
        assert [entry["point"] for entry in payload["fiber"]] == [
            ["0", "0"],
            ["0", "1/2"],
            ["1/2", "0"],
            ["1/2", "1/2"],
        ]
        assert all(entry["degree"] == 1 for entry in payload["fiber"])

    def test_point_is_canonicalized_first(self, tmp_path, capsys):
        path = write_json(tmp_path / "q.json", dict(DOUBLING_P2, p=["3/4", "3/4"]))
        code, out = run_cli(capsys, "fiber", path)
        assert code == 0
        assert json.loads(out)["point"] == ["1/4", "1/4"]

    def test_missing_point_exits_one(self, tmp_path, capsys):
        path = write_json(tmp_path / "q.json", DOUBLING_P2)
        code, out = run_cli(capsys, "fiber", path)
        assert code == 1
        assert '"p"' in json.loads(out)["error"]


class TestDeckSolve:
    def test_rotation_with_shift(self, tmp_path, capsys):
        payload = {"group": "p2", "x": ["1/4", "1/4"], "y": ["3/4", "3/4"]}
        path = write_json(tmp_path / "pair.json", payload)
        code, out = run_cli(capsys, "deck-solve", path)
        assert code == 0
        assert json.loads(out) == {"k": 1, "gamma": [1, 1], "verified": True}

    def test_translation_only(self, tmp_path, capsys):
        payload = {"group": "p4", "x": ["0", "0"], "y": ["2", "-1"]}
        path = write_json(tmp_path / "pair.json", payload)
        code, out = run_cli(capsys, "deck-solve", path)
        assert code == 0
        assert json.loads(out) == {"k": 0, "gamma": [2, -1], "verified": True}

    def test_distinct_orbits_exit_one(self, tmp_path, capsys):
        payload = {"group": "p4", "x": ["1/4", "0"], "y": ["1/3", "0"]}
        path = write_json(tmp_path / "pair.json", payload)
        code, out = run_cli(capsys, "deck-solve", path)
        assert code == 1
        assert "error" in json.loads(out)

    def test_missing_group_exits_one(self, tmp_path, capsys):
        path = write_json(tmp_path / "pair.json", {"x": ["0", "0"], "y": ["1", "0"]})
        code, out = run_cli(capsys, "deck-solve", path)
        assert code == 1
        assert "group" in json.loads(out)["error"]


class TestPortraitCheck:
    def test_parabolic_portrait(self, tmp_path, capsys):
        path = write_json(tmp_path / "portrait.json", POWER_QUADRATIC)
        code, out = run_cli(capsys, "portrait-check", path)
        assert code == 0
        payload = json.loads(out)
        assert payload["parabolic"] is True
        assert payload["signature"] == "(inf,inf)"
        assert payload["euler_char"] == "0"

    def test_hyperbolic_portrait_still_exits_zero(self, tmp_path, capsys):
        path = write_json(tmp_path / "portrait.json", FIVE_CYCLE_DEGREE_SIX)
        code, out = run_cli(capsys, "portrait-check", path)
        assert code == 0
        payload = json.loads(out)
        assert payload["parabolic"] is False
        assert payload["euler_char"] == "-1/2"

    def test_inconsistent_portrait_exits_two(self, tmp_path, capsys):
        path = write_json(tmp_path / "portrait.json", INCONSISTENT_FIVE_CYCLE)
        code, out = run_cli(capsys, "portrait-check", path)
        assert code == 2
        assert "error" in json.loads(out)

    def test_structurally_broken_portrait_exits_one(self, tmp_path, capsys):
        path = write_json(tmp_path / "portrait.json", {"points": ["a"], "next": {"a": "a"}})
        code, out = run_cli(capsys, "portrait-check", path)
        assert code == 1
        assert "deg" in json.loads(out)["error"]


class TestMeshRender:
    def test_requires_out(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", DOUBLING_P2)
        code, out = run_cli(capsys, "mesh-render", path)
        assert code == 1
        assert "--out" in json.loads(out)["error"]

    def test_writes_files_and_prints_stats(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", DOUBLING_P2)
        out_path = tmp_path / "mesh.svg"
        code, out = run_cli(capsys, "mesh-render", path, "--out", str(out_path), "--depth", "2")
        assert code == 0
        stats = json.loads(out)
        assert stats["depth"] == 2
        assert stats["max_diam"] == 0.25
        assert stats["cell_counts"] == [1, 4, 16]
        assert out_path.exists()
        assert json.loads((tmp_path / "mesh.stats.json").read_text()) == stats
        assert (tmp_path / "mesh.decay.csv").exists()
        assert (tmp_path / "mesh.decay.png").exists()

    def test_default_depth_is_four(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", DOUBLING_P2)
        code, out = run_cli(capsys, "mesh-render", path, "--out", str(tmp_path / "m.svg"))
        assert code == 0
        assert json.loads(out)["depth"] == 4

    def test_excessive_depth_exits_one(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", DOUBLING_P2)
        code, out = run_cli(
            capsys, "mesh-render", path, "--out", str(tmp_path / "m.svg"), "--depth", "13"
        )
        assert code == 1
        assert "13" in json.loads(out)["error"]


class TestVerify:
    def test_full_suite_passes(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", QUARTER_TURN_P4)
        code, out = run_cli(capsys, "verify", path, "--samples", "25", "--seed", "11")
        assert code == 0
        lines = out.strip().splitlines()
        assert [line.split()[1] for line in lines[:-1]] == VERIFICATION_CHECKS
        assert all(line.startswith("PASS ") for line in lines[:-1])
        assert json.loads(lines[-1]) == {
            "passed": 10,
            "failed": 0,
            "seed": 11,
            "samples": 25,
        }

    def test_defaults_are_documented_values(self, tmp_path, capsys):
        assert DEFAULT_SEED == 24301
        assert DEFAULT_SAMPLES == 200
        path = write_json(tmp_path / "datum.json", QUARTER_TURN_P4)
        code, out = run_cli(capsys, "verify", path, "--samples", "5")
        assert code == 0
        assert json.loads(out.strip().splitlines()[-1])["seed"] == DEFAULT_SEED

    def test_same_seed_reproduces_the_output(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", DOUBLING_P2)
        _, first = run_cli(capsys, "verify", path, "--samples", "15", "--seed", "3")
        _, second = run_cli(capsys, "verify", path, "--samples", "15", "--seed", "3")
        assert first == second

    def test_invalid_datum_exits_one(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", {"group": "p3", "L": [[2, 1], [0, 2]]})
        code, out = run_cli(capsys, "verify", path)
        assert code == 1
        assert "invalid datum" in json.loads(out)["error"]


class TestUsage:
    def test_unknown_command_exits_one(self, tmp_path, capsys):
        code, out = run_cli(capsys, "bogus", "input.json")
        assert code == 1
        assert "error" in json.loads(out)

    def test_missing_input_exits_one(self, capsys):
        code, out = run_cli(capsys, "classify")
        assert code == 1
        assert "error" in json.loads(out)

    def test_depth_flag_is_mesh_render_only(self, tmp_path, capsys):
        path = write_json(tmp_path / "datum.json", DOUBLING_P2)
        code, out = run_cli(capsys, "classify", path, "--depth", "3")
        assert code == 1
        assert "error" in json.loads(out)

    def test_module_invocation(self, tmp_path):
        path = write_json(tmp_path / "datum.json", DOUBLING_P6)
        proc = subprocess.run(
            [sys.executable, "-m", "lattes", "signature", path],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["signature"] == "(2,3,6)"
