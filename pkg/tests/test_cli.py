"""End-to-end tests of the sheafnet command line on the fixture documents."""

import json

import pytest

from sheafnet.commands import complex as complex_command


def _fixture(fixtures_dir, name: str) -> str:
    return str(fixtures_dir / f"{name}.json")


def test_complex_report_for_path(run_cli, fixtures_dir):
    code, out, _ = run_cli("complex", "--network", _fixture(fixtures_dir, "path3"))
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "complex"
    assert "generated_at" not in report
    (only,) = report["slices"]
    assert only["t"] is None
    assert len(only["cells"]) == 5
    assert only["facets"] == [[1, 2], [2, 3]]
    assert only["euler_characteristic"] == 1
    assert {"node": 2, "facets": [0, 1]} in only["broadcast_resources"]


def test_complex_follows_the_document_window(run_cli, fixtures_dir):
    code, out, _ = run_cli("complex", "--network", _fixture(fixtures_dir, "six_node"))
    assert code == 0
    slices = json.loads(out)["slices"]
    assert [s["t"] for s in slices] == [0, 1, 2]
    assert [1, 2, 3] in slices[1]["facets"]
    assert [5, 6] not in slices[2]["facets"]


def test_empty_network_is_not_an_error(run_cli, fixtures_dir):
    code, out, _ = run_cli("complex", "--network", _fixture(fixtures_dir, "empty"))
    assert code == 0
    assert json.loads(out)["slices"][0]["cells"] == []
    code, out, _ = run_cli("cohomology", "--network", _fixture(fixtures_dir, "empty"))
    assert code == 0
    assert json.loads(out)["slices"][0]["check"] == "PASS"


def test_malformed_threshold_reports_line_and_field(run_cli, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "name": "bad",\n  "nodes": [1, 2],\n  "threshold": "loud"\n}\n', encoding="utf-8")
    code, out, err = run_cli("complex", "--network", str(bad))
    assert code == 1
    assert out == ""
    assert "line=4" in err
    assert "field='threshold'" in err


def test_missing_network_file(run_cli, tmp_path):
    code, _, err = run_cli("complex", "--network", str(tmp_path / "nope.json"))
    assert code == 1
    assert "cannot read file" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["complex"],
        ["teleport", "--network", "x.json"],
        ["complex", "--window", "3:1"],
        ["simulate", "--random", "3", "--queue-len", "1"],
    ],
)
def test_usage_errors_exit_with_input_error(run_cli, argv):
    code, out, _ = run_cli(*argv)
    assert code == 1
    assert out == ""


@pytest.mark.parametrize("name,count", [("path3", 4), ("single", 2), ("triangle", 4), ("two_components", 9)])
def test_sections_counts(run_cli, fixtures_dir, name, count):
    code, out, _ = run_cli("sections", "--network", _fixture(fixtures_dir, name))
    assert code == 0
    assert len(json.loads(out)["slices"][0]["sections"]) == count


def test_sections_carry_regions(run_cli, fixtures_dir):
    _, out, _ = run_cli("sections", "--network", _fixture(fixtures_dir, "path3"))
    section = json.loads(out)["slices"][0]["sections"][1]
    assert section["transmitters"] == [1]
    (region,) = section["regions"]
    assert region["active_region"] == [[1], [2], [1, 2]]
    assert [2, 3] in region["region_of_influence"]


@pytest.mark.parametrize("name,dims", [("path3", [3, 0]), ("triangle", [3, 0, 0]), ("two_components", [4, 0])])
def test_cohomology_passes_on_fixtures(run_cli, fixtures_dir, name, dims):
    code, out, _ = run_cli("cohomology", "--network", _fixture(fixtures_dir, name))
    assert code == 0
    (only,) = json.loads(out)["slices"]
    assert only["dims"] == dims
    assert only["check"] == "PASS"


def test_cohomology_on_a_random_network(run_cli):
    code, out, _ = run_cli("cohomology", "--random", "6")
    assert code == 0
    report = json.loads(out)
    assert report["network"] == "random-disk-6-seed-0"
    assert all(s["nodes"] == 6 and s["check"] == "PASS" for s in report["slices"])


def test_simulate_routes_a_packet_to_the_neighbour(run_cli, fixtures_dir):
    code, out, _ = run_cli(
        "simulate",
        "--network",
        _fixture(fixtures_dir, "relay2"),
        "--schedule",
        _fixture(fixtures_dir, "relay2_schedule"),
    )
    assert code == 0
    report = json.loads(out)
    assert report["window"] == [0, 1]
    assert report["protocol"] == "forward_everything"
    assert report["hops"] == [{"node": 2, "t": 0}]
    receiver = next(r for r in report["trace"] if r["cell"] == [[2, 0]])
    assert receiver["kind"] == "vertex"
    assert receiver["state"] == 1
    assert receiver["packets"][0]["payload"] == ["1"]


def test_bound_for_an_idle_schedule(run_cli, fixtures_dir):
    code, out, _ = run_cli(
        "bound",
        "--network",
        _fixture(fixtures_dir, "path3"),
        "--schedule",
        _fixture(fixtures_dir, "path3_idle_schedule"),
    )
    assert code == 0
    report = json.loads(out)
    # 3 nodes x (2 slices + 2 slots - 1) x 1 coordinate
    assert report["bound"] == 9
    assert report["schedule"] == [{"t": 0, "transmitters": []}, {"t": 1, "transmitters": []}]


@pytest.mark.parametrize("verb", ["simulate", "bound"])
def test_interfering_schedule_is_a_model_inconsistency(run_cli, fixtures_dir, verb):
    code, out, err = run_cli(
        verb,
        "--network",
        _fixture(fixtures_dir, "path3"),
        "--schedule",
        _fixture(fixtures_dir, "path3_interfering_schedule"),
    )
    assert code == 2
    assert out == ""
    assert "[2]" in err


def test_unknown_protocol(run_cli, fixtures_dir):
    code, _, err = run_cli(
        "bound",
        "--network",
        _fixture(fixtures_dir, "path3"),
        "--schedule",
        _fixture(fixtures_dir, "path3_idle_schedule"),
        "--protocol",
        "forward_sideways",
    )
    assert code == 1
    assert "forward_sideways" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["complex", "--network", "six_node"],
        ["sections", "--network", "two_components"],
        ["cohomology", "--network", "triangle"],
        ["simulate", "--network", "relay2", "--schedule", "relay2_schedule"],
        ["bound", "--network", "path3", "--schedule", "path3_idle_schedule"],
    ],
)
def test_reports_are_byte_identical_across_runs(run_cli, fixtures_dir, argv):
    argv = [_fixture(fixtures_dir, a) if i > 0 and argv[i - 1].startswith("--") else a for i, a in enumerate(argv)]
    first = run_cli(*argv)
    second = run_cli(*argv)
    assert first[0] == 0
    assert first[1] == second[1]


def test_random_network_is_reproducible(run_cli):
    assert run_cli("complex", "--random", "8")[1] == run_cli("complex", "--random", "8")[1]


def test_dot_output(run_cli, fixtures_dir):
    code, out, _ = run_cli("complex", "--network", _fixture(fixtures_dir, "path3"), "--format", "dot")
    assert code == 0
    assert out.startswith('graph "path3" {')
    assert '"1" -- "2";' in out
    code, out, _ = run_cli(
        "simulate",
        "--network",
        _fixture(fixtures_dir, "relay2"),
        "--schedule",
        _fixture(fixtures_dir, "relay2_schedule"),
        "--format",
        "dot",
    )
    assert code == 0
    assert '"1@0" -- "1@1"' in out
    assert "style=dashed" in out


def test_unexpected_failure_is_an_internal_error(run_cli, fixtures_dir, monkeypatch):
    def boom(config):
        raise RuntimeError("disk on fire")

    monkeypatch.setattr(complex_command, "run", boom)
    code, out, err = run_cli("complex", "--network", _fixture(fixtures_dir, "path3"))
    assert code == 3
    assert out == ""
    assert "disk on fire" in err
