import json

from main import app
from schemas.job import JobConfig
from services.job import build_patch


def _json(result):
    assert result.exit_code == 0, result.stderr
    return json.loads(result.stdout)


def test_generate_ab_patch(runner):
    payload = _json(runner.invoke(app, ["generate", "--tiling", "ab", "--route", "cutproject", "--radius", "4"]))
    assert payload["patch"]["schema_version"] == 1
    assert payload["patch"]["ring"] == "octagonal"
    assert set(payload["summary"]["kinds"]) == {"square", "rhomb"}


def test_generate_twice_is_byte_identical(runner, tmp_path):
    args = ["generate", "--tiling", "penrose", "--route", "section", "--radius", "3", "-o", "p.json"]
    first = runner.invoke(app, args)
    text = (tmp_path / "out" / "p.json").read_bytes()
    second = runner.invoke(app, args)
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout
    assert (tmp_path / "out" / "p.json").read_bytes() == text


def test_zero_length_fibonacci_section(runner):
    payload = _json(runner.invoke(app, ["generate", "--tiling", "fibonacci", "--route", "section", "--length", "0"]))
    assert payload["patch"]["tiles"] == []
    assert payload["summary"]["vertices"] <= 1


def test_inflate_fibonacci_word(runner):
    payload = _json(runner.invoke(app, ["inflate", "--tiling", "fibonacci", "--steps", "5"]))
    assert payload["word"] == "ABAABABAABAAB"
    assert payload["frequencies"] == {"A": ["-1", "1"], "B": ["2", "-1"]}


def test_invalid_combination_reports_json(runner):
    result = runner.invoke(app, ["generate", "--tiling", "ab"])
    assert result.exit_code == 2
    error = json.loads(result.stderr.strip().splitlines()[-1])
    assert error["error"] == "InvalidJobConfigError"


def test_service_error_exit_code(runner):
    result = runner.invoke(app, ["verify", "--tiling", "fibonacci", "--check", "legality"])
    assert result.exit_code == 2
    assert json.loads(result.stderr.strip().splitlines()[-1])["error"] == "InvalidJobConfigError"


def test_verify_restriction(runner):
    payload = _json(runner.invoke(app, ["verify", "--tiling", "ab", "--check", "crystallographic-restriction"]))
    assert payload["passed"]
    assert payload["checks"]["crystallographic-restriction"]["orders"] == [1, 2, 3, 4, 6]


def test_render_saved_patch(runner, tmp_path):
    assert runner.invoke(app, ["inflate", "--tiling", "penrose", "--steps", "2", "-o", "sun.json"]).exit_code == 0
    saved = tmp_path / "out" / "sun.json"
    result = runner.invoke(app, ["render", str(saved), "--svg", "sun.svg"])
    assert result.exit_code == 0, result.stderr
    assert "<svg" in (tmp_path / "out" / "sun.svg").read_text(encoding="utf-8")
    checked = _json(runner.invoke(app, ["verify", "--patch-file", str(saved)]))
    assert checked["round_trip"]


def test_lattice_commands(runner, tmp_path):
    shown = _json(runner.invoke(app, ["lattice", "show", "A2"]))
    assert [lat["name"] for lat in shown["lattices"]] == ["A2"]
    report = _json(runner.invoke(app, ["lattice", "restriction", "--limit", "12"]))
    assert report["orders"] == [1, 2, 3, 4, 6]
    assert report["minimal_dimension"]["5"] == 4
    exported = _json(runner.invoke(app, ["lattice", "export", "lattices.json"]))
    assert "Z4" in exported["lattices"]
    assert (tmp_path / "out" / "lattices.json").exists()


def test_rule_export_then_check(runner, tmp_path):
    exported = _json(runner.invoke(app, ["rule", "export", "--tiling", "penrose", "penrose.json"]))
    assert exported["rule"] == "penrose"
    checked = _json(runner.invoke(app, ["rule", "check", str(tmp_path / "out" / "penrose.json")]))
    assert checked["matrix"] == [[2, 1], [1, 1]]
    assert checked["primitive"] and checked["perron_matches_factor"]


def test_build_patch_follows_thread_setting(monkeypatch):
    config = JobConfig(command="generate", tiling="ab", route="cutproject", radius=3.0)
    single = build_patch(config)
    monkeypatch.setenv("QUASITILE_THREADS", "3")
    threaded = build_patch(config)
    assert threaded.points == single.points
    assert threaded.lifts == single.lifts
