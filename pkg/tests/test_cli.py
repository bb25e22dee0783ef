import json

from app.presentation.cli import lab


def test_derive_prints_the_casimir_polynomial(runner):
    result = runner.invoke(lab, ["derive", "--preset", "su11"])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["g"] == ["0/1", "-1/1", "-1/1"]


def test_config_from_stdin(runner):
    document = json.dumps({"algebra": {"preset": "bg", "params": {"phi": "-2"}}})
    result = runner.invoke(lab, ["derive", "--config", "-"], input=document)
    assert result.exit_code == 0
    assert json.loads(result.stdout)["casimir"] == [{"weight": "2/1", "C": "-2/1"}]


def test_empty_config_is_a_usage_error(runner, tmp_path):
    path = tmp_path / "job.json"
    path.write_text("{}")
    result = runner.invoke(lab, ["rep", "--config", str(path)])
    assert result.exit_code == 2
    assert "error: config_error: algebra:" in result.output


def test_unknown_preset_is_a_usage_error(runner):
    result = runner.invoke(lab, ["derive", "--preset", "nope"])
    assert result.exit_code == 2
    assert "unknown preset 'nope'" in result.output


def test_cs_on_finite_module_exits_with_failure(runner):
    result = runner.invoke(lab, ["cs", "--preset", "su2"])
    assert result.exit_code == 1
    assert "error: pole_on_spectrum: no canonical conjugate on finite module" in result.output


def test_cs_writes_one_table_per_point(runner, tmp_path):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"algebra": {"preset": "bg"}, "grid": [0, [0.5, 0.5]]}))
    out = tmp_path / "out"
    result = runner.invoke(lab, ["cs", "--config", str(path), "--out", str(out), "--workers", "2"])
    assert result.exit_code == 0
    assert sorted(p.name for p in out.iterdir()) == ["cs_000.csv", "cs_001.csv", "summary.json"]
    assert (out / "cs_000.csv").read_text().splitlines() == ["n,re,im,probability", "0,1,0,1"]
    summary = json.loads((out / "summary.json").read_text())
    assert [p["index"] for p in summary["points"]] == [0, 1]


def test_moments_with_zero_levels(runner, tmp_path):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"algebra": {"preset": "bg"}, "n_max": 0}))
    result = runner.invoke(lab, ["moments", "--config", str(path), "--out", str(tmp_path)])
    assert result.exit_code == 0
    lines = (tmp_path / "moments.csv").read_text().splitlines()
    assert lines == ["n,ratio,value,quadrature,relative_error", "0,1/1,1,1,0"]


def test_quadratic_moments_carry_a_note(runner):
    result = runner.invoke(lab, ["moments", "--preset", "quadratic"])
    assert result.exit_code == 0
    assert "Meijer-G" in json.loads(result.stdout)["notes"][0]


def test_tolerance_flag_is_validated(runner):
    result = runner.invoke(lab, ["cs", "--preset", "bg", "--tol", "0"])
    assert result.exit_code == 2


def test_realization_check(runner):
    result = runner.invoke(lab, ["realization-check", "--preset", "su2"])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["closure"] == ["0/1", "2/1"]
    assert report["matches"] is True


def test_verify_passes(runner):
    result = runner.invoke(lab, ["verify"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["passed"] is True


def test_verify_detects_an_injected_corruption(runner):
    result = runner.invoke(lab, ["verify", "--preset", "su11", "--inject-corruption", "ladder"])
    assert result.exit_code == 1
    assert "error: invariant_failed: su11.commutator" in result.output


def test_verify_rejects_an_unknown_corruption(runner):
    result = runner.invoke(lab, ["verify", "--inject-corruption", "entropy"])
    assert result.exit_code == 2
    assert "error: config_error: unknown corruption 'entropy'" in result.output
