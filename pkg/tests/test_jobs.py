import json
from fractions import Fraction

import pytest

from app.modules import get_preset, list_presets
from app.modules.common.errors import ConfigError, CutoffExceeded, DomainError, PoleOnSpectrum
from app.modules.jobs import (
    CORRUPTIONS,
    apply_overrides,
    default_parameters,
    parse_config,
    prepare,
    run_job,
    run_verify,
)


def config_for(preset=None, **fields):
    data = {"algebra": {"preset": preset}} if preset else {}
    data.update(fields)
    config, errors = parse_config(data)
    assert errors == {}
    return config


def test_shipped_presets():
    slugs = [preset.slug for preset in list_presets()]
    assert slugs == sorted(slugs)
    assert set(slugs) == {
        "bg", "dicke", "higgs", "multiphoton", "oscillator", "pair", "quadratic", "su11", "su2", "trilinear",
    }
    assert get_preset("su2").kind == "finite"
    assert get_preset("missing") is None


def test_defaults_document():
    defaults = default_parameters()
    assert defaults["algebra"]["preset"] == "su11"
    assert defaults["cutoff"] == {"initial": 64, "max_dim": 4096}
    assert defaults["tolerances"]["tail"] == 1e-14
    assert defaults["grid"] == [[1.0, 0.0]]


def test_parse_reports_json_position():
    config, errors = parse_config("{bad")
    assert config is None
    assert errors["config"].startswith("line 1 column 2")


def test_parse_requires_an_algebra():
    assert parse_config({})[1] == {"algebra": "field required: give a preset or f coefficients"}
    assert parse_config(None)[1].keys() == {"algebra"}
    assert parse_config("[1, 2]")[1] == {"config": "expected a JSON object"}


@pytest.mark.parametrize(
    "data, field",
    [
        ({"algebra": {"preset": "su11", "f": [0, -2]}}, "algebra"),
        ({"algebra": {"preset": "nope"}}, "algebra"),
        ({"algebra": {"preset": "bg", "params": {"q": "1"}}}, "algebra"),
        ({"algebra": {"preset": "su11", "params": {"w0": 0.25}}}, "algebra.params.w0"),
        ({"algebra": {"preset": "su11"}, "grid": []}, "grid"),
        ({"algebra": {"preset": "su11"}, "grid": [0.5, [1, 2], True]}, "grid.2"),
        ({"algebra": {"preset": "su11"}, "workers": 0}, "workers"),
        ({"algebra": {"preset": "su11"}, "cutoff": {"initial": 128, "max_dim": 64}}, "cutoff"),
        ({"algebra": {"preset": "su11"}, "family": "squeezed"}, "family"),
        ({"algebra": {"preset": "su11"}, "b_sign": 2}, "b_sign"),
        ({"algebra": {"preset": "su11"}, "bogus": 1}, "bogus"),
    ],
)
def test_invalid_documents(data, field):
    config, errors = parse_config(data)
    assert config is None
    assert field in errors


def test_rationals_are_normalized():
    config = config_for("bg", weights=[1, "3/6"])
    assert config.weights == ["1/1", "1/2"]
    assert config.points == [complex(1, 0)]


def test_overrides_take_precedence():
    data = {"algebra": {"preset": "bg", "params": {"phi": "-2"}}, "workers": 1}
    merged = apply_overrides(data, {"preset": "su11", "workers": 4, "tol": 1e-12})
    assert merged["algebra"] == {"preset": "su11"}
    assert merged["workers"] == 4
    assert merged["tolerances"] == {"tail": 1e-12}
    same = apply_overrides(data, {"preset": "bg"})
    assert same["algebra"]["params"] == {"phi": "-2"}
    custom = apply_overrides({"algebra": {"f": ["0/1", "-2/1"], "w0": "1/2"}}, {"preset": "pair"})
    assert custom["algebra"] == {"preset": "pair"}


def test_sector_charges_become_preset_parameters():
    config = config_for("trilinear", sector={"h0": "5/2", "q": 1})
    assert config.preset_params() == {"h0": Fraction(5, 2), "q": 1}


def test_derive_su11():
    report = run_job("derive", config_for("su11"))
    assert report["g"] == ["0/1", "-1/1", "-1/1"]
    assert report["degrees"] == {"f": 1, "g": 2}
    assert report["telescopes"] is True
    assert report["casimir"] == [{"weight": "1/4", "C": "3/16"}]


def test_derive_custom_polynomial():
    config, errors = parse_config({"algebra": {"f": [0, 0, 0, -4], "w0": "1/2"}, "weights": ["1/2", 2]})
    assert errors == {}
    report = run_job("derive", config)
    assert report["algebra"] == "custom"
    assert report["g"] == ["0/1", "0/1", "-1/1", "-2/1", "-1/1"]
    assert [entry["weight"] for entry in report["casimir"]] == ["1/2", "2/1"]


def test_derive_rejects_a_bad_preset_parameter():
    with pytest.raises(DomainError):
        prepare(config_for("bg", algebra={"preset": "bg", "params": {"phi": "1/2"}}))
    with pytest.raises(ConfigError):
        prepare(config_for("pair", algebra={"preset": "pair", "params": {"q": "1/2"}}))


def test_rep_of_spin_one(tmp_path):
    out = tmp_path / "rep"
    report = run_job("rep", config_for("su2", out=str(out)))
    assert report["dimension"] == 3
    assert report["finite"] is True
    assert report["commutator_residual"] < 1e-12
    assert report["undeformed_map"]["epsilon_const"] == 2
    assert report["undeformed_map"]["residual"] < 1e-12
    assert report["files"] == ["module.json", "n0.csv", "nplus.csv", "nminus.csv"]
    module = json.loads((out / "module.json").read_text())
    assert module["s"] == ["0/1", "2/1", "2/1", "0/1"]
    assert len((out / "nplus.csv").read_text().splitlines()) == 3


def test_vacua_of_the_quadratic_algebra():
    report = run_job("vacua", config_for("quadratic"))
    weights = [entry["weight"] for entry in report["candidates"]]
    assert weights == [-2, -1, 0]
    assert [entry["delta"] for entry in report["candidates"]] == [3, 2, 1]
    assert report["conjugate"]["delta"] == "1/1"
    assert report["conjugate"]["residual"] < 1e-10
    assert report["conjugate"]["dual_vacua"] == 1


def test_vacua_of_the_trilinear_ladder_match_the_quadratic_preset():
    trilinear = run_job("vacua", config_for("trilinear"))
    quadratic = run_job("vacua", config_for("quadratic"))
    weights = [entry["weight"] for entry in trilinear["candidates"]]
    assert 0 in weights
    assert weights == [entry["weight"] for entry in quadratic["candidates"]]
    assert trilinear["C"] == quadratic["C"] == 6
    assert prepare(config_for("trilinear")).build.module.s[1] == 6


def test_vacua_of_a_finite_module():
    report = run_job("vacua", config_for("su2"))
    assert report["conjugate"]["error"] == "pole_on_spectrum"


def test_cs_keeps_grid_order(tmp_path):
    grid = [[0.5, 0.0], [0.0, 1.0], [2.0, -1.0], 0.1]
    config = config_for("bg", grid=grid, workers=3, out=str(tmp_path))
    report = run_job("cs", config)
    assert [p["parameter"] for p in report["points"]] == [[0.5, 0.0], [0.0, 1.0], [2.0, -1.0], [0.1, 0.0]]
    assert all(abs(p["norm_sq"] - 1.0) < 1e-12 for p in report["points"])
    assert all(p["eigen_residual"] < 1e-10 for p in report["points"])
    assert report["files"] == ["cs_000.csv", "cs_001.csv", "cs_002.csv", "cs_003.csv", "summary.json"]
    header = (tmp_path / "cs_002.csv").read_text().splitlines()[0]
    assert header == "n,re,im,probability"


def test_cs_at_the_origin_is_one_row(tmp_path):
    run_job("cs", config_for("bg", grid=[0], out=str(tmp_path)))
    assert (tmp_path / "cs_000.csv").read_text().splitlines() == ["n,re,im,probability", "0,1,0,1"]


def test_cs_on_finite_module_fails():
    with pytest.raises(PoleOnSpectrum, match="no canonical conjugate on finite module"):
        run_job("cs", config_for("su2"))


@pytest.mark.parametrize("preset", ["bg", "quadratic", "higgs"])
def test_cs_reports_the_series_norm(preset):
    report = run_job("cs", config_for(preset, grid=[[0.8, -0.6]]))
    point = report["points"][0]
    assert point["series_norm_sq"] == pytest.approx(point["raw_norm_sq"], rel=1e-10)


def test_series_norm_is_only_reported_for_the_annihilation_family():
    report = run_job("cs", config_for("bg", family="exponential", grid=[0.5]))
    assert report["points"][0]["series_norm_sq"] is None


def test_exponential_family_reports_divergence():
    report = run_job("cs", config_for("bg", family="exponential", grid=[0.5, 1.0]))
    inside, edge = report["points"]
    assert inside["normalizable"] is True
    assert edge["normalizable"] is False
    assert edge["tail_bound"] is None


def test_displacement_family_is_unitary_on_bg():
    report = run_job("cs", config_for("bg", family="displacement", grid=[[0.3, 0.1]]))
    assert report["points"][0]["unitary"] is True
    assert report["points"][0]["norm_sq"] == pytest.approx(1.0)


def test_displacement_job_grows_past_the_initial_cutoff():
    report = run_job("cs", config_for("bg", family="displacement", grid=[[1.5, 0.0]]))
    point = report["points"][0]
    assert point["cutoff"] > 64
    assert point["tail_bound"] <= 1e-14
    assert point["norm_sq"] == pytest.approx(1.0)


def test_displacement_job_respects_max_dim():
    config = config_for("bg", family="displacement", grid=[[1.5, 0.0]], cutoff={"initial": 16, "max_dim": 32})
    with pytest.raises(CutoffExceeded):
        run_job("cs", config)


def test_moments_against_the_density(tmp_path):
    report = run_job("moments", config_for("bg", n_max=3, out=str(tmp_path)))
    assert report["density"] is True
    assert report["max_relative_error"] < 1e-6
    assert [row[1] for row in report["rows"]] == ["1/1", "2/1", "12/1", "144/1"]
    assert (tmp_path / "moments.csv").exists()


def test_moments_without_a_density():
    report = run_job("moments", config_for("quadratic", n_max=4))
    assert report["density"] is False
    assert report["max_relative_error"] is None
    assert any("Meijer-G" in note for note in report["notes"])
    assert [row[1] for row in report["rows"]] == ["1/1", "6/1", "144/1", "8640/1", "1036800/1"]


def test_realization_check_pair():
    report = run_job("realization-check", config_for("pair", grid=[0.5, [0.2, 0.4]]))
    assert report["realization"] == "pair"
    assert report["conservation"]["conserved"] is True
    assert report["matches"] is True
    assert report["closure"] == ["0/1", "-2/1"]
    assert report["vacua"][0]["weight"] == Fraction(1, 2)
    assert report["chains"] == {"chain_count": 1, "longest_chain": 13, "states": 13}
    assert all(entry["fidelity"] >= 1 - 1e-12 for entry in report["oracle"])


def test_realization_check_trilinear_sector():
    report = run_job("realization-check", config_for("trilinear", sector={"h0": "5/2", "q": 1}))
    assert report["sector"] == {"h0": "5/2", "q": "1/1"}
    assert report["matches"] is True
    assert len(report["vacua"]) == 1
    assert report["vacua"][0]["weight"] == Fraction(-5, 2)


def test_realization_check_needs_a_realization():
    with pytest.raises(DomainError):
        run_job("realization-check", config_for("quadratic"))


def test_fitted_presets_are_finite():
    job = prepare(config_for("dicke"))
    assert job.build.module.s == (0, 8, 6, 0)
    assert job.b_sign == -1
    assert job.epsilon_const == Fraction(35, 4)
    with pytest.raises(ConfigError):
        prepare(config_for("multiphoton", vacuum=5))


def test_unknown_command():
    with pytest.raises(KeyError):
        run_job("plot", config_for("su11"))


def test_verify_passes_on_every_preset():
    report = run_verify()
    assert report["failed"] == []
    assert report["passed"] is True
    names = {check["name"] for check in report["checks"]}
    assert {"su11.moments", "bg.realization", "su2.conjugate", "dicke.undeformed_map"} <= names
    assert "su2.annihilation" not in names


@pytest.mark.parametrize("corruption, check", [("ladder", "su11.commutator"), ("casimir", "bg.telescope")])
def test_verify_detects_corruption(corruption, check):
    report = run_verify(corruption=corruption)
    assert report["passed"] is False
    assert check in report["failed"]
    assert report["corruption"] == corruption


def test_verify_single_config():
    report = run_verify(config_for("oscillator"))
    assert report["passed"]
    assert {check["name"] for check in report["checks"]} >= {"oscillator.moments", "oscillator.annihilation"}


def test_unknown_corruption():
    assert set(CORRUPTIONS) == {"ladder", "casimir"}
    with pytest.raises(ConfigError):
        run_verify(corruption="entropy")
