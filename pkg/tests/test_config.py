from pathlib import Path

import pytest

from core.config import (
    ArtdcParams,
    AsmcParams,
    CompareConfig,
    DelayBoundConfig,
    ProposedParams,
    ScenarioConfig,
    load_config,
    load_delay_bound_config,
    parse_config,
)
from core.errors import ConfigError

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def test_defaults_reproduce_published_setup():
    cfg = ScenarioConfig()
    assert cfg.plant.J == 0.14 and cfg.plant.B == 0.8 and cfg.plant.i_rc == 8e-3
    assert cfg.dt == 1e-4 and cfg.duration == 100.0
    assert cfg.initial.theta == 0.1
    assert isinstance(cfg.controller, ProposedParams)
    assert cfg.resolved_nominal.J_hat == pytest.approx(0.21)
    assert cfg.resolved_nominal.B_hat == 0.8


def test_controller_union_discriminates_on_type():
    cfg = parse_config({"controller": {"type": "asmc", "k_bar": 2.0}}, ScenarioConfig)
    assert isinstance(cfg.controller, AsmcParams)
    assert cfg.controller.k_bar == 2.0
    assert cfg.controller.display_label == "asmc"


def test_validation_error_names_field():
    with pytest.raises(ConfigError) as info:
        parse_config({"dt": -1.0}, ScenarioConfig)
    assert "dt" in str(info.value)
    assert "dt must be positive" in str(info.value)


def test_unknown_controller_type_rejected():
    with pytest.raises(ConfigError) as info:
        parse_config({"controller": {"type": "pid"}}, ScenarioConfig)
    assert "controller" in str(info.value)


def test_unknown_key_rejected():
    with pytest.raises(ConfigError):
        parse_config({"plant": {"J": 0.14, "mass": 3.0}}, ScenarioConfig)


def test_duration_must_cover_ten_steps():
    with pytest.raises(ConfigError):
        parse_config({"dt": 0.1, "duration": 0.5}, ScenarioConfig)


def test_artdc_nominal_model_checked():
    with pytest.raises(ConfigError) as info:
        parse_config({"controller": {"type": "artdc"}, "nominal": {"J_hat": 0.3, "B_hat": 0.8}}, ScenarioConfig)
    assert "g_bar" in str(info.value)
    # The same nominal model is irrelevant to the other controllers
    parse_config({"controller": {"type": "asmc"}, "nominal": {"J_hat": 0.3, "B_hat": 0.8}}, ScenarioConfig)


def test_artdc_initial_gains_above_floors():
    with pytest.raises(ValueError):
        ArtdcParams(beta_init=0.01)
    with pytest.raises(ValueError):
        ArtdcParams(gamma_init=(3.0, 0.0005, 3.0))
    ArtdcParams(variant="constant_bound", beta_init=0.0, rho_init=0.0)


def test_artdc_g_bar_must_be_below_one():
    with pytest.raises(ValueError):
        ArtdcParams(g_bar=1.0)


def test_compare_requires_two_unique_variants():
    with pytest.raises(ConfigError):
        parse_config({"variants": [{"type": "asmc"}]}, CompareConfig)
    with pytest.raises(ConfigError) as info:
        parse_config({"variants": [{"type": "proposed"}, {"type": "proposed"}]}, CompareConfig)
    assert "unique" in str(info.value)
    with pytest.raises(ConfigError):
        parse_config({"variants": [{"type": "proposed"}, {"type": "asmc"}], "baseline": "pid"}, CompareConfig)


def test_compare_scenario_for_variant():
    cfg = parse_config(
        {"name": "cmp", "dt": 0.001, "variants": [{"type": "asmc"}, {"type": "proposed", "label": "p50", "lam": 50}]},
        CompareConfig,
    )
    assert cfg.baseline_label == "asmc"
    scenario = cfg.scenario_for(cfg.variants[1], duration=2.0)
    assert scenario.name == "cmp/p50"
    assert scenario.dt == 0.001 and scenario.duration == 2.0
    assert scenario.controller.lam == 50


def test_config_is_frozen():
    cfg = ScenarioConfig()
    with pytest.raises(Exception):
        cfg.dt = 0.5


def test_load_config_reports_json_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dt": 0.1,\n "duration": }', encoding="utf-8")
    with pytest.raises(ConfigError) as info:
        load_config(path, ScenarioConfig)
    assert "line 2" in str(info.value)


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.json", ScenarioConfig)


def test_load_config_rejects_non_object(write_config):
    with pytest.raises(ConfigError):
        load_config(write_config([1, 2]), ScenarioConfig)


def test_delay_bound_section(write_config):
    path = write_config({"delay_bound": {"K": 2.0, "omega": 0.25, "Q": [[1.0, 0.0], [0.0, 0.5]], "eta": 0.5}})
    cfg = load_delay_bound_config(path)
    assert cfg == DelayBoundConfig(K=2.0, omega=0.25, Q=((1.0, 0.0), (0.0, 0.5)), eta=0.5)
    assert cfg.razumikhin_r == 1.01


def test_delay_bound_falls_back_to_artdc_variant(write_config):
    path = write_config({"variants": [{"type": "asmc"}, {"type": "artdc", "K": 3.0, "omega": 0.2}]})
    cfg = load_delay_bound_config(path)
    assert (cfg.K, cfg.omega) == (3.0, 0.2)


def test_delay_bound_needs_a_source(write_config):
    with pytest.raises(ConfigError):
        load_delay_bound_config(write_config({"controller": {"type": "asmc"}}))


@pytest.mark.parametrize("name", ["adaptive_vs_asmc.json", "artdc_delay.json"])
def test_shipped_comparison_configs_validate(name):
    cfg = load_config(CONFIGS / name, CompareConfig)
    assert len(cfg.variants) >= 2


def test_shipped_scenario_config_validates():
    cfg = load_config(CONFIGS / "proposed.json", ScenarioConfig)
    assert cfg.controller.type == "proposed"
    assert load_delay_bound_config(CONFIGS / "artdc_delay.json").eta == 0.7


def test_components_set_lumped_plant():
    cfg = parse_config(
        {"plant": {"c_f": 0.3}, "components": {"J_c": 0.05, "J_m": 0.02, "i_gc": 2.0, "B_c": 0.5, "i_rc": 0.01}},
        ScenarioConfig,
    )
    assert cfg.plant.J == pytest.approx(0.13)
    assert cfg.plant.B == pytest.approx(0.5)
    assert cfg.plant.i_rc == 0.01
    assert cfg.plant.c_f == 0.3
    assert cfg.resolved_nominal.J_hat == pytest.approx(1.5 * 0.13)

    variant = CompareConfig(
        components={"J_c": 0.05, "J_m": 0.02, "i_gc": 2.0}, variants=[AsmcParams(), ProposedParams()]
    ).scenario_for(AsmcParams())
    assert variant.plant.J == pytest.approx(0.13)


def test_components_validation_names_field():
    with pytest.raises(ConfigError) as info:
        parse_config({"components": {"J_c": -1.0}}, ScenarioConfig)
    assert "J_c" in str(info.value)
