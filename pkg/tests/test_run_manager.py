import pytest

from core.config import AsmcParams, CompareConfig, ProposedParams
from core.controller_registry import ControllerRegistry
from core.errors import ConfigError
from core.run_manager import RunManager


@pytest.fixture
def manager(container):
    registry = ControllerRegistry()
    registry.discover_controllers("controllers")
    return RunManager(registry, container)


async def test_run_returns_trace_and_metrics(manager, make_scenario):
    result = await manager.run(make_scenario(duration=0.2))
    assert result.ok
    assert result.label == "proposed"
    assert len(result.trace) == 201
    assert result.metrics.samples == 201
    assert result.violations == []


async def test_run_reports_instability_as_partial_result(manager, make_scenario):
    result = await manager.run(make_scenario(ProposedParams(gamma=1e6), dt=0.01, duration=5.0))
    assert not result.ok
    assert result.error_kind == "instability"
    assert result.trace is not None and len(result.trace) > 0
    assert result.metrics.unstable


async def test_run_variants_keeps_order_and_contains_failures(manager):
    cfg = CompareConfig(
        name="cmp",
        dt=0.01,
        duration=5.0,
        variants=[AsmcParams(), ProposedParams(label="unstable", gamma=1e6), ProposedParams(label="fine")],
    )
    results = await manager.run_variants(cfg)
    assert list(results) == ["asmc", "unstable", "fine"]
    assert not results["unstable"].ok
    assert results["unstable"].error_kind == "instability"
    assert not manager.is_running("fine")


async def test_unknown_controller_fails_the_variant_only(container):
    empty = RunManager(ControllerRegistry(), container)
    cfg = CompareConfig(dt=0.01, duration=1.0, variants=[AsmcParams(), ProposedParams()])
    results = await empty.run_variants(cfg)
    assert all(not r.ok for r in results.values())
    assert results["asmc"].error_kind == "ConfigError"


async def test_single_run_propagates_config_errors(container, make_scenario):
    with pytest.raises(ConfigError):
        await RunManager(ControllerRegistry(), container).run(make_scenario())
