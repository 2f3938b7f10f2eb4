"""Shared fixtures: default parameters, short scenarios and a wired container."""

import json

import pytest

from core.config import ArtdcParams, AsmcParams, PlantParams, ProposedParams, ScenarioConfig
from core.container import Container
from core.services import PlantService, ReportService
from services.plant_service import PlantServiceImpl
from services.report_service import ReportServiceImpl


@pytest.fixture
def plant() -> PlantParams:
    return PlantParams()


@pytest.fixture
def container() -> Container:
    c = Container()
    c.register(PlantService, PlantServiceImpl())
    c.register(ReportService, ReportServiceImpl())
    return c


def short_scenario(controller=None, **overrides) -> ScenarioConfig:
    """Coarse, short scenario that keeps the suite fast."""
    fields = {"name": "short", "dt": 1e-3, "duration": 1.0}
    fields.update(overrides)
    return ScenarioConfig(controller=controller or ProposedParams(), **fields)


@pytest.fixture
def make_scenario():
    return short_scenario


@pytest.fixture(params=["proposed", "asmc", "artdc"])
def any_params(request):
    return {"proposed": ProposedParams(), "asmc": AsmcParams(), "artdc": ArtdcParams()}[request.param]


@pytest.fixture
def write_config(tmp_path):
    """Write a dict as a JSON config file and return its path."""

    def _write(data, name="scenario.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return _write
