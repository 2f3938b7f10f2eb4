import math

import numpy as np
import pytest

from core.config import ArtdcParams, AsmcParams, NominalModel, PlantParams, ProposedParams
from core.controller import StepContext
from core.errors import ConfigError, ModelAssumptionError
from core.simulation import Trace
from controllers.artdc import ArtdcController
from controllers.asmc import AsmcController
from controllers.proposed import ProposedController
from services.plant_service import PlantServiceImpl
from utils.control_laws import GAIN_CEILING, ArtdcGains
from utils.sbw_plant import SimState

PLANT = PlantParams()
NOMINAL = NominalModel.default_for(PLANT)


def ctx(e=0.0, e_dot=0.0, theta_dot=0.0, theta_d_ddot=0.0):
    state = SimState(0.0, e, theta_dot)
    return StepContext(0.0, state, 0.0, 0.0, theta_d_ddot, e, e_dot, math.hypot(e, e_dot))


def artdc(**params):
    controller = ArtdcController(PlantServiceImpl())
    controller.configure(ArtdcParams(**params), PLANT, NOMINAL)
    return controller


def trace_with_gains(labels, rows):
    trace = Trace(len(rows), labels)
    for i, gains in enumerate(rows):
        trace.append((0.1 * i, 0, 0, 0, 0, 0, 0, 0, *gains))
    return trace


def test_proposed_controller_gains_stay_non_negative():
    controller = ProposedController()
    controller.configure(ProposedParams(k0_init=0.001, k1_init=0.001), PLANT, NOMINAL)
    gains = controller.initial_gains()
    # Zero error: both laws leak toward zero and are clamped there
    for _ in range(100):
        gains, hit = controller.advance_gains(ctx(), gains, 1000.0)
        assert not hit
    assert controller.gain_values(gains) == (0.0, 0.0)


def test_proposed_controller_rejects_foreign_params():
    with pytest.raises(ConfigError):
        ProposedController().configure(AsmcParams(), PLANT, NOMINAL)


def test_asmc_controller_grows_outside_layer():
    controller = AsmcController()
    controller.configure(AsmcParams(), PLANT, NOMINAL)
    gains = controller.initial_gains()
    # r = 1.0 with lam = 100
    new, _ = controller.advance_gains(ctx(e=0.01), gains, 0.1)
    assert new.K == pytest.approx(0.001 + 0.1 * 0.01)
    new, _ = controller.advance_gains(ctx(e=0.01), type(gains)(1.0), 0.1)
    assert new.K == pytest.approx(1.0 + 0.1 * 1.0)
    assert controller.torque(ctx(e=0.01), new) == pytest.approx(-new.K)


def test_artdc_design_from_lyapunov_solve():
    controller = artdc()
    assert controller.pair.P2 == pytest.approx(0.5)
    assert controller.pair.P3 == pytest.approx(1.0)
    assert controller.gain_labels == ["gamma_hat_0", "gamma_hat_1", "gamma_hat_2", "beta", "rho"]


def test_artdc_rejects_bad_nominal_model():
    controller = ArtdcController(PlantServiceImpl())
    with pytest.raises(ModelAssumptionError):
        controller.configure(ArtdcParams(), PLANT, NominalModel(J_hat=0.3, B_hat=0.8))


def test_artdc_torque_uses_nominal_model():
    controller = artdc()
    gains = controller.initial_gains()
    c = ctx(e=0.3, theta_dot=0.2)
    f_hat = -0.8 * 0.2 / NOMINAL.J_hat
    zeta = (3.0 + 3.0 + 3.0 * 0.3 + 2.8 + 2.8) / 0.5
    expected = (0.0 - zeta - f_hat) * NOMINAL.J_hat
    assert controller.torque(c, gains) == pytest.approx(expected)


def test_artdc_gains_never_cross_floors():
    controller = artdc()
    p = ArtdcParams()
    gains = controller.initial_gains()
    for k in range(2000):
        e = 0.5 * math.exp(-0.01 * k)
        gains, _ = controller.advance_gains(ctx(e=e, e_dot=-0.005 * e), gains, 0.01)
        assert all(g >= f for g, f in zip(gains.gammas, p.gamma_floor))
        assert p.beta_floor <= gains.beta <= p.beta_init
        assert p.rho_floor <= gains.rho <= p.rho_init


def test_artdc_first_step_counts_as_converging():
    controller = artdc()
    gains = controller.initial_gains()
    assert gains.s_prev is None
    assert controller.diagnose(ctx(e=0.3), gains) == "ii"
    new, _ = controller.advance_gains(ctx(e=0.3), gains, 0.01)
    assert new.s_prev == pytest.approx(0.15)
    assert new.gamma_hat_0 < gains.gamma_hat_0


def test_artdc_constant_bound_variant():
    controller = artdc(variant="constant_bound")
    gains = controller.initial_gains()
    assert controller.gain_values(gains) == (3.0, 0.0, 0.0, 0.0, 0.0)
    for _ in range(50):
        gains, _ = controller.advance_gains(ctx(e=0.3), gains, 0.01)
    assert gains.gamma_hat_1 == gains.gamma_hat_2 == gains.beta == gains.rho == 0.0


def test_artdc_ceiling_is_reported():
    controller = artdc()
    gains = ArtdcGains(GAIN_CEILING, 3.0, 3.0, 2.8, 2.8, s_prev=0.1)
    new, hit = controller.advance_gains(ctx(e=1.0), gains, 1.0)
    assert hit
    assert new.gamma_hat_0 == GAIN_CEILING


def test_invariant_checks_on_traces():
    controller = artdc()
    labels = controller.gain_labels
    good = trace_with_gains(labels, [(3.0, 3.0, 3.0, 2.8, 2.8), (0.001, 1.0, 1.0, 0.05, 0.05)])
    assert controller.check_invariants(good) == []
    bad = trace_with_gains(labels, [(3.0, 3.0, 3.0, 2.9, 2.8), (0.0, 1.0, 1.0, 0.05, 0.01)])
    violations = controller.check_invariants(bad)
    assert any(v.startswith("gamma_hat_0") for v in violations)
    assert any(v.startswith("beta") for v in violations)
    assert any(v.startswith("rho") for v in violations)

    proposed = ProposedController()
    assert proposed.check_invariants(trace_with_gains(proposed.gain_labels, [(0.0, 1.0)])) == []
    assert len(proposed.check_invariants(trace_with_gains(proposed.gain_labels, [(-1.0, 1.0)]))) == 1
    asmc = AsmcController()
    assert asmc.check_invariants(trace_with_gains(asmc.gain_labels, [(-1.0,)])) == ["K < 0 at 1 samples"]
