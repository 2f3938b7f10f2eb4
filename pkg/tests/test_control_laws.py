import pytest

from core.config import ArtdcParams, ProposedParams
from utils.control_laws import (
    GAIN_CEILING,
    ArtdcGains,
    ProposedGains,
    artdc_control,
    artdc_gain_rates,
    artdc_zeta,
    asmc_control,
    asmc_gain_rate,
    clamp_gain,
    classify_artdc_case,
    filtered_error,
    proposed_control,
    proposed_gain_rates,
    sat,
    sdot_sign,
    sgn,
    switching_variable,
)


def test_sgn_and_sat():
    assert (sgn(-3.0), sgn(0.0), sgn(2.0)) == (-1.0, 0.0, 1.0)
    assert sat(0.05, 0.1) == pytest.approx(0.5)
    assert sat(-0.1, 0.1) == -1.0
    assert sat(7.0, 0.1) == 1.0


def test_clamp_gain():
    assert clamp_gain(0.5, 0.1) == (0.5, False)
    assert clamp_gain(0.01, 0.1) == (0.1, False)
    assert clamp_gain(2e9, 0.1) == (GAIN_CEILING, True)


def test_proposed_control_outside_boundary_layer():
    p = ProposedParams()
    g = ProposedGains(0.5, 0.25)
    e, e_dot = 0.01, 0.2
    r = filtered_error(e, e_dot, p.lam)
    assert r == pytest.approx(1.2)
    xi = 0.3
    expected = -20.0 * 1.2 - 0.01 - (0.5 + 0.25 * xi)
    assert proposed_control(e, e_dot, xi, g, p) == pytest.approx(expected)


def test_proposed_control_inside_boundary_layer_is_continuous():
    p = ProposedParams()
    g = ProposedGains(1.0, 0.0)
    r = 0.05
    expected = -20.0 * r - 0.0 - 1.0 * (r / 0.1)
    assert proposed_control(0.0, r, 0.05, g, p) == pytest.approx(expected)


def test_proposed_gain_rates_leak():
    p = ProposedParams()
    d0, d1 = proposed_gain_rates(-2.0, 3.0, ProposedGains(1.0, 2.0), p)
    assert d0 == pytest.approx(2.0 - 0.1)
    assert d1 == pytest.approx(6.0 - 0.2)


def test_asmc():
    assert asmc_control(1.0, 2.0, 0.1) == -2.0
    assert asmc_gain_rate(0.5, 1.0, 1.0, 0.01, 0.1) == pytest.approx(0.5)
    assert asmc_gain_rate(0.05, 1.0, 1.0, 0.01, 0.1) == pytest.approx(-0.05)
    assert asmc_gain_rate(0.05, 0.001, 1.0, 0.01, 0.1) == 0.01


def test_switching_variable_and_sdot_sign():
    assert switching_variable(0.2, 0.3, 0.5, 1.0) == pytest.approx(0.4)
    assert sdot_sign(0.4, None) == -1.0
    assert sdot_sign(0.4, 0.3) == 1.0
    assert sdot_sign(0.4, 0.5) == -1.0
    assert sdot_sign(-0.4, -0.3) == 1.0


def test_artdc_zeta_variants():
    g = ArtdcGains(3.0, 3.0, 3.0, 2.8, 2.8)
    full = ArtdcParams()
    assert artdc_zeta(2.0, g, full) == pytest.approx((3.0 + 3.0 + 6.0 + 5.6) / 0.5)
    cb = ArtdcParams(variant="constant_bound")
    assert artdc_zeta(2.0, ArtdcGains(3.0, 0.0, 0.0, 0.0, 0.0), cb) == pytest.approx(6.0)


def test_artdc_control_outside_boundary_layer():
    p = ArtdcParams()
    g = ArtdcGains(1.0, 0.0, 0.0, 0.1, 0.1)
    e, e_dot = 0.3, 0.0
    s = switching_variable(e, e_dot, 0.5, 1.0)
    assert s == pytest.approx(0.15)
    zeta = (1.0 + 0.0 + 0.2) / 0.5
    f_hat, g_hat = -0.2, 4.0
    expected = (-0.5 - zeta + 0.2) / 4.0
    assert artdc_control(e, e_dot, -0.5, g, p, f_hat, g_hat, 0.5, 1.0) == pytest.approx(expected)


def test_artdc_control_inside_boundary_layer():
    p = ArtdcParams()
    g = ArtdcGains(1.0, 0.0, 0.0, 0.0, 0.0)
    e, e_dot = 0.0, 0.05
    zeta = 1.0 / 0.5
    u_hat = 0.0 - 0.5 * 0.05
    expected = u_hat - zeta * 0.05 / 0.1
    assert artdc_control(e, e_dot, 0.0, g, p, 0.0, 1.0, 0.5, 1.0) == pytest.approx(expected)


def test_artdc_rates_decrease_when_converging():
    p = ArtdcParams()
    g = ArtdcGains(3.0, 3.0, 3.0, 2.8, 2.8)
    d0, d1, d2, db, dr = artdc_gain_rates(0.5, 0.6, 2.0, g, p)
    assert d0 == pytest.approx(-0.82 * 0.5)
    assert d1 == pytest.approx(-0.82 * 2.0 * 0.5)
    assert d2 == pytest.approx(-0.1 * 1.0 * 8.0)
    assert db == pytest.approx(-1.0 / 2.8)
    assert dr == pytest.approx(-0.5 / 2.8)


def test_artdc_rates_increase_when_diverging():
    p = ArtdcParams()
    g = ArtdcGains(3.0, 3.0, 3.0, 2.8, 2.8)
    d0, d1, d2, _, _ = artdc_gain_rates(0.5, 0.4, 2.0, g, p)
    assert d0 == pytest.approx(0.82 * 0.5)
    assert d1 == pytest.approx(0.82 * 2.0 * 0.5)
    assert d2 == pytest.approx(1.0 * 2.0 * 0.5)


def test_artdc_rates_at_floor_recover():
    p = ArtdcParams()
    g = ArtdcGains(0.001, 3.0, 3.0, 0.05, 0.05)
    d0, d1, _, db, dr = artdc_gain_rates(0.5, 0.6, 2.0, g, p)
    assert d0 > 0
    assert d1 < 0
    assert db == pytest.approx(10.0)
    assert dr == pytest.approx(10.0 * 0.5)


def test_artdc_rates_increase_wins_while_beta_and_rho_sit_on_floor():
    p = ArtdcParams()
    g = ArtdcGains(3.0, 3.0, 3.0, 0.05, 0.05)
    d0, d1, d2, db, dr = artdc_gain_rates(0.5, 0.4, 2.0, g, p)
    assert d0 == pytest.approx(0.82 * 0.5)
    assert d1 == pytest.approx(0.82 * 2.0 * 0.5)
    assert d2 == pytest.approx(1.0 * 2.0 * 0.5)
    assert db == pytest.approx(10.0)
    assert dr == pytest.approx(10.0 * 0.5)
    assert classify_artdc_case(0.5, 0.4, g, p) == "i"


def test_artdc_rates_floor_of_beta_alone_does_not_drain_gammas():
    p = ArtdcParams()
    on_floor = ArtdcGains(3.0, 3.0, 3.0, 0.05, 2.8)
    above = ArtdcGains(3.0, 3.0, 3.0, 2.8, 2.8)
    for s, s_prev in [(0.5, 0.4), (-0.5, -0.4), (0.5, 0.6), (0.05, 0.04)]:
        assert artdc_gain_rates(s, s_prev, 2.0, on_floor, p)[:3] == pytest.approx(
            artdc_gain_rates(s, s_prev, 2.0, above, p)[:3]
        )


def test_artdc_rates_constant_bound_adapts_gamma_0_only():
    p = ArtdcParams(variant="constant_bound")
    g = ArtdcGains(3.0, 0.0, 0.0, 0.0, 0.0)
    rates = artdc_gain_rates(0.5, 0.4, 2.0, g, p)
    assert rates[0] == pytest.approx(0.82 * 0.5)
    assert rates[1:] == (0.0, 0.0, 0.0, 0.0)


def test_classify_artdc_case():
    p = ArtdcParams()
    g = ArtdcGains(3.0, 3.0, 3.0, 2.8, 2.8)
    assert classify_artdc_case(0.5, 0.4, g, p) == "i"
    assert classify_artdc_case(0.5, 0.6, g, p) == "ii"
    assert classify_artdc_case(0.05, 0.04, g, p) == "iii"
    assert classify_artdc_case(0.05, 0.06, g, p) == "iv"
    at_floor = ArtdcGains(0.001, 3.0, 3.0, 2.8, 2.8)
    assert classify_artdc_case(0.5, 0.6, at_floor, p) == "i"


def test_classify_constant_bound_ignores_unadapted_gains():
    p = ArtdcParams(variant="constant_bound")
    assert classify_artdc_case(0.5, 0.6, ArtdcGains(3.0, 0.0, 0.0, 0.0, 0.0), p) == "ii"
