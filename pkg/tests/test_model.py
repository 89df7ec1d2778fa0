"""Parameter containers, derived coherence rates, config parsing, units."""

from __future__ import annotations

import math

import pytest

from vitkerr.errors import ConfigError
from vitkerr.model import (DisorderSpec, FieldParams, GridSpec, OutputSpec,
                           PlotSpec, PrimitiveRates, RunConfig,
                           config_from_dict, config_from_file,
                           effective_detunings, mev_to_thz, thz_to_mev)


def test_derived_rates_default_set():
    r = PrimitiveRates().derived()
    assert r.gamma31_c == pytest.approx(0.5)
    assert r.gamma21_c == pytest.approx(0.01005)
    assert r.gamma32_c == pytest.approx(0.50005)
    assert r.gamma43_c == pytest.approx(5.00005)
    assert r.gamma42_c == pytest.approx(5.0001)
    assert r.gamma41_c == pytest.approx(5.00005)


def test_derived_rates_track_each_primitive():
    r = PrimitiveRates(kappa=2.0, gamma_pd=0.0, gamma_ivr=0.0,
                       gamma_31=0.0, gamma_32=0.0).derived()
    assert r.gamma21_c == 1.0   # kappa/2 alone
    assert r.gamma31_c == 0.0
    assert r.gamma32_c == 1.0
    assert r.gamma43_c == 1.0
    assert r.gamma42_c == 2.0

    zero = PrimitiveRates(kappa=0.0, gamma_pd=0.0, gamma_ivr=0.0,
                          gamma_31=0.0, gamma_32=0.0).derived()
    assert (zero.gamma31_c, zero.gamma21_c, zero.gamma32_c,
            zero.gamma43_c, zero.gamma42_c, zero.gamma41_c) == (0,) * 6


def test_derived_rates_narrow_raman_set():
    # slow-dephasing point used by the cross-phase sweeps
    r = PrimitiveRates(kappa=1e-4, gamma_pd=0.00195, gamma_ivr=2.0).derived()
    assert r.gamma21_c == pytest.approx(0.002)
    assert r.gamma41_c == pytest.approx(1.00005)
    assert r.gamma42_c == pytest.approx(1.0001)


def test_effective_detunings():
    d21, d41 = effective_detunings(
        FieldParams(delta_p=0.5, delta_c=0.0, delta_s=10.0))
    assert (d21, d41) == (0.5, 10.5)

    d21, d41 = effective_detunings(
        FieldParams(delta_p=1.0, delta_c=0.3, delta_s=-2.0))
    assert d21 == pytest.approx(0.7)
    assert d41 == pytest.approx(-1.3)


def test_collective_coupling_scales_with_sqrt_n():
    f = FieldParams(omega_c_rabi=0.6, n_molecules=4)
    assert f.omega_c_collective == pytest.approx(1.2)
    assert FieldParams(omega_c_rabi=0.6).omega_c_collective == \
        pytest.approx(0.6)


def test_unit_conversions():
    assert thz_to_mev(1.0) == pytest.approx(4.135667696)
    assert mev_to_thz(thz_to_mev(3.7)) == pytest.approx(3.7, rel=1e-14)
    # coupling threshold 4*sqrt(50) THz sits just below 117 meV
    assert thz_to_mev(4.0 * math.sqrt(50.0)) == pytest.approx(116.97,
                                                              abs=0.01)


def test_disorder_spec_rejects_bad_values():
    with pytest.raises(ConfigError):
        DisorderSpec(family="boxcar")
    with pytest.raises(ConfigError):
        DisorderSpec(correlation_mode="anti")
    with pytest.raises(ConfigError):
        DisorderSpec(quadrature_nodes=100)
    with pytest.raises(ConfigError):
        DisorderSpec(quadrature_nodes=1)
    with pytest.raises(ConfigError):
        DisorderSpec(n_samples=0)


def test_grid_output_plot_validation():
    with pytest.raises(ConfigError):
        GridSpec(n_points=1)
    with pytest.raises(ConfigError):
        GridSpec(x_min=1.0, x_max=1.0)
    with pytest.raises(ConfigError):
        OutputSpec(format="parquet")
    with pytest.raises(ConfigError):
        PlotSpec(kind="png")
    with pytest.raises(ConfigError):
        RunConfig(workers=0)
    with pytest.raises(ConfigError):
        RunConfig(plot_component="abs")


def test_config_rejects_unknown_keys_at_every_level():
    with pytest.raises(ConfigError, match="disordr"):
        config_from_dict({"disordr": {}})
    with pytest.raises(ConfigError, match="params.rates"):
        config_from_dict({"params": {"rates": {"kapa": 1.0}}})
    with pytest.raises(ConfigError, match="params"):
        config_from_dict({"params": {"laser": {}}})
    with pytest.raises(ConfigError, match="grid"):
        config_from_dict({"grid": {"x_mni": 0.0}})
    with pytest.raises(ConfigError, match="disorder"):
        config_from_dict({"disorder": {"sigma5": 1.0}})


def test_config_round_trips_through_dict():
    cfg = config_from_dict({
        "params": {"fields": {"omega_c_rabi": 0.8},
                   "rates": {"gamma_pd": 0.002}},
        "disorder": {"family": "gaussian", "sigma3": 5.0, "seed": 7},
        "grid": {"x_min": -1.0, "x_max": 1.0, "n_points": 11},
    })
    again = config_from_dict(cfg.to_dict())
    assert again.to_dict() == cfg.to_dict()
    assert again.disorder.seed == 7
    assert again.params.fields.omega_c_rabi == 0.8


def test_config_from_file_errors(tmp_path):
    missing = tmp_path / "nope.json"
    with pytest.raises(ConfigError):
        config_from_file(str(missing))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        config_from_file(str(bad))
