"""Named parameter bundles for the scenarios shipped with the CLI.

Each builder returns (RunConfig, meta).  meta["command"] names the
subcommand the bundle is meant for; meta may also request a Monte Carlo
overlay on top of an analytic spectrum (sparser grid, finite samples)
so the two engines can be compared point by point.
"""

from __future__ import annotations

from .model import (
    DisorderSpec,
    FieldParams,
    GridSpec,
    OutputSpec,
    PrimitiveRates,
    RunConfig,
    SystemParams,
)

# picosecond-scale switching network: slow cavity leak, slow cis-trans
# dephasing, fast internal vibrational relaxation (all in units of the
# S1 population decay)
_SLOW_DEPHASING = PrimitiveRates(kappa=1e-4, gamma_pd=0.01, gamma_ivr=10.0,
                                 gamma_31=0.5, gamma_32=0.5)
# variant tuned for cross-phase studies: gamma21 = 0.002, gamma41 ~ 1
_KERR_RATES = PrimitiveRates(kappa=1e-4, gamma_pd=0.00195, gamma_ivr=2.0,
                             gamma_31=0.5, gamma_32=0.5)


def _out(name: str) -> OutputSpec:
    return OutputSpec(format="csv", path=f"{name}.csv")


def _vit_fields(omega_c: float) -> FieldParams:
    return FieldParams(omega_p_rabi=1e-3, omega_s_rabi=0.0,
                       omega_c_rabi=omega_c, n_molecules=1,
                       delta_p=0.0, delta_c=0.0, delta_s=0.0)


def fig2a():
    """Orientation-averaged probe absorption across the transparency dip."""
    cfg = RunConfig(
        params=SystemParams(rates=_SLOW_DEPHASING, fields=_vit_fields(1.2)),
        disorder=DisorderSpec(family="orientational"),
        grid=GridSpec(x_min=-4.0, x_max=4.0, n_points=1601),
        output=_out("fig2a"),
        plot_component="im",
    )
    return cfg, {"command": "spectrum"}


def fig2b():
    """Orientation-averaged probe dispersion across the transparency dip."""
    cfg, meta = fig2a()
    cfg.output = _out("fig2b")
    cfg.plot_component = "re"
    return cfg, meta


def fig2c():
    """Probe absorption under broad correlated Gaussian energy disorder."""
    cfg = RunConfig(
        params=SystemParams(rates=_SLOW_DEPHASING, fields=_vit_fields(1.2)),
        disorder=DisorderSpec(family="gaussian", sigma3=6.0, sigma4=6.0,
                              correlation_mode="correlated",
                              quadrature_nodes=101),
        grid=GridSpec(x_min=-20.0, x_max=20.0, n_points=1601),
        output=_out("fig2c"),
        plot_component="im",
    )
    return cfg, {"command": "spectrum"}


def fig2d():
    """Probe dispersion under broad correlated Gaussian energy disorder."""
    cfg, meta = fig2c()
    cfg.output = _out("fig2d")
    cfg.plot_component = "re"
    return cfg, meta


def fig_a1a():
    """Orientational average, closed form versus Monte Carlo draws."""
    cfg = RunConfig(
        params=SystemParams(rates=_SLOW_DEPHASING, fields=_vit_fields(1.2)),
        disorder=DisorderSpec(family="orientational", n_samples=20_000),
        grid=GridSpec(x_min=-4.0, x_max=4.0, n_points=801),
        output=_out("figA1a"),
        plot_component="im",
    )
    return cfg, {"command": "spectrum", "mc_overlay": {"stride": 8}}


def fig_a1b():
    """Transparency linewidth versus vacuum coupling, homogeneous and
    orientation-averaged."""
    cfg = RunConfig(
        params=SystemParams(rates=_SLOW_DEPHASING, fields=_vit_fields(1.2)),
        disorder=DisorderSpec(family="orientational"),
        grid=GridSpec(x_min=-6.5, x_max=6.5, n_points=12_001),
        output=_out("figA1b"),
        omega0_scan={"min": 0.5, "max": 2.0, "n": 16},
    )
    return cfg, {"command": "linewidth"}


def _kerr_base(name: str) -> RunConfig:
    return RunConfig(
        params=SystemParams(rates=_KERR_RATES, fields=_vit_fields(0.8)),
        disorder=DisorderSpec(family="gaussian", sigma3=5.0, sigma4=5.0,
                              correlation_mode="correlated",
                              quadrature_nodes=101),
        grid=GridSpec(x_min=-0.1, x_max=0.1, n_points=801),
        output=_out(name),
    )


def fig3a():
    """Cross-phase merit profiles at a few signal dressing strengths,
    Gaussian disorder versus the width-matched Lorentzian."""
    cfg = _kerr_base("fig3a")
    cfg.lambda_s_list = [0.0, 0.5, 1.0]
    return cfg, {"command": "merit"}


def fig3b():
    """Peak cross-phase merit versus signal dressing strength."""
    cfg = _kerr_base("fig3b")
    cfg.lambda_s_scan = {"min": 1e-4, "max": 1.0, "n": 25}
    return cfg, {"command": "merit-scan"}


RECIPES = {
    "fig2a": fig2a,
    "fig2b": fig2b,
    "fig2c": fig2c,
    "fig2d": fig2d,
    "figA1a": fig_a1a,
    "figA1b": fig_a1b,
    "fig3a": fig3a,
    "fig3b": fig3b,
}


def resolve_recipe(name: str):
    from .errors import ConfigError

    try:
        builder = RECIPES[name]
    except KeyError:
        known = ", ".join(sorted(RECIPES))
        raise ConfigError(f"unknown recipe {name!r}; known recipes: {known}")
    return builder()
