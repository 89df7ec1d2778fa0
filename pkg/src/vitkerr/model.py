"""Parameter containers and configuration parsing.

All rates, detunings and Rabi frequencies are expressed in units of the
homogeneous probe absorption linewidth gamma = Gamma_31 + Gamma_32, which is
set to 1 by the default rate choices.  Susceptibilities are reported as
chi / |K| so the oscillator-strength scale K only fixes the overall sign.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict

from .errors import ConfigError

# Planck constant in meV per THz, for converting gamma-unit thresholds
# quoted in frequency into energy.
PLANCK_MEV_PER_THZ = 4.135667696


def thz_to_mev(value_thz: float) -> float:
    """Convert a frequency in THz to an energy in meV."""
    return value_thz * PLANCK_MEV_PER_THZ


def mev_to_thz(value_mev: float) -> float:
    """Convert an energy in meV to a frequency in THz."""
    return value_mev / PLANCK_MEV_PER_THZ


@dataclass(frozen=True)
class PrimitiveRates:
    """Microscopic decay and dephasing rates, units of gamma."""

    kappa: float = 1e-4        # cavity photon loss
    gamma_pd: float = 0.01     # pure dephasing between the two isomer grounds
    gamma_ivr: float = 10.0    # intramolecular vibrational relaxation of |4>
    gamma_31: float = 0.5      # radiative/non-radiative decay |3> -> |1>
    gamma_32: float = 0.5      # decay |3> -> |2>

    def derived(self) -> "DerivedRates":
        """Coherence decay rates of the six slowly-varying amplitudes."""
        g43 = self.kappa / 2 + self.gamma_ivr / 2
        return DerivedRates(
            gamma31_c=(self.gamma_31 + self.gamma_32) / 2,
            gamma21_c=self.kappa / 2 + self.gamma_pd,
            gamma32_c=self.kappa / 2 + self.gamma_31 / 2 + self.gamma_32 / 2,
            gamma43_c=g43,
            gamma42_c=self.kappa + self.gamma_ivr / 2,
            gamma41_c=g43,
        )


@dataclass(frozen=True)
class DerivedRates:
    """Coherence linewidths entering the steady-state equations."""

    gamma31_c: float
    gamma21_c: float
    gamma32_c: float
    gamma43_c: float
    gamma42_c: float
    gamma41_c: float


@dataclass(frozen=True)
class FieldParams:
    """Drive amplitudes and detunings, units of gamma."""

    omega_p_rabi: float = 1e-3   # probe Rabi frequency, |1> <-> |3>
    omega_s_rabi: float = 0.0    # signal Rabi frequency, |2> <-> |4>
    omega_c_rabi: float = 1.2    # single-molecule vacuum Rabi frequency
    n_molecules: int = 1         # collective enhancement sqrt(N)
    delta_p: float = 0.0         # probe detuning from <omega_31>
    delta_c: float = 0.0         # cavity detuning from <omega_32>
    delta_s: float = 0.0         # signal detuning from <omega_42>

    @property
    def omega_c_collective(self) -> float:
        """Collective vacuum coupling sqrt(N) * Omega_c."""
        return self.n_molecules ** 0.5 * self.omega_c_rabi


def effective_detunings(fields: FieldParams) -> tuple[float, float]:
    """Two-photon and signal-composite detunings (Delta_21, Delta_41).

    Delta_21 = Delta_p - Delta_c is the detuning of the probe-cavity
    two-photon resonance; Delta_41 = Delta_21 + Delta_s adds the signal.
    """
    d21 = fields.delta_p - fields.delta_c
    return d21, d21 + fields.delta_s


DISORDER_FAMILIES = ("none", "lorentzian", "gaussian", "orientational")
CORRELATION_MODES = ("correlated", "independent")


@dataclass(frozen=True)
class DisorderSpec:
    """Static-disorder model for the ensemble average."""

    family: str = "none"
    sigma3: float = 0.0          # width of the probe-band fluctuations
    sigma4: float = 0.0          # width of the signal-band fluctuations
    correlation_mode: str = "correlated"
    n_samples: int = 100_000     # Monte Carlo draws per grid point
    seed: int = 20_260_815
    quadrature_nodes: int = 101  # Gauss-Hermite nodes per axis, odd
    quadrature_off: bool = False  # force Monte Carlo even when quadrature fits

    def __post_init__(self):
        if self.family not in DISORDER_FAMILIES:
            raise ConfigError(f"unknown disorder family {self.family!r}")
        if self.correlation_mode not in CORRELATION_MODES:
            raise ConfigError(
                f"unknown correlation mode {self.correlation_mode!r}")
        if self.quadrature_nodes < 3 or self.quadrature_nodes % 2 == 0:
            raise ConfigError("quadrature_nodes must be odd and >= 3")
        if self.n_samples < 1:
            raise ConfigError("n_samples must be positive")


@dataclass(frozen=True)
class OscillatorScale:
    """Oscillator-strength scale K; K < 0 for an absorptive medium."""

    k_scale: float = -1.0


@dataclass(frozen=True)
class SystemParams:
    """Full physical parameter set: rates, fields and the K scale."""

    rates: PrimitiveRates = field(default_factory=PrimitiveRates)
    fields: FieldParams = field(default_factory=FieldParams)
    scale: OscillatorScale = field(default_factory=OscillatorScale)


@dataclass(frozen=True)
class CoherenceVector:
    """Steady-state slowly-varying coherences."""

    sigma13: complex
    sigma12: complex
    sigma32: complex
    sigma14: complex
    sigma34: complex
    sigma24: complex


@dataclass(frozen=True)
class ChiSample:
    """Single susceptibility evaluation with provenance."""

    delta_p: float
    chi: complex
    provenance: str  # closed_full | closed_simplified | vit | oracle | averaged
    stderr: complex | None = None


@dataclass
class AveragedChi:
    """Disorder-averaged susceptibility on a probe-detuning grid."""

    grid: object          # ndarray of probe detunings
    chi_mean: object      # ndarray, complex
    stderr: object        # ndarray, complex (re/im component errors) or None
    method: str           # analytic_orientational | analytic_lorentzian_vit |
    #                       analytic_lorentzian_kerr | mc | quadrature
    n_effective: int = 0


@dataclass
class MeritResult:
    """Figure-of-merit profile and its maximum over probe detuning."""

    grid: object
    eta: object
    eta_max: float
    x_max: float
    method: str                     # closed_form | from_chi
    constraint_report: dict | None = None


@dataclass(frozen=True)
class SignalDressing:
    """Signal-field dressing of the two-photon coherence.

    lambda_s is the dimensionless signal parameter, x_s the blue-shift of
    the optimal probe detuning and gamma_s the added dephasing width.
    """

    lambda_s: float
    x_s: float
    gamma_s: float

    def a_s_at(self, x, gamma21: float):
        """Dressed resonance factor A_s(x) = (x-x_s)^2 + (gamma21+gamma_s)^2."""
        return (x - self.x_s) ** 2 + (gamma21 + self.gamma_s) ** 2


@dataclass(frozen=True)
class GridSpec:
    x_min: float = -4.0
    x_max: float = 4.0
    n_points: int = 801

    def __post_init__(self):
        if self.n_points < 2:
            raise ConfigError("grid n_points must be >= 2")
        if not self.x_max > self.x_min:
            raise ConfigError("grid requires x_max > x_min")


@dataclass(frozen=True)
class OutputSpec:
    format: str = "csv"   # csv | json
    path: str = "out.csv"

    def __post_init__(self):
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.format!r}")


@dataclass(frozen=True)
class PlotSpec:
    kind: str = "none"    # none | svg
    path: str = ""

    def __post_init__(self):
        if self.kind not in ("none", "svg"):
            raise ConfigError(f"unknown plot kind {self.kind!r}")


@dataclass
class RunConfig:
    """Resolved run configuration for one CLI invocation."""

    params: SystemParams = field(default_factory=SystemParams)
    disorder: DisorderSpec = field(default_factory=DisorderSpec)
    grid: GridSpec = field(default_factory=GridSpec)
    output: OutputSpec = field(default_factory=OutputSpec)
    plot: PlotSpec = field(default_factory=PlotSpec)
    workers: int = 1
    clip_eta: float = 10.0
    # optional sweep parameters used by the merit and linewidth commands
    lambda_s_list: list | None = None
    lambda_s_scan: dict | None = None     # {min, max, n}
    omega0_scan: dict | None = None       # {min, max, n}
    plot_component: str = "im"            # im | re

    def __post_init__(self):
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.plot_component not in ("im", "re"):
            raise ConfigError(f"unknown plot component {self.plot_component!r}")

    def to_dict(self) -> dict:
        return asdict(self)


def _build(cls, data: dict, where: str):
    """Construct a dataclass from a dict, rejecting unknown keys."""
    allowed = set(cls.__dataclass_fields__)
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)} in {where}")
    try:
        return cls(**data)
    except TypeError as exc:
        raise ConfigError(f"bad {where}: {exc}") from None


def config_from_dict(data: dict) -> RunConfig:
    """Validate a parsed JSON config and build a RunConfig."""
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    top_allowed = set(RunConfig.__dataclass_fields__)
    unknown = set(data) - top_allowed
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")

    params = data.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be an object")
    p_allowed = {"rates", "fields", "scale"}
    p_unknown = set(params) - p_allowed
    if p_unknown:
        raise ConfigError(f"unknown keys {sorted(p_unknown)} in params")
    system = SystemParams(
        rates=_build(PrimitiveRates, params.get("rates", {}), "params.rates"),
        fields=_build(FieldParams, params.get("fields", {}), "params.fields"),
        scale=_build(OscillatorScale, params.get("scale", {}), "params.scale"),
    )
    kwargs = dict(
        params=system,
        disorder=_build(DisorderSpec, data.get("disorder", {}), "disorder"),
        grid=_build(GridSpec, data.get("grid", {}), "grid"),
        output=_build(OutputSpec, data.get("output", {}), "output"),
        plot=_build(PlotSpec, data.get("plot", {}), "plot"),
    )
    for key in ("workers", "clip_eta", "lambda_s_list", "lambda_s_scan",
                "omega0_scan", "plot_component"):
        if key in data:
            kwargs[key] = data[key]
    return RunConfig(**kwargs)


def config_from_file(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return config_from_dict(data)
