"""Linear and cross-Kerr optical response of cavity-coupled four-level
molecular photoswitches: closed-form susceptibilities, disorder averages
and cross-phase figures of merit."""

from __future__ import annotations

__version__ = "0.1.0"

from .bloch import chi_bloch, solve_steady_state
from .disorder import (
    match_fwhm,
    mc_average,
    quadrature_average,
)
from .errors import (
    ConfigError,
    DegenerateSystemError,
    NoTransparencyError,
    ThresholdError,
)
from .merit import (
    eta_from_chi,
    eta_profile_closed,
    extract_gamma_vit,
    maximize_eta,
    signal_dressing,
    vit_optimum,
)
from .model import (
    AveragedChi,
    DisorderSpec,
    FieldParams,
    GridSpec,
    PrimitiveRates,
    RunConfig,
    SystemParams,
    config_from_dict,
    config_from_file,
    effective_detunings,
    mev_to_thz,
    thz_to_mev,
)
from .susceptibility import (
    chi_homogeneous,
    chi_lorentzian_kerr,
    chi_lorentzian_vit,
    chi_orientational,
    chi_two_level,
    chi_vit,
)

__all__ = [
    "AveragedChi",
    "ConfigError",
    "DegenerateSystemError",
    "DisorderSpec",
    "FieldParams",
    "GridSpec",
    "NoTransparencyError",
    "PrimitiveRates",
    "RunConfig",
    "SystemParams",
    "ThresholdError",
    "__version__",
    "chi_bloch",
    "chi_homogeneous",
    "chi_lorentzian_kerr",
    "chi_lorentzian_vit",
    "chi_orientational",
    "chi_two_level",
    "chi_vit",
    "config_from_dict",
    "config_from_file",
    "effective_detunings",
    "eta_from_chi",
    "eta_profile_closed",
    "extract_gamma_vit",
    "match_fwhm",
    "maximize_eta",
    "mc_average",
    "mev_to_thz",
    "quadrature_average",
    "signal_dressing",
    "solve_steady_state",
    "thz_to_mev",
    "vit_optimum",
]
