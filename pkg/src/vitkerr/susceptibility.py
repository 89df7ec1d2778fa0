"""Closed-form probe susceptibilities.

Conventions: x denotes the probe detuning Delta_31 from the mean trans
absorption frequency; all quantities are in units of the homogeneous
linewidth gamma and chi carries the oscillator scale K (negative for an
absorptive medium, so Im chi > 0).
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad

from .errors import DegenerateSystemError
from .model import DerivedRates, FieldParams


def chi_two_level(x, gamma31: float, k_scale: float = -1.0):
    """Bare probe response K / (Delta_31 + i*gamma31)."""
    return k_scale / (x + 1j * gamma31)


def saturation_term_full(x, rates: DerivedRates, fields: FieldParams):
    """Cavity saturation term I0 without the weak-probe approximation.

    I0 = Omega_c^2 / W with
    W = Omega_s^2 / D41 + Omega_p^2 / G32 - D21,
    D41 = Delta_41 + i*gamma41, G32 = i*gamma32 - Delta_32,
    D21 = Delta_21 + i*gamma21.
    """
    d21v = np.asarray(x) - fields.delta_c
    d41v = d21v + fields.delta_s
    d41 = d41v + 1j * rates.gamma41_c
    g32 = 1j * rates.gamma32_c - fields.delta_c
    d21 = d21v + 1j * rates.gamma21_c
    w = fields.omega_p_rabi ** 2 / g32 - d21
    if fields.omega_s_rabi != 0.0:
        w = w + fields.omega_s_rabi ** 2 / d41
    return fields.omega_c_collective ** 2 / w


def saturation_term_simplified(x, rates: DerivedRates, fields: FieldParams):
    """Weak-probe saturation term I0 = Oc^2 D41 / (Os^2 - D21 D41)."""
    d21v = np.asarray(x) - fields.delta_c
    d41v = d21v + fields.delta_s
    d41 = d41v + 1j * rates.gamma41_c
    d21 = d21v + 1j * rates.gamma21_c
    den = fields.omega_s_rabi ** 2 - d21 * d41
    if np.any(np.abs(den) <= 1e-30):
        raise DegenerateSystemError(
            "saturation denominator Omega_s^2 - D21*D41 vanishes; "
            "detunings and dephasing rates leave the two-photon "
            "coherence undamped")
    return fields.omega_c_collective ** 2 * d41 / den


def chi_homogeneous(x, rates: DerivedRates, fields: FieldParams,
                    k_scale: float = -1.0, variant: str = "full"):
    """Homogeneous susceptibility K / (Delta_31 + i*gamma31 + I0).

    x may be a scalar or array of probe detunings; the detunings stored in
    `fields` supply the cavity/signal offsets while x replaces delta_p.
    """
    if variant == "full":
        i0 = saturation_term_full(x, rates, fields)
    elif variant == "simplified":
        i0 = saturation_term_simplified(x, rates, fields)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    den = np.asarray(x) + 1j * rates.gamma31_c + i0
    if np.any((np.abs(den.real) < 1e-30) & (np.abs(den.imag) < 1e-30)):
        raise DegenerateSystemError(
            "probe response pole: Delta_31 + I0' and gamma31 + I0'' both "
            "vanish")
    return k_scale / den


def lambda_c(omega_c: float, delta21: float, gamma21: float) -> float:
    """Cavity coupling parameter Omega_c^2 / (Delta_21^2 + gamma21^2)."""
    return omega_c ** 2 / (delta21 ** 2 + gamma21 ** 2)


def chi_vit(x, delta_c: float, gamma31: float, gamma21: float,
            omega_c: float, k_scale: float = -1.0):
    """Weak-probe transparency lineshape K*D21 / (D31*D21 - Oc^2)."""
    d31 = np.asarray(x) + 1j * gamma31
    d21 = np.asarray(x) - delta_c + 1j * gamma21
    return k_scale * d21 / (d31 * d21 - omega_c ** 2)


def chi_vit_shifted(x, delta_c: float, gamma31: float, gamma21: float,
                    omega_c: float, k_scale: float = -1.0):
    """Same lineshape written through lambda_c, for cross-checking.

    K / [(Delta_31 - lambda_c*Delta_21) + i*(gamma31 + lambda_c*gamma21)]
    """
    d21v = np.asarray(x) - delta_c
    lam = omega_c ** 2 / (d21v ** 2 + gamma21 ** 2)
    return k_scale / ((np.asarray(x) - lam * d21v)
                      + 1j * (gamma31 + lam * gamma21))


# ---------------------------------------------------------------------------
# orientational (coupling-angle) disorder

def chi_orientational(x, omega0: float, delta_c: float, gamma31: float,
                      gamma21: float, k_scale: float = -1.0):
    """Average of the transparency lineshape over dipole orientations.

    The coupling Omega_0*cos(theta) with uniform theta turns the average
    into a contour integral around the unit circle with two reciprocal
    roots u_in, u_out of u^2 + 2(1-2w)u + 1; only the interior root
    contributes:

        <chi> = -K * D21 / Omega_0^2 * 4 / (u_in - u_out),
        w = D31 * D21 / Omega_0^2.

    Real w (Z2 = 0) is nudged into the upper half-plane, matching the
    physical 0+ limit of the dissipative rates.
    """
    if omega0 == 0.0:
        return chi_vit(x, delta_c, gamma31, gamma21, 0.0, k_scale)
    d31 = np.asarray(x, dtype=complex) + 1j * gamma31
    d21 = np.asarray(x, dtype=complex) - delta_c + 1j * gamma21
    w = d31 * d21 / omega0 ** 2
    w = np.where(w.imag == 0.0, w + 1e-300j, w)
    c = 1.0 - 2.0 * w
    s = np.sqrt(c * c - 1.0)
    u_plus = -c + s
    u_minus = -c - s
    inner = np.where(np.abs(u_plus) < 1.0, u_plus, u_minus)
    outer = np.where(np.abs(u_plus) < 1.0, u_minus, u_plus)
    with np.errstate(invalid="ignore", divide="ignore"):
        j_int = 4.0 / (inner - outer)
        chi = -k_scale * d21 / omega0 ** 2 * j_int
    # exactly on the undamped two-photon resonance every tilted molecule is
    # transparent, so the average is zero rather than the 0*inf of the
    # contour form
    return np.where(np.abs(d21) == 0.0, 0.0, chi)


def chi_orientational_sgn(x, omega0: float, delta_c: float, gamma31: float,
                          gamma21: float, k_scale: float = -1.0):
    """Branch-sign form of the orientational average, for cross-checking."""
    d31 = np.asarray(x, dtype=complex) + 1j * gamma31
    d21 = np.asarray(x, dtype=complex) - delta_c + 1j * gamma21
    w = d31 * d21 / omega0 ** 2
    sign = np.where(w.imag >= 0.0, 1.0, -1.0)
    return -k_scale * d21 / omega0 ** 2 * 1j * sign / np.sqrt(w * (1.0 - w))


def chi_orientational_zero_dephasing(x, omega0: float, delta_c: float,
                                     gamma31: float, k_scale: float = -1.0):
    """Orientational average in the vanishing-gamma21 limit."""
    x = np.asarray(x, dtype=float)
    d21 = x - delta_c
    a = d21 * (x * (omega0 ** 2 - d21 * x) + d21 * gamma31 ** 2)
    b = d21 * gamma31 * (omega0 ** 2 - 2.0 * d21 * x)
    mod = np.sqrt(a * a + b * b)
    with np.errstate(invalid="ignore", divide="ignore"):
        chi = (-k_scale * np.abs(d21) / np.sqrt(2.0)
               * (b + 1j * (a + mod))
               / (mod * np.sqrt(np.maximum(a + mod, 0.0))))
    return np.where(d21 == 0.0, 0.0, chi)


def chi_orientational_quad(x: float, omega0: float, delta_c: float,
                           gamma31: float, gamma21: float,
                           k_scale: float = -1.0,
                           epsabs: float = 1e-13) -> complex:
    """Adaptive angular quadrature of the transparency lineshape.

    Independent reference route for the closed form; scalar x only.
    """
    def integrand_re(theta):
        return chi_vit(x, delta_c, gamma31, gamma21,
                       omega0 * np.cos(theta), k_scale).real

    def integrand_im(theta):
        return chi_vit(x, delta_c, gamma31, gamma21,
                       omega0 * np.cos(theta), k_scale).imag

    re, _ = quad(integrand_re, 0.0, 2.0 * np.pi,
                 epsabs=epsabs, epsrel=1e-12, limit=400)
    im, _ = quad(integrand_im, 0.0, 2.0 * np.pi,
                 epsabs=epsabs, epsrel=1e-12, limit=400)
    return (re + 1j * im) / (2.0 * np.pi)


# ---------------------------------------------------------------------------
# Lorentzian (heavy-tailed) energy disorder, closed by contour integration

def chi_lorentzian_vit(x, delta_c: float, gamma31: float, gamma21: float,
                       omega_c: float, sigma3: float, k_scale: float = -1.0):
    """Transparency lineshape under correlated Lorentzian energy disorder.

    The pole structure pushes the disorder entirely into the probe
    linewidth: Sigma_31 = gamma31 + sigma3, with Delta_21 deterministic.
    """
    sig31 = gamma31 + sigma3
    d21v = np.asarray(x) - delta_c
    lam = omega_c ** 2 / (d21v ** 2 + gamma21 ** 2)
    return k_scale / ((np.asarray(x) - lam * d21v)
                      + 1j * (sig31 + lam * gamma21))


def chi_lorentzian_kerr(x, rates: DerivedRates, fields: FieldParams,
                        sigma3: float, sigma4: float,
                        k_scale: float = -1.0,
                        x_independent_dressing: bool = False):
    """Signal-dressed susceptibility under correlated Lorentzian disorder.

    <chi> = K / (Delta_31 + i*Sigma_31 + I_E),
    I_E = Oc^2 (Delta_41 + i*Sigma_41) / [Os^2 - D21 (Delta_41 + i*Sigma_41)].

    With x_independent_dressing the three-photon detuning is frozen at the
    signal detuning Delta_s, which is the approximation behind the
    closed-form figure-of-merit profile.
    """
    sig31 = rates.gamma31_c + sigma3
    sig41 = rates.gamma41_c + sigma4
    x = np.asarray(x)
    d21v = x - fields.delta_c
    d41v = fields.delta_s if x_independent_dressing else d21v + fields.delta_s
    d21 = d21v + 1j * rates.gamma21_c
    d41 = d41v + 1j * sig41
    oc2 = fields.omega_c_collective ** 2
    i_e = oc2 * d41 / (fields.omega_s_rabi ** 2 - d21 * d41)
    return k_scale / (x + 1j * sig31 + i_e)
