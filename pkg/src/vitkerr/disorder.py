"""Disorder averages of the probe susceptibility.

Three routes are provided and cross-checked against each other:

* closed forms (orientational and Lorentzian families, susceptibility module),
* deterministic Gauss-Hermite quadrature on shifted contours (Gaussian),
* seeded Monte Carlo sampling (all families).

The Gaussian integrand is steep on the scale of the narrow two-photon
resonance (width gamma21 ~ 1e-2 against sigma ~ 5), so real-axis quadrature
converges hopelessly slowly.  The integrand is analytic, so each axis is
instead shifted to a parallel contour Im(delta) = 2*sigma where the
lineshape is smooth; poles swept across on the way are restored exactly by
their residues.  Node doubling then converges at machine precision.
"""

from __future__ import annotations

import numpy as np

from .model import AveragedChi, DerivedRates, DisorderSpec, FieldParams

SQRT_2LN2 = float(np.sqrt(2.0 * np.log(2.0)))


def match_fwhm(sigma_gauss: float) -> float:
    """Half-width of the Lorentzian with the same FWHM as N(0, sigma)."""
    return SQRT_2LN2 * sigma_gauss


def gh_nodes(n: int, sigma: float, shift: float = 0.0):
    """Gauss-Hermite nodes/weights for a N(0, sigma) average on a shifted
    contour Im(delta) = shift.

    Substituting delta = s + i*shift into the Gaussian density produces the
    exp(shift^2/2 sigma^2) * exp(-i s shift / sigma^2) reweighting absorbed
    into the returned complex weights.
    """
    t, w = np.polynomial.hermite.hermgauss(n)
    s = np.sqrt(2.0) * sigma * t
    nodes = s + 1j * shift
    weights = w / np.sqrt(np.pi)
    if shift != 0.0:
        weights = weights * np.exp(shift ** 2 / (2.0 * sigma ** 2)) \
            * np.exp(-1j * s * shift / sigma ** 2)
    return nodes, weights


def chi_full_detuned(d31, d32, d42, x, rates: DerivedRates,
                     fields: FieldParams, k_scale: float = -1.0,
                     omega_c=None):
    """Full susceptibility with per-molecule frequency offsets.

    d31, d32, d42 shift the three transition frequencies (arrays broadcast
    together with x); omega_c optionally overrides the collective coupling
    per sample, which is how orientational draws enter.
    """
    if omega_c is None:
        omega_c = fields.omega_c_collective
    delta31 = x + d31
    delta21 = (x - fields.delta_c) + (d31 - d32)
    delta41 = delta21 + fields.delta_s + d42
    g32 = 1j * rates.gamma32_c - (fields.delta_c + d32)
    w = fields.omega_p_rabi ** 2 / g32 - (delta21 + 1j * rates.gamma21_c)
    if fields.omega_s_rabi != 0.0:
        w = w + fields.omega_s_rabi ** 2 / (delta41 + 1j * rates.gamma41_c)
    return k_scale / (delta31 + 1j * rates.gamma31_c + omega_c ** 2 / w)


def _crossed_pole_sum(x, d4_node, rates: DerivedRates, fields: FieldParams,
                      sigma3: float, shift: float, k_scale: float):
    """Residue sum (times 2*pi*i) for poles of the correlated delta3
    integrand swept by the contour shift, vectorized over the x grid.

    The pole condition is quadratic in u = delta3 once the saturation
    denominator is cleared:

        B u^2 + [B(c1 - c3) - Op^2 + Oc^2] u
              - [B c1 c3 + Op^2 c1 + Oc^2 c3] = 0,

    with c1 = x + i*gamma31, c3 = i*gamma32 - Delta_c and
    B = Os^2/D41 - D21 evaluated at the current delta4 node.
    """
    op = fields.omega_p_rabi
    oc = fields.omega_c_collective
    if op == 0.0 or oc == 0.0:
        # no pole can reach the strip: with op=0 the cleared quadratic
        # gains the spurious root u = c3, with oc=0 the only pole sits a
        # full gamma31 below the real axis
        return np.zeros_like(np.asarray(x, dtype=complex))
    x = np.asarray(x, dtype=complex)
    d21v = x - fields.delta_c
    d21 = d21v + 1j * rates.gamma21_c
    c1 = x + 1j * rates.gamma31_c
    c3 = 1j * rates.gamma32_c - fields.delta_c
    b = -d21
    if fields.omega_s_rabi != 0.0:
        d41 = d21v + fields.delta_s + d4_node + 1j * rates.gamma41_c
        b = b + fields.omega_s_rabi ** 2 / d41

    a2 = b
    a1 = b * (c1 - c3) - op ** 2 + oc ** 2
    a0 = -b * c1 * c3 - op ** 2 * c1 - oc ** 2 * c3
    disc = np.sqrt(a1 * a1 - 4.0 * a2 * a0)
    roots = np.stack([(-a1 + disc) / (2.0 * a2),
                      (-a1 - disc) / (2.0 * a2)])

    crossed = (roots.imag > 0.0) & (roots.imag < shift)
    total = np.zeros_like(x)
    if not crossed.any():
        return total
    # evaluate the Gaussian density only on crossed roots; far poles would
    # overflow exp(-r^2 / 2 sigma^2) harmlessly but noisily
    r = np.where(crossed, roots, 0.0)
    g32r = c3 - r
    wr = b + op ** 2 / g32r
    dprime = 1.0 - oc ** 2 * op ** 2 / (g32r ** 2 * wr ** 2)
    dens = np.exp(-r ** 2 / (2.0 * sigma3 ** 2)) \
        / (np.sqrt(2.0 * np.pi) * sigma3)
    res = np.where(crossed, k_scale * dens / dprime, 0.0)
    return 2j * np.pi * res.sum(axis=0)


def quadrature_correlated(x, rates: DerivedRates, fields: FieldParams,
                          sigma3: float, sigma4: float, n_nodes: int,
                          k_scale: float = -1.0):
    """Gaussian average with identical trans/cis-band fluctuations.

    delta31 = delta32 = d3 ~ N(0, sigma3) and delta42 = d4 ~ N(0, sigma4);
    d4 only matters under signal driving.  Both axes run on contours
    shifted up by two standard deviations.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    shift3 = 2.0 * sigma3
    nodes3, w3 = gh_nodes(n_nodes, sigma3, shift3) if sigma3 > 0.0 \
        else (np.zeros(1), np.ones(1))
    d4_active = fields.omega_s_rabi != 0.0 and sigma4 > 0.0
    if d4_active:
        nodes4, w4 = gh_nodes(n_nodes, sigma4, 2.0 * sigma4)
    else:
        nodes4, w4 = np.zeros(1), np.ones(1)

    out = np.zeros(x.shape, dtype=complex)
    for d4, wgt4 in zip(nodes4, w4):
        vals = chi_full_detuned(nodes3[None, :], nodes3[None, :], d4,
                                x[:, None], rates, fields, k_scale)
        acc = vals @ w3
        if sigma3 > 0.0:
            acc = acc + _crossed_pole_sum(x, d4, rates, fields,
                                          sigma3, shift3, k_scale)
        out += wgt4 * acc
    return out


def quadrature_independent(x, rates: DerivedRates, fields: FieldParams,
                           sigma3: float, sigma4: float, n_nodes: int,
                           k_scale: float = -1.0):
    """Gaussian average with independent fluctuations per transition.

    The delta32 contour is shifted down (its pole side is opposite to
    delta31); with that choice no pole enters any swept strip for
    non-negative drive amplitudes, so no residue terms arise.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if sigma3 > 0.0:
        n31, w31 = gh_nodes(n_nodes, sigma3, 2.0 * sigma3)
        n32, w32 = gh_nodes(n_nodes, sigma3, -2.0 * sigma3)
    else:
        n31, w31 = np.zeros(1), np.ones(1)
        n32, w32 = np.zeros(1), np.ones(1)
    if fields.omega_s_rabi != 0.0 and sigma4 > 0.0:
        n42, w42 = gh_nodes(n_nodes, sigma4, 2.0 * sigma4)
    else:
        n42, w42 = np.zeros(1), np.ones(1)

    out = np.zeros(x.shape, dtype=complex)
    block = max(1, 2_000_000 // (len(n31) * len(n32)))
    for lo in range(0, x.size, block):
        xs = x[lo:lo + block]
        acc = np.zeros(xs.shape, dtype=complex)
        for d42, wgt42 in zip(n42, w42):
            vals = chi_full_detuned(n31[None, :, None], n32[None, None, :],
                                    d42, xs[:, None, None], rates, fields,
                                    k_scale)
            acc += wgt42 * ((vals @ w32) @ w31)
        out[lo:lo + block] = acc
    return out


def quadrature_average(x, rates, fields, disorder: DisorderSpec,
                       k_scale: float = -1.0) -> AveragedChi:
    """Dispatch the deterministic Gaussian quadrature per correlation mode."""
    if disorder.correlation_mode == "correlated":
        chi = quadrature_correlated(x, rates, fields, disorder.sigma3,
                                    disorder.sigma4,
                                    disorder.quadrature_nodes, k_scale)
    else:
        chi = quadrature_independent(x, rates, fields, disorder.sigma3,
                                     disorder.sigma4,
                                     disorder.quadrature_nodes, k_scale)
    return AveragedChi(grid=np.asarray(x, dtype=float), chi_mean=chi,
                       stderr=None, method="quadrature",
                       n_effective=disorder.quadrature_nodes)


# ---------------------------------------------------------------------------
# Monte Carlo

_MC_BLOCK = 200_000


def _point_rng(seed: int, index: int) -> np.random.Generator:
    """Per-grid-point generator; independent of worker layout."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def _draw_offsets(rng, family: str, mode: str, sigma3: float, sigma4: float,
                  signal_on: bool, n: int):
    """Draw (d31, d32, d42) frequency offsets for one block."""
    def one(width):
        if width <= 0.0:
            return np.zeros(n)
        if family == "gaussian":
            return width * rng.standard_normal(n)
        # heavy-tailed draw via the inverse CDF of the Lorentzian
        return width * np.tan(np.pi * (rng.random(n) - 0.5))

    if mode == "correlated":
        d3 = one(sigma3)
        d42 = one(sigma4) if signal_on else np.zeros(n)
        return d3, d3, d42
    d31 = one(sigma3)
    d32 = one(sigma3)
    d42 = one(sigma4) if signal_on else np.zeros(n)
    return d31, d32, d42


def mc_point(index: int, x: float, rates: DerivedRates, fields: FieldParams,
             disorder: DisorderSpec, k_scale: float = -1.0):
    """Monte Carlo average of chi at one probe detuning.

    Returns (mean, stderr) with stderr holding the standard errors of the
    real and imaginary components. Fixed block order keeps the result
    byte-identical for any worker partition of the grid.
    """
    rng = _point_rng(disorder.seed, index)
    n_total = disorder.n_samples
    signal_on = fields.omega_s_rabi != 0.0
    s1 = 0.0 + 0.0j
    s2re = 0.0
    s2im = 0.0
    done = 0
    while done < n_total:
        n = min(_MC_BLOCK, n_total - done)
        if disorder.family == "orientational":
            theta = 2.0 * np.pi * rng.random(n)
            oc = fields.omega_c_collective * np.cos(theta)
            chi = chi_full_detuned(0.0, 0.0, 0.0, x, rates, fields,
                                   k_scale, omega_c=oc)
        else:
            d31, d32, d42 = _draw_offsets(
                rng, disorder.family, disorder.correlation_mode,
                disorder.sigma3, disorder.sigma4, signal_on, n)
            chi = chi_full_detuned(d31, d32, d42, x, rates, fields, k_scale)
        s1 += chi.sum()
        s2re += float(np.sum(chi.real ** 2))
        s2im += float(np.sum(chi.imag ** 2))
        done += n
    mean = s1 / n_total
    var_re = max(s2re / n_total - mean.real ** 2, 0.0)
    var_im = max(s2im / n_total - mean.imag ** 2, 0.0)
    stderr = complex(np.sqrt(var_re / n_total), np.sqrt(var_im / n_total))
    return mean, stderr


def mc_average(x, rates, fields, disorder: DisorderSpec,
               k_scale: float = -1.0, index_offset: int = 0) -> AveragedChi:
    """Serial Monte Carlo sweep over a probe-detuning grid."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    mean = np.empty(x.shape, dtype=complex)
    err = np.empty(x.shape, dtype=complex)
    for i, xi in enumerate(x):
        mean[i], err[i] = mc_point(index_offset + i, float(xi), rates,
                                   fields, disorder, k_scale)
    return AveragedChi(grid=x, chi_mean=mean, stderr=err, method="mc",
                       n_effective=disorder.n_samples)
