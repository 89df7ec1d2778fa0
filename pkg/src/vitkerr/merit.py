"""Cross-phase figure-of-merit eta and transparency-dip diagnostics."""

from __future__ import annotations

import warnings

import numpy as np

from .errors import NoTransparencyError
from .model import SignalDressing

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def eta_from_chi(chi):
    """Coherent-signal figure-of-merit eta = Re(chi) / 2 Im(chi)."""
    chi = np.asarray(chi)
    return chi.real / (2.0 * chi.imag)


def signal_dressing(omega_s: float, delta_s: float,
                    width41: float) -> SignalDressing:
    """Dressing parameters of the signal field.

    width41 is the relevant |4><1| coherence width: the broadened Sigma_41
    for disorder-averaged profiles, the bare gamma41 otherwise.
    """
    lam = omega_s ** 2 / (delta_s ** 2 + width41 ** 2)
    return SignalDressing(lambda_s=lam, x_s=lam * delta_s,
                          gamma_s=lam * width41)


def omega_s_for_lambda(lambda_s: float, delta_s: float,
                       width41: float) -> float:
    """Signal Rabi frequency producing a requested lambda_s."""
    return float(np.sqrt(lambda_s * (delta_s ** 2 + width41 ** 2)))


def eta_profile_closed(x, omega_c: float, gamma21: float, sigma31: float,
                       dressing: SignalDressing):
    """Closed-form merit profile under x-independent signal dressing.

    eta(x) = -[x A_s - Oc^2 (x - x_s)] / 2 [Sigma31 A_s + Oc^2 (g21 + g_s)]
    with A_s = (x - x_s)^2 + (gamma21 + gamma_s)^2.
    """
    x = np.asarray(x, dtype=float)
    a_s = dressing.a_s_at(x, gamma21)
    oc2 = omega_c ** 2
    num = x * a_s - oc2 * (x - dressing.x_s)
    den = sigma31 * a_s + oc2 * (gamma21 + dressing.gamma_s)
    return -num / (2.0 * den)


def eta_vit_approx(x, omega_c: float, gamma21: float, sigma31: float):
    """Small-x transparency-window merit Oc^2 x / 2(Sigma31 x^2 + g21 Oc^2)."""
    x = np.asarray(x, dtype=float)
    oc2 = omega_c ** 2
    return oc2 * x / (2.0 * (sigma31 * x ** 2 + gamma21 * oc2))


def vit_optimum(omega_c: float, gamma21: float,
                sigma31: float) -> tuple[float, float]:
    """Optimal probe detuning and merit bound of the pure transparency case.

    x* = Oc sqrt(gamma21 / Sigma31), eta_max = Oc / 4 sqrt(gamma21 Sigma31).
    """
    x_star = omega_c * np.sqrt(gamma21 / sigma31)
    eta_max = omega_c / (4.0 * np.sqrt(gamma21 * sigma31))
    return float(x_star), float(eta_max)


def maximize_eta(eta_fn, x_star_estimate: float, n_coarse: int = 600,
                 tol: float = 1e-9):
    """Maximize a merit profile over probe detunings [0, 3*x*_estimate].

    eta_fn must accept an ndarray.  A coarse scan brackets the maximum and
    golden-section refines it; a maximum pinned to either end of the scan
    window is returned as-is with boundary=True and a warning.

    Returns (x_max, eta_max, boundary).
    """
    hi = 3.0 * x_star_estimate
    xs = np.linspace(0.0, hi, n_coarse)
    vals = np.asarray(eta_fn(xs), dtype=float)
    k = int(np.argmax(vals))
    if k == 0 or k == n_coarse - 1:
        warnings.warn("merit maximum sits on the scan boundary; "
                      "profile is monotone over the window",
                      stacklevel=2)
        return float(xs[k]), float(vals[k]), True

    a, b = float(xs[k - 1]), float(xs[k + 1])
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc = float(eta_fn(np.array([c]))[0])
    fd = float(eta_fn(np.array([d]))[0])
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = float(eta_fn(np.array([c]))[0])
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = float(eta_fn(np.array([d]))[0])
    x_best = float((a + b) / 2.0)
    return x_best, float(eta_fn(np.array([x_best]))[0]), False


def check_signal_bound(omega_c: float, gamma21: float, sigma31: float,
                       dressing: SignalDressing, sigma: float) -> dict:
    """Constraint report for reaching eta ~ 1 under signal driving.

    Two exact inequalities (dressing width below gamma21; dressing shift
    below the optimal detuning scale) plus the single combined threshold
    lambda_s <~ gamma21 / sigma, graded with a 10% marginal band.  sigma is
    the inhomogeneous width of the probe band (sigma3).
    """
    width_margin = gamma21 - dressing.gamma_s
    shift_limit = omega_c * np.sqrt(gamma21 / sigma31)
    shift_margin = shift_limit - abs(dressing.x_s)
    report = {
        "width_bound": {
            "satisfied": bool(width_margin >= 0.0),
            "margin": float(width_margin),
        },
        "shift_bound": {
            "satisfied": bool(shift_margin >= 0.0),
            "margin": float(shift_margin),
        },
    }
    if sigma > 0.0:
        ratio = dressing.lambda_s / (gamma21 / sigma)
        if ratio < 0.9:
            grade = "satisfied"
        elif ratio <= 1.1:
            grade = "marginal"
        else:
            grade = "violated"
        report["combined_threshold"] = {"ratio": float(ratio), "grade": grade}
    return report


# ---------------------------------------------------------------------------
# transparency-dip diagnostics

def dip_features(x, im_profile, x_resonance: float = 0.0) -> dict:
    """Locate the transparency dip and its half-depth width.

    The dip is the local minimum nearest the two-photon resonance; its
    depth is measured against the lower of the two flanking maxima and the
    width is the full width at half that depth, with the crossings placed
    by linear interpolation.  Profiles are assumed smooth (analytic or
    quadrature averages); sampling noise can fake local minima.
    """
    x = np.asarray(x, dtype=float)
    prof = np.asarray(im_profile, dtype=float)
    interior = (prof[1:-1] < prof[:-2]) & (prof[1:-1] <= prof[2:])
    minima = np.flatnonzero(interior) + 1
    if minima.size == 0:
        raise NoTransparencyError("profile has no interior local minimum")
    i0 = int(minima[np.argmin(np.abs(x[minima] - x_resonance))])

    left = prof[:i0]
    right = prof[i0 + 1:]
    flank_left = float(left.max())
    flank_right = float(right.max())
    dip = float(prof[i0])
    depth = min(flank_left, flank_right) - dip
    if depth <= 0.0:
        raise NoTransparencyError("dip is not below its flanking maxima")

    half = dip + 0.5 * depth

    def cross(step: int) -> float:
        i = i0
        while prof[i] < half:
            i += step
        # linear interpolation between the first sample at or above the
        # half level and its inward neighbour
        p_out, p_in = prof[i], prof[i - step]
        t = (half - p_in) / (p_out - p_in)
        return float(x[i - step] + t * (x[i] - x[i - step]))

    x_left = cross(-1)
    x_right = cross(+1)
    return {
        "x_dip": float(x[i0]),
        "dip": dip,
        "flank_left": flank_left,
        "flank_right": flank_right,
        "depth": float(depth),
        "contrast": float(depth / min(flank_left, flank_right)),
        "width": x_right - x_left,
    }


def extract_gamma_vit(x, im_profile, x_resonance: float = 0.0) -> float:
    """Transparency linewidth: full width at half dip depth."""
    return dip_features(x, im_profile, x_resonance)["width"]


def fit_line(xs, ys) -> tuple[float, float, float]:
    """Least-squares line fit returning (slope, intercept, r_squared)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    ss_res = float(np.sum(resid ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else 1.0
    return float(slope), float(intercept), r2
