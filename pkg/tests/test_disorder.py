"""Ensemble averaging: shifted Gauss-Hermite quadrature and Monte Carlo."""

from __future__ import annotations

import math

import numpy as np
import pytest

from vitkerr.disorder import (chi_full_detuned, gh_nodes, match_fwhm,
                              mc_average, mc_point, quadrature_average,
                              quadrature_correlated, quadrature_independent)
from vitkerr.model import DisorderSpec, FieldParams, PrimitiveRates
from vitkerr.susceptibility import (chi_homogeneous, chi_lorentzian_vit,
                                    chi_orientational)

VIT_RATES = PrimitiveRates().derived()
KERR_RATES = PrimitiveRates(kappa=1e-4, gamma_pd=0.00195,
                            gamma_ivr=2.0).derived()
VIT_FIELDS = FieldParams(omega_p_rabi=1e-3, omega_s_rabi=0.0,
                         omega_c_rabi=1.2)
KERR_FIELDS = FieldParams(omega_p_rabi=1e-3, omega_s_rabi=0.3,
                          omega_c_rabi=0.8)


def _max_z(avg_mc, ref, floor=1e-15):
    """Worst componentwise deviation in units of the MC standard error."""
    z_re = np.abs(avg_mc.chi_mean.real - ref.real) / \
        np.maximum(avg_mc.stderr.real, floor)
    z_im = np.abs(avg_mc.chi_mean.imag - ref.imag) / \
        np.maximum(avg_mc.stderr.imag, floor)
    return max(z_re.max(), z_im.max())


def test_matched_lorentzian_half_width():
    assert match_fwhm(5.0) == pytest.approx(5.8870501125773735, rel=1e-15)
    assert match_fwhm(1.0) == pytest.approx(math.sqrt(2.0 * math.log(2.0)))


def test_gh_nodes_normalization():
    nodes, w = gh_nodes(61, 2.0)
    assert abs(w.sum() - 1.0) < 1e-12
    assert abs((w * nodes).sum()) < 1e-12
    assert abs((w * nodes ** 2).sum() - 4.0) < 1e-10

    nodes, w = gh_nodes(101, 2.0, shift=4.0)
    assert np.all(nodes.imag == 4.0)
    assert abs(w.sum() - 1.0) < 1e-10
    # the reweighting makes the shifted contour reproduce the original
    # Gaussian moments for analytic integrands
    assert abs((w * nodes ** 2).sum() - 4.0) < 1e-8


def test_zero_width_average_is_homogeneous():
    x = np.linspace(-2, 2, 31)
    out = quadrature_correlated(x, VIT_RATES, VIT_FIELDS, 0.0, 0.0, 51)
    ref = chi_homogeneous(x, VIT_RATES, VIT_FIELDS, variant="full")
    assert np.max(np.abs(out - ref)) <= 1e-12 * np.max(np.abs(ref))


def test_quadrature_self_convergence():
    x = np.linspace(-20, 20, 101)
    a = quadrature_correlated(x, VIT_RATES, VIT_FIELDS, 6.0, 6.0, 101)
    b = quadrature_correlated(x, VIT_RATES, VIT_FIELDS, 6.0, 6.0, 201)
    assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(a))

    xk = np.linspace(-0.1, 0.1, 41)
    a = quadrature_correlated(xk, KERR_RATES, KERR_FIELDS, 5.0, 5.0, 101)
    b = quadrature_correlated(xk, KERR_RATES, KERR_FIELDS, 5.0, 5.0, 201)
    assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(a))

    a = quadrature_independent(x, VIT_RATES, VIT_FIELDS, 6.0, 6.0, 101)
    b = quadrature_independent(x, VIT_RATES, VIT_FIELDS, 6.0, 6.0, 201)
    assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(a))


def test_quadrature_consistent_with_mc_correlated():
    x = np.linspace(-15, 15, 9)
    spec = DisorderSpec(family="gaussian", sigma3=6.0, sigma4=6.0,
                        correlation_mode="correlated", n_samples=20_000,
                        seed=31)
    quad = quadrature_average(x, VIT_RATES, VIT_FIELDS, spec)
    mc = mc_average(x, VIT_RATES, VIT_FIELDS, spec)
    assert quad.method == "quadrature"
    assert mc.method == "mc"
    assert _max_z(mc, quad.chi_mean) < 5.0


def test_quadrature_consistent_with_mc_signal_dressed():
    # signal driving moves saturation poles across the shifted contour,
    # exercising the residue corrections
    x = np.linspace(-0.1, 0.1, 9)
    spec = DisorderSpec(family="gaussian", sigma3=5.0, sigma4=5.0,
                        correlation_mode="correlated", n_samples=20_000,
                        seed=33)
    quad = quadrature_average(x, KERR_RATES, KERR_FIELDS, spec)
    mc = mc_average(x, KERR_RATES, KERR_FIELDS, spec)
    assert _max_z(mc, quad.chi_mean) < 5.0


def test_quadrature_consistent_with_mc_independent():
    x = np.linspace(-0.1, 0.1, 9)
    spec = DisorderSpec(family="gaussian", sigma3=5.0, sigma4=5.0,
                        correlation_mode="independent", n_samples=20_000,
                        seed=35)
    quad = quadrature_average(x, KERR_RATES, KERR_FIELDS, spec)
    mc = mc_average(x, KERR_RATES, KERR_FIELDS, spec)
    assert _max_z(mc, quad.chi_mean) < 5.0


def test_quadrature_degenerate_drives():
    # Omega_p = 0 skips the spurious saturation root, Omega_c = 0 leaves a
    # plain broadened line; both must stay finite and match the kernel
    x = np.linspace(-3, 3, 21)
    no_probe = FieldParams(omega_p_rabi=0.0, omega_s_rabi=0.0,
                           omega_c_rabi=1.2)
    out = quadrature_correlated(x, VIT_RATES, no_probe, 2.0, 2.0, 101)
    assert np.all(np.isfinite(out))
    ref = chi_lorentzian_vit(x, 0.0, VIT_RATES.gamma31_c,
                             VIT_RATES.gamma21_c, 1.2, 0.0)
    # sanity only: same sign structure of the imaginary part
    assert np.all(out.imag > 0) and np.all(ref.imag > 0)

    no_cavity = FieldParams(omega_p_rabi=1e-3, omega_s_rabi=0.0,
                            omega_c_rabi=0.0)
    spec = DisorderSpec(family="gaussian", sigma3=2.0, sigma4=0.0,
                        correlation_mode="correlated", n_samples=20_000,
                        seed=37)
    quad = quadrature_average(x, VIT_RATES, no_cavity, spec)
    mc = mc_average(x, VIT_RATES, no_cavity, spec)
    assert np.all(np.isfinite(quad.chi_mean))
    assert _max_z(mc, quad.chi_mean) < 5.0


def test_mc_deterministic_and_partition_invariant():
    x = np.linspace(-2, 2, 11)
    spec = DisorderSpec(family="gaussian", sigma3=3.0, sigma4=0.0,
                        correlation_mode="correlated", n_samples=5_000,
                        seed=99)
    a = mc_average(x, VIT_RATES, VIT_FIELDS, spec)
    b = mc_average(x, VIT_RATES, VIT_FIELDS, spec)
    assert np.array_equal(a.chi_mean, b.chi_mean)
    assert np.array_equal(a.stderr, b.stderr)

    # splitting the grid must reproduce the same streams per point
    left = mc_average(x[:4], VIT_RATES, VIT_FIELDS, spec)
    right = mc_average(x[4:], VIT_RATES, VIT_FIELDS, spec, index_offset=4)
    assert np.array_equal(np.concatenate([left.chi_mean, right.chi_mean]),
                          a.chi_mean)

    # block size must not matter either
    big = DisorderSpec(family="gaussian", sigma3=3.0, sigma4=0.0,
                       correlation_mode="correlated", n_samples=250_000,
                       seed=99)
    m1, e1 = mc_point(0, 0.5, VIT_RATES, VIT_FIELDS, big)
    m2, e2 = mc_point(0, 0.5, VIT_RATES, VIT_FIELDS, big)
    assert (m1, e1) == (m2, e2)


def test_mc_orientational_matches_analytic():
    x = np.array([-2.0, -0.4, 0.0, 0.7, 3.1])
    spec = DisorderSpec(family="orientational", n_samples=40_000, seed=41)
    mc = mc_average(x, VIT_RATES, VIT_FIELDS, spec)
    ref = chi_orientational(x, VIT_FIELDS.omega_c_collective, 0.0,
                            VIT_RATES.gamma31_c, VIT_RATES.gamma21_c)
    assert _max_z(mc, ref) < 5.0


def test_mc_lorentzian_matches_closed_form():
    x = np.array([-5.0, -1.2, 0.0, 0.8, 4.0])
    spec = DisorderSpec(family="lorentzian", sigma3=2.0, sigma4=2.0,
                        correlation_mode="correlated", n_samples=50_000,
                        seed=43)
    mc = mc_average(x, VIT_RATES, VIT_FIELDS, spec)
    ref = chi_lorentzian_vit(x, 0.0, VIT_RATES.gamma31_c,
                             VIT_RATES.gamma21_c, 1.2, 2.0)
    assert _max_z(mc, ref) < 5.0


def test_kernel_matches_homogeneous_at_zero_offsets():
    x = np.linspace(-3, 3, 61)
    a = chi_full_detuned(0.0, 0.0, 0.0, x, KERR_RATES, KERR_FIELDS)
    b = chi_homogeneous(x, KERR_RATES, KERR_FIELDS, variant="full")
    assert np.max(np.abs(a - b)) <= 1e-13 * np.max(np.abs(b))
