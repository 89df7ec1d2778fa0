"""Command line interface.

Subcommands
-----------
spectrum      disorder-averaged probe susceptibility over a detuning grid
merit         cross-phase merit profiles at fixed signal dressing strengths
merit-scan    peak merit versus signal dressing strength
linewidth     transparency linewidth versus vacuum coupling strength
oracle-check  steady-state solver versus closed forms on random draws
convert-units angular frequency (THz) <-> energy (meV)

Exit codes: 0 success, 2 configuration error, 3 degenerate steady state,
4 threshold failure in a check subcommand.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import disorder as dis
from . import merit as mer
from . import susceptibility as sus
from .bloch import chi_bloch
from .errors import (
    ConfigError,
    DegenerateSystemError,
    NoTransparencyError,
    ThresholdError,
)
from .model import (
    FieldParams,
    PlotSpec,
    PrimitiveRates,
    RunConfig,
    SystemParams,
    config_from_file,
    mev_to_thz,
    thz_to_mev,
)
from .output import write_manifest, write_svg, write_table
from .recipes import resolve_recipe

_BASE_COMMENTS = ("all rates, detunings and Rabi amplitudes in units of "
                  "the S1 population decay rate",)


def _grid_array(cfg: RunConfig) -> np.ndarray:
    g = cfg.grid
    return np.linspace(g.x_min, g.x_max, g.n_points)


def _spectrum_method(cfg: RunConfig) -> str:
    """Pick the averaging engine for the configured disorder family."""
    fam = cfg.disorder.family
    fields = cfg.params.fields
    if fam == "none":
        return "closed_full"
    if fam == "orientational":
        # the closed orientational average only covers the linear response
        if fields.omega_s_rabi == 0.0:
            return "orientational_analytic"
        return "mc"
    if fam == "gaussian":
        return "mc" if cfg.disorder.quadrature_off else "quadrature"
    # lorentzian: correlated offsets have closed forms, independent do not
    if cfg.disorder.correlation_mode == "correlated":
        if cfg.disorder.quadrature_off:
            return "mc"
        if fields.omega_s_rabi == 0.0:
            return "lorentzian_vit"
        return "lorentzian_kerr"
    return "mc"


def _eval_spectrum_chunk(payload):
    """Evaluate one contiguous grid chunk; used by the worker pool.

    Returns (chi, stderr_re, stderr_im) for the chunk.  Deterministic
    engines report zero standard error.
    """
    method, x, cfg, offset = payload
    rates = cfg.params.rates.derived()
    fields = cfg.params.fields
    k = cfg.params.scale.k_scale
    d = cfg.disorder
    zeros = np.zeros(len(x))
    if method == "closed_full":
        return sus.chi_homogeneous(x, rates, fields, k), zeros, zeros
    if method == "orientational_analytic":
        chi = sus.chi_orientational(x, fields.omega_c_collective,
                                    fields.delta_c, rates.gamma31_c,
                                    rates.gamma21_c, k)
        return chi, zeros, zeros
    if method == "lorentzian_vit":
        chi = sus.chi_lorentzian_vit(x, fields.delta_c, rates.gamma31_c,
                                     rates.gamma21_c,
                                     fields.omega_c_collective, d.sigma3, k)
        return chi, zeros, zeros
    if method == "lorentzian_kerr":
        chi = sus.chi_lorentzian_kerr(x, rates, fields, d.sigma3, d.sigma4, k)
        return chi, zeros, zeros
    if method == "quadrature":
        avg = dis.quadrature_average(x, rates, fields, d, k)
        return avg.chi_mean, zeros, zeros
    avg = dis.mc_average(x, rates, fields, d, k, index_offset=offset)
    return avg.chi_mean, avg.stderr.real, avg.stderr.imag


def _split_bounds(n: int, workers: int):
    workers = max(1, min(workers, n))
    edges = np.linspace(0, n, workers + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _run_spectrum(cfg: RunConfig, method: str, x: np.ndarray):
    """Average over the grid, split across the worker pool.

    Per-point results depend only on the global point index and the
    seed, so the reduction is identical for any worker count.
    """
    payloads = [(method, x[a:b], cfg, a)
                for a, b in _split_bounds(len(x), cfg.workers)]
    if len(payloads) == 1:
        results = [_eval_spectrum_chunk(payloads[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(payloads)) as pool:
            results = list(pool.map(_eval_spectrum_chunk, payloads))
    chi = np.concatenate([r[0] for r in results])
    err_re = np.concatenate([r[1] for r in results])
    err_im = np.concatenate([r[2] for r in results])
    return chi, err_re, err_im


def _chi_at(cfg: RunConfig, method: str, x: np.ndarray) -> np.ndarray:
    return _eval_spectrum_chunk((method, np.asarray(x, dtype=float),
                                 cfg, 0))[0]


# ---------------------------------------------------------------------------
# spectrum

def cmd_spectrum(cfg: RunConfig, meta: dict, argv: list[str]) -> int:
    started = time.monotonic()
    x = _grid_array(cfg)
    method = _spectrum_method(cfg)
    kabs = abs(cfg.params.scale.k_scale)
    chi, err_re, err_im = _run_spectrum(cfg, method, x)
    chi = chi / kabs
    rows = [(xi, c.real, c.imag, er / kabs, ei / kabs, method)
            for xi, c, er, ei in zip(x, chi, err_re, err_im)]

    overlay = meta.get("mc_overlay")
    mc_x = mc_chi = None
    if overlay is not None and method != "mc":
        stride = int(overlay.get("stride", 8))
        mc_x = x[::stride]
        rates = cfg.params.rates.derived()
        avg = dis.mc_average(mc_x, rates, cfg.params.fields, cfg.disorder,
                             cfg.params.scale.k_scale)
        mc_chi = avg.chi_mean / kabs
        rows.extend(
            (xi, c.real, c.imag, er / kabs, ei / kabs, "mc")
            for xi, c, er, ei in zip(mc_x, mc_chi, avg.stderr.real,
                                     avg.stderr.imag))

    comments = list(_BASE_COMMENTS)
    comments.append("susceptibility normalized by the oscillator "
                    "strength scale |K|")
    comments.append(f"family={cfg.disorder.family} "
                    f"mode={cfg.disorder.correlation_mode} "
                    f"seed={cfg.disorder.seed}")
    header = ["x", "re_chi", "im_chi", "stderr_re", "stderr_im", "method"]
    outputs = [cfg.output.path]
    write_table(cfg.output.path, cfg.output.format, comments, header, rows)

    if cfg.plot.kind == "svg":
        comp = cfg.plot_component
        series = [(f"{comp}_chi {method}",
                   chi.imag if comp == "im" else chi.real)]
        write_svg(cfg.plot.path, x, series, title="probe susceptibility",
                  xlabel="probe detuning x", ylabel=f"{comp} chi / |K|")
        outputs.append(cfg.plot.path)

    write_manifest(cfg.output.path, cfg.to_dict(), argv, started, outputs)
    print(f"wrote {cfg.output.path} ({len(rows)} rows, method={method})")
    return 0


# ---------------------------------------------------------------------------
# merit

def _matched_lorentzian_widths(cfg: RunConfig):
    """Widths for the closed-form Lorentzian comparison column."""
    d = cfg.disorder
    if d.family == "gaussian":
        return dis.match_fwhm(d.sigma3), dis.match_fwhm(d.sigma4)
    if d.family == "lorentzian":
        return d.sigma3, d.sigma4
    return 0.0, 0.0


def _merit_callable(cfg: RunConfig, method: str, omega_s: float):
    fields = dataclasses.replace(cfg.params.fields, omega_s_rabi=omega_s)
    params = dataclasses.replace(cfg.params, fields=fields)
    local = dataclasses.replace(cfg, params=params)

    def eta(xv: np.ndarray) -> np.ndarray:
        return mer.eta_from_chi(_chi_at(local, method, xv))

    return eta


def _clip_flags(values: np.ndarray, clip: float):
    vals = np.where(np.isfinite(values), values, 0.0)
    flags = (~np.isfinite(values)) | (np.abs(vals) > clip)
    return np.clip(vals, -clip, clip), flags


def cmd_merit(cfg: RunConfig, meta: dict, argv: list[str]) -> int:
    started = time.monotonic()
    lambdas = cfg.lambda_s_list if cfg.lambda_s_list is not None else [0.0]
    x = _grid_array(cfg)
    rates = cfg.params.rates.derived()
    fields = cfg.params.fields
    omega_c = fields.omega_c_collective
    sig3_l, sig4_l = _matched_lorentzian_widths(cfg)
    sigma31_l = rates.gamma31_c + sig3_l
    sigma41_l = rates.gamma41_c + sig4_l
    # model-side broadened signal width used to realize each lambda_s
    sigma41_model = rates.gamma41_c + (
        cfg.disorder.sigma4 if cfg.disorder.family in ("gaussian",
                                                       "lorentzian") else 0.0)
    sigma31_est = rates.gamma31_c + (
        cfg.disorder.sigma3 if cfg.disorder.family in ("gaussian",
                                                       "lorentzian") else 0.0)

    rows = []
    comments = list(_BASE_COMMENTS)
    comments.append("eta values clipped to +-%r near transparency "
                    "divergences" % cfg.clip_eta)
    comments.append(f"eta_gaussian column computed with "
                    f"family={cfg.disorder.family}")
    plot_series = []
    for lam in lambdas:
        omega_s = mer.omega_s_for_lambda(lam, fields.delta_s, sigma41_model)
        method = _spectrum_method(cfg)
        eta_g_fn = _merit_callable(cfg, method, omega_s)
        eta_g = eta_g_fn(x)

        dressing = mer.signal_dressing(
            mer.omega_s_for_lambda(lam, fields.delta_s, sigma41_l),
            fields.delta_s, sigma41_l)
        eta_l = mer.eta_profile_closed(x, omega_c, rates.gamma21_c,
                                       sigma31_l, dressing)

        g_vals, g_flags = _clip_flags(eta_g, cfg.clip_eta)
        l_vals, l_flags = _clip_flags(eta_l, cfg.clip_eta)
        flags = np.where(g_flags | l_flags, "clipped", "ok")
        rows.extend((lam, xi, gv, lv, fl) for xi, gv, lv, fl
                    in zip(x, g_vals, l_vals, flags))

        gamma_s_g = lam * sigma41_model
        x_est_g = dressing.x_s + omega_c * np.sqrt(
            (rates.gamma21_c + gamma_s_g) / sigma31_est)
        x_max_g, eta_max_g, bound_g = mer.maximize_eta(eta_g_fn, x_est_g)

        def eta_l_fn(xv, _d=dressing):
            return mer.eta_profile_closed(xv, omega_c, rates.gamma21_c,
                                          sigma31_l, _d)

        x_est_l = dressing.x_s + omega_c * np.sqrt(
            (rates.gamma21_c + dressing.gamma_s) / sigma31_l)
        x_max_l, eta_max_l, bound_l = mer.maximize_eta(eta_l_fn, x_est_l)

        comments.append(
            f"summary lambda_s={lam!r} eta_max_gaussian={eta_max_g!r} "
            f"x_max_gaussian={x_max_g!r} eta_max_lorentzian={eta_max_l!r} "
            f"x_max_lorentzian={x_max_l!r} boundary_gaussian={bound_g} "
            f"boundary_lorentzian={bound_l}")
        report = mer.check_signal_bound(omega_c, rates.gamma21_c, sigma31_l,
                                        dressing, sig3_l)
        combined = report.get("combined_threshold", {}).get("grade", "n/a")
        comments.append(
            f"signal_bounds lambda_s={lam!r} "
            f"width_bound={report['width_bound']['satisfied']} "
            f"shift_bound={report['shift_bound']['satisfied']} "
            f"combined={combined}")
        plot_series.append((f"model lam={lam:g}", g_vals))
        plot_series.append((f"matched lam={lam:g}", l_vals))

    header = ["lambda_s", "x", "eta_gaussian", "eta_lorentzian_closed",
              "flag"]
    outputs = [cfg.output.path]
    write_table(cfg.output.path, cfg.output.format, comments, header, rows)
    if cfg.plot.kind == "svg":
        write_svg(cfg.plot.path, x, plot_series,
                  title="cross-phase merit", xlabel="probe detuning x",
                  ylabel="eta", y_clip=cfg.clip_eta)
        outputs.append(cfg.plot.path)
    write_manifest(cfg.output.path, cfg.to_dict(), argv, started, outputs)
    print(f"wrote {cfg.output.path} ({len(lambdas)} dressing strengths)")
    return 0


# ---------------------------------------------------------------------------
# merit-scan

def _crossing_log_linear(lams: np.ndarray, etas: np.ndarray) -> float:
    """First downward crossing of eta_max = 1, interpolated in log(lambda)."""
    for i in range(len(lams) - 1):
        a, b = etas[i] - 1.0, etas[i + 1] - 1.0
        if a >= 0.0 and b < 0.0:
            t = a / (a - b)
            lg = np.log10(lams[i]) + t * (np.log10(lams[i + 1])
                                          - np.log10(lams[i]))
            return float(10.0 ** lg)
    return float("nan")


def cmd_merit_scan(cfg: RunConfig, meta: dict, argv: list[str]) -> int:
    started = time.monotonic()
    if cfg.lambda_s_scan is None:
        raise ConfigError("merit-scan needs lambda_s_scan "
                          "{min, max, n} in the config")
    scan = cfg.lambda_s_scan
    try:
        lams = np.geomspace(float(scan["min"]), float(scan["max"]),
                            int(scan["n"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad lambda_s_scan: {exc}")

    rates = cfg.params.rates.derived()
    fields = cfg.params.fields
    omega_c = fields.omega_c_collective
    sig3_l, sig4_l = _matched_lorentzian_widths(cfg)
    sigma31_l = rates.gamma31_c + sig3_l
    sigma41_l = rates.gamma41_c + sig4_l
    sigma41_model = rates.gamma41_c + cfg.disorder.sigma4
    sigma31_est = rates.gamma31_c + cfg.disorder.sigma3
    method = _spectrum_method(cfg)

    rows = []
    eta_g_max = np.empty(len(lams))
    eta_l_max = np.empty(len(lams))
    for i, lam in enumerate(lams):
        omega_s = mer.omega_s_for_lambda(lam, fields.delta_s, sigma41_model)
        eta_g_fn = _merit_callable(cfg, method, omega_s)
        gamma_s_g = lam * sigma41_model
        x_est_g = lam * fields.delta_s + omega_c * np.sqrt(
            (rates.gamma21_c + gamma_s_g) / sigma31_est)
        _, eta_max_g, bound_g = mer.maximize_eta(eta_g_fn, x_est_g)

        dressing = mer.signal_dressing(
            mer.omega_s_for_lambda(lam, fields.delta_s, sigma41_l),
            fields.delta_s, sigma41_l)

        def eta_l_fn(xv, _d=dressing):
            return mer.eta_profile_closed(xv, omega_c, rates.gamma21_c,
                                          sigma31_l, _d)

        x_est_l = dressing.x_s + omega_c * np.sqrt(
            (rates.gamma21_c + dressing.gamma_s) / sigma31_l)
        _, eta_max_l, bound_l = mer.maximize_eta(eta_l_fn, x_est_l)
        eta_g_max[i] = eta_max_g
        eta_l_max[i] = eta_max_l
        flag = "boundary" if (bound_g or bound_l) else "ok"
        rows.append((lam, eta_max_g, eta_max_l, flag))

    cross_g = _crossing_log_linear(lams, eta_g_max)
    cross_l = _crossing_log_linear(lams, eta_l_max)
    bound_l0 = mer.vit_optimum(omega_c, rates.gamma21_c, sigma31_l)[1]
    estimate = rates.gamma21_c / sig3_l if sig3_l > 0 else float("nan")

    comments = list(_BASE_COMMENTS)
    comments.append(
        f"crossing_eta1 lambda_gaussian={cross_g!r} "
        f"lambda_lorentzian={cross_l!r} "
        f"ratio_gaussian_to_lorentzian={cross_g / cross_l!r}")
    comments.append(
        f"small_dressing eta_gaussian={float(eta_g_max[0])!r} "
        f"eta_lorentzian={float(eta_l_max[0])!r} lorentzian_bound={bound_l0!r} "
        f"gaussian_to_bound_ratio={float(eta_g_max[0] / bound_l0)!r}")
    comments.append(
        f"crossing_estimate gamma21_over_sigma={estimate!r} "
        f"lorentzian_measured_to_estimate={cross_l / estimate!r}")

    header = ["lambda_s", "eta_max_gaussian", "eta_max_lorentzian", "flag"]
    outputs = [cfg.output.path]
    write_table(cfg.output.path, cfg.output.format, comments, header, rows)
    if cfg.plot.kind == "svg":
        write_svg(cfg.plot.path, np.log10(lams),
                  [("eta_max model", eta_g_max),
                   ("eta_max matched", eta_l_max)],
                  title="peak merit vs dressing strength",
                  xlabel="log10 lambda_s", ylabel="eta_max")
        outputs.append(cfg.plot.path)
    write_manifest(cfg.output.path, cfg.to_dict(), argv, started, outputs)
    print(f"wrote {cfg.output.path} "
          f"(crossings: model={cross_g!r} matched={cross_l!r})")
    return 0


# ---------------------------------------------------------------------------
# linewidth

def cmd_linewidth(cfg: RunConfig, meta: dict, argv: list[str]) -> int:
    started = time.monotonic()
    if cfg.omega0_scan is None:
        raise ConfigError("linewidth needs omega0_scan {min, max, n} "
                          "in the config")
    scan = cfg.omega0_scan
    try:
        omega0s = np.linspace(float(scan["min"]), float(scan["max"]),
                              int(scan["n"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad omega0_scan: {exc}")

    rates = cfg.params.rates.derived()
    fields = cfg.params.fields
    k = cfg.params.scale.k_scale
    kabs = abs(k)
    x = _grid_array(cfg)

    rows = []
    ok_o0, ok_wh, ok_wo = [], [], []
    for o0 in omega0s:
        flag = "ok"
        try:
            prof_h = sus.chi_vit(x, fields.delta_c, rates.gamma31_c,
                                 rates.gamma21_c, o0, k).imag / kabs
            w_h = mer.extract_gamma_vit(x, prof_h)
            prof_o = sus.chi_orientational(x, o0, fields.delta_c,
                                           rates.gamma31_c,
                                           rates.gamma21_c, k).imag / kabs
            w_o = mer.extract_gamma_vit(x, prof_o)
        except NoTransparencyError:
            flag = "no_dip"
            w_h = w_o = float("nan")
        rows.append((o0, w_h, w_o, flag))
        if flag == "ok":
            ok_o0.append(o0)
            ok_wh.append(w_h)
            ok_wo.append(w_o)

    if len(ok_o0) < 2:
        raise ThresholdError("fewer than two resolvable transparency dips "
                             "in the coupling scan; cannot fit slopes")
    slope_h, icpt_h, r2_h = mer.fit_line(np.array(ok_o0), np.array(ok_wh))
    slope_o, icpt_o, r2_o = mer.fit_line(np.array(ok_o0), np.array(ok_wo))

    comments = list(_BASE_COMMENTS)
    comments.append("linewidth = full width of the transparency dip at "
                    "half its depth")
    comments.append(f"fit_homogeneous slope={slope_h!r} "
                    f"intercept={icpt_h!r} r2={r2_h!r}")
    comments.append(f"fit_orientational slope={slope_o!r} "
                    f"intercept={icpt_o!r} r2={r2_o!r}")
    comments.append(f"slope_orientational_greater={slope_o > slope_h}")

    header = ["omega0", "gamma_vit_homogeneous", "gamma_vit_orientational",
              "flag"]
    outputs = [cfg.output.path]
    write_table(cfg.output.path, cfg.output.format, comments, header, rows)
    if cfg.plot.kind == "svg":
        arr = np.array([(r[1], r[2]) for r in rows])
        write_svg(cfg.plot.path, omega0s,
                  [("homogeneous", arr[:, 0]), ("orientational", arr[:, 1])],
                  title="transparency linewidth vs coupling",
                  xlabel="omega0", ylabel="linewidth")
        outputs.append(cfg.plot.path)
    write_manifest(cfg.output.path, cfg.to_dict(), argv, started, outputs)
    print(f"wrote {cfg.output.path} (slopes: homogeneous={slope_h:.4f} "
          f"orientational={slope_o:.4f})")
    return 0


# ---------------------------------------------------------------------------
# oracle-check

_DRAW_RANGES = ("rates uniform in [0, 10], detunings uniform in [-10, 10], "
                "coupling and signal Rabi uniform in [0, 3], probe Rabi "
                "log-uniform in [1e-4, 1e-1]")


def _random_draw(rng: np.random.Generator):
    rates = PrimitiveRates(kappa=rng.uniform(0, 10),
                           gamma_pd=rng.uniform(0, 10),
                           gamma_ivr=rng.uniform(0, 10),
                           gamma_31=rng.uniform(0, 10),
                           gamma_32=rng.uniform(0, 10))
    fields = FieldParams(omega_p_rabi=10.0 ** rng.uniform(-4, -1),
                         omega_s_rabi=rng.uniform(0, 3),
                         omega_c_rabi=rng.uniform(0, 3),
                         n_molecules=1,
                         delta_p=rng.uniform(-10, 10),
                         delta_c=rng.uniform(-10, 10),
                         delta_s=rng.uniform(-10, 10))
    return rates, fields


def _point_deviation(rates: PrimitiveRates, fields: FieldParams) -> float:
    derived = rates.derived()
    chi_solver = chi_bloch(derived, fields)
    chi_closed = sus.chi_homogeneous(np.array([fields.delta_p]), derived,
                                     fields)[0]
    scale = max(abs(chi_closed), 1e-300)
    return abs(chi_solver - chi_closed) / scale


def cmd_oracle_check(args, argv: list[str]) -> int:
    if args.config:
        cfg = config_from_file(args.config)
        rates, fields = cfg.params.rates, cfg.params.fields
        try:
            dev = _point_deviation(rates, fields)
        except DegenerateSystemError as exc:
            raise DegenerateSystemError(
                f"configured point is degenerate: {exc}")
        print(f"oracle-check: single point, relative deviation {dev:.3e}")
        if fields.omega_c_rabi == 0.0 and fields.omega_s_rabi == 0.0:
            derived = rates.derived()
            two = sus.chi_two_level(np.array([fields.delta_p]),
                                    derived.gamma31_c)[0]
            chi = chi_bloch(derived, fields)
            dev2 = abs(chi - two) / max(abs(two), 1e-300)
            print(f"oracle-check: two-level closed form deviation "
                  f"{dev2:.3e}")
        if dev > 1e-9:
            raise ThresholdError(
                f"solver vs closed form deviation {dev:.3e} exceeds 1e-9")
        return 0

    rng = np.random.default_rng(args.seed)
    devs = np.empty(args.samples)
    worst = None
    for i in range(args.samples):
        rates, fields = _random_draw(rng)
        try:
            devs[i] = _point_deviation(rates, fields)
        except DegenerateSystemError as exc:
            raise DegenerateSystemError(
                f"draw {i} degenerate ({rates}, {fields}): {exc}")
        if worst is None or devs[i] > devs[worst]:
            worst = i
    print(f"oracle-check: {args.samples} draws ({_DRAW_RANGES})")
    print(f"oracle-check: max relative deviation {devs.max():.3e}, "
          f"median {np.median(devs):.3e}")
    if devs.max() > 1e-9:
        raise ThresholdError(
            f"max deviation {devs.max():.3e} over {args.samples} draws "
            f"exceeds 1e-9")
    return 0


# ---------------------------------------------------------------------------
# plumbing

def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    d = cfg.disorder
    if getattr(args, "seed", None) is not None:
        d = dataclasses.replace(d, seed=args.seed)
    if getattr(args, "samples", None) is not None:
        d = dataclasses.replace(d, n_samples=args.samples)
    quad = getattr(args, "quadrature", None)
    if quad is not None:
        if quad == "off":
            d = dataclasses.replace(d, quadrature_off=True)
        else:
            try:
                nodes = int(quad)
            except ValueError:
                raise ConfigError(
                    f"--quadrature takes a node count or 'off', got {quad!r}")
            d = dataclasses.replace(d, quadrature_nodes=nodes,
                                    quadrature_off=False)
    cfg.disorder = d
    if getattr(args, "workers", None) is not None:
        if args.workers < 1:
            raise ConfigError("--workers must be >= 1")
        cfg.workers = args.workers
    if getattr(args, "out", None) is not None:
        cfg.output = dataclasses.replace(cfg.output, path=args.out)
    if getattr(args, "format", None) is not None:
        path = cfg.output.path
        if getattr(args, "out", None) is None and \
                path.endswith(".csv") and args.format == "json":
            path = path[:-4] + ".json"
        cfg.output = dataclasses.replace(cfg.output, format=args.format,
                                         path=path)
    if getattr(args, "plot", None) is not None:
        cfg.plot = PlotSpec(kind="svg", path=args.plot)
    return cfg


def _resolve(args, command: str):
    if args.recipe and args.config:
        raise ConfigError("give either --recipe or --config, not both")
    if args.recipe:
        cfg, meta = resolve_recipe(args.recipe)
        want = meta.get("command", command)
        if want != command:
            raise ConfigError(
                f"recipe {args.recipe!r} belongs to the {want!r} "
                f"subcommand; run: vitkerr {want} --recipe {args.recipe}")
    elif args.config:
        cfg, meta = config_from_file(args.config), {"command": command}
    else:
        raise ConfigError("need --recipe or --config")
    return _apply_overrides(cfg, args), meta


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--recipe", help="named bundled parameter set")
    p.add_argument("--out", help="output data path")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--plot", metavar="SVG", help="also write an SVG plot")
    p.add_argument("--seed", type=int, help="override the disorder seed")
    p.add_argument("--samples", type=int,
                   help="override the Monte Carlo sample count")
    p.add_argument("--workers", type=int, help="worker process count")
    p.add_argument("--quadrature", metavar="NODES|off",
                   help="override quadrature node count, or 'off' to force "
                        "Monte Carlo averaging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vitkerr",
        description="Linear and cross-Kerr optical response of "
                    "cavity-coupled four-level molecular photoswitches")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, desc in (
            ("spectrum", cmd_spectrum,
             "disorder-averaged probe susceptibility over a detuning grid"),
            ("merit", cmd_merit,
             "cross-phase merit profiles at fixed dressing strengths"),
            ("merit-scan", cmd_merit_scan,
             "peak merit versus signal dressing strength"),
            ("linewidth", cmd_linewidth,
             "transparency linewidth versus vacuum coupling strength")):
        p = sub.add_parser(name, help=desc)
        _add_common(p)
        p.set_defaults(run=fn, needs_config=True)

    p = sub.add_parser("oracle-check",
                       help="steady-state solver versus closed forms")
    p.add_argument("--config", help="check a single configured point")
    p.add_argument("--samples", type=int, default=1000,
                   help="random draw count (default 1000)")
    p.add_argument("--seed", type=int, default=20260815)
    p.set_defaults(run=cmd_oracle_check, needs_config=False)

    p = sub.add_parser("convert-units",
                       help="convert between THz and meV")
    p.add_argument("value", type=float)
    p.add_argument("direction", choices=("thz-to-mev", "mev-to-thz"))
    p.set_defaults(run=None, needs_config=False)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    try:
        if args.command == "convert-units":
            fn = thz_to_mev if args.direction == "thz-to-mev" else mev_to_thz
            print(repr(fn(args.value)))
            return 0
        if args.command == "oracle-check":
            return cmd_oracle_check(args, argv)
        cfg, meta = _resolve(args, args.command)
        return args.run(cfg, meta, argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DegenerateSystemError as exc:
        print(f"error: degenerate steady state: {exc}", file=sys.stderr)
        return 3
    except ThresholdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
