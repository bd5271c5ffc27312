"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines as they complete.  Every tolerance is fixed here, not calibrated.
"""

import math
import warnings

import numpy as np
import pytest

from sweepfd import (
    FOREST_RUTH,
    MPE_T4,
    MPE_T6,
    MPE_T8,
    SUZUKI4,
    YOSHIDA6,
    AdvDiffParams,
    AdvDiffVariant,
    AdvectionParams,
    AdvectionVariant,
    DiffusionParams,
    DiffusionVariant,
    Equation,
    Field1D,
    ModifiedNormTag,
    PairUpdate,
    StepParams,
    SweepDirection,
    abs_moment,
    abs_weighted_mean,
    advdiff_coeffs_rw,
    advection_coeffs,
    apply_scheme,
    diffusion_coeffs,
    exact_evolve,
    fit_power_law,
    gaussian_profile,
    modified_norm,
    norm,
    numeric_amplification,
    phase_angle,
    resolve_preset,
    scheme_amplification,
    scheme_factor,
    sextic_profile,
    sweep,
    sweep_as_matrix,
    validate_order_conditions,
)
from sweepfd.spectral import diffusion_t2_factor, richardson_limit

ASC = SweepDirection.ASCENDING
DESC = SweepDirection.DESCENDING

ADVECTION_PLATEAU = 4.999438       # reference converged value, dx = 0.025
ADVECTION_PLATEAU_HALF = 4.999997  # reference converged value, dx = 0.0125


def conclude(number: int, label: str, failures: list):
    status = "FAIL" if failures else "PASS"
    detail = f" -- {'; '.join(failures)}" if failures else ""
    print(f"[acceptance {number}] {status}: {label}{detail}")
    assert not failures, f"criterion {number}: {failures}"


def check(failures: list, ok: bool, message: str):
    if not ok:
        failures.append(message)


def preset(name, equation):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return resolve_preset(name, equation)


def evolve_measure(scheme, initial, dt, steps, diffusivity, velocity, measure):
    params = StepParams.from_physics(dt, initial.dx, diffusivity, velocity)
    f = initial.copy()
    for _ in range(steps):
        apply_scheme(f, scheme, params)
    return measure(f)


# ---------------------------------------------------------------------------
# shared experiment tables

TRANSPORT_STEP_COUNTS = (50, 100, 200, 400, 800, 1000, 2000)
TRANSPORT_RW_STEP_COUNTS = (50, 100, 200, 400, 800, 1600)
TRANSPORT_HALF_GRID_STEPS = (400, 800, 1000, 2000)
DIFFUSION_STEP_COUNTS = (9, 12, 16, 25, 36, 50, 72, 100, 144, 200, 288, 400)
EULER_STABLE_STEP_COUNTS = (100, 144, 200, 288, 400)


@pytest.fixture(scope="module")
def transport_table():
    """Pulse transport observable <<x>> vs dt, dx = 0.025 box [-10, 10]."""
    initial = sextic_profile(800, -10.0, 0.025, -5.0)
    table = {}
    for name in ("a2c", "fr", "s4", "y6"):
        scheme = preset(name, Equation.ADVECTION)
        table[name] = {m: evolve_measure(scheme, initial, 10.0 / m, m, 0.0, 1.0,
                                         abs_weighted_mean)
                       for m in TRANSPORT_STEP_COUNTS}
    scheme = preset("rw1a", Equation.ADVECTION)
    table["rw1a"] = {m: evolve_measure(scheme, initial, 10.0 / m, m, 0.0, 1.0,
                                       abs_weighted_mean)
                     for m in TRANSPORT_RW_STEP_COUNTS}
    table["exact"] = abs_weighted_mean(exact_evolve(initial, 0.0, 1.0, 10.0))
    return table


@pytest.fixture(scope="module")
def transport_half_grid_table():
    """Same transport experiment on the halved grid, dx = 0.0125."""
    initial = sextic_profile(1600, -10.0, 0.0125, -5.0)
    table = {}
    for name in ("a2c", "fr", "s4", "y6"):
        scheme = preset(name, Equation.ADVECTION)
        table[name] = {m: evolve_measure(scheme, initial, 10.0 / m, m, 0.0, 1.0,
                                         abs_weighted_mean)
                       for m in TRANSPORT_HALF_GRID_STEPS}
    return table


@pytest.fixture(scope="module")
def diffusion_table():
    """Diffused-Gaussian <|x|> vs dt, 120 points on [-6, 6], D = 1/2, t = 1."""
    initial = gaussian_profile(120, -6.0, 0.1, 0.0, 0.5)
    table = {}
    for name, steps in (("d2s", DIFFUSION_STEP_COUNTS), ("t4", DIFFUSION_STEP_COUNTS), ("t6", DIFFUSION_STEP_COUNTS),
                        ("euler", EULER_STABLE_STEP_COUNTS)):
        scheme = preset(name, Equation.DIFFUSION)
        table[name] = {m: evolve_measure(scheme, initial, 1.0 / m, m, 0.5, 0.0, abs_moment)
                       for m in steps}
    table["exact"] = abs_moment(exact_evolve(initial, 0.5, 0.0, 1.0))
    return table


@pytest.fixture(scope="module")
def norm_error_traces():
    """Norm-error traces, box [0, 10], dx=0.05, dt=0.033, v=1, D=0.005."""
    initial = gaussian_profile(200, 0.0, 0.05, 5.0, 0.5)
    reference = norm(initial)
    params = StepParams.from_physics(0.033, 0.05, 0.005, 1.0)
    steps = 1212  # four transits of the v=1 pulse around the 10-long box
    traces = {}
    for name in ("rw1a", "rw1b", "ad2c", "a_d", "t4"):
        scheme = preset(name, Equation.ADV_DIFF)
        f = initial.copy()
        trace = np.empty(steps)
        for i in range(steps):
            apply_scheme(f, scheme, params)
            trace[i] = (norm(f) - reference) / reference
        traces[name] = trace
    return traces


# ---------------------------------------------------------------------------
# criteria

def test_criterion_1_advection_convergence_plateau(transport_table, transport_half_grid_table):
    failures = []
    fit_steps = (400, 800, 1000, 2000)
    dts = [10.0 / m for m in fit_steps]
    for name in ("a2c", "fr", "s4", "y6"):
        fit = fit_power_law(dts, [transport_table[name][m] for m in fit_steps])
        check(failures, abs(fit.plateau - ADVECTION_PLATEAU) <= 2e-5,
              f"{name} plateau {fit.plateau:.7f} not within 2e-5 of {ADVECTION_PLATEAU}")
    for name in ("fr", "s4", "y6"):
        value = transport_table[name][1000]  # dt = 0.01
        check(failures, abs(value - ADVECTION_PLATEAU) <= 2e-5,
              f"{name} value at dt=0.01 is {value:.7f}")
    half_dts = [10.0 / m for m in TRANSPORT_HALF_GRID_STEPS]
    for name in ("a2c", "fr", "s4", "y6"):
        fit = fit_power_law(half_dts, [transport_half_grid_table[name][m] for m in TRANSPORT_HALF_GRID_STEPS])
        check(failures, abs(fit.plateau - ADVECTION_PLATEAU_HALF) <= 2e-6,
              f"{name} half-grid plateau {fit.plateau:.8f}")
    # the dt -> 0 limit is the exact semi-discrete value; the reference
    # plateau must agree with our independent circulant oracle as well
    check(failures, abs(transport_table["exact"] - ADVECTION_PLATEAU) <= 2e-5,
          f"semi-discrete oracle gives {transport_table['exact']:.7f}")
    conclude(1, "transport observable converges to the reference plateaus", failures)


def test_criterion_2_observed_orders(diffusion_table, transport_table):
    failures = []
    targets = {"euler": 1.0, "d2s": 2.0, "t4": 4.0, "t6": 6.0}
    for name, target in targets.items():
        steps = EULER_STABLE_STEP_COUNTS if name == "euler" else DIFFUSION_STEP_COUNTS
        dts = [1.0 / m for m in steps]
        fit = fit_power_law(dts, [diffusion_table[name][m] for m in steps])
        check(failures, abs(fit.order - target) <= 0.3,
              f"diffusion {name} fitted order {fit.order:.2f}, expected {target}+-0.3")
    order_steps = (50, 100, 200, 400, 1000)
    dts = [10.0 / m for m in order_steps]
    for name, nominal in (("a2c", 2.0), ("fr", 4.0), ("s4", 4.0), ("y6", 6.0)):
        fit = fit_power_law(dts, [transport_table[name][m] for m in order_steps])
        check(failures, fit.order >= nominal,
              f"advection {name} fitted order {fit.order:.2f} below nominal {nominal}")
    rw_dts = [10.0 / m for m in TRANSPORT_RW_STEP_COUNTS]
    fit = fit_power_law(rw_dts, [transport_table["rw1a"][m] for m in TRANSPORT_RW_STEP_COUNTS])
    check(failures, abs(fit.order - 1.5) <= 0.3,
          f"rw1a fitted order {fit.order:.2f}, expected 1.5+-0.3")
    conclude(2, "fitted convergence orders match their nominal targets", failures)


def test_criterion_3_unconditional_stability():
    failures = []
    thetas = np.linspace(0.0, math.pi, 1024)
    r_values = (0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0)
    for name in ("d2", "d2s", "d1a", "d1b", "d1as", "d1bs"):
        scheme = preset(name, Equation.DIFFUSION)
        for r in r_values:
            peak = np.max(np.abs(scheme_factor(scheme, StepParams(r=r), thetas)))
            check(failures, peak <= 1.0 + 1e-13, f"{name} r={r}: max|g|={peak:.16f}")
    ad2c = preset("ad2c", Equation.ADV_DIFF)
    for r in r_values:
        for eta in (0.0, 0.5, 0.9, 2.0):
            peak = np.max(np.abs(scheme_factor(ad2c, StepParams(r=r, eta=eta), thetas)))
            check(failures, peak <= 1.0 + 1e-13, f"ad2c r={r} eta={eta}: max|g|={peak:.16f}")
    conclude(3, "|g| <= 1 + 1e-13 across 1024 modes for every stable family", failures)


def test_criterion_4_unitarity():
    failures = []
    thetas = np.linspace(0.0, math.pi, 1024)
    # each scheme lists the courant numbers its coefficient domain permits
    permitted = {
        "a1a": (0.1, 0.7, 2.0, 8.0),
        "a1b": (0.1, 0.7, 2.0, 8.0),
        "a1as": (0.1, 0.7),          # saulyev coefficient needs eta < 2
        "a1bs": (0.1, 0.7),
        "rw1a": (0.1, 0.7, 2.0, 8.0),
        "rw1b": (0.1, 0.7),          # descending form needs eta < 1
        "a2": (0.1, 0.7, 2.0, 8.0),
        "a2s": (0.1, 0.7, 2.0),      # half coefficient eta/4 < 1
        "a2c": (0.1, 0.7, 2.0, 8.0),
        "rw2": (0.1, 0.7),           # descending half needs eta/2 < 1
        "fr": (0.1, 0.7, 2.0, 8.0),
        "s4": (0.1, 0.7, 2.0, 8.0),
        "y6": (0.1, 0.7, 2.0, 8.0),
    }
    for name, etas in permitted.items():
        scheme = preset(name, Equation.ADVECTION)
        for eta in etas:
            g = scheme_factor(scheme, StepParams(eta=eta), thetas)
            worst = np.max(np.abs(np.abs(g) - 1.0))
            check(failures, worst <= 1e-12, f"{name} eta={eta}: ||g|-1|={worst:.2e}")
    # the matched-CN coefficient as a bare one-sided sweep (no preset name)
    from sweepfd import BaseStep, SchemeSpec
    for base in (BaseStep.SWEEP_1A, BaseStep.SWEEP_1B):
        spec = SchemeSpec(Equation.ADVECTION, AdvectionVariant.MATCHED_CN, base)
        for eta in (0.1, 0.7, 2.0, 8.0):
            g = scheme_factor(spec, StepParams(eta=eta), thetas)
            worst = np.max(np.abs(np.abs(g) - 1.0))
            check(failures, worst <= 1e-12,
                  f"matched-cn {base.value} eta={eta}: ||g|-1|={worst:.2e}")
    conclude(4, "every advection scheme and composition stays unitary", failures)


def test_criterion_5_oracle_equivalence():
    failures = []
    rng = np.random.default_rng(2024)
    worst = 0.0
    for case in range(100):
        n = 3 + case % 14
        direction = ASC if case % 2 == 0 else DESC
        update = PairUpdate(*(rng.uniform(-0.9, 0.9, size=3)))
        values = rng.normal(size=n)
        f = Field1D(values.copy(), dx=1.0)
        expected = sweep_as_matrix(update, direction, n) @ values
        sweep(f, update, direction)
        deviation = np.max(np.abs(f.values - expected)) / max(1.0, np.max(np.abs(values)))
        worst = max(worst, deviation)
    check(failures, worst <= 1e-13, f"sweep vs dense product deviates by {worst:.2e}")

    cases = [(Equation.DIFFUSION, StepParams(r=0.5),
              ("euler", "d1a", "d1b", "d1as", "d1bs", "d2", "d2s", "t4", "t6", "t8")),
             (Equation.ADVECTION, StepParams(eta=0.8),
              ("lw", "a1a", "a1b", "a1as", "a1bs", "rw1a", "rw1b",
               "a2", "a2s", "a2c", "rw2", "fr", "s4", "y6")),
             (Equation.ADV_DIFF, StepParams(r=0.5, eta=0.6),
              ("rw1a", "rw1b", "rw2", "ad2c", "split1a", "split1b", "t4", "fr", "a_d"))]
    n = 256
    lattice_thetas = [2 * math.pi * m / n for m in (3, 21, 64, 127)]
    for equation, params, names in cases:
        for name in names:
            scheme = preset(name, equation)
            for theta in lattice_thetas[:2]:
                numeric = numeric_amplification(scheme, params, theta, n).g
                analytic = scheme_amplification(scheme, params, theta).g
                check(failures, abs(numeric - analytic) <= 1e-12,
                      f"{equation.value} {name} theta={theta:.3f}: "
                      f"|num-ana|={abs(numeric - analytic):.2e}")
    conclude(5, "sweeps match the dense-factor and per-mode oracles", failures)


def test_criterion_6_conservation():
    failures = []
    rng = np.random.default_rng(7)

    for variant in DiffusionVariant:
        for r in (0.1, 0.5, 2.0, 10.0):
            update = diffusion_coeffs(DiffusionParams(r, variant))
            f = Field1D(rng.normal(size=101), dx=1.0)
            scale = np.abs(f.values).sum()
            before = norm(f)
            sweep(f, update, ASC)
            sweep(f, update, DESC)
            check(failures, abs(norm(f) - before) <= 1e-12 * scale,
                  f"diffusion {variant.value} r={r} drifts the norm")

    for variant in (AdvectionVariant.TRIG, AdvectionVariant.SAULYEV):
        for eta, direction, ascending in ((0.8, ASC, True), (0.8, DESC, False),
                                          (1.5, ASC, True)):
            update = advection_coeffs(AdvectionParams(eta, variant), direction)
            tag = ModifiedNormTag.advection(update.beta, ascending=ascending)
            f = Field1D(rng.normal(size=101), dx=1.0)
            before = modified_norm(f, tag)
            sweep(f, update, direction)
            drift = abs(modified_norm(f, tag) - before)
            check(failures, drift <= 1e-12 * np.abs(f.values).sum(),
                  f"advection {variant.value} eta={eta} {direction.value} drifts")

    for eta, direction, ascending in ((0.8, ASC, True), (0.8, DESC, False)):
        update = advection_coeffs(AdvectionParams(eta, AdvectionVariant.ROBERTS_WEISS),
                                  direction)
        tag = ModifiedNormTag.roberts_weiss(eta, ascending=ascending)
        f = Field1D(rng.normal(size=101), dx=1.0)
        before = modified_norm(f, tag)
        sweep(f, update, direction)
        check(failures, abs(modified_norm(f, tag) - before) <= 1e-12 * np.abs(f.values).sum(),
              f"roberts-weiss advection eta={eta} {direction.value} drifts")

    for r in (0.066, 0.5, 2.0):
        for eta in (0.0, 0.33, 0.66, 0.9):
            asc = advdiff_coeffs_rw(AdvDiffParams(r, eta, AdvDiffVariant.GENERALIZED_RW), ASC)
            check(failures,
                  abs(asc.alpha / (1 - asc.beta) - math.sqrt(1 + eta)) <= 1e-12,
                  f"alpha/(1-beta) != sqrt(1+eta) at r={r} eta={eta}")
            desc = advdiff_coeffs_rw(AdvDiffParams(r, eta, AdvDiffVariant.GENERALIZED_RW), DESC)
            check(failures,
                  abs(desc.alpha / (1 - desc.lam) - math.sqrt(1 - eta)) <= 1e-12,
                  f"alpha/(1-lam) != sqrt(1-eta) at r={r} eta={eta}")
    conclude(6, "norms and modified norms are conserved per sweep", failures)


def test_criterion_7_order_conditions():
    failures = []
    fr = validate_order_conditions(FOREST_RUTH, 4)
    check(failures, abs(fr.sum_error) <= 1e-12, "FR sum != 1")
    check(failures, abs(fr.cubic_sum) <= 1e-12, "FR cubic sum != 0")
    check(failures, abs(fr.quintic_sum - (-5.29145)) <= 1e-4,
          f"FR quintic sum {fr.quintic_sum:.6f}")
    s4 = validate_order_conditions(SUZUKI4, 4)
    check(failures, abs(s4.quintic_sum - (-0.074376)) <= 1e-5,
          f"S4 quintic sum {s4.quintic_sum:.7f}")
    y6 = validate_order_conditions(YOSHIDA6, 6, tolerance=1e-10)
    check(failures, y6.passed,
          f"Y6 sums ({y6.sum_error:.2e}, {y6.cubic_sum:.2e}, {y6.quintic_sum:.2e})")
    from fractions import Fraction
    check(failures, MPE_T4 == ((Fraction(-1, 3), 1), (Fraction(4, 3), 2)), "T4 weights")
    check(failures, MPE_T6 == ((Fraction(1, 24), 1), (Fraction(-16, 15), 2),
                               (Fraction(81, 40), 3)), "T6 weights")
    check(failures, MPE_T8 == ((Fraction(-1, 360), 1), (Fraction(16, 45), 2),
                               (Fraction(-729, 280), 3), (Fraction(1024, 315), 4)),
          "T8 weights")
    conclude(7, "composition coefficients satisfy their order conditions", failures)


def test_criterion_8_matching_and_structure():
    failures = []
    for r in (0.3, 1.0, 2.5):
        limit = richardson_limit(
            lambda t: -math.log(diffusion_t2_factor(
                DiffusionVariant.SAULYEV_MATCHED, r, t).real) / (t * t))
        check(failures, abs(limit - r) <= 1e-6 * max(1.0, r),
              f"D2S leading exponent at r={r}: {limit:.8f}")

    a2c = preset("a2c", Equation.ADVECTION)
    for eta in (0.3, 0.7, 1.5):
        slope = richardson_limit(
            lambda t: phase_angle(a2c, StepParams(eta=eta), t) / t)
        check(failures, abs(slope - eta) <= 1e-6,
              f"A2C phase slope at eta={eta}: {slope:.8f}")

    h0 = lambda t: 4.0 * math.sin(0.5 * t) ** 2
    for variant in DiffusionVariant:
        for r in (0.4, 1.7):
            for theta in (0.3, 1.1, 2.7):
                product = diffusion_t2_factor(variant, -r, theta) \
                    * diffusion_t2_factor(variant, r, theta)
                check(failures, abs(product - 1.0) <= 1e-12,
                      f"{variant.value} reversal at r={r} theta={theta}")
    for r in (0.4, 1.7):
        for theta in (0.3, 1.1, 2.7):
            h_fwd = -math.log(diffusion_t2_factor(
                DiffusionVariant.SAULYEV_MATCHED, r, theta).real)
            h_bwd = -math.log(diffusion_t2_factor(
                DiffusionVariant.SAULYEV_MATCHED, -r, theta).real)
            odd_residual = (h_fwd - r * h0(theta)) + (h_bwd + r * h0(theta))
            check(failures, abs(odd_residual) <= 1e-12,
                  f"exponent error not odd at r={r} theta={theta}")
    conclude(8, "exponent matching, reversal and oddness structure hold", failures)


def test_criterion_9_norm_dynamics(norm_error_traces):
    failures = []
    marks = [303, 606, 909, 1212]  # steps closest to t = 10, 20, 30, 40
    for name in ("rw1a", "rw1b"):
        recovery = max(abs(norm_error_traces[name][m - 1]) for m in marks)
        check(failures, recovery <= 1e-3,
              f"{name} norm error does not return to zero ({recovery:.2e})")
    ad2c_marks = [abs(norm_error_traces["ad2c"][m - 1]) for m in marks]
    check(failures, all(b > a for a, b in zip(ad2c_marks, ad2c_marks[1:])),
          f"ad2c loss not monotone across transits: {ad2c_marks}")
    final_ad2c = abs(norm_error_traces["ad2c"][-1])
    for name in ("a_d", "t4"):
        final = abs(norm_error_traces[name][-1])
        check(failures, final < final_ad2c,
              f"{name} loss {final:.2e} not below ad2c loss {final_ad2c:.2e}")
    conclude(9, "periodic norm recovery and loss hierarchy behave as expected", failures)
