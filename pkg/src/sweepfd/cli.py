"""Experiment command line: amplification tables, runs, convergence, norms, phase.

Each subcommand writes one CSV (stdout or --out) whose '#' header echoes
every parameter, so reruns are byte-identical and each experiment recipe
in the README is a single command.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass
from typing import List, Optional, Sequence, TextIO

import numpy as np

from . import composition, grid, oracle, spectral
from .composition import Equation, Scheme, StepParams
from .errors import NumericsError
from .grid import Field1D

USAGE_EXIT = 2
NUMERICS_EXIT = 1


class UsageError(Exception):
    pass


@dataclass
class Setup:
    """Resolved experiment configuration shared by all subcommands."""

    equation: Equation
    schemes: List[Scheme]
    nx: int
    xmin: float
    xmax: float
    dcoef: float
    vel: float
    dt: float
    steps: int
    profile: str
    center: float
    sigma: float
    out: Optional[str]

    @property
    def dx(self) -> float:
        return (self.xmax - self.xmin) / self.nx

    @property
    def params(self) -> StepParams:
        return StepParams.from_physics(self.dt, self.dx, self.dcoef, self.vel)

    def field(self) -> Field1D:
        if self.profile == "gaussian":
            return grid.gaussian_profile(self.nx, self.xmin, self.dx, self.center, self.sigma)
        return grid.sextic_profile(self.nx, self.xmin, self.dx, self.center)

    def header(self, command: str) -> List[str]:
        p = self.params
        return [
            f"# sweepfd {command}",
            f"# equation={self.equation.value} schemes={','.join(s.name for s in self.schemes)}",
            f"# nx={self.nx} xmin={fmt(self.xmin)} xmax={fmt(self.xmax)} dx={fmt(self.dx)}",
            f"# dcoef={fmt(self.dcoef)} vel={fmt(self.vel)} dt={fmt(self.dt)} steps={self.steps}",
            f"# r={fmt(p.r)} eta={fmt(p.eta)}",
            f"# profile={self.profile} center={fmt(self.center)} sigma={fmt(self.sigma)}",
            "# deterministic: no randomness anywhere; reruns are byte-identical",
        ]


def fmt(x: float) -> str:
    return f"{x + 0.0:.17g}"  # +0.0 folds -0.0 into 0.0


def write_csv(out: Optional[str], header: Sequence[str], columns: Sequence[str],
              rows: Sequence[Sequence[float]], footer: Sequence[str] = ()) -> None:
    def emit(stream: TextIO) -> None:
        for line in header:
            stream.write(line + "\n")
        stream.write(",".join(columns) + "\n")
        for row in rows:
            stream.write(",".join(fmt(v) for v in row) + "\n")
        for line in footer:
            stream.write(line + "\n")

    if out is None:
        emit(sys.stdout)
    else:
        with open(out, "w") as stream:
            emit(stream)


# ---------------------------------------------------------------------------
# argument handling

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sweepfd",
        description="symplectic finite-difference experiments (CSV output)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--equation", choices=[e.value for e in Equation],
                       default="diffusion")
        p.add_argument("--scheme", default="d2s",
                       help="comma-separated preset names; NxNAME substeps NAME N times")
        p.add_argument("--nx", type=int, default=120)
        p.add_argument("--xmin", type=float, default=-6.0)
        p.add_argument("--xmax", type=float, default=6.0)
        p.add_argument("--dcoef", type=float, default=0.5)
        p.add_argument("--vel", type=float, default=1.0)
        p.add_argument("--dt", type=float, default=0.1)
        p.add_argument("--steps", type=int, default=None)
        p.add_argument("--tfinal", type=float, default=None)
        p.add_argument("--profile", choices=["gaussian", "sextic"], default="gaussian")
        p.add_argument("--center", type=float, default=0.0)
        p.add_argument("--sigma", type=float, default=0.5)
        p.add_argument("--out", default=None)

    p_amp = sub.add_parser("ampfactor", help="amplification factor tables g(theta)")
    common(p_amp)
    p_amp.add_argument("--ntheta", type=int, default=257)

    p_run = sub.add_parser("run", help="evolve a profile and dump initial/final samples")
    common(p_run)
    p_run.add_argument("--checkpoints", default=None,
                       help="comma-separated times at which to record extra columns")

    p_conv = sub.add_parser("converge", help="observable vs dt with fitted order footer")
    common(p_conv)
    p_conv.add_argument("--dts", required=True, help="comma-separated dt values, decreasing")
    p_conv.add_argument("--observable", choices=["abs-moment", "abs-weighted-mean"],
                        default="abs-moment")

    p_norm = sub.add_parser("norms", help="relative norm error per step")
    common(p_norm)

    p_phase = sub.add_parser("phase", help="phase-angle error vs theta")
    common(p_phase)
    p_phase.add_argument("--ntheta", type=int, default=1025)
    p_phase.set_defaults(equation="advection", dt=0.07)  # eta = 0.7 on the default grid

    return parser


def _resolve_setup(args: argparse.Namespace) -> Setup:
    equation = Equation(args.equation)
    names = [s for s in args.scheme.split(",") if s.strip()]
    if not names:
        raise UsageError("no scheme given")
    schemes = []
    for name in names:
        try:
            schemes.append(composition.resolve_preset(name, equation))
        except KeyError as exc:
            raise UsageError(str(exc)) from exc
    if args.nx < 3:
        raise UsageError("--nx must be at least 3")
    if args.xmax <= args.xmin:
        raise UsageError("--xmax must exceed --xmin")
    if args.dt <= 0:
        raise UsageError("--dt must be positive")
    dx = (args.xmax - args.xmin) / args.nx
    steps = args.steps
    if steps is None and args.tfinal is not None:
        steps = max(1, round(args.tfinal / args.dt))
        if abs(steps * args.dt - args.tfinal) > 1e-9 * max(1.0, abs(args.tfinal)):
            warnings.warn(
                f"dt={args.dt} does not divide tfinal={args.tfinal}; running {steps} steps "
                f"(t={steps * args.dt})", RuntimeWarning)
    if steps is None:
        steps = 10
    if steps < 0:
        raise UsageError("--steps must be >= 0")
    # physics the equation cannot use is zeroed so the r/eta echo is honest
    dcoef = 0.0 if equation is Equation.ADVECTION else args.dcoef
    vel = 0.0 if equation is Equation.DIFFUSION else args.vel
    return Setup(equation, schemes, args.nx, args.xmin, args.xmax,
                 dcoef, vel, args.dt, steps,
                 args.profile, args.center, args.sigma, args.out)


# ---------------------------------------------------------------------------
# subcommands

def cmd_ampfactor(setup: Setup, ntheta: int) -> None:
    if ntheta < 2:
        raise UsageError("--ntheta must be at least 2")
    thetas = np.linspace(0.0, np.pi, ntheta)
    columns = ["theta", "exact_re", "exact_im", "exact_abs", "exact_phase"]
    factors = [spectral.exact_factor(setup.equation, setup.params, thetas)]
    for scheme in setup.schemes:
        columns += [f"{scheme.name}_re", f"{scheme.name}_im",
                    f"{scheme.name}_abs", f"{scheme.name}_phase"]
        factors.append(spectral.scheme_factor(scheme, setup.params, thetas))
    rows = []
    for i, theta in enumerate(thetas):
        row = [theta]
        for g in factors:
            gi = complex(g[i])
            row += [gi.real, gi.imag, abs(gi), -np.angle(gi)]
        rows.append(row)
    write_csv(setup.out, setup.header("ampfactor"), columns, rows)


def cmd_run(setup: Setup, checkpoints: Optional[str]) -> None:
    times = []
    if checkpoints:
        times = sorted(float(t) for t in checkpoints.split(","))
    marks = [round(t / setup.dt) for t in times]
    if any(m < 0 or m > setup.steps for m in marks):
        raise UsageError("checkpoints must lie inside the run")
    initial = setup.field()
    columns = ["x", "u_initial"]
    data = [initial.x, initial.values.copy()]
    norm_notes = [f"# norm initial={fmt(grid.norm(initial))}"]
    for scheme in setup.schemes:
        f = initial.copy()
        for step in range(1, setup.steps + 1):
            composition.apply_scheme(f, scheme, setup.params)
            if step in marks:
                t = step * setup.dt
                columns.append(f"{scheme.name}_t{t:g}")
                data.append(f.values.copy())
                norm_notes.append(f"# norm {scheme.name} t={fmt(t)}: {fmt(grid.norm(f))}")
        columns.append(f"{scheme.name}_final")
        data.append(f.values.copy())
        norm_notes.append(f"# norm {scheme.name} final={fmt(grid.norm(f))}")
    rows = list(zip(*data))
    write_csv(setup.out, setup.header("run") + norm_notes, columns, rows)


def cmd_converge(setup: Setup, dts_arg: str, observable: str) -> None:
    dts_in = [float(t) for t in dts_arg.split(",")]
    if len(dts_in) < 2 or any(b >= a for a, b in zip(dts_in, dts_in[1:])):
        raise UsageError("--dts needs at least two strictly decreasing values")
    total_time = setup.steps * setup.dt
    measure = grid.abs_moment if observable == "abs-moment" else grid.abs_weighted_mean
    dts_used = []
    for dt in dts_in:
        steps = max(1, round(total_time / dt))
        dt_used = total_time / steps
        if abs(dt_used - dt) > 1e-12 * dt:
            warnings.warn(f"dt={dt} does not divide t={total_time}; using dt={dt_used}",
                          RuntimeWarning)
        dts_used.append((dt_used, steps))
    initial = setup.field()
    columns = ["dt"] + [s.name for s in setup.schemes]
    table = {s.name: [] for s in setup.schemes}
    for dt_used, steps in dts_used:
        params = StepParams.from_physics(dt_used, setup.dx, setup.dcoef, setup.vel)
        for scheme in setup.schemes:
            f = initial.copy()
            for _ in range(steps):
                composition.apply_scheme(f, scheme, params)
            table[scheme.name].append(measure(f))
    rows = [[dt] + [table[s.name][i] for s in setup.schemes]
            for i, (dt, _) in enumerate(dts_used)]
    footer = []
    for scheme in setup.schemes:
        try:
            fit = oracle.fit_power_law([d for d, _ in dts_used], table[scheme.name])
        except NumericsError as exc:
            footer.append(f"# fit scheme={scheme.name} unavailable ({exc})")
        else:
            footer.append(f"# fit scheme={scheme.name} plateau={fmt(fit.plateau)} "
                          f"order={fmt(fit.order)}")
    header = setup.header("converge") + [f"# tfinal={fmt(total_time)} observable={observable}"]
    write_csv(setup.out, header, columns, rows, footer)


def cmd_norms(setup: Setup) -> None:
    initial = setup.field()
    reference = grid.norm(initial)
    columns = ["t"] + [s.name for s in setup.schemes]
    traces = []
    for scheme in setup.schemes:
        f = initial.copy()
        trace = []
        for _ in range(setup.steps):
            composition.apply_scheme(f, scheme, setup.params)
            trace.append((grid.norm(f) - reference) / reference)
        traces.append(trace)
    rows = [[(i + 1) * setup.dt] + [tr[i] for tr in traces] for i in range(setup.steps)]
    write_csv(setup.out, setup.header("norms"), columns, rows)


def cmd_phase(setup: Setup, ntheta: int) -> None:
    if setup.equation is not Equation.ADVECTION:
        raise UsageError("phase errors are defined for --equation advection")
    if ntheta < 2:
        raise UsageError("--ntheta must be at least 2")
    thetas = np.linspace(0.0, np.pi, ntheta)
    reference = spectral.exact_phase(setup.params.eta, thetas)
    columns = ["theta"] + [s.name for s in setup.schemes]
    curves = [spectral.phase_curve(s, setup.params, thetas) - reference
              for s in setup.schemes]
    rows = [[thetas[i]] + [c[i] for c in curves] for i in range(ntheta)]
    write_csv(setup.out, setup.header("phase"), columns, rows)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        setup = _resolve_setup(args)
        if args.command == "ampfactor":
            cmd_ampfactor(setup, args.ntheta)
        elif args.command == "run":
            cmd_run(setup, args.checkpoints)
        elif args.command == "converge":
            cmd_converge(setup, args.dts, args.observable)
        elif args.command == "norms":
            cmd_norms(setup)
        else:
            cmd_phase(setup, args.ntheta)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except NumericsError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return NUMERICS_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
