"""Trajectory integration and trajectory-level checks.

Fixed-step classical Runge-Kutta keeps runs bit-reproducible, which the
command-line layer relies on for golden files. Along a trajectory the
sampled columns carry the potential, its rate of change, the dissipation
power and the divergence, so the dissipation criteria can be audited
against time series as well as closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import catalog, dissipation
from .core import Point2, SystemSpec
from .errors import MissingPotential, NonFinite
from .tolerances import BLOWUP_LIMIT, EQUILIBRIUM_TOL, master_tol
from .field import friction_scalar

DEFAULT_DT = 1e-3


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled solution; x rows are (x1, x2), or (r, theta) in polar."""

    t: np.ndarray
    x: np.ndarray
    dt: float
    method: str
    phi: np.ndarray | None = None
    phi_rate: np.ndarray | None = None
    h_p: np.ndarray | None = None
    div_f: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.t)


@dataclass(frozen=True)
class Definition2Report:
    """Grid audit of the two generalized-Lyapunov conditions.

    Any finite sample is a partial certificate only: ``note`` states the
    sampled region explicitly and the infimum is the grid minimum, never a
    global claim. ``radial_growth_ok`` reports whether the potential exceeds
    the grid minimum along 8 rays at radii 10, 100 and 1000.
    """

    region: str
    violations: list[tuple[Point2, float]]
    empirical_infimum: float
    radial_growth_ok: bool
    note: str


def _rk4(
    deriv: Callable[[float, float], tuple[float, float]],
    x1: float,
    x2: float,
    dt: float,
) -> tuple[float, float]:
    k1a, k1b = deriv(x1, x2)
    k2a, k2b = deriv(x1 + 0.5 * dt * k1a, x2 + 0.5 * dt * k1b)
    k3a, k3b = deriv(x1 + 0.5 * dt * k2a, x2 + 0.5 * dt * k2b)
    k4a, k4b = deriv(x1 + dt * k3a, x2 + dt * k3b)
    return (
        x1 + dt * (k1a + 2.0 * (k2a + k3a) + k4a) / 6.0,
        x2 + dt * (k1b + 2.0 * (k2b + k3b) + k4b) / 6.0,
    )


def _steps(dt: float, t_end: float) -> int:
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    if t_end < dt:
        raise ValueError(f"t_end must be at least dt, got t_end={t_end!r}, dt={dt!r}")
    return int(round(t_end / dt))


def _pointwise_power(sys: SystemSpec, p: Point2, f_val: Point2, grad: Point2) -> float:
    if f_val.norm() <= EQUILIBRIUM_TOL * (1.0 + p.norm()):
        return 0.0
    return friction_scalar(f_val, grad) * f_val.dot(f_val)


def integrate(sys: SystemSpec, x0: Point2, dt: float = DEFAULT_DT, t_end: float = 10.0) -> Trajectory:
    """Integrate x' = f(x) from x0 with fixed-step RK4.

    Fills potential, rate and power columns when the system has a potential;
    the divergence column is always present. Raises NonFinite (carrying the
    partial trajectory) once any coordinate leaves [-1e12, 1e12].
    """
    n = _steps(dt, t_end)
    f = sys.field.evaluate

    def deriv(a: float, b: float) -> tuple[float, float]:
        v = f(Point2(a, b))
        return v.x1, v.x2

    has_phi = sys.potential is not None
    ts: list[float] = []
    xs: list[tuple[float, float]] = []
    phis: list[float] = []
    rates: list[float] = []
    powers: list[float] = []
    divs: list[float] = []

    def record(i: int, a: float, b: float) -> None:
        p = Point2(a, b)
        ts.append(i * dt)
        xs.append((a, b))
        divs.append(dissipation.divergence(sys, p))
        if has_phi:
            f_val = f(p)
            grad = sys.potential.gradient(p)
            phis.append(sys.potential.evaluate(p))
            rates.append(grad.dot(f_val))
            powers.append(_pointwise_power(sys, p, f_val, grad))

    def build() -> Trajectory:
        return Trajectory(
            t=np.array(ts),
            x=np.array(xs).reshape(len(ts), 2),
            dt=dt,
            method="rk4",
            phi=np.array(phis) if has_phi else None,
            phi_rate=np.array(rates) if has_phi else None,
            h_p=np.array(powers) if has_phi else None,
            div_f=np.array(divs),
        )

    x1, x2 = x0.x1, x0.x2
    record(0, x1, x2)
    for i in range(1, n + 1):
        x1, x2 = _rk4(deriv, x1, x2, dt)
        if not (math.isfinite(x1) and math.isfinite(x2)) or abs(x1) > BLOWUP_LIMIT or abs(x2) > BLOWUP_LIMIT:
            raise NonFinite(
                f"state blew up at t={i * dt!r} integrating {sys.name!r}",
                trajectory=build(),
            )
        record(i, x1, x2)
    return build()


def integrate_polar(r0: float, theta0: float, dt: float = DEFAULT_DT, t_end: float = 10.0) -> Trajectory:
    """Integrate the builtin oscillator in polar form: dr/dt = r - r^3, dtheta/dt = 1."""
    if r0 <= 0.0:
        raise ValueError(f"r0 must be positive, got {r0!r}")
    n = _steps(dt, t_end)

    def deriv(r: float, theta: float) -> tuple[float, float]:
        return r - r**3, 1.0

    ts = [0.0]
    xs = [(r0, theta0)]
    r, theta = r0, theta0
    for i in range(1, n + 1):
        r, theta = _rk4(deriv, r, theta, dt)
        ts.append(i * dt)
        xs.append((r, theta))
    return Trajectory(t=np.array(ts), x=np.array(xs), dt=dt, method="rk4_polar")


def check_monotonicity(traj: Trajectory) -> float:
    """Largest increase of the potential between consecutive samples.

    A value at or below 1e-9 certifies numerical monotone nonincrease.
    """
    if traj.phi is None:
        raise MissingPotential("trajectory has no potential column")
    if len(traj.phi) < 2:
        return 0.0
    return float(np.max(np.diff(traj.phi)))


def cartesian_polar_agreement(x0: Point2, dt: float = DEFAULT_DT, t_end: float = 10.0) -> float:
    """Max pointwise distance between the Cartesian and polar integrations.

    Both runs integrate the builtin oscillator, once in each chart, then the
    polar samples are mapped back to Cartesian coordinates for comparison.
    """
    r0 = x0.norm()
    if r0 <= 0.0:
        raise ValueError("x0 must be nonzero")
    sys = catalog.get(catalog.HOPF).system
    cart = integrate(sys, x0, dt=dt, t_end=t_end)
    pol = integrate_polar(r0, math.atan2(x0.x2, x0.x1), dt=dt, t_end=t_end)
    px = pol.x[:, 0] * np.cos(pol.x[:, 1])
    py = pol.x[:, 0] * np.sin(pol.x[:, 1])
    return float(np.max(np.hypot(cart.x[:, 0] - px, cart.x[:, 1] - py)))


def definition2_check(
    sys: SystemSpec,
    region: tuple[float, float, float, float],
    samples_per_axis: int,
    zero_tol: float | None = None,
) -> Definition2Report:
    """Sample the potential-rate condition and the infimum over a box grid.

    The infimum over the whole state space cannot be verified by sampling;
    the report states the region it covered and adds a radial growth probe
    (potential along 8 rays at radii 10, 100, 1000 compared to the grid
    minimum) rather than claiming a global bound.
    """
    if sys.potential is None:
        raise MissingPotential(f"system {sys.name!r} has no potential")
    if samples_per_axis < 2:
        raise ValueError("samples_per_axis must be at least 2")
    xmin, xmax, ymin, ymax = region
    if not (xmin < xmax and ymin < ymax):
        raise ValueError(f"empty region {region!r}")
    tol = master_tol(zero_tol)

    xs = np.linspace(xmin, xmax, samples_per_axis)
    ys = np.linspace(ymin, ymax, samples_per_axis)
    violations: list[tuple[Point2, float]] = []
    infimum = math.inf
    for y in ys:
        for x in xs:
            p = Point2(float(x), float(y))
            rate = sys.potential.gradient(p).dot(sys.field.evaluate(p))
            if rate > tol:
                violations.append((p, rate))
            infimum = min(infimum, sys.potential.evaluate(p))

    radial_ok = True
    for radius in (10.0, 100.0, 1000.0):
        for k in range(8):
            angle = k * math.pi / 4.0
            probe = Point2(radius * math.cos(angle), radius * math.sin(angle))
            if sys.potential.evaluate(probe) <= infimum:
                radial_ok = False

    region_text = f"[{xmin}, {xmax}] x [{ymin}, {ymax}] ({samples_per_axis}x{samples_per_axis} grid)"
    if violations:
        note = f"{len(violations)} potential-rate violations found on {region_text}"
    else:
        note = f"no potential-rate violation found on {region_text}"
    note += "; infimum is the sampled grid minimum, not a global certificate"
    if not radial_ok:
        note += "; potential drops below the grid minimum along at least one probed ray"
    return Definition2Report(
        region=region_text,
        violations=violations,
        empirical_infimum=float(infimum),
        radial_growth_ok=radial_ok,
        note=note,
    )
