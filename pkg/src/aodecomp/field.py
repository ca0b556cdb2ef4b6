"""Pointwise decomposition of a nonlinear field with a known potential.

At any non-equilibrium state x the frame (S + T) f = -grad(phi) with
S = s*I and T = t*[[0,1],[-1,0]] pins both scalars uniquely:

    s = -(grad(phi) . f) / (f . f)
    t = (f1 * d2(phi) - f2 * d1(phi)) / (f . f)

Where s^2 + t^2 is nonzero the frame inverts to the dual form
f = -(D + Q) grad(phi) with D = d*I, Q = q*[[0,1],[-1,0]]:

    d = s / (s^2 + t^2),   q = -t / (s^2 + t^2).

On the isopotential locus where friction and transverse both vanish (the
limit cycle of the builtin oscillator) the dual pair does not exist and the
decomposition is marked singular instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Point2, SystemSpec
from .errors import EquilibriumPoint, MissingPotential
from .tolerances import EQUILIBRIUM_TOL, SINGULAR_SPLIT_TOL


@dataclass(frozen=True)
class PointDecomposition:
    """Friction/transverse (and, where invertible, diffusion/gyration) at a point."""

    at: Point2
    friction: float
    transverse: float
    drift: Point2
    potential_gradient: Point2
    diffusion: float | None
    gyration: float | None
    singular_on_isopotential: bool


def _check_not_equilibrium(f_val: Point2) -> None:
    if f_val.norm() <= EQUILIBRIUM_TOL:
        raise EquilibriumPoint(
            f"field value {f_val.as_tuple()} is an equilibrium; the pointwise "
            "construction is undefined at fixed points"
        )


def friction_scalar(f_val: Point2, grad_phi: Point2) -> float:
    """Friction coefficient s = -(grad(phi) . f) / (f . f)."""
    _check_not_equilibrium(f_val)
    return -grad_phi.dot(f_val) / f_val.dot(f_val)


def transverse_scalar(f_val: Point2, grad_phi: Point2) -> float:
    """Transverse coefficient t = (f1 * d2(phi) - f2 * d1(phi)) / (f . f)."""
    _check_not_equilibrium(f_val)
    return (f_val.x1 * grad_phi.x2 - f_val.x2 * grad_phi.x1) / f_val.dot(f_val)


def point_decomposition(sys: SystemSpec, x: Point2) -> PointDecomposition:
    """Decompose the system at x; requires a potential and a non-equilibrium x."""
    if sys.potential is None:
        raise MissingPotential(f"system {sys.name!r} has no potential")
    f_val = sys.field.evaluate(x)
    if f_val.norm() <= EQUILIBRIUM_TOL * (1.0 + x.norm()):
        raise EquilibriumPoint(f"{x.as_tuple()} is an equilibrium of {sys.name!r}")
    grad_phi = sys.potential.gradient(x)
    s = friction_scalar(f_val, grad_phi)
    t = transverse_scalar(f_val, grad_phi)
    norm2 = s * s + t * t
    if norm2 <= SINGULAR_SPLIT_TOL:
        return PointDecomposition(
            at=x, friction=s, transverse=t, drift=f_val,
            potential_gradient=grad_phi, diffusion=None, gyration=None,
            singular_on_isopotential=True,
        )
    return PointDecomposition(
        at=x, friction=s, transverse=t, drift=f_val,
        potential_gradient=grad_phi, diffusion=s / norm2, gyration=-t / norm2,
        singular_on_isopotential=False,
    )
