"""The two dissipation criteria and their pointwise comparison.

Criterion 1 (physics): dissipation power H_P = xdot^T S xdot, nonnegative
for positive-semidefinite friction S.  Criterion 2 (phase volume): the
divergence of the field.  Along any decomposition built by this library the
identity |d(phi)/dt| = H_P holds, because the transverse part does no work.
The two criteria need not agree: a report carries both verdicts and never
adjudicates between them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Matrix2, Point2, SystemSpec
from .errors import MissingPotential, NotPSD
from .field import friction_scalar
from .tolerances import EQUILIBRIUM_TOL, PSD_SLACK, master_tol

CONSERVATIVE = "conservative"
DISSIPATIVE = "dissipative"
EXPANDING = "expanding"


@dataclass(frozen=True)
class DissipationReport:
    """Pointwise comparison of the power and divergence criteria.

    ``agree`` is true when both criteria give the same verdict; expanding
    divergence (positive value) never agrees with a power verdict.  The
    power-side fields are None for systems without a potential, where only
    the divergence criterion is available.
    """

    at: Point2
    div_f: float
    verdict_divergence: str
    h_p: float | None = None
    phi_rate: float | None = None
    identity_gap: float | None = None
    verdict_power: str | None = None
    agree: bool | None = None


def dissipation_power(s_matrix: Matrix2, xdot: Point2) -> float:
    """Quadratic form xdot^T S xdot for a symmetric PSD friction matrix.

    Raises NotPSD when S fails symmetry or semidefiniteness beyond slack.
    """
    scale = 1.0 + s_matrix.max_abs()
    if abs(s_matrix.a12 - s_matrix.a21) > PSD_SLACK * scale:
        raise NotPSD(f"friction matrix is not symmetric: {s_matrix.rows()}")
    if s_matrix.trace < -PSD_SLACK * scale or s_matrix.det < -PSD_SLACK * scale * scale:
        raise NotPSD(
            f"friction matrix is not positive semidefinite: trace={s_matrix.trace!r}, "
            f"det={s_matrix.det!r}"
        )
    return (
        s_matrix.a11 * xdot.x1 * xdot.x1
        + (s_matrix.a12 + s_matrix.a21) * xdot.x1 * xdot.x2
        + s_matrix.a22 * xdot.x2 * xdot.x2
    )


def divergence(sys: SystemSpec, x: Point2) -> float:
    """Divergence of the field at x; exactly trace(A) for linear systems."""
    if sys.matrix is not None:
        return sys.matrix.trace
    return sys.field.divergence(x)


def phi_rate(sys: SystemSpec, x: Point2) -> float:
    """Rate of change of the potential along the flow: grad(phi) . f."""
    if sys.potential is None:
        raise MissingPotential(f"system {sys.name!r} has no potential")
    return sys.potential.gradient(x).dot(sys.field.evaluate(x))


def _pointwise_power(sys: SystemSpec, x: Point2) -> float:
    """H_P via the pointwise friction scalar; zero at equilibria (xdot = 0)."""
    f_val = sys.field.evaluate(x)
    if f_val.norm() <= EQUILIBRIUM_TOL * (1.0 + x.norm()):
        return 0.0
    grad = sys.potential.gradient(x)  # type: ignore[union-attr]
    return friction_scalar(f_val, grad) * f_val.dot(f_val)


def report(
    sys: SystemSpec,
    x: Point2,
    *,
    s_matrix: Matrix2 | None = None,
    zero_tol: float | None = None,
) -> DissipationReport:
    """Evaluate both criteria at x and compare their verdicts.

    The power side uses the explicit friction matrix when one is supplied
    (linear decompositions), otherwise the pointwise friction construction
    from the system's potential.  Without either, a divergence-only report
    is returned.
    """
    tol = master_tol(zero_tol)
    div = divergence(sys, x)
    if abs(div) <= tol:
        verdict_div = CONSERVATIVE
    elif div < 0.0:
        verdict_div = DISSIPATIVE
    else:
        verdict_div = EXPANDING

    if s_matrix is not None:
        h_p = dissipation_power(s_matrix, sys.field.evaluate(x))
    elif sys.potential is not None:
        h_p = _pointwise_power(sys, x)
    else:
        return DissipationReport(at=x, div_f=div, verdict_divergence=verdict_div)

    rate = phi_rate(sys, x) if sys.potential is not None else None
    gap = abs(abs(rate) - h_p) if rate is not None else None
    verdict_power = CONSERVATIVE if abs(h_p) <= tol else DISSIPATIVE
    agree = verdict_power == verdict_div
    return DissipationReport(
        at=x,
        div_f=div,
        verdict_divergence=verdict_div,
        h_p=h_p,
        phi_rate=rate,
        identity_gap=gap,
        verdict_power=verdict_power,
        agree=agree,
    )
