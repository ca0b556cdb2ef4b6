"""Planar numeric substrate: 2-vectors, 2x2 matrices, field abstractions.

All types are immutable values and all operations are pure functions, so
everything here can be shared freely between concurrent workers. Non-finite
entries (NaN/Inf) are rejected at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import SingularMatrix
from .tolerances import FD_STEP, SINGULAR_DET_TOL


def _require_finite(type_name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{type_name} entries must be finite, got {v!r}")


@dataclass(frozen=True)
class Point2:
    """A point (or vector) in the plane."""

    x1: float
    x2: float

    def __post_init__(self):
        _require_finite("Point2", self.x1, self.x2)

    def norm(self) -> float:
        return math.hypot(self.x1, self.x2)

    def dot(self, other: Point2) -> float:
        return self.x1 * other.x1 + self.x2 * other.x2

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x1 - other.x1, self.x2 - other.x2)

    def __neg__(self) -> Point2:
        return Point2(-self.x1, -self.x2)

    def scaled(self, c: float) -> Point2:
        return Point2(c * self.x1, c * self.x2)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x1, self.x2)


@dataclass(frozen=True)
class Matrix2:
    """Dense real 2x2 matrix, row-major fields a11, a12, a21, a22."""

    a11: float
    a12: float
    a21: float
    a22: float

    def __post_init__(self):
        _require_finite("Matrix2", self.a11, self.a12, self.a21, self.a22)

    @classmethod
    def identity(cls) -> Matrix2:
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def zero(cls) -> Matrix2:
        return cls(0.0, 0.0, 0.0, 0.0)

    @classmethod
    def diagonal(cls, d1: float, d2: float) -> Matrix2:
        return cls(d1, 0.0, 0.0, d2)

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21

    @property
    def trace(self) -> float:
        return self.a11 + self.a22

    def transpose(self) -> Matrix2:
        return Matrix2(self.a11, self.a21, self.a12, self.a22)

    def max_abs(self) -> float:
        return max(abs(self.a11), abs(self.a12), abs(self.a21), abs(self.a22))

    def frobenius(self) -> float:
        return math.sqrt(self.a11**2 + self.a12**2 + self.a21**2 + self.a22**2)

    def apply(self, p: Point2) -> Point2:
        return Point2(self.a11 * p.x1 + self.a12 * p.x2, self.a21 * p.x1 + self.a22 * p.x2)

    def __add__(self, other: Matrix2) -> Matrix2:
        return Matrix2(
            self.a11 + other.a11, self.a12 + other.a12,
            self.a21 + other.a21, self.a22 + other.a22,
        )

    def __sub__(self, other: Matrix2) -> Matrix2:
        return Matrix2(
            self.a11 - other.a11, self.a12 - other.a12,
            self.a21 - other.a21, self.a22 - other.a22,
        )

    def __matmul__(self, other: Matrix2) -> Matrix2:
        return Matrix2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def scaled(self, c: float) -> Matrix2:
        return Matrix2(c * self.a11, c * self.a12, c * self.a21, c * self.a22)

    def rows(self) -> list[list[float]]:
        return [[self.a11, self.a12], [self.a21, self.a22]]


@dataclass(frozen=True)
class AntisymScalar:
    """Scalar coefficient q encoding the antisymmetric matrix q * [[0,1],[-1,0]].

    Antisymmetry of the encoded matrix holds by construction.
    """

    q: float

    def __post_init__(self):
        _require_finite("AntisymScalar", self.q)

    def matrix(self) -> Matrix2:
        return Matrix2(0.0, self.q, -self.q, 0.0)


@dataclass(frozen=True)
class DiffusionParams:
    """Symmetric positive-semidefinite diffusion matrix [[d11,d12],[d12,d22]].

    Construction rejects any triple violating d11 >= 0, d22 >= 0 or
    d11*d22 - d12^2 >= 0; a violation is an invalid value, not a warning.
    """

    d11: float
    d12: float
    d22: float

    def __post_init__(self):
        _require_finite("DiffusionParams", self.d11, self.d12, self.d22)
        if self.d11 < 0.0 or self.d22 < 0.0:
            raise ValueError(
                f"diffusion diagonal must be nonnegative, got d11={self.d11!r}, d22={self.d22!r}"
            )
        if self.d11 * self.d22 - self.d12**2 < 0.0:
            raise ValueError(
                f"diffusion must be positive semidefinite: d11*d22 - d12^2 = "
                f"{self.d11 * self.d22 - self.d12**2!r} < 0"
            )

    @classmethod
    def identity(cls) -> DiffusionParams:
        return cls(1.0, 0.0, 1.0)

    @classmethod
    def zero(cls) -> DiffusionParams:
        return cls(0.0, 0.0, 0.0)

    @property
    def det(self) -> float:
        return self.d11 * self.d22 - self.d12**2

    def max_abs(self) -> float:
        return max(abs(self.d11), abs(self.d12), abs(self.d22))

    def matrix(self) -> Matrix2:
        return Matrix2(self.d11, self.d12, self.d12, self.d22)


def sym_antisym_split(m: Matrix2) -> tuple[Matrix2, AntisymScalar]:
    """Split M into its symmetric part and the antisymmetric coefficient.

    Returns (sym, anti) with sym = (M + M^T)/2 and anti.q = (m12 - m21)/2,
    so that sym + anti.matrix() reassembles M exactly up to round-off.
    """
    off = 0.5 * (m.a12 + m.a21)
    sym = Matrix2(m.a11, off, off, m.a22)
    anti = AntisymScalar(0.5 * (m.a12 - m.a21))
    return sym, anti


def invert2(m: Matrix2) -> Matrix2:
    """Invert a 2x2 matrix by adjugate/determinant.

    Raises SingularMatrix when |det| <= SINGULAR_DET_TOL * (1 + max|entry|^2);
    the relative scaling keeps the vanishing locus of friction+transverse
    splits (the isopotential circle) detected robustly.
    """
    det = m.det
    if abs(det) <= SINGULAR_DET_TOL * (1.0 + m.max_abs() ** 2):
        raise SingularMatrix(det)
    inv = 1.0 / det
    return Matrix2(m.a22 * inv, -m.a12 * inv, -m.a21 * inv, m.a11 * inv)


def central_gradient(f: Callable[[Point2], float], x: Point2) -> Point2:
    """Central finite-difference gradient with step FD_STEP * (1 + |x_i|)."""
    h1 = FD_STEP * (1.0 + abs(x.x1))
    h2 = FD_STEP * (1.0 + abs(x.x2))
    g1 = (f(Point2(x.x1 + h1, x.x2)) - f(Point2(x.x1 - h1, x.x2))) / (2.0 * h1)
    g2 = (f(Point2(x.x1, x.x2 + h2)) - f(Point2(x.x1, x.x2 - h2))) / (2.0 * h2)
    return Point2(g1, g2)


def central_divergence(f: Callable[[Point2], Point2], x: Point2) -> float:
    """Central finite-difference divergence of a planar vector field."""
    h1 = FD_STEP * (1.0 + abs(x.x1))
    h2 = FD_STEP * (1.0 + abs(x.x2))
    d1 = (f(Point2(x.x1 + h1, x.x2)).x1 - f(Point2(x.x1 - h1, x.x2)).x1) / (2.0 * h1)
    d2 = (f(Point2(x.x1, x.x2 + h2)).x2 - f(Point2(x.x1, x.x2 - h2)).x2) / (2.0 * h2)
    return d1 + d2


def central_jacobian(f: Callable[[Point2], Point2], x: Point2) -> Matrix2:
    """Central finite-difference Jacobian of a planar vector field."""
    h1 = FD_STEP * (1.0 + abs(x.x1))
    h2 = FD_STEP * (1.0 + abs(x.x2))
    fp1 = f(Point2(x.x1 + h1, x.x2))
    fm1 = f(Point2(x.x1 - h1, x.x2))
    fp2 = f(Point2(x.x1, x.x2 + h2))
    fm2 = f(Point2(x.x1, x.x2 - h2))
    return Matrix2(
        (fp1.x1 - fm1.x1) / (2.0 * h1), (fp2.x1 - fm2.x1) / (2.0 * h2),
        (fp1.x2 - fm1.x2) / (2.0 * h1), (fp2.x2 - fm2.x2) / (2.0 * h2),
    )


@dataclass(frozen=True)
class ScalarField:
    """Scalar function of the plane with analytic or finite-difference gradient."""

    evaluate: Callable[[Point2], float]
    analytic_gradient: Callable[[Point2], Point2] | None = None

    @property
    def has_analytic_gradient(self) -> bool:
        return self.analytic_gradient is not None

    def gradient(self, x: Point2) -> Point2:
        if self.analytic_gradient is not None:
            return self.analytic_gradient(x)
        return central_gradient(self.evaluate, x)


@dataclass(frozen=True)
class VectorField:
    """Planar vector field with optional analytic divergence and Jacobian."""

    evaluate: Callable[[Point2], Point2]
    analytic_divergence: Callable[[Point2], float] | None = None
    analytic_jacobian: Callable[[Point2], Matrix2] | None = None

    def divergence(self, x: Point2) -> float:
        if self.analytic_divergence is not None:
            return self.analytic_divergence(x)
        return central_divergence(self.evaluate, x)

    def jacobian(self, x: Point2) -> Matrix2:
        if self.analytic_jacobian is not None:
            return self.analytic_jacobian(x)
        return central_jacobian(self.evaluate, x)


@dataclass(frozen=True)
class SystemSpec:
    """A named planar system: its field, and optionally a potential and drift matrix.

    ``matrix`` is set for linear systems x' = A x and None otherwise. Systems
    without a potential support only divergence and trajectory operations;
    decomposition operations reject them.
    """

    name: str
    field: VectorField
    potential: ScalarField | None = None
    matrix: Matrix2 | None = None

    @classmethod
    def linear(cls, name: str, a: Matrix2, potential: ScalarField | None = None) -> SystemSpec:
        field = VectorField(
            evaluate=a.apply,
            analytic_divergence=lambda _x, _tr=a.trace: _tr,
            analytic_jacobian=lambda _x, _a=a: _a,
        )
        return cls(name=name, field=field, potential=potential, matrix=a)

    @classmethod
    def analytic(cls, name: str, field: VectorField, potential: ScalarField | None = None) -> SystemSpec:
        return cls(name=name, field=field, potential=potential, matrix=None)

    @property
    def is_linear(self) -> bool:
        return self.matrix is not None
