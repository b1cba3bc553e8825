"""Exact 3-vector algebra and third-order jets of space curves.

Everything downstream works on two small value types: ``Vec3`` for points
and directions, and ``Jet3`` for a curve point bundled with its first three
derivatives.  A ``Jet3`` remembers which parameter its derivatives are taken
against (the raw curve parameter ``"u"`` or the spherical arc length
``"s1"``); mixing the two in one expression is a contract violation and
raises ``TagError`` instead of silently producing wrong curvatures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

__all__ = [
    "EPS_CYL",
    "Vec3",
    "Jet3",
    "S1Derivatives",
    "NonFiniteSample",
    "CylindricalDirector",
    "TagError",
    "det3",
    "fd_jet",
    "s1_derivatives",
    "reparam_to_s1",
]

# absolute threshold on |dq/du| below which the director counts as constant
EPS_CYL = 1e-9

PARAM_U = "u"
PARAM_S1 = "s1"


class NonFiniteSample(ValueError):
    """A curve sampler returned a NaN or infinite coordinate."""


class CylindricalDirector(ValueError):
    """The director is locally constant, so its spherical image degenerates.

    Carries the offending parameter value in ``u`` when the caller knows it.
    """

    def __init__(self, message: str = "director derivative vanishes", u: float | None = None):
        self.u = u
        if u is not None:
            message = f"{message} at u={u!r}"
        super().__init__(message)


class TagError(ValueError):
    """A jet was used under the wrong parameter tag."""


@dataclass(frozen=True, slots=True)
class Vec3:
    """Point or direction in Euclidean 3-space."""

    x: float
    y: float
    z: float

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def __mul__(self, scalar: float) -> "Vec3":
        return Vec3(self.x * scalar, self.y * scalar, self.z * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "Vec3":
        return Vec3(self.x / scalar, self.y / scalar, self.z / scalar)

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def normalized(self) -> "Vec3":
        n = self.norm()
        if n == 0.0:
            raise ZeroDivisionError("cannot normalize the zero vector")
        return self / n

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


ZERO = Vec3(0.0, 0.0, 0.0)
EX = Vec3(1.0, 0.0, 0.0)
EY = Vec3(0.0, 1.0, 0.0)
EZ = Vec3(0.0, 0.0, 1.0)


def det3(a: Vec3, b: Vec3, c: Vec3) -> float:
    """Determinant of the 3x3 matrix with columns a, b, c (triple product)."""
    return a.dot(b.cross(c))


@dataclass(frozen=True, slots=True)
class Jet3:
    """Curve value and first three derivatives against the tagged parameter."""

    d0: Vec3
    d1: Vec3
    d2: Vec3
    d3: Vec3
    param: str = PARAM_U

    def is_finite(self) -> bool:
        return (
            self.d0.is_finite()
            and self.d1.is_finite()
            and self.d2.is_finite()
            and self.d3.is_finite()
        )


@dataclass(frozen=True, slots=True)
class S1Derivatives:
    """Derivatives of the spherical-image arc length s1 against u.

    s1p must be positive: a vanishing value means the director stalls and the
    surface is locally cylindrical.
    """

    s1p: float
    s1pp: float
    s1ppp: float


def fd_jet(curve: Callable[[float], Vec3], u0: float, step: float) -> Jet3:
    """Numerical jet of ``curve`` at ``u0`` from a 5-point central stencil.

    d1 and d2 are fourth-order accurate, d3 second-order.  The sampler is
    evaluated at u0 and u0 +/- step, u0 +/- 2*step only.
    """
    if not (step > 0.0 and math.isfinite(step)):
        raise ValueError(f"step must be positive and finite, got {step!r}")
    f = [curve(u0 + k * step) for k in (-2.0, -1.0, 0.0, 1.0, 2.0)]
    for k, v in zip((-2, -1, 0, 1, 2), f):
        if not v.is_finite():
            raise NonFiniteSample(f"sampler returned a non-finite value at u={u0 + k * step!r}")
    d1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * step)
    d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * step * step)
    d3 = (f[4] - 2.0 * f[3] + 2.0 * f[1] - f[0]) / (2.0 * step**3)
    return Jet3(f[2], d1, d2, d3, PARAM_U)


def s1_derivatives(q_jet: Jet3) -> S1Derivatives:
    """First three u-derivatives of the director's spherical arc length.

    With n(u) = |dq/du| these are n, n' and n'' expressed through the jet:

        s1p   = |d1|
        s1pp  = <d1, d2> / |d1|
        s1ppp = (<d2, d2> + <d1, d3>) / |d1| - <d1, d2>^2 / |d1|^3
    """
    if q_jet.param != PARAM_U:
        raise TagError(f"s1_derivatives expects a u-jet, got {q_jet.param!r}")
    n1 = q_jet.d1.norm()
    if n1 <= EPS_CYL:
        raise CylindricalDirector()
    g12 = q_jet.d1.dot(q_jet.d2)
    s1pp = g12 / n1
    s1ppp = (q_jet.d2.dot(q_jet.d2) + q_jet.d1.dot(q_jet.d3)) / n1 - g12 * g12 / n1**3
    return S1Derivatives(n1, s1pp, s1ppp)


def reparam_to_s1(jet_u: Jet3, s1d: S1Derivatives) -> Jet3:
    """Rewrite a u-jet as an s1-jet via the chain rule up to third order."""
    if jet_u.param != PARAM_U:
        raise TagError(f"reparam_to_s1 expects a u-jet, got {jet_u.param!r}")
    p, pp, ppp = s1d.s1p, s1d.s1pp, s1d.s1ppp
    if p <= EPS_CYL:
        raise CylindricalDirector()
    d1 = jet_u.d1 / p
    d2 = (jet_u.d2 * p - jet_u.d1 * pp) / p**3
    d3 = (
        jet_u.d3 / p**3
        - jet_u.d2 * (3.0 * pp / p**4)
        + jet_u.d1 * (3.0 * pp * pp / p**5 - ppp / p**4)
    )
    return Jet3(jet_u.d0, d1, d2, d3, PARAM_S1)
