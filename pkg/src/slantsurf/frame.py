"""Moving frame, conical curvature and Darboux vector of ruled surfaces.

A ruled surface r(u, v) = f(u) + v*q(u) with unit, non-constant director q
carries the orthonormal frame {q, h, a}: the ruling direction q, the
asymptotic normal a = (q x q') / |q'| and the central normal h = a x q.
Written in the arc length s1 of the director's trace on the unit sphere the
frame obeys

    dq/ds1 = h,    dh/ds1 = -q + kappa*a,    da/ds1 = -kappa*h,

so a single scalar kappa (the conical curvature) controls the whole motion.
The instantaneous rotation axis is the Darboux vector W = kappa*q + a with
|W| = sqrt(1 + kappa^2); every frame derivative equals W x (that vector).

The surface-independent part of the base curve is the striction point

    c = f - (<q', f'> / <q', q'>) * q,

the foot of the common perpendicular of neighbouring rulings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .geometry import (
    EPS_CYL,
    PARAM_S1,
    PARAM_U,
    CylindricalDirector,
    Jet3,
    NonFiniteSample,
    S1Derivatives,
    TagError,
    Vec3,
    det3,
    reparam_to_s1,
    s1_derivatives,
)

__all__ = [
    "NonOrthogonalInput",
    "RuledSurfaceSpec",
    "FrameSample",
    "SampleGrid",
    "striction_point",
    "asymptotic_normal",
    "central_normal",
    "conical_curvature",
    "kappa_prime",
    "darboux_vector",
    "sigma",
    "frame_samples",
]

ORTHO_TOL = 1e-9


class NonOrthogonalInput(ValueError):
    """Frame vectors handed in were not unit and mutually orthogonal."""


@dataclass(frozen=True)
class RuledSurfaceSpec:
    """Ruled surface given by third-order jets of its base curve and director.

    ``base_curve`` and ``director`` map a parameter value to a u-tagged
    ``Jet3``; the director jet must have a unit value.  ``provenance``
    records where the surface came from (catalog entry, prescribed-curvature
    build, or user samples) and flows into report metadata unchanged.
    ``expected`` is optional metadata for tests: invariants the constructor
    knows in closed form.
    """

    base_curve: Callable[[float], Jet3]
    director: Callable[[float], Jet3]
    param_range: tuple[float, float]
    provenance: dict
    expected: dict | None = None


@dataclass(frozen=True, slots=True)
class FrameSample:
    """Frame and curvature data at one parameter value."""

    u: float
    s1: float
    q: Vec3
    h: Vec3
    a: Vec3
    kappa: float
    kappa_prime: float
    sigma: float
    darboux: Vec3
    striction: Vec3


@dataclass(frozen=True)
class SampleGrid:
    """Strictly increasing parameter values spanning a closed interval."""

    u_values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.u_values) < 2:
            raise ValueError("a sample grid needs at least two parameter values")
        for left, right in zip(self.u_values, self.u_values[1:]):
            if not right > left:
                raise ValueError("grid parameter values must be strictly increasing")

    @property
    def count(self) -> int:
        return len(self.u_values)

    @classmethod
    def uniform(cls, param_range: tuple[float, float], count: int) -> "SampleGrid":
        lo, hi = param_range
        if not hi > lo:
            raise ValueError(f"degenerate parameter range {param_range!r}")
        if count < 2:
            raise ValueError("count must be at least 2")
        step = (hi - lo) / (count - 1)
        values = tuple(lo + i * step for i in range(count - 1)) + (hi,)
        return cls(values)


def striction_point(f_jet: Jet3, q_jet: Jet3) -> Vec3:
    """Striction point c = f - (<q', f'>/<q', q'>) q at a common parameter."""
    if f_jet.param != PARAM_U or q_jet.param != PARAM_U:
        raise TagError("striction_point expects u-jets for base curve and director")
    qq = q_jet.d1.dot(q_jet.d1)
    if qq <= EPS_CYL * EPS_CYL:
        raise CylindricalDirector()
    return f_jet.d0 - q_jet.d0 * (q_jet.d1.dot(f_jet.d1) / qq)


def asymptotic_normal(q_jet: Jet3) -> Vec3:
    """Unit normal a = (q x q') / |q'|, the limit of the surface normal."""
    if q_jet.param != PARAM_U:
        raise TagError("asymptotic_normal expects a u-jet")
    n1 = q_jet.d1.norm()
    if n1 <= EPS_CYL:
        raise CylindricalDirector()
    return q_jet.d0.cross(q_jet.d1) / n1


def central_normal(q: Vec3, a: Vec3) -> Vec3:
    """Third frame leg h = a x q, completing the right-handed triple."""
    if (
        abs(q.norm() - 1.0) > ORTHO_TOL
        or abs(a.norm() - 1.0) > ORTHO_TOL
        or abs(q.dot(a)) > ORTHO_TOL
    ):
        raise NonOrthogonalInput("central_normal needs unit, mutually orthogonal q and a")
    return a.cross(q)


def conical_curvature(q_s1: Jet3) -> float:
    """Conical curvature kappa = det(q, dq/ds1, d2q/ds1^2)."""
    if q_s1.param != PARAM_S1:
        raise TagError("conical_curvature expects an s1-jet")
    return det3(q_s1.d0, q_s1.d1, q_s1.d2)


def kappa_prime(q_s1: Jet3) -> float:
    """d(kappa)/ds1 = det(q, dq/ds1, d3q/ds1^3).

    The third-derivative column works because d3q/ds1^3 equals
    -(1 + kappa^2) h + kappa' a, and the h part is killed by the first two
    columns.
    """
    if q_s1.param != PARAM_S1:
        raise TagError("kappa_prime expects an s1-jet")
    return det3(q_s1.d0, q_s1.d1, q_s1.d3)


def darboux_vector(kappa: float, q: Vec3, a: Vec3) -> Vec3:
    """Rotation vector W = kappa*q + a of the moving frame."""
    return q * kappa + a


def sigma(kappa: float, kappa_prime_value: float) -> float:
    """Slant invariant sigma = kappa' / (1 + kappa^2)^(3/2).

    Constant sigma is equivalent to the central normal h making a constant
    angle with a fixed direction.
    """
    return kappa_prime_value / (1.0 + kappa * kappa) ** 1.5


def _sample_at(surface: RuledSurfaceSpec, u: float) -> tuple[Jet3, Jet3, S1Derivatives]:
    f_jet = surface.base_curve(u)
    q_jet = surface.director(u)
    if not (f_jet.is_finite() and q_jet.is_finite()):
        raise NonFiniteSample(f"surface jets are non-finite at u={u!r}")
    try:
        s1d = s1_derivatives(q_jet)
    except CylindricalDirector:
        raise CylindricalDirector(u=u) from None
    return f_jet, q_jet, s1d


def _speed(surface: RuledSurfaceSpec, u: float) -> float:
    q_jet = surface.director(u)
    if not q_jet.is_finite():
        raise NonFiniteSample(f"director jet is non-finite at u={u!r}")
    n1 = q_jet.d1.norm()
    if n1 <= EPS_CYL:
        raise CylindricalDirector(u=u)
    return n1


def frame_samples(surface: RuledSurfaceSpec, grid: SampleGrid) -> list[FrameSample]:
    """Evaluate the frame, curvature and striction data on a grid.

    The spherical arc length s1 starts at zero on the first grid point and
    accumulates by composite Simpson quadrature of |dq/du| over each grid
    interval (midpoint included), so it is exact for constant-speed
    directors and fourth-order accurate otherwise.
    """
    samples: list[FrameSample] = []
    s1_acc = 0.0
    prev_u: float | None = None
    prev_speed = 0.0
    for u in grid.u_values:
        f_jet, q_jet, s1d = _sample_at(surface, u)
        a = asymptotic_normal(q_jet)
        h = central_normal(q_jet.d0, a)
        q_s1 = reparam_to_s1(q_jet, s1d)
        kap = conical_curvature(q_s1)
        kp = kappa_prime(q_s1)
        if prev_u is not None:
            mid_speed = _speed(surface, 0.5 * (prev_u + u))
            s1_acc += (u - prev_u) / 6.0 * (prev_speed + 4.0 * mid_speed + s1d.s1p)
        samples.append(
            FrameSample(
                u=u,
                s1=s1_acc,
                q=q_jet.d0,
                h=h,
                a=a,
                kappa=kap,
                kappa_prime=kp,
                sigma=sigma(kap, kp),
                darboux=darboux_vector(kap, q_jet.d0, a),
                striction=striction_point(f_jet, q_jet),
            )
        )
        prev_u = u
        prev_speed = s1d.s1p
    return samples
