"""Exact vector algebra, the finite-difference oracle, and reparametrization."""

import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from slantsurf import (
    CylindricalDirector,
    Jet3,
    NonFiniteSample,
    TagError,
    Vec3,
    det3,
    fd_jet,
    reparam_to_s1,
    s1_derivatives,
)

coords = st.floats(-1.0, 1.0, allow_nan=False)
vectors = st.builds(Vec3, coords, coords, coords)


class TestVec3:
    def test_componentwise_arithmetic(self):
        v = Vec3(1.0, -2.0, 3.0)
        w = Vec3(0.5, 0.5, 0.5)
        assert v + w == Vec3(1.5, -1.5, 3.5)
        assert v - w == Vec3(0.5, -2.5, 2.5)
        assert -v == Vec3(-1.0, 2.0, -3.0)
        assert v * 2.0 == 2.0 * v == Vec3(2.0, -4.0, 6.0)
        assert v / 2.0 == Vec3(0.5, -1.0, 1.5)

    def test_dot_cross_norm(self):
        ex, ey, ez = Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)
        assert ex.cross(ey) == ez
        assert ey.cross(ez) == ex
        assert ez.cross(ex) == ey
        assert ex.dot(ey) == 0.0
        assert Vec3(3.0, 4.0, 0.0).norm() == 5.0

    def test_normalized_zero_vector_raises(self):
        with pytest.raises(ZeroDivisionError):
            Vec3(0.0, 0.0, 0.0).normalized()

    def test_is_finite(self):
        assert Vec3(1.0, 2.0, 3.0).is_finite()
        assert not Vec3(math.nan, 0.0, 0.0).is_finite()
        assert not Vec3(0.0, math.inf, 0.0).is_finite()

    @given(vectors, vectors)
    def test_cross_antisymmetry_is_exact(self, a, b):
        assert a.cross(b) == -(b.cross(a))

    @given(vectors, vectors)
    def test_cross_orthogonal_to_factors(self, a, b):
        c = a.cross(b)
        assert abs(c.dot(a)) <= 4e-15
        assert abs(c.dot(b)) <= 4e-15

    @given(vectors, vectors, vectors)
    def test_det3_matches_triple_product(self, a, b, c):
        assert det3(a, b, c) == a.dot(b.cross(c))
        assert abs(det3(a, b, c) - det3(b, c, a)) <= 1e-14
        assert abs(det3(a, b, c) + det3(b, a, c)) <= 1e-14

    @given(vectors)
    def test_normalized_has_unit_norm(self, v):
        assume(v.norm() > 1e-6)
        assert abs(v.normalized().norm() - 1.0) <= 1e-12


class TestJet3:
    def test_default_tag_is_u(self):
        jet = Jet3(Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(0, 0, 0))
        assert jet.param == "u"

    def test_is_finite_scans_all_orders(self):
        bad = Vec3(math.nan, 0.0, 0.0)
        good = Vec3(1.0, 0.0, 0.0)
        assert Jet3(good, good, good, good).is_finite()
        assert not Jet3(good, good, bad, good).is_finite()


class TestFdJet:
    def test_exact_on_cubic_polynomials(self):
        # the five-point formulas are exact through degree three
        def curve(t):
            return Vec3(t**3 - t, 2.0 * t * t, 5.0 - t)

        jet = fd_jet(curve, 0.7, 0.01)
        assert (jet.d0 - curve(0.7)).norm() == 0.0
        assert (jet.d1 - Vec3(3 * 0.7**2 - 1, 4 * 0.7, -1.0)).norm() < 1e-11
        assert (jet.d2 - Vec3(6 * 0.7, 4.0, 0.0)).norm() < 1e-9
        assert (jet.d3 - Vec3(6.0, 0.0, 0.0)).norm() < 1e-7

    def test_helix_derivatives(self):
        def curve(t):
            return Vec3(math.cos(t), math.sin(t), t)

        u0 = 0.3
        jet = fd_jet(curve, u0, 1e-3)
        assert (jet.d1 - Vec3(-math.sin(u0), math.cos(u0), 1.0)).norm() < 1e-10
        assert (jet.d2 - Vec3(-math.cos(u0), -math.sin(u0), 0.0)).norm() < 1e-8
        assert (jet.d3 - Vec3(math.sin(u0), -math.cos(u0), 0.0)).norm() < 1e-5

    def test_result_is_u_tagged(self):
        jet = fd_jet(lambda t: Vec3(t, 0.0, 0.0), 0.0, 0.1)
        assert jet.param == "u"

    def test_non_finite_sample_names_parameter(self):
        def curve(t):
            return Vec3(math.nan, 0.0, 0.0) if t > 1.05 else Vec3(t, 0.0, 0.0)

        with pytest.raises(NonFiniteSample) as err:
            fd_jet(curve, 1.0, 0.1)
        assert "1.1" in str(err.value)

    @pytest.mark.parametrize("step", [0.0, -0.1, math.inf, math.nan])
    def test_bad_step_rejected(self, step):
        with pytest.raises(ValueError):
            fd_jet(lambda t: Vec3(t, 0.0, 0.0), 0.0, step)


def circle_jet(phi, speed=1.0, accel=0.0, jerk=0.0):
    """Jets of u -> (cos phi(u), sin phi(u), 0) given phi and its derivatives."""
    c, s = math.cos(phi), math.sin(phi)
    p = Vec3(c, s, 0.0)
    t = Vec3(-s, c, 0.0)
    return Jet3(
        d0=p,
        d1=t * speed,
        d2=p * (-speed * speed) + t * accel,
        d3=t * (jerk - speed**3) + p * (-3.0 * speed * accel),
        param="u",
    )


class TestS1Derivatives:
    def test_uniform_latitude_circle(self):
        beta = math.pi / 4
        r = math.cos(beta)
        jet = Jet3(
            Vec3(r, 0.0, math.sin(beta)),
            Vec3(0.0, r, 0.0),
            Vec3(-r, 0.0, 0.0),
            Vec3(0.0, -r, 0.0),
        )
        s1d = s1_derivatives(jet)
        assert s1d.s1p == pytest.approx(r, abs=1e-15)
        assert s1d.s1pp == pytest.approx(0.0, abs=1e-15)
        assert s1d.s1ppp == pytest.approx(0.0, abs=1e-15)

    def test_nonuniform_speed(self):
        # phi(u) = u^2/2 + u, so the sphere-curve speed is phi' = u + 1
        u0 = 0.5
        jet = circle_jet(u0 * u0 / 2 + u0, speed=u0 + 1.0, accel=1.0, jerk=0.0)
        s1d = s1_derivatives(jet)
        assert s1d.s1p == pytest.approx(1.5, abs=1e-14)
        assert s1d.s1pp == pytest.approx(1.0, abs=1e-13)
        assert s1d.s1ppp == pytest.approx(0.0, abs=1e-13)

    def test_rejects_s1_tagged_jets(self):
        jet = Jet3(Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 0), Vec3(0, 0, 0),
                   param="s1")
        with pytest.raises(TagError):
            s1_derivatives(jet)

    def test_frozen_director_is_cylindrical(self):
        jet = Jet3(Vec3(0, 0, 1), Vec3(0, 0, 0), Vec3(0, 0, 0), Vec3(0, 0, 0))
        with pytest.raises(CylindricalDirector):
            s1_derivatives(jet)


class TestReparamToS1:
    def test_round_trip_against_unit_speed_circle(self):
        """Reparametrizing the nonuniform circle gives the unit-speed jets."""
        u0 = 0.5
        phi = u0 * u0 / 2 + u0
        jet_u = circle_jet(phi, speed=u0 + 1.0, accel=1.0)
        jet_s1 = reparam_to_s1(jet_u, s1_derivatives(jet_u))
        want = circle_jet(phi)  # unit speed: d/ds1 jets directly
        assert jet_s1.param == "s1"
        assert (jet_s1.d0 - want.d0).norm() < 1e-15
        assert (jet_s1.d1 - want.d1).norm() < 1e-14
        assert (jet_s1.d2 - want.d2).norm() < 1e-13
        assert (jet_s1.d3 - want.d3).norm() < 1e-12

    @given(st.floats(0.2, 5.0), st.floats(0.0, 6.0))
    def test_linear_scaling(self, c, phi):
        """With s1 = c*u the chain rule reduces to dividing by powers of c."""
        jet_u = circle_jet(phi, speed=c)
        jet_s1 = reparam_to_s1(jet_u, s1_derivatives(jet_u))
        want = circle_jet(phi)
        assert (jet_s1.d1 - want.d1).norm() < 1e-12
        assert (jet_s1.d2 - want.d2).norm() < 1e-11
        assert (jet_s1.d3 - want.d3).norm() < 1e-10

    def test_requires_u_tag(self):
        jet = circle_jet(0.3)
        s1d = s1_derivatives(jet)
        already = reparam_to_s1(jet, s1d)
        with pytest.raises(TagError):
            reparam_to_s1(already, s1d)
