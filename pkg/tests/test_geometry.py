import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spheroid_qm.errors import DomainError, ValidationError
from spheroid_qm.geometry import (
    ClassicalState,
    EmbeddedPoint,
    SurfaceParams,
    TangentPoint,
    classical_hamiltonians,
    classical_momenta,
    gnomonic_from_sphere,
    h_eps_printed,
    metric_spheroid_coords,
    metric_tangent,
    potential_osc,
    potential_spheroid_coords,
    project_spheroid_to_sphere,
    sphere_measure,
    spring_constant,
    tangent_to_spheroid,
)
from spheroid_qm.validation import decomposition_slope, embedding_metric_fd

coords = st.floats(-2.5, 2.5)
lams = st.floats(0.2, 3.0)
epss = st.floats(-0.5, 1.0)


def test_surface_params_roundtrip():
    s = SurfaceParams.from_curvature(0.8, 0.1)
    assert s.lam == pytest.approx(0.8)
    assert s.eps == pytest.approx(0.1)
    assert not s.is_sphere
    assert s.sphere().is_sphere and s.sphere().a == s.a


@pytest.mark.parametrize("lam,eps", [(0.0, 0.1), (-1.0, 0.1), (1.0, -1.0)])
def test_surface_params_domain(lam, eps):
    with pytest.raises(DomainError):
        SurfaceParams.from_curvature(lam, eps)


def test_spring_constant_conventions():
    assert spring_constant(1.4) == pytest.approx(1.96)
    assert spring_constant(1.4, "literal") == 1.4
    with pytest.raises(DomainError):
        spring_constant(1.0, "cubic")


def test_metric_at_pole_and_sphere_value():
    s = SurfaceParams.from_curvature(1.0, 0.25)
    g = metric_tangent(TangentPoint(0.0, 0.0), s)
    assert g == pytest.approx((1 / 1.25, 0.0, 1 / 1.25))
    g = metric_tangent(TangentPoint(1.0, 0.0), SurfaceParams.from_curvature(1.0, 0.0))
    assert g == pytest.approx((0.25, 0.0, 0.5))


@given(x=coords, y=coords, lam=lams, eps=epss)
@settings(max_examples=100, deadline=None)
def test_metric_matches_embedding(x, y, lam, eps):
    s = SurfaceParams.from_curvature(lam, eps)
    t = TangentPoint(x, y)
    assert np.allclose(metric_tangent(t, s).matrix(), embedding_metric_fd(t, s), atol=1e-7)


@given(x=coords, y=coords, lam=lams, eps=epss)
@settings(max_examples=60, deadline=None)
def test_projection_chain_roundtrip(x, y, lam, eps):
    s = SurfaceParams.from_curvature(lam, eps)
    t = TangentPoint(x, y)
    q = tangent_to_spheroid(t, s)
    sph = project_spheroid_to_sphere(q, s)
    assert np.dot(sph.as_array(), sph.as_array()) == pytest.approx(s.a**2, rel=1e-12)
    back = gnomonic_from_sphere(sph, s)
    assert (back.x, back.y) == pytest.approx((x, y), abs=1e-10)


def test_projection_rejects_off_surface_point():
    s = SurfaceParams.from_curvature(1.0, 0.1)
    with pytest.raises(ValidationError):
        project_spheroid_to_sphere(EmbeddedPoint(0.0, 0.0, 2.0), s)


def test_lower_sheet_and_equator():
    s = SurfaceParams.from_curvature(1.0, 0.1)
    q = tangent_to_spheroid(TangentPoint(0.3, 0.2), s, sheet="lower")
    assert q.q3 < 0 and not q.upper
    with pytest.raises(DomainError):
        gnomonic_from_sphere(EmbeddedPoint(1.0, 0.0, 0.0), s)
    with pytest.raises(DomainError):
        tangent_to_spheroid(TangentPoint(0.3, 0.2), s, sheet="side")


def test_spheroid_coordinate_metric_and_potential():
    s = SurfaceParams.from_curvature(1.0, 0.1)
    t = TangentPoint(0.4, -0.3)
    q = tangent_to_spheroid(t, s)
    assert potential_spheroid_coords(q.q1, q.q2, s, 1.2) == pytest.approx(potential_osc(t, s, 1.2), rel=1e-12)
    with pytest.raises(DomainError):
        metric_spheroid_coords(s.b, 0.0, s)


@given(rho=st.floats(0.0, 10.0), lam=lams)
def test_sphere_measure_is_area_weight(rho, lam):
    # sqrt(g) rho drho = sin(chi)/lam dchi with tan^2 chi = lam rho^2
    chi = math.atan(math.sqrt(lam) * rho)
    dchi_drho = math.sqrt(lam) / (1 + lam * rho * rho)
    assert math.sqrt(sphere_measure(rho, lam)) * rho == pytest.approx(math.sin(chi) / lam * dchi_drho, rel=1e-12, abs=1e-300)


@given(x=coords, y=coords, vx=coords, vy=coords, lam=lams)
@settings(max_examples=100)
def test_momentum_identity(x, y, vx, vy, lam):
    c = ClassicalState(x, y, vx, vy)
    _, p0 = classical_momenta(c, SurfaceParams.from_curvature(lam, 0.1))
    d = 1 + lam * (x * x + y * y)
    lhs = x * vx + y * vy
    assert lhs == pytest.approx(float(p0 @ c.pos) * d * d, rel=1e-12, abs=1e-12)


def test_sphere_hamiltonian_is_exact_at_eps_zero():
    c = ClassicalState(0.4, 1.1, -0.7, 0.2)
    h = classical_hamiltonians(c, SurfaceParams.from_curvature(0.9, 0.0), 1.3)
    assert h.exact == pytest.approx(h.sphere, rel=1e-13)
    assert h.eps_term == 0


def test_decomposition_error_is_second_order():
    slope, _ = decomposition_slope(ClassicalState(0.7, -0.4, 0.3, 0.9), 1.0, 1.0)
    assert abs(slope - 2.0) < 0.1


def test_printed_correction_differs_by_spring_term():
    c = ClassicalState(0.6, 0.2, 0.5, -0.3)
    s = SurfaceParams.from_curvature(1.0, 0.05)
    diff = h_eps_printed(c, s, 1.2) - classical_hamiltonians(c, s, 1.2).eps_term
    assert diff == pytest.approx(-0.5 * 0.05 * 1.44 * 0.4, rel=1e-12)


@given(lam=lams, eps=st.floats(-0.9, 1.0))
def test_curvature_parameters_are_kept_exactly(lam, eps):
    s = SurfaceParams.from_curvature(lam, eps)
    assert s.lam == lam and s.eps == eps
    assert s.sphere().eps == 0 and s.sphere().lam == lam
    assert s.a**2 / s.b**2 - 1 == pytest.approx(eps, abs=1e-13)
