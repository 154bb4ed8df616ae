import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spheroid_qm.errors import DomainError
from spheroid_qm.free_particle import (
    FreeState,
    energy0,
    norm_integral,
    offdiag_element,
    shift1_closed,
    shift1_quadrature,
    spectrum,
    wavefunction,
)
from spheroid_qm.geometry import SurfaceParams, TangentPoint


def surf(lam=1.0, eps=0.1):
    return SurfaceParams.from_curvature(lam, eps)


def test_energy0():
    assert energy0(3, surf(2.0)) == pytest.approx(12.0)
    with pytest.raises(DomainError):
        FreeState(-1, surf())


@pytest.mark.parametrize("n", range(8))
def test_normalization(n):
    assert norm_integral(FreeState(n, surf(0.7))) == pytest.approx(1.0, abs=1e-12)


def test_wavefunction_values():
    s = surf()
    st0 = FreeState(0, s)
    assert abs(wavefunction(st0, TangentPoint(3.0, -1.0))) == pytest.approx(st0.norm)
    st2 = FreeState(2, s)
    psi = wavefunction(st2, TangentPoint(0.0, 1.0))  # sin^2 chi = 1/2, phi = pi/2
    assert psi == pytest.approx(st2.norm * 0.5 * complex(-1.0, 0.0), abs=1e-14)


def test_shift_constants():
    s = surf(1.0, 0.1)
    assert shift1_closed(FreeState(0, s)) == pytest.approx(0.025, abs=1e-10)
    assert shift1_closed(FreeState(1, s)) == pytest.approx(-0.05, abs=1e-10)
    assert shift1_quadrature(FreeState(0, s)) == pytest.approx(0.025, abs=1e-10)
    assert shift1_quadrature(FreeState(1, s)) == pytest.approx(-0.05, abs=1e-10)


def test_shift_matches_simplified_form():
    # the Gamma ratios collapse to -(eps lam/2)(n^2+n-3/4)(n+1)/(n+3/2)
    s = surf(1.7, 0.2)
    for n in range(15):
        ref = -0.5 * 0.2 * 1.7 * (n * n + n - 0.75) * (n + 1) / (n + 1.5)
        assert shift1_closed(FreeState(n, s)) == pytest.approx(ref, rel=1e-12)


@given(n=st.integers(0, 20), lam=st.sampled_from([0.5, 1.0, 2.0]))
@settings(max_examples=40, deadline=None)
def test_closed_vs_quadrature(n, lam):
    stt = FreeState(n, surf(lam))
    assert shift1_quadrature(stt) == pytest.approx(shift1_closed(stt), rel=1e-8)


@given(n=st.integers(0, 12), eps=st.floats(-0.5, 0.5), lam=st.floats(0.1, 5.0))
def test_shift_linear_in_eps_lam(n, eps, lam):
    a = shift1_closed(FreeState(n, surf(lam, eps)))
    b = shift1_closed(FreeState(n, surf(1.0, 1.0)))
    assert a == pytest.approx(eps * lam * b, rel=1e-9, abs=1e-14)


def test_large_n_is_finite():
    val = shift1_closed(FreeState(400, surf()))
    assert math.isfinite(val)
    assert val == pytest.approx(-0.05 * (400 * 401 - 0.75) * 401 / 401.5, rel=1e-9)


def test_eps_zero_collapses():
    s = surf(1.0, 0.0)
    assert all(shift1_closed(FreeState(n, s)) == 0 for n in range(21))


def test_offdiagonal_elements_vanish():
    s = surf()
    worst = max(abs(offdiag_element(m, n, s)) for n in range(9) for m in range(n))
    assert worst < 1e-10
    with pytest.raises(DomainError):
        offdiag_element(2, 2, s)


def test_spectrum_table():
    t = spectrum(4, surf())
    assert [r.n for r in t.rows] == list(range(5))
    assert all(r.l is None for r in t.rows)
    assert all(r.dE1_err_est < 1e-10 for r in t.rows)
    assert t.rows[0].E == pytest.approx(0.025)
