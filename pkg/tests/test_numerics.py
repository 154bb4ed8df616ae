import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import eigvalsh

from spheroid_qm.errors import ConvergenceError, DomainError
from spheroid_qm.numerics import QuadratureSpec, central_diff, eig_tridiag, integrate


def test_integrate_polynomial_exact():
    val, err = integrate(lambda x: x**5 - 3 * x**2, 0.0, 2.0)
    assert val == pytest.approx(64 / 6 - 8, rel=1e-14)
    assert err >= 0


def test_integrate_peaked_function():
    val, _ = integrate(lambda x: 1.0 / (1e-4 + x * x), -1.0, 1.0)
    assert val == pytest.approx(2.0 / 1e-2 * math.atan(1.0 / 1e-2), rel=1e-10)


def test_integrate_endpoint_singularity():
    val, _ = integrate(np.sqrt, 0.0, 1.0)
    assert val == pytest.approx(2.0 / 3.0, rel=1e-10)


@given(n=st.integers(0, 30))
@settings(max_examples=30, deadline=None)
def test_integrate_sine_powers(n):
    val, _ = integrate(lambda c: np.sin(c) ** n, 0.0, math.pi / 2)
    ref = math.sqrt(math.pi) / 2 * math.gamma((n + 1) / 2) / math.gamma(n / 2 + 1)
    assert val == pytest.approx(ref, rel=1e-10)


def test_integrate_reports_nonconvergence():
    with pytest.raises(ConvergenceError) as info:
        integrate(lambda x: np.sin(1.0 / x), 1e-9, 1.0, QuadratureSpec(rel_tol=1e-14, max_depth=3))
    assert math.isfinite(info.value.estimate)


def test_integrate_rejects_empty_interval():
    with pytest.raises(DomainError):
        integrate(np.sin, 1.0, 1.0)


def test_spec_validation_and_env(monkeypatch):
    with pytest.raises(DomainError):
        QuadratureSpec(rel_tol=0.0)
    monkeypatch.setenv("SPHEROID_QUAD_TOL", "1e-6")
    assert QuadratureSpec.from_env().rel_tol == 1e-6
    monkeypatch.setenv("SPHEROID_QUAD_TOL", "abc")
    with pytest.raises(DomainError):
        QuadratureSpec.from_env()


def test_central_diff_values():
    assert central_diff(np.sin, 0.3, 1e-4) == pytest.approx(math.cos(0.3), abs=1e-8)
    assert central_diff(np.sin, 0.3, 1e-3, order=2) == pytest.approx(-math.sin(0.3), abs=1e-6)
    with pytest.raises(DomainError):
        central_diff(np.sin, 0.3, 1e-3, order=3)


def test_central_diff_second_order_convergence():
    hs = np.array([1e-1, 5e-2, 2.5e-2, 1.25e-2])
    errs = [abs(central_diff(np.exp, 0.7, h) - math.exp(0.7)) for h in hs]
    slope = np.polyfit(np.log(hs), np.log(errs), 1)[0]
    assert abs(slope - 2.0) < 0.1


@given(seed=st.integers(0, 2**31 - 1), n=st.integers(2, 40))
@settings(max_examples=40, deadline=None)
def test_eig_tridiag_matches_dense(seed, n):
    rng = np.random.default_rng(seed)
    d, e = rng.normal(size=n), rng.normal(size=n - 1)
    dense = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    k = min(3, n)
    assert np.allclose(eig_tridiag(d, e, k), eigvalsh(dense)[:k], atol=1e-10)


def test_eig_tridiag_input_checks():
    with pytest.raises(DomainError):
        eig_tridiag([1.0, 2.0], [0.1, 0.2], 1)
    with pytest.raises(DomainError):
        eig_tridiag([1.0, 2.0], [0.1], 3)
