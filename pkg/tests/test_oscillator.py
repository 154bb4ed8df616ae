import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spheroid_qm import oscillator as osc
from spheroid_qm.errors import DomainError
from spheroid_qm.oscillator import OscParams, OscState

PRESETS = [(0.8, 1.0), (1.0, 1.0), (1.0, 1.4)]


def params(lam=1.0, omega=1.0, eps=0.1, coupling="squared"):
    return OscParams.from_values(lam, omega, eps, coupling)


def test_state_validation():
    assert [s.l for s in osc.valid_states(3)] == [-3, -1, 1, 3]
    assert OscState(4, -2).k_r == 1
    for n, l in [(2, 1), (1, 3), (-1, 0)]:
        with pytest.raises(DomainError):
            OscState(n, l)


def test_energy0_and_omega():
    p = params(1.0, 1.0)
    assert p.Omega == pytest.approx(math.sqrt(1.25))
    assert osc.energy0(OscState(0, 0), p) == pytest.approx(1.618033988749895, rel=1e-14)
    assert osc.energy0(OscState(2, 0), p) == pytest.approx(7.854101966249685, rel=1e-14)
    p = params(0.8, 1.4)
    assert osc.energy0(OscState(1, 1), p) == pytest.approx(4.512043956, rel=1e-9)


def test_literal_coupling_changes_spring_only():
    # the closed-form spectrum keeps omega^2; only the potential in the operator changes
    p = params(1.0, 1.4, coupling="literal")
    assert p.spring == 1.4
    assert p.Omega == pytest.approx(math.sqrt(1.96 + 0.25))


@pytest.mark.parametrize("lam,omega", PRESETS)
def test_normalization_and_orthogonality(lam, omega):
    p = params(lam, omega)
    for n in range(9):
        for stt in osc.valid_states(n):
            assert osc.overlap(stt, stt, p) == pytest.approx(1.0, abs=1e-8)
            if abs(stt.l) <= n - 2:
                assert abs(osc.overlap(stt, OscState(n - 2, stt.l), p)) < 1e-8


def test_closed_form_constant_is_off_by_root_two_pi():
    for lam, omega in PRESETS:
        p = params(lam, omega)
        for n in range(9):
            for stt in osc.valid_states(n):
                d = osc.normalization_diagnostic(stt, p)
                assert d.ratio**2 == pytest.approx(2 * math.pi, rel=1e-10)


@given(n=st.integers(0, 8), data=st.data(), chi=st.floats(0.0, 1.5))
@settings(max_examples=60, deadline=None)
def test_jacobi_and_hypergeometric_paths_agree(n, data, chi):
    l = data.draw(st.sampled_from(range(-n, n + 1, 2)))
    stt, p = OscState(n, l), params(0.8, 1.0)
    a = osc.radial_wavefunction(stt, p, chi)
    b = osc.radial_wavefunction_hyp(stt, p, chi)
    assert a == pytest.approx(b, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("n", range(7))
def test_derivative_identity(n):
    p = params(1.0, 1.4)
    chi = np.linspace(0.05, math.pi / 2 - 0.05, 50)
    h = 1e-5
    for stt in osc.valid_states(n):
        fd = (osc.radial_wavefunction(stt, p, chi + h) - osc.radial_wavefunction(stt, p, chi - h)) / (2 * h)
        assert np.allclose(osc.radial_derivative(stt, p, np.cos(2 * chi)), fd, atol=1e-6)


def test_domains():
    p = params()
    with pytest.raises(DomainError):
        osc.radial_wavefunction(OscState(0, 0), p, math.pi / 2)
    with pytest.raises(DomainError):
        osc.radial_derivative(OscState(0, 0), p, -1.0)


def test_shift_symmetric_in_l():
    p = params(0.8, 1.0)
    for n in range(1, 5):
        for stt in osc.valid_states(n):
            other = OscState(n, -stt.l)
            assert osc.shift_total(stt, p) == pytest.approx(osc.shift_total(other, p), abs=1e-10)


def test_kinetic_xform_matches_chi_form():
    p = params(1.0, 1.4)
    for n in range(5):
        for stt in osc.valid_states(n):
            assert osc.shift_kinetic_xform(stt, p) == pytest.approx(osc.shift_kinetic(stt, p), rel=1e-9)


def test_shift_parts_add_up():
    p = params(0.8, 1.0)
    stt = OscState(3, 1)
    assert osc.shift_total(stt, p) == pytest.approx(osc.shift_kinetic(stt, p) + osc.shift_potential(stt, p), rel=1e-13)


@pytest.mark.parametrize("n", range(5))
def test_flat_limit_virial(n):
    p = params(1e-3, 1.0, 0.01)
    for stt in osc.valid_states(n):
        assert osc.shift_total(stt, p) / (0.01 * (n + 1)) == pytest.approx(-1.5, rel=5e-3)


@given(eps=st.floats(-0.3, 0.3))
@settings(max_examples=15, deadline=None)
def test_shift_is_linear_in_eps(eps):
    a = osc.shift_total(OscState(2, 0), params(1.0, 1.0, eps))
    b = osc.shift_total(OscState(2, 0), params(1.0, 1.0, 1.0))
    assert a == pytest.approx(eps * b, rel=1e-9, abs=1e-15)


def test_eps_zero_reduces_to_sphere():
    t = osc.level_table(4, params(1.0, 1.4, 0.0))
    assert all(r.dE1 == 0 and r.E == r.E0 for r in t.rows)


def test_level_table_structure():
    t = osc.level_table(3, params(1.0, 1.0))
    assert len(t.rows) == 1 + 2 + 3 + 4
    assert len(t.rows_for(3)) == 4
    assert len(t.distinct_shifts(3)) == 2
    assert len(t.distinct_shifts(2)) == 2
    assert t.splitting_width(0) == 0


def test_shift_doubles_with_eps():
    for stt in osc.valid_states(3) + osc.valid_states(4):
        a = osc.shift_total(stt, params(0.8, 1.0, 0.05))
        b = osc.shift_total(stt, params(0.8, 1.0, 0.1))
        assert b == pytest.approx(2 * a, rel=1e-12)


def test_flat_limit_energy():
    assert osc.energy0(OscState(3, 1), params(1e-9, 1.0)) == pytest.approx(4.0, rel=1e-8)


def test_radial_nodes():
    p = params(1.0, 1.0)
    chi = np.linspace(0, math.pi / 2, 10_001)[1:-1]
    for (n, l), nodes in {(0, 0): 0, (2, 0): 1, (4, 0): 2, (4, 2): 1}.items():
        phi = osc.radial_wavefunction(OscState(n, l), p, chi)
        assert np.count_nonzero(np.diff(np.sign(phi))) == nodes


def test_derivative_vanishes_at_pole():
    p = params(1.0, 1.0)
    assert abs(osc.radial_derivative(OscState(0, 0), p, 1.0)) < 1e-14
    x = math.cos(math.pi / 2)
    h = 1e-5
    fd = (osc.radial_wavefunction(OscState(1, 1), p, math.pi / 4 + h)
          - osc.radial_wavefunction(OscState(1, 1), p, math.pi / 4 - h)) / (2 * h)
    assert osc.radial_derivative(OscState(1, 1), p, x) == pytest.approx(fd, abs=1e-6)


def test_potential_shift_against_trapezoid():
    p = params(1.0, 1.0, 0.1)
    stt = OscState(0, 0)
    chi = np.linspace(0, math.pi / 2, 1_000_001)[:-1]
    phi = osc.radial_wavefunction(stt, p, chi)
    s = np.sin(chi)
    f = s * (s * s + np.tan(chi) ** 2) * phi * phi
    ref = -0.1 * 1.0 * math.pi * np.trapezoid(np.append(f, 0.0), np.append(chi, math.pi / 2))
    assert osc.shift_potential(stt, p) == pytest.approx(ref, rel=1e-7)


def test_zero_frequency_has_no_potential_shift():
    p = params(1.0, 0.0, 0.1)
    assert osc.shift_potential(OscState(2, 0), p) == 0


def test_sampled_states_are_grid_eigenvectors():
    from spheroid_qm.geometry import SurfaceParams
    from spheroid_qm.oracle import RadialProblem, build_problem

    p = params(1.0, 1.4, 0.0)
    for n, l in [(0, 0), (2, 0), (3, 1), (4, 4)]:
        sysm = build_problem(RadialProblem(l, SurfaceParams.from_curvature(1.0, 0.0), "oscillator", 1.4))
        u = np.sqrt(np.sin(sysm.chi)) * osc.radial_wavefunction(OscState(n, l), p, sysm.chi)
        au = sysm.diag * u
        au[:-1] += sysm.offdiag * u[1:]
        au[1:] += sysm.offdiag * u[:-1]
        e = osc.energy0(OscState(n, l), p)
        # energy reproduced by the sampled state (pointwise residuals blow up against the tan^2 wall)
        assert float(u @ au) / float(u @ u) == pytest.approx(e, rel=1e-3)
