import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypcmc.catalog import catenoid_cousin, enneper_cousin, horosphere, linear_gauss_example
from hypcmc.errors import PreconditionError
from hypcmc.holo import BranchedPoint, Path, constant, laurent, power
from hypcmc.weierstrass import (POINT_AT_INFINITY, SU2Matrix, WeierstrassData, ball_to_upper,
                                immerse, integrate_frame, is_infinity, minimal_immersion,
                                monodromy, secondary_gauss, su2_action, upper_to_ball)


def _frame(data, z, n=4, **kw):
    return integrate_frame(data, Path.segment(data.z0, z, n), **kw)


# --- minimal surfaces ---------------------------------------------------------

def test_minimal_immersion_examples():
    flat = WeierstrassData(constant(1.0), constant(0.0))
    np.testing.assert_allclose(minimal_immersion(flat, Path.segment(0, 1, 1)), [1, 0, 0],
                               atol=1e-14)
    np.testing.assert_allclose(minimal_immersion(flat, Path.trivial(0)), [0, 0, 0])
    enn = WeierstrassData(constant(1.0), laurent({1: 1.0}))
    for t in (0.3, -0.7, 1.5):
        x = minimal_immersion(enn, Path.segment(0, t, 3))
        assert x[2] == pytest.approx(t * t, rel=1e-12)
        # Enneper's surface closed form: Re(z - z^3/3, i(z + z^3/3), z^2)
        assert x[0] == pytest.approx(t - t ** 3 / 3)


# --- frames ------------------------------------------------------------------

@pytest.mark.parametrize("surf", [horosphere(), enneper_cousin(1)], ids=["horo", "enneper"])
def test_frame_matches_closed_form(surf):
    rng = np.random.default_rng(3)
    for z in rng.uniform(-1, 1, 8) + 1j * rng.uniform(-1, 1, 8):
        fr = _frame(surf.data, z)
        np.testing.assert_allclose(fr.F, surf.closed_frame(z), atol=1e-10)
        assert abs(np.linalg.det(fr.F) - 1) <= 1e-12


def test_empty_path_gives_identity():
    fr = integrate_frame(enneper_cousin().data, Path.trivial(0))
    np.testing.assert_array_equal(fr.F, np.eye(2))
    assert np.linalg.det(fr.F) == 1


def test_path_must_start_at_base_point():
    with pytest.raises(PreconditionError):
        integrate_frame(horosphere().data, Path.segment(1, 2))


def test_det_drift_per_unit_length():
    d = enneper_cousin().data
    path = Path.circle(0, 1.5, 0, 1, 40)
    path = Path.segment(0, 1.5, 2).then(path)
    fr = integrate_frame(d, path)
    assert fr.det_drift <= 1e-10 * path.length()


def test_convergence_order_is_four():
    surf = enneper_cousin()
    z = 1.2 + 0.9j
    exact = surf.closed_frame(z)
    errs = []
    steps = [8, 16, 32, 64]
    for n in steps:
        fr = integrate_frame(surf.data, Path.segment(0, z, 1), fixed_steps=n)
        errs.append(np.max(np.abs(fr.F - exact)))
    slope = -np.polyfit(np.log(steps), np.log(errs), 1)[0]
    assert abs(slope - 4) <= 0.4


# --- models ------------------------------------------------------------------

def test_immerse_examples():
    assert np.allclose(immerse(np.eye(2), 1, "upper_half").coords, [0, 0, 1])
    assert np.allclose(immerse(np.eye(2), 1, "poincare_ball").coords, [0, 0, 0])
    F = horosphere().closed_frame(1.0)
    assert immerse(F, 1, "upper_half").coords[2] == pytest.approx(0.2)


@settings(max_examples=50, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0.05, 5), st.floats(0.5, 3))
def test_model_round_trip(x1, x2, x3, c):
    x = np.array([x1, x2, x3])
    np.testing.assert_allclose(ball_to_upper(upper_to_ball(x, c), c), x, rtol=1e-12, atol=1e-12)
    assert np.linalg.norm(upper_to_ball(x, c)) < 1 / c


def test_hermitian_model_determinant_and_positivity():
    surf = enneper_cousin()
    for c in (1.0, 2.0):
        d = WeierstrassData(surf.data.f, surf.data.g, c, 0j)
        for z in (0.3 + 0.2j, -0.8 + 0.5j):
            Phi = immerse(_frame(d, z), c, "hermitian").coords
            assert np.linalg.det(Phi).real == pytest.approx(1 / c ** 2, rel=1e-8)
            assert np.allclose(Phi, Phi.conj().T)
            assert np.all(np.linalg.eigvalsh(Phi) > 0)


def test_upper_half_and_hermitian_agree():
    from hypcmc.weierstrass import hermitian_from_upper
    F = enneper_cousin().closed_frame(0.4 - 0.3j)
    x = immerse(F, 1, "upper_half").coords
    np.testing.assert_allclose(hermitian_from_upper(x), immerse(F, 1, "hermitian").coords,
                               atol=1e-12)


# --- secondary Gauss map -------------------------------------------------------

def test_secondary_gauss_examples():
    e = enneper_cousin().data
    for z in (0.3 + 0.1j, -0.5 + 0.7j):
        assert secondary_gauss(e, z) == pytest.approx(np.tanh(z), abs=1e-10)
    assert secondary_gauss(e, 0j) == 0
    assert secondary_gauss(horosphere().data, 0.7 - 0.2j) == pytest.approx(1)


def test_secondary_gauss_two_columns_agree():
    # dF11/dF21 from the first column equals dF12/dF22 from the second
    d = catenoid_cousin(1.7).data
    z = 0.6 + 0.8j
    F = _frame(d, z).F
    g = d.g.value(z)
    G1 = (F[0, 0] * g + F[0, 1]) / (F[1, 0] * g + F[1, 1])
    G2 = (F[0, 0] * g * g + F[0, 1] * g) / (F[1, 0] * g * g + F[1, 1] * g)
    assert abs(G1 - G2) <= 1e-8 * abs(G1)


@pytest.mark.parametrize("mu", [0.5, 1.7, 2.5])
def test_catenoid_secondary_gauss_is_z_mu_on_each_sheet(mu):
    d = catenoid_cousin(mu).data
    for w in (0, 1, -1):
        bp = BranchedPoint(0.4 + 0.6j, w)
        assert secondary_gauss(d, bp) == pytest.approx(power(mu)(bp), rel=1e-8)


# --- monodromy ------------------------------------------------------------------

def test_monodromy_trivial_cases():
    loop = Path.circle(0.5, 1.0, np.pi, 1, 48)     # passes through z0 = 0? no: starts at -0.5
    res = monodromy(enneper_cousin().data, loop)
    assert res.in_su2 and np.max(np.abs(res.B - np.eye(2))) <= 1e-8
    res = monodromy(horosphere().data, Path.circle(2, 1, 0, 1, 16))
    assert np.max(np.abs(res.B - np.eye(2))) <= 1e-10


def test_monodromy_needs_closed_loop():
    with pytest.raises(PreconditionError):
        monodromy(horosphere().data, Path.segment(0, 1))


@pytest.mark.parametrize("mu", [0.5, 1.3, 2.5])
def test_catenoid_monodromy_is_su2_and_homotopy_invariant(mu):
    d = catenoid_cousin(mu).data
    B1 = monodromy(d, Path.circle(0, 1, 0, 1, 32)).B
    # a different loop in the same class: ellipse-like polygon around 0 based at 1
    t = np.linspace(0, 2 * np.pi, 41)
    pts = 1.0 + 0.0j + (np.cos(t) - 1) * 1.5 + 0.4j * np.sin(t)
    pts[-1] = pts[0]
    B2 = monodromy(d, Path(pts, closed=True)).B
    assert np.max(np.abs(B1 - B2)) <= 1e-6
    res = monodromy(d, Path.circle(0, 1, 0, 1, 32))
    assert res.in_su2


@pytest.mark.parametrize("mu", [0.5, 1.3, 2.5])
def test_gauss_map_equivariance(mu):
    d = catenoid_cousin(mu).data
    res = monodromy(d, Path.circle(0, 1, 0, 1, 32))
    # continuation of G around the loop: G -> e^{2 pi i mu} G
    z = 0.3 + 0.4j
    G0 = secondary_gauss(d, BranchedPoint(z, 0))
    G1 = secondary_gauss(d, BranchedPoint(z, 1))
    # for F -> B F the first-column ratio transforms by the Moebius action of B
    assert abs(G1 - su2_action(res.B, G0)) <= 1e-6 * abs(G1)
    assert G1 == pytest.approx(np.exp(2j * np.pi * mu) * G0, rel=1e-8)
    # the diagonal SU(2) matrix realising the continuation
    D = SU2Matrix(np.exp(1j * np.pi * mu), 0)
    assert su2_action(D, G0) == pytest.approx(G1, rel=1e-10)


def test_linear_gauss_example_monodromy():
    res = monodromy(linear_gauss_example(3).data, Path.circle(0, 1, 0, 1, 32))
    assert res.in_su2


# --- SU(2) action ------------------------------------------------------------------

def test_su2_action_examples():
    assert su2_action(np.eye(2), 0.3 + 0.1j) == 0.3 + 0.1j
    B = SU2Matrix(np.exp(1j * np.pi / 2), 0)
    assert su2_action(B, 1.0) == pytest.approx(-1.0)
    w = su2_action(SU2Matrix(0, 1), 0.0)
    assert is_infinity(w) and w == POINT_AT_INFINITY
    assert su2_action(SU2Matrix(0, 1), POINT_AT_INFINITY) == 0


def test_su2_matrix_validation():
    with pytest.raises(PreconditionError):
        SU2Matrix(1.0, 0.5)


@pytest.mark.parametrize("make", [lambda: catenoid_cousin(0.5), lambda: catenoid_cousin(2.5),
                                  lambda: linear_gauss_example(3)], ids=["mu0.5", "mu2.5", "m3"])
def test_end_gauge_agrees_with_direct_integration(make):
    s = make()
    d = s.data
    for target in (0.3 + 0.2j, BranchedPoint(0.2 * np.exp(2.5j), 1)):
        p = Path.to_branched(d.z0, target) if isinstance(target, BranchedPoint) \
            else Path.segment(d.z0, target, 4)
        direct = integrate_frame(d, p).F
        gauged = integrate_frame(d, p, gauge=s.end_gauge).F
        assert np.max(np.abs(direct - gauged)) <= 1e-9 * np.max(np.abs(direct))


def test_end_gauge_reaches_deep_into_the_end():
    s = linear_gauss_example(3)
    d = s.data
    fr = integrate_frame(d, Path.segment(d.z0, 1e-4, 40), gauge=s.end_gauge)
    ref = s.closed_frame(1e-4)
    assert np.max(np.abs(fr.F - ref)) <= 1e-10 * np.max(np.abs(ref))
