import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypcmc.catalog import catenoid_cousin, linear_gauss_example
from hypcmc.ends import (asymptotic_graph, catenoid_graph_constant, classify_end,
                         frame_asymptote, indicial_roots)
from hypcmc.errors import DegenerateError, IllDefinedEndError, NotRegularEndError
from hypcmc.holo import Path
from hypcmc.weierstrass import immerse, integrate_frame


def test_classify_examples():
    e = classify_end(1, -2, 2)
    assert e.end_type == "catenoid_cousin_type" and e.m == 3 and not e.embedded
    e = classify_end(2, -2, 0)
    assert e.end_type == "horosphere_type" and (e.m1, e.m2) == (1, 3) and e.embedded
    with pytest.raises(NotRegularEndError):
        classify_end(1, -3, 1)
    with pytest.raises(IllDefinedEndError) as ei:
        classify_end(0.5, -1.5, 0.3)
    assert "nearest" in str(ei.value)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 6), st.integers(1, 6))
def test_catenoid_type_roots(mu, m):
    if abs(mu - m) < 1e-6:
        return
    q = (m * m - mu * mu) / 4
    e = classify_end(mu, -1 - mu, q)
    assert e.m1 == pytest.approx(m) and e.m2 == pytest.approx(m) and e.m == m
    assert e.embedded == (m == 1)
    for a in (-mu, mu):   # nu + 1 and 2 mu + nu + 1
        for t in indicial_roots(a, q):
            assert abs(t * t - a * t - q) <= 1e-10 * max(1, abs(q))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.integers(-1, 4), st.floats(0.05, 0.95))
def test_horosphere_type_gap(mh, ordq, frac):
    # nu = -mh - 1, ord Q = mu + nu - 1 = ordq  =>  mu = ordq + mh + 2
    nu = -mh - 1
    mu = ordq + 2 - nu - 1 + 0.0
    e = classify_end(mu, nu, 0)
    assert e.end_type == "horosphere_type"
    assert e.m == e.m1 == mh
    assert e.m2 - e.m1 == 2 * (e.ord_Q + 2)


def test_asymptotic_graph_examples():
    h = classify_end(2, -2, 0)
    a = asymptotic_graph(h, 0.1 + 0.2j)
    np.testing.assert_allclose(a.point, [0.1, 0.2, 0.05])
    assert a.exponent == 1
    assert asymptotic_graph(classify_end(0.3, -1.3, (1 - 0.09) / 4), 0.1).exponent == \
        pytest.approx(0.6)
    with pytest.raises(DegenerateError):
        catenoid_graph_constant(1.0, 1)


def test_frame_asymptote_examples():
    # catenoid type (mu = 2, m = 1): q = (m^2 - mu^2)/4 = -3/4
    e = classify_end(2.0, -3.0, -0.75)
    assert e.m == 1
    np.testing.assert_allclose(frame_asymptote(e, 1.0),
                               np.array([[1.5, 0.5], [0.5, 1.5]]) / np.sqrt(2))
    for r in (0.1, 0.5, 2.0):
        assert np.linalg.det(frame_asymptote(e, r)) == pytest.approx(1.0)
    h = classify_end(2, -2, 0)
    A = frame_asymptote(h, 1e-6)
    assert A[0, 0] == 1 and A[1, 1] == 1


@pytest.mark.parametrize("mu", [0.3, 0.5])
def test_catenoid_cousin_end_asymptotics(mu):
    # integrated surface vs leading-order graph: residual decays like |z|^{2 mu}
    surf = catenoid_cousin(mu)
    end = classify_end(mu, -1 - mu, (1 - mu * mu) / 4)
    d = surf.data
    rs = np.geomspace(1e-3, 1e-5, 5)
    res = []
    for r in rs:
        fr = integrate_frame(d, Path.segment(d.z0, r, 40), gauge=surf.end_gauge)
        x = immerse(fr, d.c, "upper_half", d.placement).coords
        g = asymptotic_graph(end, r)
        res.append(np.linalg.norm(x - g.raw) / np.linalg.norm(g.raw))
    slope = np.polyfit(np.log(rs), np.log(res), 1)[0]
    assert slope == pytest.approx(min(1.0, 2 * mu), rel=0.05)


def test_graph_constant_matches_normalised_surface():
    # (Re z^m, Im z^m, c|z|^{mu+m}) after the rescaling zeta = |a|^{1/m} z
    mu, m = 0.5, 1
    end = classify_end(mu, -1 - mu, (m * m - mu * mu) / 4)
    z = 1e-4
    raw = asymptotic_graph(end, z).raw
    a = (mu + m) / (mu - m)
    zeta = abs(a) ** (1 / m) * z
    norm = asymptotic_graph(end, zeta).point
    np.testing.assert_allclose(np.abs(raw[:2]), np.abs(norm[:2]), rtol=1e-12)
    assert raw[2] == pytest.approx(norm[2], rel=1e-12)


def test_linear_gauss_end_residual_decays_like_r_squared():
    # G = z, m = 3: measured decay of the relative residual against the
    # leading-order graph (the exponent min(1, 2 mu) = 1 is only a bound here)
    surf = linear_gauss_example(3)
    end = classify_end(1.0, -2.0, 2.0)
    d = surf.data
    rs = np.geomspace(1e-1, 1e-3, 5)
    res = []
    for r in rs:
        fr = integrate_frame(d, Path.segment(d.z0, r, 40), gauge=surf.end_gauge)
        x = immerse(fr, d.c, "upper_half", d.placement).coords
        g = asymptotic_graph(end, r)
        res.append(np.linalg.norm(x - g.raw) / np.linalg.norm(g.raw))
    slope = np.polyfit(np.log(rs), np.log(res), 1)[0]
    assert slope == pytest.approx(2.0, rel=0.02)
