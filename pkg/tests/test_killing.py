import numpy as np
import pytest

from hypcmc.catalog import catenoid_cousin, horosphere
from hypcmc.ends import classify_end
from hypcmc.errors import PreconditionError
from hypcmc.killing import (FIELDS, KillingField, end_profile, end_projection_limit, inversion,
                            killing_at, normal_projection_field, vision_numbers)
from hypcmc.mesh import GridSpec, mesh_generate


@pytest.fixture(scope="module")
def catenoid_mesh():
    return mesh_generate(catenoid_cousin(0.5), GridSpec("annulus", 41, 32, r_range=(1e-3, 1e3)))


@pytest.fixture(scope="module")
def horosphere_mesh():
    return mesh_generate(horosphere(placed=True), GridSpec("rect", 12, 12))


def test_killing_examples():
    np.testing.assert_allclose(killing_at("rotation", [1, 0, 5]), [0, 1, 0])
    np.testing.assert_allclose(killing_at("dilation", [1, 2, 3]), [1, 2, 3])
    np.testing.assert_allclose(killing_at("rotation", [0, 0, 2]), [0, 0, 0])
    np.testing.assert_allclose(killing_at("translation", [0, 0, 2]), [1, 0, 2])
    with pytest.raises(PreconditionError):
        killing_at("dilation", [0, 0, 0])
    with pytest.raises(PreconditionError):
        KillingField("shear")
    assert set(FIELDS) == {"rotation", "dilation", "translation"}


def test_horosphere_projections(horosphere_mesh):
    m = horosphere_mesh
    np.testing.assert_allclose(m.vertices[:, 2], 1.0, atol=1e-12)
    np.testing.assert_allclose(normal_projection_field(m, "dilation"), 1.0, atol=1e-10)
    np.testing.assert_allclose(normal_projection_field(m, "rotation"), 0.0, atol=1e-10)
    r = vision_numbers(m, "dilation")
    assert (r.v, r.v_adj, r.degenerate, len(r.horizon_faces)) == (1, 1, False, 0)
    assert vision_numbers(m, "rotation").degenerate


def test_catenoid_dilation_vision(catenoid_mesh):
    r = vision_numbers(catenoid_mesh, "dilation")
    assert not r.degenerate
    assert r.v == 2 and r.v_adj == 2
    signs = sorted(c["sign"] for c in r.components)
    assert signs == [-1, 1]
    # the horizon is a single ring of faces around the neck
    n1, n2 = catenoid_mesh.shape
    rows = np.unique(r.horizon_faces // (2 * n2))
    assert len(rows) <= 2 and len(r.horizon_faces) >= n2


def test_catenoid_rotation_degenerate(catenoid_mesh):
    assert vision_numbers(catenoid_mesh, "rotation").degenerate


def test_translation_not_adjusted(catenoid_mesh):
    r = vision_numbers(catenoid_mesh, "translation")
    assert r.v >= 1 and r.v_adj < r.v


def test_sign_flip_invariance(catenoid_mesh):
    u = normal_projection_field(catenoid_mesh, "dilation")
    a = vision_numbers(catenoid_mesh, "dilation", u=u)
    b = vision_numbers(catenoid_mesh, "dilation", u=-u)
    assert (a.v, a.v_adj) == (b.v, b.v_adj)
    np.testing.assert_array_equal(a.horizon_faces, b.horizon_faces)
    np.testing.assert_array_equal(a.face_sign, -b.face_sign)
    c = vision_numbers(catenoid_mesh, "dilation", u=7.5 * u)
    np.testing.assert_array_equal(a.horizon_faces, c.horizon_faces)


def test_refinement_stability():
    g = GridSpec("annulus", 21, 16, r_range=(1e-2, 1e2))
    s = catenoid_cousin(0.5)
    a = vision_numbers(mesh_generate(s, g), "dilation")
    b = vision_numbers(mesh_generate(s, g.refined()), "dilation")
    assert (a.v, a.v_adj) == (b.v, b.v_adj) == (2, 2)


def test_end_projection_limits():
    end = classify_end(0.5, -1.5, 0.1875)
    assert end_projection_limit(end, "dilation").limit == pytest.approx(-0.5)
    assert end_projection_limit(end, "rotation").limit == 0.0
    assert not end_projection_limit(end, "translation").bounded


def test_inversion_is_involution():
    x = np.array([[0.3, -0.2, 0.7], [2.0, 1.0, 0.1]])
    np.testing.assert_allclose(inversion(inversion(x)), x)


@pytest.mark.parametrize("loop", ["inner", "outer"])
def test_end_profile_tends_to_limit(catenoid_mesh, loop):
    rad, u, dev = end_profile(catenoid_mesh, "dilation", loop)
    assert np.all(np.diff(rad) > 0)              # ordered from the end inward
    assert abs(u[0] + 0.5) <= 0.15                # coarse mesh; see acceptance for 10%
    assert np.max(dev) <= 1e-8                    # rotational symmetry
