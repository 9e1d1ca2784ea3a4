import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypcmc.errors import PreconditionError, UnknownNameError
from hypcmc.index import (CATALOG_NAMES, TAG_DEFORMATION, TAG_VISION, catalog_lookup, combine,
                          deformation_bound, index_interval, vision_bound)
from hypcmc.oracle import analytic_index


def test_index_interval_examples():
    r = index_interval(5)
    assert r.ind_interval == (4, 5) and r.ind_u == 5
    assert index_interval(1).ind_interval == (1, 1) and index_interval(1).exact == 1
    h = index_interval(3, is_horosphere=True)
    assert h.ind_interval == (0, 0)
    assert index_interval(1, complete=False).ind_interval == (0, 1)
    with pytest.raises(PreconditionError):
        index_interval(-1)


def test_vision_bound_examples():
    for k in range(1, 6):
        assert vision_bound(2 * k + 2, 2 * k + 2) == 2 * k
    assert vision_bound(5, 4) == 3
    assert vision_bound(1, 1) == 0
    assert vision_bound(0, 0) == 0
    with pytest.raises(PreconditionError):
        vision_bound(2, 3)


def test_deformation_bound_examples():
    assert deformation_bound(1) == 0
    assert deformation_bound(0) == 0
    for n in range(3, 9):
        assert deformation_bound(2 * n - 3) == 2 * n - 4


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 30), st.lists(st.integers(0, 40), max_size=4), st.booleans(),
       st.booleans())
def test_combine_invariants(ind_u, bounds, complete, addendum):
    r = combine("x", ind_u, [(b, "test") for b in bounds], complete=complete,
                addendum_mode=addendum)
    lo, hi = r.ind_interval
    assert lo <= hi == ind_u
    assert r.flags["inconsistent"] == any(b > ind_u for b in bounds + ([1] if complete else []))
    if not r.flags["inconsistent"]:
        assert lo == (ind_u if addendum else max([ind_u - 1, 0] + bounds + ([1] if complete else [])))


def test_catalog_examples():
    assert catalog_lookup("horosphere").ind_interval == (0, 0)
    assert catalog_lookup("catenoid-cousin", mu=0.5).exact == 1
    assert catalog_lookup("enneper-cousin", k=1).exact == 1
    assert catalog_lookup("linear-gauss-cousin").exact == 1
    assert catalog_lookup("catenoid-cousin", mu=2.5).ind_interval == (4, 5)
    d = catalog_lookup("dual-enneper")
    assert d.flags["infinite_index"] and d.ind_interval[1] is None
    g1 = catalog_lookup("genus1-catenoid-cousin")
    assert g1.ind_interval[0] == 2
    with pytest.raises(UnknownNameError):
        catalog_lookup("trinoid")


@pytest.mark.parametrize("k", range(1, 6))
def test_enneper_and_z_power_intervals(k):
    assert catalog_lookup("enneper-cousin", k=k).ind_interval == (max(2 * k - 2, 1), 2 * k - 1)
    assert catalog_lookup("z-power-cousin", m=k).ind_interval == (max(2 * k - 2, 1), 2 * k - 1)


def test_catenoid_grid():
    for mu in np.round(np.arange(0.1, 5.0, 0.1), 10):
        if mu == round(mu):
            continue
        r = catalog_lookup("catenoid-cousin", mu=float(mu))
        f = int(np.floor(mu))
        assert r.ind_u == analytic_index(mu).ind_u == 2 * f + 1
        assert r.ind_interval == (max(2 * f, 1), 2 * f + 1)
        assert not r.flags["inconsistent"]


def test_catalog_never_inconsistent_and_finite_when_ftc():
    params = {"catenoid-cousin": [{"mu": 0.3}, {"mu": 3.5}],
              "enneper-cousin": [{"k": 2}], "z-power-cousin": [{"m": 3}],
              "costa-cousin": [{"k": 1}, {"k": 40}],
              "genus0-noid-cousin": [{"n": 5}], "genus1-noid-cousin": [{"n": 6}]}
    for name in CATALOG_NAMES:
        for p in params.get(name, [{}]):
            r = catalog_lookup(name, **p)
            assert not r.flags["inconsistent"]
            if r.flags["finite_total_curvature"]:
                assert not r.flags["infinite_index"]


@pytest.mark.parametrize("k", range(1, 6))
def test_costa_bounds(k):
    r = catalog_lookup("costa-cousin", k=k)
    tags = {b.source: b.value for b in r.lower_bounds}
    assert tags[TAG_VISION] == 2 * k
    assert tags[TAG_DEFORMATION] == 2 * k + 2
    assert r.ind_interval[0] == 2 * k + 2
    big = catalog_lookup("costa-cousin", k=38)
    assert TAG_DEFORMATION not in {b.source for b in big.lower_bounds}


@pytest.mark.parametrize("n", range(3, 9))
def test_noid_bounds(n):
    assert catalog_lookup("genus0-noid-cousin", n=n).ind_interval[0] == 2 * n - 4
    r = catalog_lookup("genus1-noid-cousin", n=n)
    tags = {b.source: b.value for b in r.lower_bounds}
    assert tags[TAG_VISION] == max(n - 3 if n % 2 == 0 else n - 4, 0)
    assert tags[TAG_DEFORMATION] == n - 2


def test_addendum_mode_collapses():
    assert catalog_lookup("catenoid-cousin", mu=2.5, addendum_mode=True).ind_interval == (5, 5)
    assert catalog_lookup("catenoid-cousin", mu=2.5).flags["addendum_mode"] is False
