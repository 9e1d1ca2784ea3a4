import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypcmc.eigen import eig_gen_sym
from hypcmc.errors import PreconditionError
from hypcmc.oracle import enumerate_eigenpairs, lambda_pq, radial_eigenfunction
from hypcmc.spectrum import assemble_mode, numeric_spectrum

from helpers import radial_residual


def test_assemble_examples():
    p = assemble_mode(0, 1.0, S=5, N=100)
    assert p.bc == "neumann" and len(p.s) == 100
    assert assemble_mode(2, 1.0, S=5, N=100).bc == "dirichlet"
    with pytest.raises(PreconditionError):
        assemble_mode(-1, 1.0)
    with pytest.raises(PreconditionError):
        assemble_mode(0, 1.0, bc="robin")


def test_radial_problem_solutions():
    p = assemble_mode(0, 0.5, S=12, N=2400)
    vals = p.solve(upper=2.5).values
    np.testing.assert_allclose(vals, [0.0, 2.0], atol=1e-4)
    p = assemble_mode(1, 2.0, S=12, N=2400)
    assert p.solve(k=1).values[0] == pytest.approx(0.75, abs=1e-4)


def test_dense_and_tridiagonal_routes_agree_on_small_problem():
    p = assemble_mode(1, 1.0, S=4, N=120)
    dense = eig_gen_sym(p.dense(), p.mass)
    tri = p.solve(k=5)
    np.testing.assert_allclose(tri.values, dense.values[:5], rtol=1e-9)


@pytest.mark.parametrize("mu", [0.5, 1.0, 2.5])
def test_radial_ode_residual(mu):
    r = np.geomspace(0.05, 20, 401)
    for e in enumerate_eigenpairs(mu, 6.0):
        res, v = radial_residual(e.p, e.q, mu, r)
        # v is also the library's radial eigenfunction
        np.testing.assert_allclose(v, radial_eigenfunction(e.p, e.q, mu, r), atol=1e-12)
        assert np.max(np.abs(res)) <= 1e-6 * np.max(np.abs(v))


def test_numeric_spectrum_report():
    rep = numeric_spectrum(0.5, upper=3.0)
    assert rep.ind_u_numeric == 1 and rep.nullity_numeric == 1
    assert rep.missing_oracle == []
    assert rep.max_error() <= 1e-3
    for q, rank, lam, exact, err, mult in rep.table:
        assert exact == lambda_pq(rank, q, 0.5)
        assert mult == (1 if q == 0 else 2)


def test_dirichlet_domain_monotonicity():
    # shrinking the interval at fixed mesh width raises Dirichlet eigenvalues
    h = 0.02
    prev = None
    for S in (2.0, 3.0, 4.0, 6.0):
        N = int(round(2 * S / h)) - 1
        v = assemble_mode(1, 1.5, S=S, N=N, bc="dirichlet").solve(k=3).values
        if prev is not None:
            assert np.all(v <= prev + 1e-12)
        prev = v


@settings(max_examples=15, deadline=None)
@given(st.floats(0.3, 4.0), st.integers(0, 4))
def test_modes_increase_with_q(mu, q):
    a = assemble_mode(q, mu, S=10, N=800).solve(k=2).values
    b = assemble_mode(q + 1, mu, S=10, N=800).solve(k=2).values
    assert np.all(b > a)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.3, 4.0), st.integers(1, 3))
def test_lowest_mode_matches_oracle(mu, q):
    lam = assemble_mode(q, mu, S=12, N=2400).solve(k=1).values[0]
    assert lam == pytest.approx(lambda_pq(0, q, mu), abs=2e-3 * max(1, lambda_pq(0, q, mu)))
