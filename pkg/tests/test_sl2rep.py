import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eph.errors import InvalidInput
from eph.hypercomplex import Hypercomplex
from eph.sl2rep import (GENERATORS, Sl2Element, basis, bracket, finite_realization, killing,
                        ladder_residuals, solve_ladder)

coef = st.floats(-5, 5)
A, B, Z = basis(-1)


def real_matrix(el):
    m = el.matrix()
    return np.array([[m.a.re, m.b.re], [m.c.re, m.d.re]])


def test_bracket_examples():
    assert bracket(Z, A).isclose(B.scale(2))
    assert bracket(A, B).isclose(Z.scale(-0.5))
    assert bracket(Z, B).isclose(A.scale(-2))
    x = Sl2Element.real(0.3, -1.2, 2.0)
    assert bracket(x, x).norm() == 0


def test_mixed_signatures():
    with pytest.raises(InvalidInput):
        Sl2Element(Hypercomplex(1, 0, -1), Hypercomplex(1, 0, 1), Hypercomplex(0, 0, 1))
    with pytest.raises(InvalidInput):
        bracket(A, basis(1)[0])


@given(coef, coef, coef, coef, coef, coef)
def test_bracket_matches_matrix_commutator(a1, b1, z1, a2, b2, z2):
    x, y = Sl2Element.real(a1, b1, z1), Sl2Element.real(a2, b2, z2)
    mx, my = real_matrix(x), real_matrix(y)
    assert np.allclose(real_matrix(bracket(x, y)), mx @ my - my @ mx, atol=1e-12)


@given(coef, coef, coef, coef, coef, coef)
def test_killing_is_four_trace(a1, b1, z1, a2, b2, z2):
    x, y = Sl2Element.real(a1, b1, z1), Sl2Element.real(a2, b2, z2)
    ref = 4 * np.trace(real_matrix(x) @ real_matrix(y))
    assert killing(x, y).re == pytest.approx(ref, abs=1e-9)


@pytest.mark.parametrize("gen", GENERATORS)
def test_ladder_identities(gen):
    res = ladder_residuals(solve_ladder(gen))
    assert max(res.values()) <= 1e-12, res


@pytest.mark.parametrize("t", [0.5, 1.0, 3.0])
def test_parabolic_parameter(t):
    sol = solve_ladder("BminusHalfZ", t)
    assert (sol.lam.re, sol.lam.im) == (0, t)
    assert max(ladder_residuals(sol).values()) <= 1e-12


def test_elliptic_ladder_coefficients():
    sol = solve_ladder("Z")
    p = sol.plus
    assert (p.coeff_A.im, p.coeff_B.re, p.coeff_Z.re) == (1, 1, 0)
    assert sol.lam.modulus_sq() == 4      # lambda^2 + 4 = 0


def test_hyperbolic_extra_pairs():
    sol = solve_ladder("B")
    names = {name: (p, m) for name, p, m, _ in sol.extra}
    p, _ = names["real"]
    assert (p.coeff_A.re, p.coeff_Z.re) == (2, 1)
    p, _ = names["double"]
    assert (p.coeff_A.im, p.coeff_Z.re) == (2, 1)


def test_parabolic_ladder_shape():
    p = solve_ladder("BminusHalfZ").plus
    assert (p.coeff_A.im, p.coeff_B.re, p.coeff_Z.re) == (1, -1, 0.5)


def test_unknown_generator():
    with pytest.raises(InvalidInput):
        solve_ladder("K")


@given(coef, coef, coef, coef, coef, coef)
def test_finite_realisation_is_homomorphism(a1, b1, z1, a2, b2, z2):
    rep = finite_realization(6)
    x, y = Sl2Element.real(a1, b1, z1), Sl2Element.real(a2, b2, z2)
    rx, ry = rep(x), rep(y)
    lhs = rep(bracket(x, y))
    assert np.allclose(lhs, rx @ ry - ry @ rx, atol=1e-9 * max(1, np.abs(lhs).max()))


def test_ladder_shifts_eigenvalues_in_16_dims():
    rep = finite_realization(16)
    sol = solve_ladder("Z")
    rz = rep(sol.raw)
    w, v = np.linalg.eig(rz)
    assert np.allclose(sorted(w.imag), np.arange(-15, 16, 2), atol=1e-9)
    assert np.allclose(w.real, 0, atol=1e-9)
    for op, shift in ((rep(sol.plus), 2j), (rep(sol.minus), -2j)):
        moved = 0
        for lam, vec in zip(w, v.T):
            out = op @ vec
            if np.linalg.norm(out) < 1e-9:
                continue
            assert np.allclose(rz @ out, (lam + shift) * out, atol=1e-8)
            moved += 1
        assert moved == 15


def test_finite_realisation_rejects_other_units():
    with pytest.raises(InvalidInput):
        finite_realization(4)(basis(1)[0])
