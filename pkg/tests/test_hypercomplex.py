import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eph.errors import DomainError, InvalidInput
from eph.hypercomplex import (Hypercomplex, Mat2, Signature, argument, conj, div, exp_unit,
                              modulus_sq, mul, signature)
from oracles import from_hyper_matrix, hyper_as_matrix

real = st.floats(-50, 50, allow_nan=False)
sig = st.sampled_from([-1, 0, 1])


def H(x, y, s):
    return Hypercomplex(x, y, s)


@pytest.mark.parametrize("s,expect", [(-1, (-1, 0)), (0, (0, 0))])
def test_unit_squares(s, expect):
    z = H(0, 1, s) * H(0, 1, s)
    assert (z.re, z.im) == expect


def test_double_product_against_matrix_oracle():
    z = mul(H(1, 2, 1), H(3, 4, 1))
    ref = from_hyper_matrix(hyper_as_matrix(1, 2, 1) @ hyper_as_matrix(3, 4, 1))
    assert (z.re, z.im) == ref == (11, 10)


def test_conj_examples():
    assert conj(H(1, 2, -1)).isclose(H(1, -2, -1))
    assert conj(H(5, 0, 0)).isclose(H(5, 0, 0))
    assert conj(conj(H(3, 7, 1))).isclose(H(3, 7, 1))


@pytest.mark.parametrize("z,s,expect", [((3, 4), -1, 25), ((3, 4), 0, 9), ((5, 3), 1, 16)])
def test_modulus_table(z, s, expect):
    assert modulus_sq(H(*z, s)) == expect


def test_argument():
    assert argument(H(1, 1, 0)) == 1
    for s in (-1, 0, 1):
        assert argument(H(1, 0, s)) == 0
    assert argument(H(2, 1, 1)) == pytest.approx(0.5493061443340549, abs=1e-12)
    assert argument(H(2, 1, 1)) == pytest.approx(0.5 * math.log(3), abs=1e-15)


@pytest.mark.parametrize("z,s", [((0, 0), -1), ((0, 3), 0), ((1, 1), 1), ((1, 2), 1)])
def test_argument_domain(z, s):
    with pytest.raises(DomainError):
        argument(H(*z, s))


def test_exp_unit_examples():
    assert exp_unit(2, 0).isclose(H(1, 2, 0))
    for s in (-1, 0, 1):
        assert exp_unit(0, s).isclose(H(1, 0, s))
    assert exp_unit(math.pi, -1).isclose(H(-1, 0, -1))


def test_mixed_signatures_rejected():
    with pytest.raises(InvalidInput):
        H(1, 1, -1) * H(1, 1, 1)
    with pytest.raises(InvalidInput):
        Mat2(1, 0, 0, 1, 0) @ Mat2(1, 0, 0, 1, 1)


@pytest.mark.parametrize("bad", [2, -2, 0.5, "x", None, True])
def test_signature_rejects(bad):
    with pytest.raises(InvalidInput):
        signature(bad)


def test_signature_values():
    assert signature(-1) is Signature.ELLIPTIC
    assert signature(1.0) is Signature.HYPERBOLIC


def test_zero_divisors_are_values_but_not_divisors():
    z = H(2, 2, 1)
    assert modulus_sq(z) == 0
    with pytest.raises(DomainError):
        div(H(1, 0, 1), z)
    with pytest.raises(DomainError):
        H(1, 0, 0) / H(0, 5, 0)


@given(real, real, real, real, sig)
def test_multiplication_matches_matrix_oracle(a, b, c, d, s):
    z = mul(H(a, b, s), H(c, d, s))
    ref = from_hyper_matrix(hyper_as_matrix(a, b, s) @ hyper_as_matrix(c, d, s))
    assert z.re == pytest.approx(ref[0], abs=1e-9)
    assert z.im == pytest.approx(ref[1], abs=1e-9)


@given(real, real, real, real, sig)
def test_modulus_multiplicative(a, b, c, d, s):
    x, y = H(a, b, s), H(c, d, s)
    lhs = modulus_sq(x * y)
    rhs = modulus_sq(x) * modulus_sq(y)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs), abs(modulus_sq(x)) * abs(modulus_sq(y)) + 1) * 1e3


@given(st.floats(-5, 5), st.floats(-5, 5), sig)
def test_exp_unit_homomorphism(t, u, s):
    lhs = exp_unit(t, s) * exp_unit(u, s)
    rhs = exp_unit(t + u, s)
    scale = max(1.0, abs(rhs.re), abs(rhs.im))
    assert lhs.isclose(rhs, 1e-12 * scale * 10)


@given(real, real, real)
def test_parabolic_rotation_is_shear(a, b, t):
    z = exp_unit(t, 0) * H(a, b, 0)
    assert z.re == a and z.im == a * t + b


@given(real, real, real, real, sig)
def test_conj_multiplicative(a, b, c, d, s):
    x, y = H(a, b, s), H(c, d, s)
    assert conj(x * y).isclose(conj(x) * conj(y), 1e-9)


@given(real, real, st.floats(0.1, 10), st.floats(-10, 10), sig)
def test_division_inverts_multiplication(a, b, x, y, s):
    if s == 1 and abs(abs(x) - abs(y)) < 0.1:
        return
    q = H(x, y, s)
    back = div(H(a, b, s) * q, q)
    assert back.isclose(H(a, b, s), 1e-7 * max(1, abs(a), abs(b)))


def test_mat2_det_and_trace():
    m = Mat2.real(((1, 2), (3, 4)), -1)
    assert m.det().isclose(H(-2, 0, -1))
    assert m.trace().isclose(H(5, 0, -1))
    assert np.isclose(m.frobenius(), math.sqrt(30))
