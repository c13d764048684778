"""Joint invariants of pairs of cycles.

The pairing is tr(C1 * conj(C2)) with conj acting on the cycle-space unit.
With this choice the self pairing is -2 det, zero-radius cycles are
isotropic and the elliptic case reproduces Euclidean orthogonality.
Reflection of T in C is the matrix C * conj(T) * C, which realises
inversion in a circle.
"""
from __future__ import annotations

import numpy as np

from .cycles import (Cycle, DegenerateError, cycle_from_matrix, evaluate,
                     fscc_matrix, real_line)
from .errors import InvalidInput
from .hypercomplex import chi, signature

TOL = 1e-9


def _check_pair(c1: Cycle, c2: Cycle):
    if c1.sigma_breve != c2.sigma_breve:
        raise InvalidInput("cycles live in different cycle spaces")


def _unit(c: Cycle):
    m = fscc_matrix(c)
    return m.scale(1.0 / m.frobenius())


def _pairing_matrices(m1, m2, tol=1e-12) -> float:
    t = (m1 @ m2.conj()).trace()
    assert abs(t.im) <= tol * max(1.0, abs(t.re)), "pairing has an imaginary part"
    return t.re


def pairing(c1: Cycle, c2: Cycle) -> float:
    _check_pair(c1, c2)
    return _pairing_matrices(fscc_matrix(c1), fscc_matrix(c2))


def pairing_quadruples(q1, q2, sigma_breve) -> float:
    """Same pairing straight from (possibly unnormalised) quadruples."""
    k1, l1, n1, m1 = q1
    k2, l2, n2, m2 = q2
    return 2 * l1 * l2 - 2 * int(sigma_breve) * n1 * n2 - m1 * k2 - k1 * m2


def is_orthogonal(c1: Cycle, c2: Cycle, tol: float = TOL) -> bool:
    _check_pair(c1, c2)
    return abs(_pairing_matrices(_unit(c1), _unit(c2))) <= tol


def reflect_in(c: Cycle, target: Cycle) -> Cycle:
    """Image of target under the reflection in c."""
    _check_pair(c, target)
    mc = fscc_matrix(c)
    prod = mc @ fscc_matrix(target).conj() @ mc
    if prod.frobenius() <= 1e-14 * mc.frobenius() ** 2 * fscc_matrix(target).frobenius():
        raise DegenerateError("reflection collapses to the zero matrix")
    return cycle_from_matrix(prod, c.s)


def f_defect(c: Cycle, other: Cycle) -> float:
    """The unit-coefficient of tr(C conj(T) C)/2, i.e. the n coordinate of
    the reflection of other in c, for unit-size inputs.

    For sigma_breve != 0 this is tr(C conj(T) C R)/(2 sigma_breve) up to sign;
    keeping the coefficient itself keeps the parabolic cycle space usable.
    """
    _check_pair(c, other)
    mc, mt = _unit(c), _unit(other)
    return 0.5 * (mc @ mt.conj() @ mc).trace().im / c.s


def is_f_orthogonal(c: Cycle, other: Cycle, tol: float = TOL) -> bool:
    """True when the reflection of other in c is orthogonal to the real line.

    Not symmetric: c is the reflecting cycle.
    """
    return abs(f_defect(c, other)) <= tol


def ghost_cycle(c: Cycle, sigma) -> Cycle:
    """Cycle drawn in the sigma plane whose ordinary orthogonality reproduces
    the sigma_breve orthogonality of c."""
    if c.k == 0.0:
        raise InvalidInput("ghost cycles need k != 0")
    x = chi(int(signature(sigma)))
    n_hat = int(c.sigma_breve) * c.n / x
    return Cycle(c.k, c.l, n_hat, c.m, signature(sigma), c.s)


def ghost_det_condition(c: Cycle, sigma) -> bool:
    """det of the ghost (cycle space sigma, s=1) equals det of c read in
    cycle space sigma with s = chi(sigma_breve)."""
    g = ghost_cycle(c, sigma)
    lhs = -g.l ** 2 + int(signature(sigma)) * g.n ** 2 + g.m * g.k
    flipped = c.with_(sigma_breve=signature(sigma), s=chi(int(c.sigma_breve)))
    rhs = -flipped.l ** 2 + int(signature(sigma)) * flipped.n ** 2 + flipped.m * flipped.k
    return abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs), abs(rhs))


def f_ghost_cycle(c: Cycle, sigma) -> Cycle:
    """Reflection of the real line in c, with s set to chi(sigma)."""
    s = chi(int(signature(sigma)))
    cs = c.with_(s=s)
    return reflect_in(cs, real_line(c.sigma_breve, s))


def passes_through(c: Cycle, u: float, v: float, sigma, tol: float = TOL) -> bool:
    scale = max(abs(c.k), abs(c.l), abs(c.n), abs(c.m))
    return abs(evaluate(c, u, v, sigma)) <= tol * scale


def invariant_table(cycles, tol: float = 1e-8) -> list:
    """Pairwise orthogonality and f-orthogonality records."""
    out = []
    for i, a in enumerate(cycles):
        for j, b in enumerate(cycles):
            if a.sigma_breve != b.sigma_breve:
                continue
            out.append({
                "i": i, "j": j,
                "pairing": float(np.round(pairing(a, b), 12)),
                "orthogonal": is_orthogonal(a, b, tol),
                "f_orthogonal": is_f_orthogonal(a, b, tol),
            })
    return out
