"""The Lie algebra sl2 in the basis A = diag(-1, 1)/2, B = [[0, 1], [1, 0]]/2,
Z = [[0, 1], [-1, 0]], with hypercomplex coefficients, and ladder operators
for the generators of the three one-parameter subgroup types."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput
from .hypercomplex import Hypercomplex, Mat2, Signature, signature

RESIDUAL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Sl2Element:
    coeff_A: Hypercomplex
    coeff_B: Hypercomplex
    coeff_Z: Hypercomplex

    def __post_init__(self):
        sigs = {self.coeff_A.sig, self.coeff_B.sig, self.coeff_Z.sig}
        if len(sigs) != 1:
            raise InvalidInput("coefficients must share one signature")

    @property
    def sig(self) -> Signature:
        return self.coeff_A.sig

    @classmethod
    def real(cls, a: float, b: float, z: float, sig=-1) -> "Sl2Element":
        return cls(Hypercomplex(a, 0, sig), Hypercomplex(b, 0, sig), Hypercomplex(z, 0, sig))

    def coeffs(self):
        return (self.coeff_A, self.coeff_B, self.coeff_Z)

    def __add__(self, o: "Sl2Element") -> "Sl2Element":
        return Sl2Element(*(x + y for x, y in zip(self.coeffs(), o.coeffs())))

    def __sub__(self, o: "Sl2Element") -> "Sl2Element":
        return Sl2Element(*(x - y for x, y in zip(self.coeffs(), o.coeffs())))

    def __neg__(self) -> "Sl2Element":
        return Sl2Element(*(-x for x in self.coeffs()))

    def scale(self, s) -> "Sl2Element":
        return Sl2Element(*(x * s for x in self.coeffs()))

    def matrix(self) -> Mat2:
        a, b, z = self.coeffs()
        return Mat2(-0.5 * a, 0.5 * b + z, 0.5 * b - z, 0.5 * a, self.sig)

    def norm(self) -> float:
        return max(max(abs(x.re), abs(x.im)) for x in self.coeffs())

    def isclose(self, o: "Sl2Element", tol: float = RESIDUAL_TOL) -> bool:
        return (self - o).norm() <= tol

    def __repr__(self):
        return f"Sl2Element(A={self.coeff_A!r}, B={self.coeff_B!r}, Z={self.coeff_Z!r})"


def from_matrix(m: Mat2, tol: float = RESIDUAL_TOL) -> Sl2Element:
    tr = m.trace()
    if max(abs(tr.re), abs(tr.im)) > tol * max(1.0, m.frobenius()):
        raise ArithmeticError("matrix has a component outside sl2")
    return Sl2Element(m.d - m.a, m.b + m.c, (m.b - m.c) * 0.5)


def bracket(x: Sl2Element, y: Sl2Element) -> Sl2Element:
    if x.sig != y.sig:
        raise InvalidInput("mixed signatures")
    mx, my = x.matrix(), y.matrix()
    return from_matrix(mx @ my - my @ mx)


def basis(sig=-1):
    return (Sl2Element.real(1, 0, 0, sig), Sl2Element.real(0, 1, 0, sig),
            Sl2Element.real(0, 0, 1, sig))


def ad_matrix(x: Sl2Element):
    """ad x as a 3x3 array of Hypercomplex in the basis (A, B, Z)."""
    cols = [bracket(x, e).coeffs() for e in basis(x.sig)]
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def killing(x: Sl2Element, y: Sl2Element) -> Hypercomplex:
    ax, ay = ad_matrix(x), ad_matrix(y)
    total = Hypercomplex(0, 0, x.sig)
    for i in range(3):
        for j in range(3):
            total = total + ax[i][j] * ay[j][i]
    return total


GENERATORS = ("Z", "BminusHalfZ", "B")


@dataclass(frozen=True)
class LadderSolution:
    """Ladder data for one generator.

    X is the normalised generator for which [X, L+-] = +-iota L+- and
    [L-, L+] = 2 iota X hold; Y = [A, X], so that X = [A, Y] as well, and
    L+- = +-iota A - Y.  lam is the eigenvalue of ad(raw generator) on L+,
    i.e. the root of the characteristic equation quoted for that generator.
    """
    generator: str
    unit: Signature
    raw: Sl2Element
    X: Sl2Element
    Y: Sl2Element
    lam: Hypercomplex
    plus: Sl2Element
    minus: Sl2Element
    extra: tuple = ()


def _h(re, im, sig):
    return Hypercomplex(re, im, sig)


def solve_ladder(generator: str, t: float = 1.0) -> LadderSolution:
    if generator == "Z":
        sig = Signature.ELLIPTIC
        raw = Sl2Element.real(0, 0, 1, sig)
        X = raw.scale(0.5)
        lam = _h(0, 2, sig)
        iota = _h(0, 1, sig)
        extra = ()
    elif generator == "B":
        sig = Signature.HYPERBOLIC
        raw = Sl2Element.real(0, 1, 0, sig)
        X = raw
        lam = _h(0, 1, sig)
        iota = _h(0, 1, sig)
        # real pair for the generator 2B: [2B, +-2A + Z] = +-2 (+-2A + Z)
        real_plus = Sl2Element.real(2, 0, 1, sig)
        real_minus = Sl2Element.real(-2, 0, 1, sig)
        dbl_plus = Sl2Element(_h(0, 2, sig), _h(0, 0, sig), _h(1, 0, sig))
        dbl_minus = Sl2Element(_h(0, -2, sig), _h(0, 0, sig), _h(1, 0, sig))
        extra = (("real", real_plus, real_minus, 2.0),
                 ("double", dbl_plus, dbl_minus, _h(0, 2, sig)))
    elif generator == "BminusHalfZ":
        sig = Signature.PARABOLIC
        raw = Sl2Element.real(0, 1, -0.5, sig)
        X = raw
        lam = _h(0, t, sig)
        iota = _h(0, t, sig)
        extra = ()
    else:
        raise InvalidInput(f"unknown generator {generator!r}")
    A = basis(sig)[0]
    Y = bracket(A, X)
    plus = A.scale(iota) - Y
    minus = A.scale(-iota) - Y
    return LadderSolution(generator, sig, raw, X, Y, lam, plus, minus, extra)


def ladder_residuals(sol: LadderSolution) -> dict:
    """Residual norms of every identity the ladder data should satisfy."""
    sig = sol.unit
    iota = _h(0, 1, sig) if sol.generator != "BminusHalfZ" else sol.lam
    A = basis(sig)[0]
    res = {
        "[X,L+]-iota L+": (bracket(sol.X, sol.plus) - sol.plus.scale(iota)).norm(),
        "[X,L-]+iota L-": (bracket(sol.X, sol.minus) + sol.minus.scale(iota)).norm(),
        "[L-,L+]-2iota X": (bracket(sol.minus, sol.plus) - sol.X.scale(iota * 2)).norm(),
        "Y-[A,X]": (sol.Y - bracket(A, sol.X)).norm(),
        "X-[A,Y]": (sol.X - bracket(A, sol.Y)).norm(),
        "K(X,Y)": max(abs(killing(sol.X, sol.Y).re), abs(killing(sol.X, sol.Y).im)),
        "[raw,L+]-lam L+": (bracket(sol.raw, sol.plus) - sol.plus.scale(sol.lam)).norm(),
    }
    for name, p, m, mu in sol.extra:
        gen = sol.raw.scale(2.0)
        res[f"[2B,{name}+]-mu {name}+"] = (bracket(gen, p) - p.scale(mu)).norm()
        res[f"[2B,{name}-]+mu {name}-"] = (bracket(gen, m) + m.scale(mu)).norm()
    return res


def finite_realization(dim: int):
    """Map sl2 elements with complex coefficients to dim x dim matrices.

    The space is polynomials of degree < dim with the weight -(dim-1) action
    f(x) -> (cx + d)^(dim-1) f((ax + b)/(cx + d)).  Restricted to the unit
    circle these are trigonometric polynomials, and Z acts with eigenvalues
    i(dim-1), i(dim-3), ..., -i(dim-1).
    """
    N = dim - 1
    deg = np.arange(dim)
    D = np.diag(deg[1:].astype(float), 1)          # d/dx on coefficients
    Xm = np.diag(np.ones(N), -1)                    # multiplication by x

    def rep(el: Sl2Element) -> np.ndarray:
        if el.sig != Signature.ELLIPTIC:
            raise InvalidInput("the finite realisation takes complex coefficients")
        m = el.matrix()
        al, be, ga = (complex(e.re, e.im) for e in (m.a, m.b, m.c))
        # derived action of exp(-tX) so that rep is a Lie algebra homomorphism
        al, be, ga = -al, -be, -ga
        op = (2 * al * Xm + be * np.eye(dim) - ga * Xm @ Xm) @ D + N * (ga * Xm - al * np.eye(dim))
        return op

    return rep
