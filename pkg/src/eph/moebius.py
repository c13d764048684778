"""SL(2,R) elements, their Iwasawa factors and the Moebius action on the
elliptic, parabolic and hyperbolic half-planes."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput
from .hypercomplex import signature

DET_TOL = 1e-9


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"


INF = _Infinity()


def is_inf(p) -> bool:
    return p is INF


@dataclass(frozen=True)
class MoebiusMap:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if not det > 0:
            raise InvalidInput(f"matrix needs positive determinant, got {det}")
        if det != 1.0:
            r = math.sqrt(det)
            for name in "abcd":
                object.__setattr__(self, name, float(getattr(self, name)) / r)

    @classmethod
    def from_matrix(cls, m) -> "MoebiusMap":
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return compose(self, other)

    def isclose(self, other: "MoebiusMap", tol: float = DET_TOL) -> bool:
        return bool(np.allclose(self.matrix, other.matrix, atol=tol, rtol=0))


IDENTITY = MoebiusMap(1.0, 0.0, 0.0, 1.0)


def compose(g1: MoebiusMap, g2: MoebiusMap) -> MoebiusMap:
    return MoebiusMap.from_matrix(g1.matrix @ g2.matrix)


def subgroup_element(which: str, t: float) -> MoebiusMap:
    """One-parameter subgroups.

    A takes the dilation parameter alpha > 0, the others a real t.  K uses
    the orientation of the Iwasawa factor, [[cos t, -sin t], [sin t, cos t]].
    """
    if which == "A":
        if not t > 0:
            raise InvalidInput("A needs alpha > 0")
        return MoebiusMap(t, 0.0, 0.0, 1.0 / t)
    if which == "N":
        return MoebiusMap(1.0, t, 0.0, 1.0)
    if which == "K":
        c, s = math.cos(t), math.sin(t)
        return MoebiusMap(c, -s, s, c)
    if which in ("N'", "N′"):
        return MoebiusMap(1.0, 0.0, t, 1.0)
    if which in ("A'", "A′"):
        return MoebiusMap(math.cosh(t), math.sinh(t), math.sinh(t), math.cosh(t))
    raise InvalidInput(f"unknown subgroup {which!r}")


@dataclass(frozen=True)
class IwasawaFactors:
    alpha: float
    nu: float
    phi: float

    def assemble(self) -> MoebiusMap:
        return compose(
            compose(subgroup_element("A", self.alpha), subgroup_element("N", self.nu)),
            subgroup_element("K", self.phi),
        )


def iwasawa(g: MoebiusMap) -> IwasawaFactors:
    # g K(phi)^-1 is upper triangular with positive diagonal
    phi = math.atan2(g.c, g.d)
    r = math.hypot(g.c, g.d)
    alpha = 1.0 / r
    nu = (g.a * math.sin(phi) + g.b * math.cos(phi)) / alpha
    return IwasawaFactors(alpha, nu, phi)


def random_map(rng: np.random.Generator) -> MoebiusMap:
    """Sample through Iwasawa parameters so c, d degenerate in a controlled way."""
    alpha = math.exp(rng.uniform(-1.0, 1.0))
    nu = rng.uniform(-3.0, 3.0)
    phi = math.pi - rng.uniform(0.0, 2 * math.pi)
    return IwasawaFactors(alpha, nu, phi).assemble()


def act_point(g: MoebiusMap, p, sig):
    """Image of a point (u, v) or INF in the sigma half-plane."""
    s = int(signature(sig))
    a, b, c, d = g.a, g.b, g.c, g.d
    if is_inf(p):
        return INF if c == 0.0 else (a / c, 0.0)
    u, v = p
    den = (c * u + d) ** 2 - s * c * c * v * v
    if den == 0.0:
        return INF
    u2 = ((a * u + b) * (c * u + d) - s * a * c * v * v) / den
    return (u2, v / den)


def k_orbit_sample(start, sig, num: int) -> list:
    if is_inf(start):
        raise InvalidInput("orbit start must be finite")
    if num < 2:
        raise InvalidInput("need at least two samples")
    phis = -math.pi + 2 * math.pi * np.arange(1, num + 1) / num
    return [act_point(subgroup_element("K", float(phi)), start, sig) for phi in phis]
