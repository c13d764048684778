"""Cycles k(u^2 - sigma v^2) - 2lu - 2nv + m = 0 as projective quadruples and
their 2x2 hypercomplex matrices [[l + i s n, -m], [k, -l + i s n]] with the
cycle-space unit squaring to sigma_breve."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DomainError, InvalidInput
from .hypercomplex import Hypercomplex, Mat2, Signature, signature
from .moebius import MoebiusMap

EQ_TOL = 1e-9
_ZERO_REL = 1e-13

# Sign conventions, fixed once by sign_convention_oracle() below.
#   radius_sq = SIGN_FIX[(sigma, sigma_breve)] * det / k^2
#   focus v   = FOCUS_SIGN * det_at(flavour) / (2 n k)
SIGN_FIX = {(s, sb): -1 for s in (-1, 0, 1) for sb in (-1, 0, 1)}
FOCUS_SIGN = 1


@dataclass(frozen=True, eq=False)
class Cycle:
    k: float
    l: float
    n: float
    m: float
    sigma_breve: Signature = Signature.ELLIPTIC
    s: int = 1

    def __post_init__(self):
        object.__setattr__(self, "sigma_breve", signature(self.sigma_breve))
        if self.s not in (1, -1):
            raise InvalidInput("s must be +1 or -1")
        q = normalize(self.k, self.l, self.n, self.m)
        for name, val in zip("klnm", q):
            object.__setattr__(self, name, val)

    @property
    def quadruple(self) -> tuple:
        return (self.k, self.l, self.n, self.m)

    def with_(self, **kw) -> "Cycle":
        d = dict(k=self.k, l=self.l, n=self.n, m=self.m,
                 sigma_breve=self.sigma_breve, s=self.s)
        d.update(kw)
        return Cycle(**d)

    def isclose(self, other: "Cycle", tol: float = EQ_TOL) -> bool:
        return all(abs(x - y) <= tol * max(1.0, abs(x), abs(y))
                   for x, y in zip(self.quadruple, other.quadruple))

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l, "n": self.n, "m": self.m,
                "sigma_breve": int(self.sigma_breve), "s": self.s}

    @classmethod
    def from_json(cls, rec: dict) -> "Cycle":
        try:
            return cls(float(rec["k"]), float(rec["l"]), float(rec["n"]), float(rec["m"]),
                       rec.get("sigma_breve", -1), int(rec.get("s", 1)))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bad cycle record {rec!r}") from exc

    def __repr__(self):
        return (f"Cycle({self.k:.6g}, {self.l:.6g}, {self.n:.6g}, {self.m:.6g}, "
                f"sb={int(self.sigma_breve)}, s={self.s})")


def normalize(k, l, n, m) -> tuple:
    q = np.array([k, l, n, m], dtype=float)
    if not np.all(np.isfinite(q)):
        raise InvalidInput("cycle coordinates must be finite")
    big = np.max(np.abs(q))
    if big == 0.0:
        raise InvalidInput("zero quadruple is not a cycle")
    # entries that are pure round-off relative to the rest are zeroed
    q[np.abs(q) <= _ZERO_REL * big] = 0.0
    lead = q[0] if q[0] != 0.0 else q[np.flatnonzero(q)[0]]
    return tuple(float(x) + 0.0 for x in q / lead)


def real_line(sigma_breve=-1, s: int = 1) -> Cycle:
    return Cycle(0.0, 0.0, 1.0, 0.0, sigma_breve, s)


def fscc_matrix(c: Cycle) -> Mat2:
    sb = c.sigma_breve
    return Mat2(
        Hypercomplex(c.l, c.s * c.n, sb),
        Hypercomplex(-c.m, 0.0, sb),
        Hypercomplex(c.k, 0.0, sb),
        Hypercomplex(-c.l, c.s * c.n, sb),
        sb,
    )


def cycle_from_matrix(mat: Mat2, s: int = 1, tol: float = 1e-10) -> Cycle:
    """Read a quadruple back from a matrix of FSCc shape."""
    scale = mat.frobenius()
    if scale == 0.0:
        raise DegenerateError("zero matrix")
    a, b, c, d = mat.entries()
    bad = max(abs(b.im), abs(c.im), abs(a.re + d.re), abs(a.im - d.im))
    if bad > tol * scale:
        raise DegenerateError(f"matrix is not of cycle shape (defect {bad / scale:.2e})")
    return Cycle(c.re, a.re, 0.5 * (a.im + d.im) / s, -b.re, mat.sig, s)


def _g_matrices(g: MoebiusMap, sig):
    return (Mat2.real(((g.a, g.b), (g.c, g.d)), sig),
            Mat2.real(((g.d, -g.b), (-g.c, g.a)), sig))


def similarity(g: MoebiusMap, c: Cycle) -> Cycle:
    gm, gi = _g_matrices(g, c.sigma_breve)
    return cycle_from_matrix(gm @ fscc_matrix(c) @ gi, c.s)


def det_at(c: Cycle, sigma_breve) -> float:
    """Determinant of the cycle matrix evaluated with a chosen unit square."""
    return -c.l ** 2 + int(signature(sigma_breve)) * c.n ** 2 + c.m * c.k


def det_cycle(c: Cycle) -> float:
    return -c.l ** 2 + int(c.sigma_breve) * c.s ** 2 * c.n ** 2 + c.m * c.k


def radius_sq(c: Cycle, sigma=None) -> float:
    if c.k == 0.0:
        raise DomainError("a line has no radius")
    sigma = c.sigma_breve if sigma is None else signature(sigma)
    return SIGN_FIX[(int(sigma), int(c.sigma_breve))] * det_cycle(c) / c.k ** 2


def centre(c: Cycle, flavour) -> tuple:
    if c.k == 0.0:
        raise DomainError("a line has no centre")
    f = int(signature(flavour))
    return (c.l / c.k, -f * c.n / c.k)


def focus(c: Cycle, flavour) -> tuple:
    """Focus of the given flavour: h gives the focus of a parabola, p its
    vertex and e the foot of the directrix."""
    if c.k == 0.0:
        raise DomainError("a line has no focus")
    if c.n == 0.0:
        raise DomainError("focus undefined for n = 0")
    return (c.l / c.k, FOCUS_SIGN * det_at(c, flavour) / (2 * c.n * c.k))


def roots(c: Cycle) -> list:
    k, l, m = c.k, c.l, c.m
    if k == 0.0:
        return [m / (2 * l)] if l != 0.0 else []
    disc = l * l - k * m
    if disc < 0:
        return []
    if disc == 0:
        return [l / k]
    r = math.sqrt(disc)
    return sorted([(l - r) / k, (l + r) / k])


def zero_radius_at(u: float, v: float, sigma_breve) -> Cycle:
    """Zero-radius cycle whose sigma_breve-centre is (u, v).

    For sigma_breve = 0 every centre lies on the real axis, the point (u, v)
    is then encoded through n = v.
    """
    sb = int(signature(sigma_breve))
    n = v if sb == 0 else -sb * v
    return Cycle(1.0, u, n, u * u - sb * v * v, sb)


def evaluate(c: Cycle, u: float, v: float, sigma) -> float:
    s = int(signature(sigma))
    return c.k * (u * u - s * v * v) - 2 * c.l * u - 2 * c.n * v + c.m


def cycle_from_points(points, sigma, sigma_breve=None, tol: float = 1e-9) -> Cycle:
    """Cycle through three (or, by least squares, more) points."""
    s = int(signature(sigma))
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise InvalidInput("need at least three points")
    u, v = pts[:, 0], pts[:, 1]
    rows = np.column_stack([u * u - s * v * v, -2 * u, -2 * v, np.ones_like(u)])
    scale = np.max(np.abs(rows), axis=1, keepdims=True)
    rows = rows / np.where(scale == 0, 1, scale)
    _, sv, vt = np.linalg.svd(rows)
    if len(pts) == 3 and sv[-1] < tol * sv[0]:
        raise DegenerateError("points do not determine a unique cycle")
    q = vt[-1]
    sb = s if sigma_breve is None else sigma_breve
    return Cycle(*q, sb)


def sign_convention_oracle(trials: int = 20, seed: int = 0) -> dict:
    """Pick the radius and focus sign conventions from geometry alone.

    Radius: Euclidean radius of random circles, the half root-gap of random
    parabolas and the semi-axis square of random hyperbolas.  Focus: the
    classical focus, vertex and directrix foot of random parabolas.
    """
    rng = np.random.default_rng(seed)
    radius = {}
    for sb in (-1, 0, 1):
        votes = {1: 0, -1: 0}
        for _ in range(trials):
            l, n = rng.uniform(-2, 2, 2)
            if sb == -1:
                r2 = rng.uniform(0.1, 4)
                m = l * l + n * n - r2          # (u-l)^2 + (v-n)^2 = r2
                truth = r2
            elif sb == 0:
                half = rng.uniform(0.1, 2)      # roots l +- half
                m = l * l - half * half
                truth = half * half
            else:
                r2 = rng.uniform(0.1, 4)
                m = l * l - n * n - r2          # (u-l)^2 - (v+n)^2 = r2
                truth = r2
            c = Cycle(1.0, l, n, m, sb)
            for sign in (1, -1):
                if abs(sign * det_cycle(c) - truth) < 1e-9 * max(1, truth):
                    votes[sign] += 1
        best = max(votes, key=votes.get)
        if votes[best] != trials:
            raise DegenerateError(f"no consistent radius sign for sigma_breve={sb}")
        for s in (-1, 0, 1):
            radius[(s, sb)] = best
    # parabola v = (u - l)^2/(4a) + v0 is 1, l, n, m with n = 2a
    fsign = {1: 0, -1: 0}
    for _ in range(trials):
        l, v0 = rng.uniform(-2, 2, 2)
        a = rng.choice([-1, 1]) * rng.uniform(0.2, 2)
        n = 2 * a
        m = l * l + 2 * n * v0
        c = Cycle(1.0, l, n, m, 0)
        expect = {1: v0 + a, 0: v0, -1: v0 - a}
        for sign in (1, -1):
            if all(abs(sign * det_at(c, f) / (2 * n) - expect[f]) < 1e-9 for f in (-1, 0, 1)):
                fsign[sign] += 1
    best = max(fsign, key=fsign.get)
    if fsign[best] != trials:
        raise DegenerateError("no consistent focus sign")
    return {"SIGN_FIX": radius, "FOCUS_SIGN": best}
