"""Distances and lengths in the three geometries, perpendicularity through
length extrema, and the conformality ratio of Moebius maps."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .cycles import Cycle
from .errors import DegenerateError, DomainError, InvalidInput
from .hypercomplex import signature
from .moebius import MoebiusMap, act_point, is_inf

FD_STEP = 1e-5


@dataclass(frozen=True)
class DirectedInterval:
    A: tuple
    B: tuple


@dataclass(frozen=True)
class LengthKind:
    """kind is 'distance', 'centre' or 'focus'; flavour picks the centre or
    focus type (None means the point-space signature)."""
    kind: str = "distance"
    flavour: int | None = None

    def __post_init__(self):
        if self.kind not in ("distance", "centre", "focus"):
            raise InvalidInput(f"unknown length kind {self.kind!r}")
        if self.flavour is not None:
            object.__setattr__(self, "flavour", int(signature(self.flavour)))


DISTANCE = LengthKind("distance")


def distance_sq(u: float, v: float, sigma) -> float:
    return u * u - int(signature(sigma)) * v * v


def centre_cycle(A, B, sigma, flavour) -> Cycle:
    """Cycle with its flavour-centre at A passing through B (sigma plane)."""
    f = int(signature(flavour))
    s = int(signature(sigma))
    if f == 0:
        raise DegenerateError("a parabolic centre does not fix the cycle")
    (a1, a2), (b1, b2) = A, B
    l, n = a1, -a2 / f
    m = -(b1 * b1 - s * b2 * b2) + 2 * l * b1 + 2 * n * b2
    return Cycle(1.0, l, n, m, f)


def focus_cycle(A, B, sigma, flavour) -> Cycle:
    """Cycle through B (sigma plane) whose mirror focus (l/k, -det/(2nk)),
    det taken at the flavour, sits at A.

    The mirror focus is the focus of the cycle reflected in the real axis.
    It is the choice that makes focal lengths conformal.  The focus
    condition plus incidence leave a quadratic in n; the root kept is the
    one that stays finite as the flavour tends to 0.
    """
    f = int(signature(flavour))
    s = int(signature(sigma))
    (a1, a2), (b1, b2) = A, B
    beta = b2 + a2
    D = (a1 - b1) ** 2 - s * b2 * b2
    # f n^2 + 2 beta n - D = 0
    disc = beta * beta + f * D
    if disc < 0:
        raise DegenerateError("no cycle with this focus passes through B")
    sgn = 1.0 if beta >= 0 else -1.0
    den = beta + sgn * math.sqrt(disc)
    if den == 0.0:
        raise DegenerateError("focus construction degenerates")
    n = D / den
    if n == 0.0:
        raise DegenerateError("focus construction degenerates")
    m = -(b1 * b1 - s * b2 * b2) + 2 * a1 * b1 + 2 * n * b2
    return Cycle(1.0, a1, n, m, f)


def length(iv: DirectedInterval, kind: LengthKind, sigma) -> float:
    s = int(signature(sigma))
    (a1, a2), (b1, b2) = iv.A, iv.B
    if kind.kind == "distance":
        return math.sqrt(abs(distance_sq(b1 - a1, b2 - a2, s)))
    flavour = s if kind.flavour is None else kind.flavour
    if (a1, a2) == (b1, b2):
        return 0.0
    if kind.kind == "centre":
        c = centre_cycle(iv.A, iv.B, s, flavour)
    else:
        c = focus_cycle(iv.A, iv.B, s, flavour)
    r2 = c.l ** 2 - int(c.sigma_breve) * c.n ** 2 - c.m
    return math.sqrt(abs(r2))


def _shifted(iv, cd, eps):
    (c1, c2), (d1, d2) = cd.A, cd.B
    b1, b2 = iv.B
    return DirectedInterval(iv.A, (b1 + eps * (d1 - c1), b2 + eps * (d2 - c2)))


def perpendicular_defect(ab: DirectedInterval, cd: DirectedInterval, kind: LengthKind, sigma,
                         h: float = FD_STEP) -> float:
    try:
        up = length(_shifted(ab, cd, h), kind, sigma)
        dn = length(_shifted(ab, cd, -h), kind, sigma)
    except DegenerateError as exc:
        raise DomainError("length undefined near the interval") from exc
    return (up - dn) / (2 * h)


def is_perpendicular(ab, cd, kind, sigma, tol: float | None = None) -> bool:
    """AB is perpendicular to CD when moving B along CD does not change the
    length to first order."""
    if tol is None:
        tol = 1e-4 * max(1.0, length(ab, kind, sigma))
    return abs(perpendicular_defect(ab, cd, kind, sigma)) <= tol


def conformality_ratio(g: MoebiusMap, y, ydir, t: float, kind: LengthKind, sigma) -> float:
    y2 = (y[0] + t * ydir[0], y[1] + t * ydir[1])
    gy, gy2 = act_point(g, y, sigma), act_point(g, y2, sigma)
    if is_inf(gy) or is_inf(gy2):
        raise DomainError("image point at infinity")
    base = length(DirectedInterval(tuple(y), y2), kind, sigma)
    if base == 0.0:
        raise DomainError("zero base length")
    return length(DirectedInterval(gy, gy2), kind, sigma) / base


def diameter_family(A, B, sigma):
    """Cycles (k=1, cycle space sigma) through A and B as base + t * direction."""
    s = int(signature(sigma))
    rows = []
    for (u, v) in (A, B):
        rows.append([u * u - s * v * v, -2 * u, -2 * v, 1.0])
    rows = np.array(rows)
    # null space of the 2x4 system, split into a k=1 member and a k=0 direction
    _, _, vt = np.linalg.svd(rows)
    n1, n2 = vt[2], vt[3]
    if abs(n1[0]) < abs(n2[0]):
        n1, n2 = n2, n1
    base = n1 / n1[0]
    direction = n2 - n2[0] * base
    if np.max(np.abs(direction)) == 0:
        raise DegenerateError("points do not span a pencil of cycles")
    return base, direction / np.max(np.abs(direction))


def extremal_diameter_sq(A, B, sigma, span: float = 50.0) -> float:
    """Squared diameter at the extremum over the cycles through A and B,
    located by a coarse scan followed by golden-section refinement."""
    s = int(signature(sigma))
    base, direction = diameter_family(A, B, s)

    def diam2(t):
        k, l, n, m = base + t * direction
        return 4 * (l * l - s * n * n - m * k)

    ts = np.linspace(-span, span, 2001)
    vals = np.array([diam2(t) for t in ts])
    # diam2 is quadratic in t; its curvature decides min or max
    curv = vals[0] + vals[-1] - 2 * vals[len(ts) // 2]
    if abs(curv) < 1e-12 * max(1.0, np.max(np.abs(vals))):
        raise DegenerateError("diameter does not have an extremum on this family")
    sgn = 1.0 if curv > 0 else -1.0
    i = int(np.argmin(sgn * vals))
    lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, len(ts) - 1)]
    res = minimize_scalar(lambda t: sgn * diam2(t), bracket=None, bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-12})
    return float(diam2(res.x))
