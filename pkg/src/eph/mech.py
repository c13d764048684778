"""Position measurements and two-slit interference for the three characters,
and the phase flow of the harmonic oscillator.

Measurements of a point observable at q = c use the partial Fourier
transform p -> x of the states,

    M(c) = (2/hbar) / N * integral  v1^(q, xi) conj(v2^(q, xi)) dq,
    xi = 2 (q - c) / hbar,

with N the squared L2 norm of one state, so a single state gives a
probability density in c.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import romb

from .errors import DomainError, InvalidInput, PrecisionWarning


class CharacterMode(str, Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"


def character_mode(value) -> CharacterMode:
    try:
        return CharacterMode(value)
    except ValueError:
        raise InvalidInput(f"unknown character mode {value!r}") from None


@dataclass(frozen=True)
class OscParams:
    m: float = 1.0
    k: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("m", "k", "hbar"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InvalidInput(f"{name} must be positive")

    @property
    def km(self) -> float:
        return self.k * self.m


@dataclass(frozen=True)
class GaussianState:
    a: float
    b: float
    params: OscParams = OscParams()

    def __call__(self, q, p):
        P = self.params
        return np.exp(-2 * np.pi * P.km / P.hbar * (q - self.a) ** 2
                      - 2 * np.pi / (P.hbar * P.km) * (p - self.b) ** 2)

    def hat(self, q, xi):
        """Fourier transform in p, evaluated at frequency xi."""
        P = self.params
        return (np.exp(-2 * np.pi * P.km / P.hbar * (q - self.a) ** 2)
                * math.sqrt(P.hbar * P.km / 2)
                * np.exp(-2j * np.pi * self.b * xi - np.pi * P.hbar * P.km * xi ** 2 / 2))

    @property
    def norm_sq(self) -> float:
        return self.params.hbar / 4


@dataclass(frozen=True)
class RationalState:
    a: float
    b: float
    params: OscParams = OscParams()

    def __call__(self, q, p):
        P = self.params
        return P.hbar ** 2 / (((q - self.a) ** 2 + P.hbar / P.km) * ((p - self.b) ** 2 + P.hbar * P.km))

    def hat(self, q, xi):
        P = self.params
        return (P.hbar ** 2 / ((q - self.a) ** 2 + P.hbar / P.km)
                * lorentz_ft(self.b, math.sqrt(P.hbar * P.km), xi))

    @property
    def norm_sq(self) -> float:
        return math.pi ** 2 * self.params.hbar / 4


def lorentz_ft(b: float, beta: float, x):
    """Fourier transform of 1/((p - b)^2 + beta^2) with kernel e^{-2 pi i p x}."""
    x = np.asarray(x, dtype=float)
    return np.pi / beta * np.exp(-2j * np.pi * b * x - 2 * np.pi * beta * np.abs(x))


def romberg(f, lo: float, hi: float, nodes: int = 257, tol: float = 1e-10,
            max_nodes: int = (1 << 18) + 1):
    """Romberg quadrature on 2^k + 1 samples, doubling until two successive
    values agree to tol relative to |value|.

    Measurements far in the tails are tiny but still wanted to full
    relative accuracy, so the only absolute floor is round-off, taken
    relative to the integral of |f| (oscillating integrands cancel).
    """
    if hi <= lo:
        return 0.0
    n = 1 << max(4, math.ceil(math.log2(max(nodes - 1, 16))))
    prev = None
    while True:
        x = np.linspace(lo, hi, n + 1)
        y = f(x)
        dx = (hi - lo) / n
        val = romb(y, dx=dx)
        floor = 1e-14 * romb(np.abs(y), dx=dx)
        if prev is not None and abs(val - prev) <= max(tol * abs(val), floor):
            return val
        if n + 1 >= max_nodes:
            warnings.warn("quadrature did not converge", PrecisionWarning)
            return val
        prev = val
        n *= 2


def _piecewise(f, cuts, nodes):
    cuts = sorted(cuts)
    return sum(romberg(f, lo, hi, nodes) for lo, hi in zip(cuts, cuts[1:]))


def _window(s1, s2, c):
    P = s1.params
    if isinstance(s1, GaussianState):
        w = 12 * math.sqrt(P.hbar / P.km)
        return [min(s1.a, s2.a, c) - w, c, max(s1.a, s2.a, c) + w]
    kappa = 8 * math.pi * math.sqrt(P.hbar * P.km) / P.hbar
    return [c - 40 / kappa, c, c + 40 / kappa]


def cross_amplitude(s1, s2, c: float, nodes: int = 257) -> complex:
    """Complex measurement of the kernel <s1, rho(g) s2> at q = c."""
    if type(s1) is not type(s2) or s1.params != s2.params:
        raise InvalidInput("states must share kind and parameters")
    if nodes < 256:
        raise InvalidInput("need at least 256 nodes")
    hbar = s1.params.hbar

    def f(q):
        xi = 2 * (q - c) / hbar
        return s1.hat(q, xi) * np.conj(s2.hat(q, xi))

    val = _piecewise(f, _window(s1, s2, c), nodes)
    return complex(2 / hbar * val / s1.norm_sq)


def measure_gaussian(state: GaussianState, c: float) -> float:
    P = state.params
    return math.sqrt(2 * P.km / P.hbar) * math.exp(-2 * math.pi * P.km * (c - state.a) ** 2 / P.hbar)


def gaussian_kernel_y0(s1: GaussianState, s2: GaussianState, x):
    """<s1, rho(0, x, 0) s2>; the prefactor is the squared norm hbar/4."""
    P = s1.params
    h, km = P.hbar, P.km
    db, da = s1.b - s2.b, s2.a - s1.a
    return (h / 4) * np.exp(1j * np.pi * x * (s1.a + s2.a)
                            - np.pi / (2 * h * km) * ((h * x + db) ** 2 + db ** 2)
                            - np.pi * km / (2 * h) * 2 * da ** 2)


def measure_gaussian_kernel(s1: GaussianState, s2: GaussianState, c: float, nodes: int = 257) -> complex:
    """Same measurement through the x-integral of the kernel at y = 0."""
    P = s1.params
    w = 12 * math.sqrt(P.km / P.hbar) + 2 * abs(s1.b - s2.b) / P.hbar

    def f(x):
        return gaussian_kernel_y0(s1, s2, x) * np.exp(-2j * np.pi * x * c)

    centre = -(s1.b - s2.b) / P.hbar
    return complex(romberg(f, centre - w, centre + w, nodes) / s1.norm_sq)


def gaussian_cross_closed(b: float, c: float, params: OscParams) -> complex:
    """Cross amplitude of the states centred at (0, b) and (0, -b)."""
    h, km = params.hbar, params.km
    return math.sqrt(2 * km / h) * np.exp(-2 * math.pi * km * c * c / h
                                          - 2 * math.pi * b * b / (km * h)
                                          + 4j * math.pi * c * b / h)


def measure_rational(state1: RationalState, state2: RationalState, c: float, nodes: int = 257) -> float:
    return cross_amplitude(state1, state2, c, nodes).real


def _combine(mode: CharacterMode, l1: float, l2: float, z: complex) -> float:
    if mode is CharacterMode.ELLIPTIC:
        return l1 + l2 + 2 * z.real
    if mode is CharacterMode.HYPERBOLIC:
        # no periodic phase survives: the cross term keeps its modulus
        return l1 + l2 + 2 * abs(z)
    return l1 + l2


def two_slit_measure(mode, kind: str, b: float, c: float, params: OscParams = OscParams(),
                     nodes: int = 257) -> float:
    """Measurement at c for the superposition of the states at (0, b), (0, -b)."""
    mode = character_mode(mode)
    if kind == "gaussian":
        s1, s2 = GaussianState(0.0, b, params), GaussianState(0.0, -b, params)
        l1 = l2 = measure_gaussian(s1, c)
        z = gaussian_cross_closed(b, c, params) if mode is not CharacterMode.PARABOLIC else 0j
        if mode is CharacterMode.HYPERBOLIC:
            z = cross_amplitude(s1, s2, c, nodes)
    elif kind == "rational":
        s1, s2 = RationalState(0.0, b, params), RationalState(0.0, -b, params)
        l1 = cross_amplitude(s1, s1, c, nodes).real
        l2 = cross_amplitude(s2, s2, c, nodes).real
        z = cross_amplitude(s1, s2, c, nodes) if mode is not CharacterMode.PARABOLIC else 0j
    else:
        raise InvalidInput("state kind must be 'gaussian' or 'rational'")
    return _combine(mode, l1, l2, z)


def interference_curve(mode, kind: str, b: float, cs, params: OscParams = OscParams()) -> list:
    return [(float(c), two_slit_measure(mode, kind, b, float(c), params)) for c in cs]


def count_interior_maxima(values, rel: float = 1e-9) -> int:
    v = np.asarray(values, dtype=float)
    eps = rel * max(1e-300, np.max(np.abs(v)))
    return int(np.sum((v[1:-1] > v[:-2] + eps) & (v[1:-1] > v[2:] + eps)))


def probability_addition(l1: float, l2: float, A: float, mode=None) -> float:
    """l1 + l2 + 2 A sqrt(l1 l2), with the range of A checked per character."""
    if l1 < 0 or l2 < 0:
        raise InvalidInput("probabilities must be non-negative")
    if mode is not None:
        mode = character_mode(mode)
        if mode is CharacterMode.ELLIPTIC and abs(A) > 1:
            raise DomainError("elliptic interference needs |A| <= 1")
        if mode is CharacterMode.HYPERBOLIC and abs(A) < 1:
            raise DomainError("hyperbolic interference needs |A| >= 1")
        if mode is CharacterMode.PARABOLIC and A != 0:
            raise DomainError("parabolic addition has A = 0")
    return l1 + l2 + 2 * A * math.sqrt(l1 * l2)


def hyperbolic_character(theta: float) -> tuple:
    """(cosh, sinh) components of e^{j theta}, with an overflow guard."""
    if abs(theta) > 700:
        raise DomainError("hyperbolic phase too large")
    return math.cosh(theta), math.sinh(theta)


# parabolic states


@dataclass(frozen=True)
class BumpState:
    """Smooth state supported in the disk of given radius about (q0, p0)."""
    q0: float
    p0: float
    radius: float = 1.0

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidInput("radius must be positive")

    def jet(self, q, p):
        """Values and the q, p derivatives; exactly zero off the support."""
        q, p = np.broadcast_arrays(np.asarray(q, float), np.asarray(p, float))
        dq, dp = (q - self.q0) / self.radius, (p - self.p0) / self.radius
        r2 = dq * dq + dp * dp
        inside = r2 < 1
        f = np.zeros_like(r2)
        g = np.zeros_like(r2)
        den = 1 - r2[inside]
        f[inside] = np.exp(-1 / den)
        # d/dr2 of exp(-1/(1-r2)) is -f/(1-r2)^2
        g[inside] = -f[inside] / den ** 2
        fq = g * 2 * dq / self.radius
        fp = g * 2 * dp / self.radius
        return f, fq, fp

    def disjoint_from(self, other: "BumpState") -> bool:
        return math.hypot(self.q0 - other.q0, self.p0 - other.p0) >= self.radius + other.radius


def parabolic_action(state: BumpState, s: float, x: float, y: float, q, p, hbar: float = 1.0):
    """rho(s, x, y) applied to the state, as (real part, dual part) arrays."""
    f, fq, fp = state.jet(q, p)
    phase = np.exp(-2j * np.pi * (x * q + y * p))
    dual = hbar * (s * f + y / (2j * np.pi) * fq - x / (2j * np.pi) * fp)
    return phase * f, phase * dual


def parabolic_cross_kernel(v1: BumpState, v2: BumpState, s: float, x: float, y: float,
                           hbar: float = 1.0, n: int = 201):
    """<v1, rho(s, x, y) v2> by a Riemann sum on a grid covering both
    supports; returned as the (real part, dual part) pair."""
    lo_q = min(v1.q0 - v1.radius, v2.q0 - v2.radius)
    hi_q = max(v1.q0 + v1.radius, v2.q0 + v2.radius)
    lo_p = min(v1.p0 - v1.radius, v2.p0 - v2.radius)
    hi_p = max(v1.p0 + v1.radius, v2.p0 + v2.radius)
    q, p = np.meshgrid(np.linspace(lo_q, hi_q, n), np.linspace(lo_p, hi_p, n))
    cell = (hi_q - lo_q) * (hi_p - lo_p) / (n - 1) ** 2
    f1, _, _ = v1.jet(q, p)
    re, du = parabolic_action(v2, s, x, y, q, p, hbar)
    return complex(np.sum(f1 * re) * cell), complex(np.sum(f1 * du) * cell)


# oscillator


def oscillator_flow(x: float, y: float, t: float, params: OscParams = OscParams()) -> tuple:
    k, mk = params.k, params.m * params.k
    c, s = math.cos(k * t), math.sin(k * t)
    return x * c + mk * y * s, -x / mk * s + y * c


def oscillator_invariant(x: float, y: float, params: OscParams = OscParams()) -> float:
    """Conserved quadratic x^2 + (m k y)^2 whose level sets are the orbits."""
    return x * x + (params.m * params.k * y) ** 2
