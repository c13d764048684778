"""Jet spectra of matrices, the spectral mapping of jets, Blaschke products
and the spectral distance between matrices, perturbation experiments and
Moebius covariant pencils."""
from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DegenerateError, DomainError, InvalidInput, PrecisionWarning
from .moebius import INF, MoebiusMap, is_inf


@dataclass(frozen=True)
class JetPoint:
    """Eigenvalue with the length of one Jordan block (order 1 = simple).

    Order 0 marks a point collapsed by a spectral map; it carries no block.
    """
    lam: complex
    order: int

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 0:
            raise InvalidInput("jet order must be a non-negative integer")
        object.__setattr__(self, "lam", complex(self.lam))
        object.__setattr__(self, "order", int(self.order))


@dataclass(frozen=True)
class JetSpectrum:
    points: tuple = field(default_factory=tuple)

    def __post_init__(self):
        pts = tuple(p if isinstance(p, JetPoint) else JetPoint(*p) for p in self.points)
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return sum(p.order for p in self.points)

    def same_as(self, other: "JetSpectrum", tol: float = 1e-8) -> bool:
        """Multiset equality with eigenvalues compared up to tol."""
        left = sorted(self.points, key=lambda p: (p.order, p.lam.real, p.lam.imag))
        pool = list(other.points)
        if len(left) != len(pool):
            return False
        for p in left:
            hit = next((q for q in pool if q.order == p.order and abs(q.lam - p.lam) <= tol), None)
            if hit is None:
                return False
            pool.remove(hit)
        return True

    def minimal_exponents(self, tol: float = 1e-12) -> list:
        """(eigenvalue, largest block) pairs: the minimal polynomial data."""
        out = []
        for p in self.points:
            for i, (lam, k) in enumerate(out):
                if abs(lam - p.lam) <= tol:
                    out[i] = (lam, max(k, p.order))
                    break
            else:
                out.append((p.lam, p.order))
        return out


def jordan_block(lam: complex, k: int) -> np.ndarray:
    return lam * np.eye(k, dtype=complex) + np.eye(k, k, 1, dtype=complex)


def assemble_jordan(spec: JetSpectrum) -> np.ndarray:
    blocks = [jordan_block(p.lam, p.order) for p in spec.points if p.order]
    if not blocks:
        return np.zeros((0, 0), dtype=complex)
    return scipy.linalg.block_diag(*blocks)


def _weyr(m: np.ndarray, thresh: float) -> list:
    """Weyr characteristic of the eigenvalue 0 by repeated deflation of the
    numerical null space (Kublanovskaya)."""
    out = []
    while m.shape[0]:
        _, sv, vh = np.linalg.svd(m)
        r = int(np.sum(sv > thresh))
        k = m.shape[0] - r
        if k == 0:
            break
        out.append(k)
        w = np.concatenate([vh[r:], vh[:r]]).conj().T
        m = (w.conj().T @ m @ w)[k:, k:]
    return out


def _group(ev, radius):
    groups = []
    for lam in ev:
        near = [g for g in groups if min(abs(lam - x) for x in g) <= radius]
        merged = [lam]
        for g in near:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    return groups


def covariant_spectrum(a: np.ndarray, tol: float = 1e-9, cluster: float = 3e-2) -> JetSpectrum:
    """Eigenvalues of a with the lengths of all their Jordan blocks.

    A block of length k scatters computed eigenvalues by about eps**(1/k),
    so eigenvalues within `cluster` times the spectral radius are grouped
    and the group mean, which is well conditioned, is used.  Block lengths
    come from successive null spaces of (a - lam), singular values below
    tol * |a| counting as zero.  If a grouping fails to account for the
    whole space (two distinct eigenvalues merged) the radius is reduced.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if a.ndim != 2 or a.shape != (n, n):
        raise InvalidInput("matrix must be square")
    if n == 0:
        return JetSpectrum(())
    ev = list(np.linalg.eigvals(a))
    radius = cluster * max(1.0, max(abs(x) for x in ev))
    thresh = tol * max(1.0, np.linalg.norm(a, 2))
    while radius > 1e-10:
        pts = []
        for members in _group(ev, radius):
            lam = complex(np.mean(members))
            w = _weyr(a - lam * np.eye(n), thresh) + [0]
            # w[j-1] blocks have length >= j
            for j in range(1, len(w)):
                pts.extend([JetPoint(lam, j)] * (w[j - 1] - w[j]))
        spec = JetSpectrum(tuple(pts))
        if spec.dim == n:
            return spec
        radius /= 10
    raise DegenerateError("could not resolve the Jordan structure")


@dataclass(frozen=True)
class HolomorphicMap:
    """phi = num/den with coefficient arrays in increasing powers."""
    num: tuple
    den: tuple = (1.0,)

    def __post_init__(self):
        object.__setattr__(self, "num", tuple(complex(x) for x in self.num))
        object.__setattr__(self, "den", tuple(complex(x) for x in self.den))
        if not any(self.den):
            raise InvalidInput("zero denominator")

    def __call__(self, z):
        P = np.polynomial.polynomial
        return P.polyval(z, self.num) / P.polyval(z, self.den)

    def of_matrix(self, a: np.ndarray) -> np.ndarray:
        n = a.shape[0]

        def horner(coeffs):
            out = np.zeros((n, n), dtype=complex)
            for c in reversed(coeffs):
                out = out @ a + c * np.eye(n)
            return out

        return np.linalg.solve(horner(self.den), horner(self.num))

    def zero_order(self, lam: complex, tol: float = 1e-9) -> int:
        """Order of the zero of phi(z) - phi(lam) at lam."""
        P = np.polynomial.polynomial
        den = np.array(self.den)
        if abs(P.polyval(lam, den)) <= tol:
            raise DomainError("pole of phi")
        w = self(lam)
        # phi - w vanishes where num - w*den does
        p = P.polysub(np.array(self.num), w * den)
        scale = max(1.0, np.max(np.abs(p)))
        deriv = p
        for order in range(0, len(p) + 1):
            if order > 0 and abs(P.polyval(lam, deriv)) / math.factorial(order) > tol * scale:
                return order
            deriv = P.polyder(deriv) if len(deriv) > 1 else np.array([0j])
            if not np.any(deriv):
                break
        raise DomainError("phi is constant near the point")


def identity_map() -> HolomorphicMap:
    return HolomorphicMap((0.0, 1.0))


def _split_block(k: int, d: int) -> list:
    """Jordan block lengths of N^d for a nilpotent block of length k."""
    q, r = divmod(k, d)
    return [q + 1] * r + [q] * (d - r) if q else [1] * k


def spectral_map(spec: JetSpectrum, phi: HolomorphicMap, *, full: bool = False,
                 rule: str = "jet", keep_zero: bool = False) -> JetSpectrum:
    """Image of a jet spectrum under phi.

    A block of length k carries the jet of degree k - 1.  Composing with
    phi, which has a zero of order d at lam, keeps the jet of degree
    floor((k-1)/d) at phi(lam), i.e. a block of length ceil(k/d): the
    largest block of phi(J_k(lam)).  With full=True the remaining Jordan
    blocks of phi(J_k(lam)) are listed too, which is the complete Jordan
    structure of phi(a).

    rule="floor" uses floor(k/d) instead; points reaching order 0 are
    dropped unless keep_zero is set.
    """
    if rule not in ("jet", "floor"):
        raise InvalidInput("rule must be 'jet' or 'floor'")
    pts = []
    for p in spec.points:
        if p.order == 0:
            continue
        d = phi.zero_order(p.lam)
        mu = complex(phi(p.lam))
        if rule == "floor":
            k = p.order // d
            if k or keep_zero:
                pts.append(JetPoint(mu, k))
        elif full:
            pts.extend(JetPoint(mu, b) for b in _split_block(p.order, d))
        else:
            pts.append(JetPoint(mu, -(-p.order // d)))
    return JetSpectrum(tuple(pts))


def blaschke(spec: JetSpectrum, z):
    """Finite Blaschke product whose zeros are the minimal-polynomial roots."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1 + 1e-12):
        raise DomainError("evaluation point outside the closed unit disk")
    out = np.ones_like(z)
    for lam, k in spec.minimal_exponents():
        if k == 0:
            continue
        if abs(lam) >= 1:
            raise DomainError("Blaschke factors need |lambda| < 1")
        out = out * ((z - lam) / (1 - np.conj(lam) * z)) ** k
    return out if out.ndim else complex(out)


def blaschke_numerator(spec: JetSpectrum) -> np.ndarray:
    """Monic numerator polynomial, coefficients in decreasing powers."""
    roots = [lam for lam, k in spec.minimal_exponents() for _ in range(k)]
    return np.poly(roots) if roots else np.array([1.0])


def _mean_sq_diff(sa, sb, nodes):
    theta = 2 * np.pi * np.arange(nodes) / nodes
    z = np.exp(1j * theta)
    return float(np.mean(np.abs(blaschke(sa, z) - blaschke(sb, z)) ** 2)), z


def spectral_distance_sq(sa: JetSpectrum, sb: JetSpectrum, nodes: int = 4096,
                         max_nodes: int = 1 << 20) -> float:
    """Squared L2 distance of the Blaschke products on the unit circle,
    which equals 2 - 2 Re<B_a, B_b>."""
    prev, _ = _mean_sq_diff(sa, sb, nodes)
    while True:
        nodes *= 2
        cur, z = _mean_sq_diff(sa, sb, nodes)
        if abs(cur - prev) <= 1e-8:
            break
        if nodes >= max_nodes:
            warnings.warn("spectral distance quadrature did not settle", PrecisionWarning)
            break
        prev = cur
    return cur


def spectral_distance(sa: JetSpectrum, sb: JetSpectrum, nodes: int = 4096) -> float:
    return math.sqrt(max(spectral_distance_sq(sa, sb, nodes), 0.0))


def inner_identity_defect(sa: JetSpectrum, sb: JetSpectrum, nodes: int = 8192) -> float:
    """| d^2 - (2 - 2 Re<B_a, B_b>) | on one quadrature grid."""
    theta = 2 * np.pi * np.arange(nodes) / nodes
    z = np.exp(1j * theta)
    ba, bb = blaschke(sa, z), blaschke(sb, z)
    d2 = np.mean(np.abs(ba - bb) ** 2)
    return float(abs(d2 - (2 - 2 * np.mean(ba * np.conj(bb)).real)))


def disk_automorphism(g: MoebiusMap):
    """The disk automorphism associated with g by the Cayley transform,
    returned as (alpha, beta) with z -> (alpha z + beta)/(conj(beta) z + conj(alpha))."""
    c = np.array([[1, -1j], [1, 1j]]) / math.sqrt(2)
    m = c @ g.matrix @ np.linalg.inv(c)
    alpha, beta = m[0, 0], m[0, 1]
    nrm = math.sqrt(abs(alpha) ** 2 - abs(beta) ** 2)
    return alpha / nrm, beta / nrm


def act_on_spectrum(g: MoebiusMap, spec: JetSpectrum) -> JetSpectrum:
    """Move every eigenvalue by the disk automorphism of g; a Moebius map
    has no critical points, so jet orders are unchanged."""
    alpha, beta = disk_automorphism(g)
    return JetSpectrum(tuple(JetPoint((alpha * p.lam + beta) / (np.conj(beta) * p.lam + np.conj(alpha)),
                                      p.order) for p in spec.points))


# perturbation experiments


@dataclass(frozen=True)
class LidskiiReport:
    n: int
    eps: float
    seed: int
    eigenvalues: tuple
    magnitude_mean: float
    magnitude_spread: float
    max_gap_error: float
    predicted_magnitude: float
    residual: float

    def rows(self) -> list:
        base = ("lidskii", self.n, self.eps, self.seed)
        return [base + (k, v) for k, v in (
            ("magnitude_mean", self.magnitude_mean),
            ("magnitude_spread", self.magnitude_spread),
            ("max_gap_error", self.max_gap_error),
            ("predicted_magnitude", self.predicted_magnitude),
            ("residual_over_eps", self.residual),
        )]


def lidskii_eigenvalues(n: int, eps: float, K: np.ndarray) -> np.ndarray:
    """Eigenvalues of J_n(0) + eps^n K.

    Conjugating by diag(1, eps, ..., eps^(n-1)) gives eps (J_n + K') with
    K'_ij = eps^(n-1+j-i) K_ij, whose spectrum is well conditioned, so the
    result is not swamped by rounding in the tiny perturbation.
    """
    i, j = np.indices((n, n))
    Kp = eps ** (n - 1 + j - i) * K
    return eps * np.linalg.eigvals(jordan_block(0, n) + Kp)


def lidskii_experiment(n: int, eps: float, seed: int, K: np.ndarray | None = None) -> LidskiiReport:
    """Perturb J_n(0) by eps^n K, K uniform on [-1, 1] unless given."""
    if n < 2 or not 0 < eps < 0.5:
        raise InvalidInput("need n >= 2 and 0 < eps < 0.5")
    if K is None:
        K = np.random.default_rng(seed).uniform(-1, 1, (n, n))
    K = np.asarray(K, dtype=float)
    if K.shape != (n, n):
        raise InvalidInput("K must be n x n")
    lam = lidskii_eigenvalues(n, eps, K)
    mags = np.abs(lam)
    mean = float(np.mean(mags))
    ang = np.sort(np.angle(lam))
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * np.pi]]))
    xi = K[n - 1, 0]
    roots = eps * abs(xi) ** (1.0 / n) * np.exp(1j * (np.angle(xi) + 2 * np.pi * np.arange(n)) / n)
    resid = max(np.min(np.abs(roots - x)) for x in lam) / eps
    return LidskiiReport(n, eps, seed, tuple(complex(x) for x in lam), mean,
                         float(np.max(np.abs(mags - mean)) / mean),
                         float(np.max(np.abs(gaps - 2 * np.pi / n))),
                         float(eps * abs(xi) ** (1.0 / n)), float(resid))


def _fit_slope(eps_grid, values) -> float:
    x, y = np.log(np.asarray(eps_grid)), np.log(np.asarray(values))
    return float(np.polyfit(x, y, 1)[0])


def stability_exponent(n2_trials: int, eps_grid, seed: int, control: bool = False) -> float:
    """Log-log slope of the squared spectral distance d(J_2, J_2 + eps^2 K)^2.

    With control=True the second matrix is diag(l1, l2) with |l1| + |l2| of
    order eps and no further constraint.
    """
    eps_grid = list(eps_grid)
    if len(eps_grid) < 4:
        raise InvalidInput("need at least four eps values")
    if any(not 1e-3 <= e <= 1e-1 for e in eps_grid):
        raise InvalidInput("eps values must lie in [1e-3, 1e-1]")
    rng = np.random.default_rng(seed)
    j2 = JetSpectrum(((0.0, 2),))
    slopes = []
    for _ in range(n2_trials):
        if control:
            w = rng.normal(size=2) + 1j * rng.normal(size=2)
            w = w / np.sum(np.abs(w))
        else:
            K = rng.uniform(-1, 1, (2, 2))
        vals = []
        for e in eps_grid:
            if control:
                other = JetSpectrum(((e * w[0], 1), (e * w[1], 1)))
            else:
                ev = np.linalg.eigvals(jordan_block(0, 2) + e * e * K)
                other = JetSpectrum(tuple((x, 1) for x in ev))
            vals.append(spectral_distance_sq(j2, other))
        slopes.append(_fit_slope(eps_grid, vals))
    return float(np.mean(slopes))


# pencils


@dataclass(frozen=True)
class PencilPair:
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A, B = np.asarray(self.A, dtype=float), np.asarray(self.B, dtype=float)
        if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise InvalidInput("pencil matrices must be square of equal size")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)


def pencil_act(g: MoebiusMap, p: PencilPair) -> PencilPair:
    return PencilPair(g.a * p.A + g.b * p.B, g.c * p.A + g.d * p.B)


def _det_poly(A, B) -> np.ndarray:
    """Coefficients (increasing powers) of det(A - lam B) by interpolation on
    a circle."""
    n = A.shape[0]
    N = n + 1
    r = max(1.0, np.linalg.norm(A, 2) / max(np.linalg.norm(B, 2), 1e-300)) if np.any(B) else 1.0
    nodes = r * np.exp(2j * np.pi * np.arange(N) / N)
    vals = np.array([np.linalg.det(A - z * B) for z in nodes])
    coeffs = np.fft.fft(vals) / N
    return (coeffs / r ** np.arange(N)).real if np.isrealobj(A) else coeffs / r ** np.arange(N)


def _polish(A, B, lam, steps=3):
    for _ in range(steps):
        M = A - lam * B
        try:
            step = 1.0 / np.trace(np.linalg.solve(M, -B))
        except np.linalg.LinAlgError:
            break
        if not np.isfinite(step):
            break
        lam = lam - step
    return lam


def pencil_eigs(p: PencilPair, tol: float = 1e-10) -> list:
    """Generalised eigenvalues of A x = lam B x; INF for the degree drop."""
    n = p.A.shape[0]
    if n > 8:
        raise InvalidInput("pencil_eigs handles dimension <= 8")
    c = _det_poly(p.A, p.B)
    scale = np.max(np.abs(c))
    if scale <= tol * max(1.0, np.linalg.norm(p.A)) ** n:
        raise DegenerateError("det(A - lam B) vanishes identically")
    deg = n
    while deg > 0 and abs(c[deg]) <= tol * scale:
        deg -= 1
    roots = np.roots(c[: deg + 1][::-1]) if deg > 0 else np.array([])
    roots = [complex(_polish(p.A, p.B, r)) for r in roots]
    return roots + [INF] * (n - deg)


def pencil_eigs_direct(p: PencilPair) -> list:
    """Independent route through the QZ algorithm."""
    w = scipy.linalg.eigvals(p.A, p.B, homogeneous_eigvals=True)
    alpha, beta = w
    scale = np.max(np.abs(alpha)) + np.max(np.abs(beta))
    return [INF if abs(b) <= 1e-12 * scale else complex(a / b) for a, b in zip(alpha, beta)]


def moebius_complex(g: MoebiusMap, z):
    if is_inf(z):
        return INF if g.c == 0 else complex(g.a / g.c)
    den = g.c * z + g.d
    if den == 0:
        return INF
    return complex((g.a * z + g.b) / den)


def chordal(z, w) -> float:
    """Chordal distance on the Riemann sphere."""
    if is_inf(z) and is_inf(w):
        return 0.0
    if is_inf(z):
        z, w = w, z
    if is_inf(w):
        return 2.0 / math.sqrt(1 + abs(z) ** 2)
    return 2 * abs(z - w) / math.sqrt((1 + abs(z) ** 2) * (1 + abs(w) ** 2))


def match_on_sphere(xs, ys) -> float:
    """Largest chordal distance under the best greedy matching."""
    pool = list(ys)
    if len(pool) != len(xs):
        return float("inf")
    worst = 0.0
    for x in xs:
        d = [chordal(x, y) for y in pool]
        i = int(np.argmin(d))
        worst = max(worst, d[i])
        pool.pop(i)
    return worst


@dataclass(frozen=True)
class QuadraticPencil:
    """Q(lam) = lam^2 A2 + lam A1 + A0."""
    A0: np.ndarray
    A1: np.ndarray
    A2: np.ndarray

    def __post_init__(self):
        mats = [np.asarray(x, dtype=float) for x in (self.A0, self.A1, self.A2)]
        if len({m.shape for m in mats}) != 1 or mats[0].ndim != 2 or mats[0].shape[0] != mats[0].shape[1]:
            raise InvalidInput("quadratic pencil blocks must be square of equal size")
        for name, m in zip(("A0", "A1", "A2"), mats):
            object.__setattr__(self, name, m)


def quadratic_fsc(q: QuadraticPencil) -> np.ndarray:
    """Block matrix [[-A1/2, -A0], [A2, A1/2]].

    This is the cycle matrix [[l, -m], [k, -l]] of the form k x^2 - 2 l x + m
    with k = A2, l = -A1/2, m = A0, so roots move by Moebius maps under
    conjugation exactly as cycle roots do.
    """
    return np.block([[-0.5 * q.A1, -q.A0], [q.A2, 0.5 * q.A1]])


def quadratic_pencil_conjugate(g: MoebiusMap, q: QuadraticPencil, tol: float = 1e-10) -> QuadraticPencil:
    n = q.A0.shape[0]
    G = np.kron(g.matrix, np.eye(n))
    Gi = np.kron(g.inverse().matrix, np.eye(n))
    C = G @ quadratic_fsc(q) @ Gi
    tl, tr, bl, br = C[:n, :n], C[:n, n:], C[n:, :n], C[n:, n:]
    scale = max(1.0, np.max(np.abs(C)))
    if np.max(np.abs(br + tl)) > tol * scale:
        raise DegenerateError("conjugated matrix lost the block shape")
    return QuadraticPencil(-tr, -2 * tl, bl)


def quadratic_eigs(q: QuadraticPencil) -> list:
    """Solutions of det Q(lam) = 0 through the companion linearisation."""
    n = q.A0.shape[0]
    Z, I = np.zeros((n, n)), np.eye(n)
    L = np.block([[Z, I], [-q.A0, -q.A1]])
    M = np.block([[I, Z], [Z, q.A2]])
    return pencil_eigs_direct(PencilPair(L, M))


def quadratic_eigs_poly(q: QuadraticPencil, tol: float = 1e-10) -> list:
    """Same solutions from the coefficients of det Q(lam)."""
    n = q.A0.shape[0]
    N = 2 * n + 1
    nodes = np.exp(2j * np.pi * np.arange(N) / N)
    vals = np.array([np.linalg.det(z * z * q.A2 + z * q.A1 + q.A0) for z in nodes])
    c = np.fft.fft(vals) / N
    scale = np.max(np.abs(c))
    if scale == 0:
        raise DegenerateError("det Q vanishes identically")
    deg = 2 * n
    while deg > 0 and abs(c[deg]) <= tol * scale:
        deg -= 1
    roots = list(np.roots(c[: deg + 1][::-1])) if deg > 0 else []
    return [complex(r) for r in roots] + [INF] * (2 * n - deg)


def minimal_polynomial(a: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Monic minimal polynomial (decreasing powers) from the first linear
    dependence among I, a, a^2, ..."""
    n = a.shape[0]
    powers = [np.eye(n, dtype=complex).ravel()]
    for k in range(1, n + 1):
        powers.append((np.linalg.matrix_power(a, k)).ravel())
        M = np.column_stack(powers[:-1])
        coef, *_ = np.linalg.lstsq(M, powers[-1], rcond=None)
        if np.linalg.norm(M @ coef - powers[-1]) <= tol * max(1.0, np.linalg.norm(powers[-1])):
            return np.concatenate([[1.0], -coef[::-1]])
    raise DegenerateError("no minimal polynomial found")
