"""Two dimensional hypercomplex numbers x + iota*y with iota**2 = sigma.

sigma = -1 gives complex numbers, 0 dual numbers and +1 double
(split-complex) numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

from .errors import DomainError, InvalidInput

EQ_TOL = 1e-12


class Signature(IntEnum):
    ELLIPTIC = -1
    PARABOLIC = 0
    HYPERBOLIC = 1


def signature(value) -> Signature:
    """Coerce an int-like value to a Signature, rejecting anything else."""
    if isinstance(value, bool):
        raise InvalidInput(f"bad signature {value!r}")
    try:
        iv = int(value)
    except (TypeError, ValueError):
        raise InvalidInput(f"bad signature {value!r}") from None
    if iv != value or iv not in (-1, 0, 1):
        raise InvalidInput(f"signature must be -1, 0 or 1, got {value!r}")
    return Signature(iv)


def chi(t: float) -> int:
    """Heaviside sign: 1 for t >= 0 and -1 otherwise."""
    return 1 if t >= 0 else -1


@dataclass(frozen=True, eq=False)
class Hypercomplex:
    re: float
    im: float
    sig: Signature

    def __post_init__(self):
        object.__setattr__(self, "sig", signature(self.sig))
        object.__setattr__(self, "re", float(self.re))
        object.__setattr__(self, "im", float(self.im))

    def _coerce(self, other) -> "Hypercomplex":
        if isinstance(other, Hypercomplex):
            if other.sig != self.sig:
                raise InvalidInput("mixed signatures")
            return other
        if isinstance(other, (int, float)) and not isinstance(other, bool):
            return Hypercomplex(other, 0.0, self.sig)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Hypercomplex(self.re + o.re, self.im + o.im, self.sig)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Hypercomplex(self.re - o.re, self.im - o.im, self.sig)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Hypercomplex(-self.re, -self.im, self.sig)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return div(self, o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return div(o, self)

    def conj(self) -> "Hypercomplex":
        return conj(self)

    def modulus_sq(self) -> float:
        return modulus_sq(self)

    def isclose(self, other, tol: float = EQ_TOL) -> bool:
        o = self._coerce(other)
        return abs(self.re - o.re) <= tol and abs(self.im - o.im) <= tol

    def __repr__(self):
        unit = {-1: "i", 0: "p", 1: "h"}[int(self.sig)]
        return f"({self.re!r}{'+' if self.im >= 0 else '-'}{abs(self.im)!r}{unit})"


def unit(sig) -> Hypercomplex:
    return Hypercomplex(0.0, 1.0, sig)


def mul(a: Hypercomplex, b: Hypercomplex) -> Hypercomplex:
    if a.sig != b.sig:
        raise InvalidInput("mixed signatures")
    s = int(a.sig)
    return Hypercomplex(a.re * b.re + s * a.im * b.im, a.re * b.im + a.im * b.re, a.sig)


def conj(a: Hypercomplex) -> Hypercomplex:
    return Hypercomplex(a.re, -a.im, a.sig)


def modulus_sq(a: Hypercomplex) -> float:
    return a.re * a.re - int(a.sig) * a.im * a.im


def div(a: Hypercomplex, b: Hypercomplex) -> Hypercomplex:
    # zero divisors have vanishing modulus and cannot be inverted
    d = modulus_sq(b)
    if d == 0.0:
        raise DomainError(f"{b!r} is a zero divisor")
    p = mul(a, conj(b))
    return Hypercomplex(p.re / d, p.im / d, a.sig)


def argument(a: Hypercomplex) -> float:
    x, y = a.re, a.im
    if a.sig == Signature.ELLIPTIC:
        if x == 0.0 and y == 0.0:
            raise DomainError("argument of zero")
        return math.atan2(y, x)
    if a.sig == Signature.PARABOLIC:
        if x == 0.0:
            raise DomainError("parabolic argument needs re != 0")
        return y / x
    if abs(x) <= abs(y):
        raise DomainError("hyperbolic argument needs |re| > |im|")
    return math.atanh(y / x)


def exp_unit(t: float, sig) -> Hypercomplex:
    """e^{iota t}: rotation, shear or hyperbolic rotation."""
    sig = signature(sig)
    if sig == Signature.ELLIPTIC:
        return Hypercomplex(math.cos(t), math.sin(t), sig)
    if sig == Signature.PARABOLIC:
        return Hypercomplex(1.0, t, sig)
    return Hypercomplex(math.cosh(t), math.sinh(t), sig)


def as_complex(a: Hypercomplex) -> complex:
    if a.sig != Signature.ELLIPTIC:
        raise InvalidInput("only elliptic numbers embed in the complex field")
    return complex(a.re, a.im)


class Mat2:
    """2x2 matrix with Hypercomplex entries of one signature."""

    __slots__ = ("a", "b", "c", "d", "sig")

    def __init__(self, a, b, c, d, sig):
        self.sig = signature(sig)
        self.a, self.b, self.c, self.d = (self._lift(x) for x in (a, b, c, d))

    def _lift(self, x) -> Hypercomplex:
        if isinstance(x, Hypercomplex):
            if x.sig != self.sig:
                raise InvalidInput("mixed signatures")
            return x
        return Hypercomplex(float(x), 0.0, self.sig)

    @classmethod
    def real(cls, rows, sig) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d, sig)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        if o.sig != self.sig:
            raise InvalidInput("mixed signatures")
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
            self.sig,
        )

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d, self.sig)

    def __sub__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d, self.sig)

    def scale(self, s) -> "Mat2":
        return Mat2(*(x * s for x in self.entries()), self.sig)

    def conj(self) -> "Mat2":
        return Mat2(*(conj(x) for x in self.entries()), self.sig)

    def trace(self) -> Hypercomplex:
        return self.a + self.d

    def det(self) -> Hypercomplex:
        return self.a * self.d - self.b * self.c

    def frobenius(self) -> float:
        return math.sqrt(sum(x.re ** 2 + x.im ** 2 for x in self.entries()))

    def isclose(self, o: "Mat2", tol: float = EQ_TOL) -> bool:
        return all(x.isclose(y, tol) for x, y in zip(self.entries(), o.entries()))

    def __repr__(self):
        return f"Mat2([[{self.a!r}, {self.b!r}], [{self.c!r}, {self.d!r}]])"
